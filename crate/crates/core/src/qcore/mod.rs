//! Finite-dimensional state algebra and the von Neumann entropy calculus.
//!
//! Matrices are indexed row-major over the tensor order of the layout labels:
//! the leftmost label is the most significant digit of a basis index.

mod entropy;
mod json;
mod layout;
pub mod random;
mod state;

pub use entropy::{cond_entropy, cond_mutual_info, entropy, mutual_info, trace_distance, EntropyReport, Quantity};
pub use json::{matrix_from_json, matrix_to_json, AnyState, MatrixJson, StateJson};
pub use layout::SystemLayout;
pub use state::{purify, tensor, DensityOperator, PureState, QuantumState};
