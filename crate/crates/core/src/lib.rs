//! Numerics for fully quantum source compression with a quantum helper.
//!
//! The crate is organised bottom-up:
//!
//! - [`qcore`]: density operators over labelled tensor factors, partial traces,
//!   purifications and the von Neumann entropy calculus (base 2 throughout).
//! - [`channels`]: CPTP maps as Kraus families or Stinespring isometries, and the
//!   smooth exponential parametrization of isometries used by the optimizer.
//! - [`rates`]: the helper rate pair `(H(A|C), I(RA;C)/2)` on the purified and
//!   dilated state, the merging / FQSW / reverse-Shannon protocol rates, and a
//!   numeric audit of the converse identities.
//! - [`region`]: weighted-sum Pareto frontier of the rate region with a seeded,
//!   multi-restart pattern search, convexified by time sharing.
//! - [`ricalc`]: a small resource-inequality language with a parser, evaluator,
//!   chaining rules and numeric certificates.

#![forbid(unsafe_code)]

pub mod channels;
pub mod error;
pub mod linalg;
pub mod qcore;
pub mod rates;
pub mod region;
pub mod ricalc;
pub mod tol;

pub use error::{Error, Result};
