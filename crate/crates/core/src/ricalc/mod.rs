//! Resource inequalities with entropic coefficients.
//!
//! Grammar (whitespace insignificant):
//!
//! ```text
//! ri       := side (">=" | "≥") side
//! side     := "0" | term ("+" term)*
//! term     := coeff? resource
//! coeff    := unary (("*" | "/") unary | factor)*
//! expr     := mul (("+" | "-") mul)*
//! mul      := unary (("*" | "/") unary | factor)*
//! unary    := "-" unary | factor
//! factor   := number | "inf" | entropic | Name "(" labels ")" | "(" expr ")"
//! entropic := "H(" labels ("|" labels)? ")" tag?
//!           | "I(" labels ";" labels ("|" labels)? ")" tag?
//! tag      := "_" identifier
//! labels   := one or more system labels: an uppercase letter followed by
//!             digits or primes, optionally comma separated ("RA", "A1B1")
//! resource := "[qq]" | "[q->q]" | "[c->c]" | "<" Name ">" | "<" Name ":" state ">"
//!           | "<" name "_" partition ">"
//! ```
//!
//! Juxtaposition multiplies, so `0.5 I(A;R) [q->q]` carries the coefficient
//! `0.5 * I(A;R)`.

mod ast;
mod builtins;
mod certify;
mod chain;
mod eval;
mod lexer;
mod parser;

pub use ast::{EntropicExpr, RIStatement, Resource, Term};
pub use builtins::{builtin, merging_certificate, BUILTIN_NAMES};
pub use certify::{
    certify, net_table, CertificateFile, CertificateReport, RandomPureSpec, SampleResidual, SamplesJson, StepJson,
};
pub use chain::{add, cancel, chain, scale};
pub use eval::{evaluate, evaluate_expr, Bindings, Evaluation, ResourceAmount};
pub use lexer::ParseError;
pub use parser::{parse, parse_expr, parse_file, RiLine};
