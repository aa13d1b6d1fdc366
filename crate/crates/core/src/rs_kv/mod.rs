//! Reed-Solomon codes and Koetter-Vardy soft-decision list decoding.
//!
//! Decoding runs in three stages: a greedy multiplicity assignment turns a
//! reliability matrix into interpolation constraints, Koetter's incremental
//! algorithm finds a bivariate polynomial of minimal (1, k-1)-weighted degree
//! meeting them, and Roth-Ruckenstein root finding extracts every message
//! polynomial `f` with `Q(X, f(X)) = 0`. Guruswami-Sudan hard-decision
//! decoding is the special case of uniform multiplicities on hard columns.

mod bivariate;
mod code;
mod decode;
mod factor;
mod interpolate;
mod multiplicity;

use thiserror::Error;

use crate::galois::GaloisError;

pub use bivariate::{binomial_mod_p, BivariatePoly};
pub use code::RSCode;
pub use decode::{
    kv_decode, kv_decode_adaptive, kv_decode_with_multiplicity, kv_success_predicate,
    kv_success_ratio, AdaptiveSchedule, DecodeCandidate,
};
pub use factor::kv_factorize;
pub use interpolate::{kv_interpolate, y_degree_cap};
pub use multiplicity::{kv_multiplicity, MultiplicityMatrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RsError {
    #[error("invalid code parameters: n = {n}, k = {k}, q = {q}")]
    InvalidParameters { n: usize, k: usize, q: u32 },
    #[error("expected {expected} symbols, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("interpolation constraints are infeasible")]
    InfeasibleConstraints,
    #[error("decoder produced an empty list")]
    EmptyList,
    #[error(transparent)]
    Galois(#[from] GaloisError),
}
