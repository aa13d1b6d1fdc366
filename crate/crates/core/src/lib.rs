//! Reed-Solomon codes in the (U|U+V) construction.
//!
//! The crate provides finite-field arithmetic ([`galois`]), reliability
//! matrices for q-ary symmetric channels and the sum/product transforms that
//! propagate them through the construction ([`channel`]), Koetter-Vardy
//! soft-decision list decoding of RS codes ([`rs_kv`]), the plain, recursive
//! and matrix-product (U|U+V) codes with their reliability-propagating decoder
//! ([`uuv`]), closed-form and simulated decoding thresholds ([`analysis`]), a
//! McEliece-style scheme over permuted [U,V]·D codes ([`mceliece`]) and the
//! `uuv` command-line front end ([`cli`]).

pub mod analysis;
pub mod channel;
pub mod cli;
pub mod galois;
pub mod mceliece;
pub mod rs_kv;
pub mod scalar;
pub mod uuv;

pub use galois::{Elem, FieldContext, Matrix, Poly};
pub use scalar::Probability;

/// Exact rational scalar used for identity checks.
pub type Rational = num_rational::BigRational;

/// Double-precision reliability column used by the decoders.
pub type Column = channel::ReliabilityColumn<f64>;
/// Double-precision reliability matrix used by the decoders.
pub type ReliabilityMatrix = channel::ReliabilityMatrix<f64>;
/// Reliability column over exact rationals.
pub type ExactColumn = channel::ReliabilityColumn<Rational>;
/// Sparse floor-plus-peaks column used by the large-q Monte-Carlo estimators.
pub type SparseColumn = channel::SparseColumn<f64>;
