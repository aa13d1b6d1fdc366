//! The (U|U+V) construction, its recursive form and the matrix-product
//! generalization `[U,V]·D = { (u D1 + v D2 | u D3 + v D4) }`.
//!
//! The soft decoder first recovers `v` from the sum channel of the two
//! halves, then `u` from the product channel once `v` is known, recursing
//! into the children until it reaches Reed-Solomon leaves.

mod decoder;
mod node;
mod quadruple;

use thiserror::Error;

use crate::galois::GaloisError;
use crate::rs_kv::RsError;

pub use decoder::{ChannelExpr, DecoderConfig, Decoded, LeafTrace};
pub use node::{CodeMatrices, CodeNode};
pub use quadruple::DiagonalQuadruple;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum UuvError {
    #[error("expected {expected} symbols, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("children have different lengths ({u} vs {v})")]
    ChildLengthMismatch { u: usize, v: usize },
    #[error("children are defined over different fields")]
    FieldMismatch,
    #[error("diagonal quadruple is singular at coordinate {0}")]
    Singular(usize),
    #[error("decoder needs d1 and d3 nonzero, violated at coordinate {0}")]
    Undecodable(usize),
    #[error("brute force over q^k = {0} codewords is too large")]
    TooLarge(f64),
    #[error("decoding failed: {0}")]
    DecodeFailure(#[from] RsError),
    #[error(transparent)]
    Galois(#[from] GaloisError),
}
