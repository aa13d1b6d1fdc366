//! McEliece-style public-key encryption over permuted `[U,V]·D` codes with
//! Reed-Solomon components.
//!
//! The public generator is `G_pub = S · G · P` where `G` generates
//! `[U,V]·D`, `S` is a random invertible scrambler and `P` a random
//! permutation of the `2n` coordinates. Decryption undoes `P`, soft-decodes
//! with hard q-SC columns at `p = t / 2n`, undoes `S` and checks that the
//! re-encoded message lies within distance `t` of the ciphertext.

mod io;
mod keys;
mod scheme;

use thiserror::Error;

use crate::galois::GaloisError;
use crate::uuv::UuvError;

pub use io::{load_public, load_secret, read_elements, save_public, save_secret, write_elements, KeyKind};
pub use keys::{calibrate_t, keygen, PublicKey, RatePlan, SecretKey, CALIBRATION_TRIALS};
pub use scheme::{decrypt, decrypt_with, encrypt, encrypt_with};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum McElieceError {
    #[error("invalid rate plan: {0}")]
    InvalidRatePlan(String),
    #[error("expected {expected} symbols, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("decryption failed")]
    DecryptionFailure,
    #[error("bad magic bytes")]
    BadMagic,
    #[error("unsupported format version {0}")]
    VersionMismatch(u8),
    #[error("expected a {expected:?} key")]
    KindMismatch { expected: KeyKind },
    #[error("truncated or oversized data")]
    CorruptLength,
    #[error("checksum mismatch")]
    Crc,
    #[error("inconsistent key contents: {0}")]
    CorruptKey(String),
    #[error(transparent)]
    Galois(#[from] GaloisError),
    #[error(transparent)]
    Code(#[from] UuvError),
}
