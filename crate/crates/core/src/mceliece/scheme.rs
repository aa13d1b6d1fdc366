use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{McElieceError, PublicKey, SecretKey};
use crate::channel::QscParams;
use crate::galois::Elem;
use crate::uuv::DecoderConfig;

/// `y = m G_pub + e` with `e` of weight exactly `t`: uniform support,
/// uniform nonzero values.
pub fn encrypt_with<R: Rng + ?Sized>(
    pk: &PublicKey,
    message: &[Elem],
    rng: &mut R,
) -> Result<Vec<Elem>, McElieceError> {
    if message.len() != pk.k() {
        return Err(McElieceError::LengthMismatch {
            expected: pk.k(),
            got: message.len(),
        });
    }
    let f = &pk.field;
    let mut y = pk.g_pub.left_mul(f, message);
    for j in index::sample(rng, y.len(), pk.t) {
        let e = Elem(rng.gen_range(1..f.q()) as u16);
        y[j] = f.add(y[j], e);
    }
    Ok(y)
}

/// Deterministic in `seed`.
pub fn encrypt(pk: &PublicKey, message: &[Elem], seed: u64) -> Result<Vec<Elem>, McElieceError> {
    encrypt_with(pk, message, &mut ChaCha8Rng::seed_from_u64(seed))
}

pub fn decrypt(sk: &SecretKey, ciphertext: &[Elem]) -> Result<Vec<Elem>, McElieceError> {
    decrypt_with(sk, ciphertext, &DecoderConfig::default())
}

/// Undoes the permutation, decodes (plain linear algebra when `t = 0`,
/// otherwise the soft decoder on hard q-SC columns with `p = t / 2n`),
/// undoes the scrambler and accepts only if the re-encoding is within
/// distance `t` of the ciphertext.
pub fn decrypt_with(
    sk: &SecretKey,
    ciphertext: &[Elem],
    cfg: &DecoderConfig,
) -> Result<Vec<Elem>, McElieceError> {
    let len = 2 * sk.n;
    if ciphertext.len() != len {
        return Err(McElieceError::LengthMismatch {
            expected: len,
            got: ciphertext.len(),
        });
    }
    let f = &sk.field;
    let mut z = vec![Elem::ZERO; len];
    for (j, &src) in sk.perm.iter().enumerate() {
        z[src as usize] = ciphertext[j];
    }
    let node = sk.node()?;
    let structural = if sk.t == 0 {
        node.generator_matrix()
            .solve_left(f, &z)
            .ok_or(McElieceError::DecryptionFailure)?
    } else {
        let ch = QscParams::new(sk.t as f64 / len as f64, f.q())
            .map_err(|_| McElieceError::DecryptionFailure)?;
        node.soft_decode(&ch.matrix(&z), cfg)
            .map_err(|_| McElieceError::DecryptionFailure)?
            .message
    };
    let reencoded = node.encode(&structural)?;
    let distance = reencoded.iter().zip(&z).filter(|(a, b)| a != b).count();
    if distance > sk.t {
        return Err(McElieceError::DecryptionFailure);
    }
    let s_inv = sk
        .s
        .inverse(f)
        .ok_or_else(|| McElieceError::CorruptKey("scrambler is singular".into()))?;
    Ok(s_inv.left_mul(f, &structural))
}
