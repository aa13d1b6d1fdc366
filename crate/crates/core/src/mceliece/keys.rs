use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::McElieceError;
use crate::analysis::{design_dimensions, fer_experiment, FerConfig};
use crate::galois::{Elem, FieldContext, Matrix};
use crate::rs_kv::RSCode;
use crate::uuv::{CodeNode, DecoderConfig, DiagonalQuadruple};

/// Trials per candidate `t` in [`calibrate_t`].
pub const CALIBRATION_TRIALS: usize = 200;

/// How the component dimensions are chosen.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RatePlan {
    Dimensions { k_u: usize, k_v: usize },
    /// `0.8 ×` the depth-1 channel expectations at `p`.
    Design { p: f64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct PublicKey {
    pub field: Arc<FieldContext>,
    pub n: usize,
    pub k_u: usize,
    pub k_v: usize,
    pub t: usize,
    /// `k × 2n`.
    pub g_pub: Matrix,
}

impl PublicKey {
    pub fn k(&self) -> usize {
        self.k_u + self.k_v
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SecretKey {
    pub field: Arc<FieldContext>,
    pub n: usize,
    pub k_u: usize,
    pub k_v: usize,
    pub t: usize,
    pub d: DiagonalQuadruple,
    /// Public coordinate `j` carries structural coordinate `perm[j]`.
    pub perm: Vec<u32>,
    /// `k × k`, invertible.
    pub s: Matrix,
}

impl SecretKey {
    pub fn k(&self) -> usize {
        self.k_u + self.k_v
    }

    /// `[U,V]·D` with `U`, `V` evaluated on the first `n` field elements.
    pub fn node(&self) -> Result<CodeNode, McElieceError> {
        structural_node(&self.field, self.n, self.k_u, self.k_v, &self.d)
    }

    /// Recomputes `S · G · P`.
    pub fn public_key(&self) -> Result<PublicKey, McElieceError> {
        let f = &self.field;
        let sg = self.s.mul(f, &self.node()?.generator_matrix());
        let mut g_pub = Matrix::zeros(sg.rows(), sg.cols());
        for r in 0..sg.rows() {
            for (j, &src) in self.perm.iter().enumerate() {
                g_pub.set(r, j, sg.get(r, src as usize));
            }
        }
        Ok(PublicKey {
            field: f.clone(),
            n: self.n,
            k_u: self.k_u,
            k_v: self.k_v,
            t: self.t,
            g_pub,
        })
    }
}

fn structural_node(
    f: &Arc<FieldContext>,
    n: usize,
    k_u: usize,
    k_v: usize,
    d: &DiagonalQuadruple,
) -> Result<CodeNode, McElieceError> {
    let leaf = |k| -> Result<CodeNode, McElieceError> {
        let code = RSCode::new(f.clone(), n, k)
            .map_err(|e| McElieceError::InvalidRatePlan(e.to_string()))?;
        Ok(CodeNode::leaf(code))
    };
    Ok(CodeNode::matrix_product(leaf(k_u)?, leaf(k_v)?, d.clone())?)
}

fn random_invertible<R: Rng + ?Sized>(f: &FieldContext, k: usize, rng: &mut R) -> Matrix {
    loop {
        let data = (0..k * k).map(|_| Elem(rng.gen_range(0..f.q()) as u16)).collect();
        let m = Matrix::from_vec(k, k, data);
        if m.rank(f) == k {
            return m;
        }
    }
}

/// Largest `t < 2n` whose FER at `p = t / 2n` over `trials` trials is at
/// most 5%, by bisection assuming the FER grows with `t`.
pub fn calibrate_t(node: &CodeNode, trials: usize, seed: u64, decoder: DecoderConfig) -> Result<usize, McElieceError> {
    let len = node.length();
    let ok = |t: usize| -> Result<bool, McElieceError> {
        let rec = fer_experiment(&FerConfig {
            node: node.clone(),
            p: t as f64 / len as f64,
            trials,
            seed,
            decoder,
        })
        .map_err(|e| McElieceError::InvalidRatePlan(e.to_string()))?;
        Ok(rec.fer <= 0.05)
    };
    let (mut lo, mut hi) = (0, len);
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if ok(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

/// Samples `D` (all four diagonals nonzero, nonsingular per coordinate), a
/// uniform permutation and a uniform invertible scrambler. `t = None`
/// calibrates `t` with [`calibrate_t`] over [`CALIBRATION_TRIALS`] trials.
pub fn keygen(
    q: u32,
    n: usize,
    plan: RatePlan,
    t: Option<usize>,
    seed: u64,
) -> Result<(PublicKey, SecretKey), McElieceError> {
    let f = Arc::new(FieldContext::new(q)?);
    if n == 0 || n > f.size() {
        return Err(McElieceError::InvalidRatePlan(format!("need 1 <= n <= q, got n = {n}")));
    }
    let (k_u, k_v) = match plan {
        RatePlan::Dimensions { k_u, k_v } => (k_u, k_v),
        RatePlan::Design { p } if (0.0..1.0).contains(&p) => design_dimensions(n, p, 0.8),
        RatePlan::Design { p } => {
            return Err(McElieceError::InvalidRatePlan(format!("design p = {p} outside [0, 1)")))
        }
    };
    if !(1..=n).contains(&k_u) || !(1..=n).contains(&k_v) {
        return Err(McElieceError::InvalidRatePlan(format!(
            "need 1 <= k_u, k_v <= n, got ({k_u}, {k_v})"
        )));
    }
    if t.is_some_and(|t| t >= 2 * n) {
        return Err(McElieceError::InvalidRatePlan(format!("t must be below 2n = {}", 2 * n)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = DiagonalQuadruple::random(&f, n, &mut rng);
    let mut perm: Vec<u32> = (0..2 * n as u32).collect();
    perm.shuffle(&mut rng);
    let s = random_invertible(&f, k_u + k_v, &mut rng);
    let t = match t {
        Some(t) => t,
        None => calibrate_t(
            &structural_node(&f, n, k_u, k_v, &d)?,
            CALIBRATION_TRIALS,
            seed,
            DecoderConfig::default(),
        )?,
    };
    let sk = SecretKey {
        field: f,
        n,
        k_u,
        k_v,
        t,
        d,
        perm,
        s,
    };
    Ok((sk.public_key()?, sk))
}
