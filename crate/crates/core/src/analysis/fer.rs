use rand::Rng;
use rayon::prelude::*;

use super::{expectation_paper, format_g, AnalysisError, ChannelLabel};
use crate::channel::{trial_rng, QscParams};
use crate::galois::Elem;
use crate::uuv::{CodeNode, DecoderConfig};

#[derive(Clone, Debug)]
pub struct FerConfig {
    pub node: CodeNode,
    pub p: f64,
    pub trials: usize,
    pub seed: u64,
    pub decoder: DecoderConfig,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FerRecord {
    pub successes: usize,
    pub failures: usize,
    pub fer: f64,
}

/// One trial: random message, encode, q-SC_p, soft decode, compare.
/// Trial `index` draws from its own stream of `seed`.
pub fn fer_trial(cfg: &FerConfig, index: u64) -> Result<bool, AnalysisError> {
    let f = cfg.node.field();
    let ch = QscParams::new(cfg.p, f.q()).map_err(|_| AnalysisError::InvalidCrossover(cfg.p))?;
    let mut rng = trial_rng(cfg.seed, index);
    let message: Vec<Elem> = (0..cfg.node.dimension())
        .map(|_| Elem(rng.gen_range(0..f.q()) as u16))
        .collect();
    let word = cfg.node.encode(&message)?;
    let received = ch.sample_with(&word, &mut rng);
    Ok(match cfg.node.soft_decode(&ch.matrix(&received), &cfg.decoder) {
        Ok(d) => d.message == message,
        Err(_) => false,
    })
}

/// Runs `cfg.trials` trials on the current rayon pool.
pub fn fer_experiment(cfg: &FerConfig) -> Result<FerRecord, AnalysisError> {
    if cfg.trials == 0 {
        return Err(AnalysisError::NoTrials);
    }
    let outcomes = (0..cfg.trials as u64)
        .into_par_iter()
        .map(|i| fer_trial(cfg, i))
        .collect::<Result<Vec<bool>, _>>()?;
    let successes = outcomes.iter().filter(|&&ok| ok).count();
    let failures = cfg.trials - successes;
    Ok(FerRecord {
        successes,
        failures,
        fer: failures as f64 / cfg.trials as f64,
    })
}

/// `(k_u, k_v) = floor(factor · E‖π‖² · n)` for the depth-1 U and V channels
/// at `p`, clamped to `[1, n]`.
pub fn design_dimensions(n: usize, p: f64, factor: f64) -> (usize, usize) {
    let k = |l| ((factor * expectation_paper(l, &p) * n as f64).floor() as usize).clamp(1, n);
    (k(ChannelLabel::U), k(ChannelLabel::V))
}

pub fn fer_csv_header() -> &'static str {
    "p,q,n,depth,ku,kv,trials,successes,fer,seed"
}

/// `n` is the leaf length; `ku`, `kv` are the dimensions of the two children
/// of the root (`kv = 0` for a single leaf).
pub fn fer_csv_row(cfg: &FerConfig, rec: &FerRecord) -> String {
    let (ku, kv) = match &cfg.node {
        CodeNode::Leaf(c) => (c.k(), 0),
        CodeNode::Node { u, v, .. } => (u.dimension(), v.dimension()),
    };
    let n = cfg.node.leaves()[0].n();
    format!(
        "{},{},{},{},{},{},{},{},{},{}",
        format_g(cfg.p, 12),
        cfg.node.field().q(),
        n,
        cfg.node.depth(),
        ku,
        kv,
        cfg.trials,
        rec.successes,
        format_g(rec.fer, 12),
        cfg.seed
    )
}
