use rand::Rng;
use rayon::prelude::*;

use super::{AnalysisError, ChannelLabel};
use crate::channel::{trial_rng, QscParams};
use crate::galois::{Elem, FieldContext};
use crate::SparseColumn;

const CHUNK: usize = 4096;

/// Sample mean with its standard error.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Estimate {
    pub mean: f64,
    pub stderr: f64,
    pub samples: usize,
}

fn uniform<R: Rng + ?Sized>(f: &FieldContext, rng: &mut R) -> Elem {
    Elem(rng.gen_range(0..f.q()) as u16)
}

fn product(f: &FieldContext, a: &SparseColumn, b: &SparseColumn, shift: Elem) -> SparseColumn {
    SparseColumn::reliability_product(f, a, b, shift).unwrap_or_else(|_| SparseColumn::uniform(a.q()))
}

/// `‖π‖²` of the column seen by the `label` decoder at one coordinate, for
/// uniformly random code symbols sent through `ch`.
///
/// Depth 1 sends `(u | u + v)`; depth 2 sends
/// `(u1 | u1 + v1 | u1 + u2 | u1 + u2 + v1 + v2)`. Product steps are shifted
/// by the true value of the already decoded part.
pub fn sample_norm2<R: Rng + ?Sized>(
    label: ChannelLabel,
    f: &FieldContext,
    ch: &QscParams,
    rng: &mut R,
) -> f64 {
    let look = |x: Elem, rng: &mut R| ch.sparse_column(ch.corrupt(x, rng));
    match label {
        ChannelLabel::Base => look(uniform(f, rng), rng).norm2(),
        ChannelLabel::U | ChannelLabel::V => {
            let (u, v) = (uniform(f, rng), uniform(f, rng));
            let y1 = look(u, rng);
            let y2 = look(f.add(u, v), rng);
            if label == ChannelLabel::U {
                product(f, &y1, &y2, v).norm2()
            } else {
                SparseColumn::reliability_sum(f, &y1, &y2).norm2()
            }
        }
        _ => {
            let [u1, v1, u2, v2] = [(); 4].map(|_| uniform(f, rng));
            let x = [u1, f.add(u1, v1), f.add(u1, u2), f.add(f.add(u1, u2), f.add(v1, v2))];
            let y = x.map(|xi| look(xi, rng));
            match label {
                ChannelLabel::U1 | ChannelLabel::V1 => {
                    let a = product(f, &y[0], &y[2], u2);
                    let b = product(f, &y[1], &y[3], f.add(u2, v2));
                    if label == ChannelLabel::U1 {
                        product(f, &a, &b, v1).norm2()
                    } else {
                        SparseColumn::reliability_sum(f, &a, &b).norm2()
                    }
                }
                _ => {
                    let a = SparseColumn::reliability_sum(f, &y[0], &y[2]);
                    let b = SparseColumn::reliability_sum(f, &y[1], &y[3]);
                    if label == ChannelLabel::U2 {
                        product(f, &a, &b, v2).norm2()
                    } else {
                        SparseColumn::reliability_sum(f, &a, &b).norm2()
                    }
                }
            }
        }
    }
}

/// Estimates `E‖π‖²` for `label` over GF(q) with `samples` independent
/// coordinates. Deterministic in `seed` whatever the thread count.
pub fn expectation_monte_carlo(
    label: ChannelLabel,
    p: f64,
    q: u32,
    samples: usize,
    seed: u64,
) -> Result<Estimate, AnalysisError> {
    if samples < 1000 {
        return Err(AnalysisError::TooFewSamples {
            min: 1000,
            got: samples,
        });
    }
    let ch = QscParams::new(p, q).map_err(|_| AnalysisError::InvalidCrossover(p))?;
    let f = FieldContext::new(q)?;
    let chunks = samples.div_ceil(CHUNK);
    let partial: Vec<(f64, f64)> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = trial_rng(seed, c as u64);
            let len = CHUNK.min(samples - c * CHUNK);
            (0..len).fold((0.0, 0.0), |(s, s2), _| {
                let x = sample_norm2(label, &f, &ch, &mut rng);
                (s + x, s2 + x * x)
            })
        })
        .collect();
    let (s, s2) = partial
        .iter()
        .fold((0.0, 0.0), |(a, b), (x, y)| (a + x, b + y));
    let n = samples as f64;
    let mean = s / n;
    let var = ((s2 - n * mean * mean) / (n - 1.0)).max(0.0);
    Ok(Estimate {
        mean,
        stderr: (var / n).sqrt(),
        samples,
    })
}
