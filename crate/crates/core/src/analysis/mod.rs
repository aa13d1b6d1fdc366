//! Channel expectations `E‖π‖²` for every node of the depth-2 channel tree,
//! the decoding thresholds they induce, Monte-Carlo estimators for both, and
//! frame-error-rate experiments on actual codes.
//!
//! Each expectation comes in two forms: `paper`, the closed-form large-q polynomial,
//! and `derived`, the sum over error-pattern cases of the case probability
//! times the squared norm of the limit column ([`cases`]).

pub mod cases;
mod fer;
mod format;
mod monte_carlo;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::channel::ChannelError;
use crate::galois::GaloisError;
use crate::scalar::{powi, Probability};
use crate::uuv::UuvError;

pub use fer::{design_dimensions, fer_csv_header, fer_csv_row, fer_experiment, fer_trial, FerConfig, FerRecord};
pub use format::format_g;
pub use monte_carlo::{expectation_monte_carlo, sample_norm2, Estimate};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AnalysisError {
    #[error("crossover probability {0} outside [0, 1)")]
    InvalidCrossover(f64),
    #[error("need at least {min} samples, got {got}")]
    TooFewSamples { min: usize, got: usize },
    #[error("need at least one trial")]
    NoTrials,
    #[error("unknown channel label {0:?}")]
    UnknownLabel(String),
    #[error(transparent)]
    Galois(#[from] GaloisError),
    #[error(transparent)]
    Channel(#[from] ChannelError),
    #[error(transparent)]
    Code(#[from] UuvError),
}

/// Node of the channel tree: `Π`, its depth-1 children `Π × Π` (U) and
/// `Π ⊕ Π` (V), and the depth-2 grandchildren `Π1 × Π1`, `Π1 ⊕ Π1`,
/// `Π2 × Π2`, `Π2 ⊕ Π2` with `Π1 = Π × Π`, `Π2 = Π ⊕ Π`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ChannelLabel {
    Base,
    U,
    V,
    U1,
    V1,
    U2,
    V2,
}

impl ChannelLabel {
    pub const ALL: [ChannelLabel; 7] = [
        ChannelLabel::Base,
        ChannelLabel::U,
        ChannelLabel::V,
        ChannelLabel::U1,
        ChannelLabel::V1,
        ChannelLabel::U2,
        ChannelLabel::V2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ChannelLabel::Base => "BASE",
            ChannelLabel::U => "U",
            ChannelLabel::V => "V",
            ChannelLabel::U1 => "U1",
            ChannelLabel::V1 => "V1",
            ChannelLabel::U2 => "U2",
            ChannelLabel::V2 => "V2",
        }
    }
}

impl fmt::Display for ChannelLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ChannelLabel {
    type Err = AnalysisError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ChannelLabel::ALL
            .into_iter()
            .find(|l| l.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| AnalysisError::UnknownLabel(s.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClosedForm<T> {
    pub paper: T,
    pub derived: T,
}

fn c<T: Probability>(v: i64) -> T {
    T::from_i64(v).unwrap()
}

/// `p' = 2p - p²`, the crossover of `Π ⊕ Π` seen as a q-SC.
pub fn sum_crossover<T: Probability>(p: &T) -> T {
    c::<T>(2) * p.clone() - p.clone() * p.clone()
}

/// Closed-form large-q expectation for `label`.
pub fn expectation_paper<T: Probability>(label: ChannelLabel, p: &T) -> T {
    let one = T::one();
    let q1 = one.clone() - p.clone();
    match label {
        ChannelLabel::Base => powi(&q1, 2),
        ChannelLabel::U => {
            (p.clone() + c(2)) * powi(&(p.clone() - one), 2) / (c::<T>(2) - p.clone())
        }
        ChannelLabel::V => powi(&q1, 4),
        ChannelLabel::U1 => {
            let num = c::<T>(5) * powi(p, 3)
                - c::<T>(6) * powi(p, 2)
                - c::<T>(5) * p.clone()
                - c(4);
            num * powi(&q1, 2) / (c::<T>(4) - c::<T>(3) * p.clone())
        }
        ChannelLabel::V1 => {
            let num = c::<T>(2) + c::<T>(3) * p.clone() + c::<T>(8) * powi(p, 2)
                - c::<T>(4) * powi(p, 3);
            powi(&q1, 4) * num / (c::<T>(2) - p.clone())
        }
        ChannelLabel::U2 => {
            let pp = sum_crossover(p);
            (c::<T>(2) + pp.clone()) * powi(&(one - pp.clone()), 2) / (c::<T>(2) - pp)
        }
        ChannelLabel::V2 => powi(&q1, 8),
    }
}

/// Case-sum expectation for `label`.
pub fn expectation_derived<T: Probability>(label: ChannelLabel, p: &T) -> T {
    let d1 = cases::depth1_cases();
    let d2 = cases::depth2_cases();
    match label {
        ChannelLabel::Base => powi(&(T::one() - p.clone()), 2),
        ChannelLabel::U => cases::case_sum(&d1, p, cases::product_limit_norm2),
        ChannelLabel::V => cases::case_sum(&d1, p, cases::sum_limit_norm2),
        ChannelLabel::U1 => cases::case_sum(&d2, p, cases::product_product_limit_norm2),
        ChannelLabel::V1 => cases::case_sum(&d2, p, cases::product_sum_limit_norm2),
        ChannelLabel::U2 => cases::case_sum(&d1, &sum_crossover(p), cases::product_limit_norm2),
        ChannelLabel::V2 => cases::case_sum(&d1, &sum_crossover(p), cases::sum_limit_norm2),
    }
}

pub fn expectation_closed_form<T: Probability>(label: ChannelLabel, p: &T) -> ClosedForm<T> {
    ClosedForm {
        paper: expectation_paper(label, p),
        derived: expectation_derived(label, p),
    }
}

/// Depth-1 threshold polynomial: `(p³ - 4p² + 4p - 4)(1 - p)² / (2(p - 2))`.
pub fn uv1_proposition<T: Probability>(p: &T) -> T {
    let num = powi(p, 3) - c::<T>(4) * powi(p, 2) + c::<T>(4) * p.clone() - c(4);
    num * powi(&(T::one() - p.clone()), 2) / (c::<T>(2) * (p.clone() - c(2)))
}

/// Depth-2 threshold polynomial: the degree-10 numerator times `(p - 1)²`
/// over `4(p² - 2p + 2)(3p - 4)(p - 2)`.
pub fn uv2_proposition<T: Probability>(p: &T) -> T {
    const NUM: [i64; 11] = [64, -208, 568, -1272, 1970, -2016, 1376, -628, 187, -34, 3];
    let num = cases::IntPoly::new(NUM.to_vec()).eval(p);
    let den = c::<T>(4)
        * (powi(p, 2) - c::<T>(2) * p.clone() + c(2))
        * (c::<T>(3) * p.clone() - c(4))
        * (p.clone() - c(2));
    num * powi(&(p.clone() - T::one()), 2) / den
}

/// Rates below which the constructions decode with probability `1 - o(1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ThresholdPoint<T = f64> {
    pub p: T,
    /// Guruswami-Sudan on the whole code, `(1 - p)²`.
    pub gs: T,
    /// Depth 1, mean of the U and V expectations.
    pub uv1: T,
    /// Depth 2, closed-form polynomial.
    pub uv2_paper: T,
    /// Depth 2, mean of the four case-sum expectations.
    pub uv2_derived: T,
}

pub fn threshold_point<T: Probability>(p: T) -> ThresholdPoint<T> {
    let two = c::<T>(2);
    let four = c::<T>(4);
    let uv1 = (expectation_paper(ChannelLabel::U, &p) + expectation_paper(ChannelLabel::V, &p)) / two;
    let uv2_derived = [ChannelLabel::U1, ChannelLabel::V1, ChannelLabel::U2, ChannelLabel::V2]
        .into_iter()
        .fold(T::zero(), |acc, l| acc + expectation_derived(l, &p))
        / four;
    ThresholdPoint {
        gs: powi(&(T::one() - p.clone()), 2),
        uv1,
        uv2_paper: uv2_proposition(&p),
        uv2_derived,
        p,
    }
}

pub fn threshold_curve<T: Probability>(grid: &[T]) -> Vec<ThresholdPoint<T>> {
    grid.iter().cloned().map(threshold_point).collect()
}

/// `steps` equally spaced points from `p_min` to `p_max` inclusive.
pub fn linear_grid(p_min: f64, p_max: f64, steps: usize) -> Vec<f64> {
    match steps {
        0 => Vec::new(),
        1 => vec![p_min],
        _ => (0..steps)
            .map(|i| p_min + (p_max - p_min) * i as f64 / (steps - 1) as f64)
            .collect(),
    }
}

/// `0.00, 0.01, ..., 0.95`.
pub fn default_grid() -> Vec<f64> {
    (0..=95).map(|i| i as f64 / 100.0).collect()
}

/// Root of `f` in `[lo, hi]` by bisection to width `tol`; `None` without a
/// sign change.
pub fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> Option<f64> {
    let mut flo = f(lo);
    if flo == 0.0 {
        return Some(lo);
    }
    if flo.signum() == f(hi).signum() {
        return None;
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if fm == 0.0 {
            return Some(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}

/// Crossover of two threshold curves with the rate there.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Crossover {
    pub p: f64,
    pub rate: f64,
}

/// Where the depth-1 threshold overtakes `(1 - p)²`.
pub fn uv1_gs_crossover() -> Crossover {
    let f = |p: f64| {
        let t = threshold_point(p);
        t.uv1 - t.gs
    };
    let p = bisect(f, 0.3, 0.95, 1e-10).expect("sign change on [0.3, 0.95]");
    Crossover {
        p,
        rate: (1.0 - p) * (1.0 - p),
    }
}

/// Where a depth-2 threshold overtakes `(1 - p)²`, scanning `[0.05, 0.95]`.
pub fn uv2_gs_crossover(derived: bool) -> Option<Crossover> {
    let f = |p: f64| {
        let t = threshold_point(p);
        (if derived { t.uv2_derived } else { t.uv2_paper }) - t.gs
    };
    scan_root(f, 0.05, 0.95).map(|p| Crossover {
        p,
        rate: (1.0 - p) * (1.0 - p),
    })
}

/// First sign change of `f` on a 0.01 grid, refined by bisection.
pub fn scan_root(f: impl Fn(f64) -> f64, lo: f64, hi: f64) -> Option<f64> {
    let grid = linear_grid(lo, hi, ((hi - lo) / 0.01).round() as usize + 1);
    grid.windows(2)
        .find(|w| f(w[0]).signum() != f(w[1]).signum())
        .and_then(|w| bisect(&f, w[0], w[1], 1e-10))
}

pub fn threshold_csv_header() -> &'static str {
    "p,gs,uv1,uv2_paper,uv2_derived"
}

/// Header plus one row per point, LF line endings.
pub fn threshold_csv(points: &[ThresholdPoint<f64>]) -> String {
    let mut out = String::from(threshold_csv_header());
    out.push('\n');
    for t in points {
        let row = [t.p, t.gs, t.uv1, t.uv2_paper, t.uv2_derived]
            .map(|x| format_g(x, 12))
            .join(",");
        out.push_str(&row);
        out.push('\n');
    }
    out
}
