//! Discrete memoryless channel models and reliability matrices.
//!
//! A reliability column holds, for one coordinate, the posterior probability
//! of every field element given what was received. The q-ary symmetric
//! channel produces columns with one peak of `1 - p` and `p / (q - 1)`
//! everywhere else. Decoding a (U|U+V) code combines the columns of the two
//! halves with the sum transform (the channel seen by the V decoder) and the
//! product transform (the channel seen by the U decoder).

mod sparse;
mod transform;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::galois::Elem;
use crate::scalar::Probability;

pub use sparse::SparseColumn;
pub use transform::{
    column_stats, reliability_affine_remap, reliability_product, reliability_sum, ColumnStats,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ChannelError {
    #[error("column is not a probability vector")]
    NotStochastic,
    #[error("alphabet size mismatch ({0} vs {1})")]
    SizeMismatch(usize, usize),
    #[error("product of columns with disjoint supports")]
    ZeroDenominator,
    #[error("remap scale must be nonzero")]
    ZeroScale,
    #[error("crossover probability {0} outside [0, 1)")]
    InvalidCrossover(f64),
}

/// Posterior distribution of one code symbol, indexed by field element.
#[derive(Clone, Debug, PartialEq)]
pub struct ReliabilityColumn<T> {
    probs: Vec<T>,
}

impl<T: Probability> ReliabilityColumn<T> {
    /// Validates that entries lie in [0, 1] and sum to one within `T::tolerance()`.
    pub fn new(probs: Vec<T>) -> Result<Self, ChannelError> {
        let (zero, one) = (T::zero(), T::one());
        if probs.is_empty() || probs.iter().any(|p| *p < zero || *p > one) {
            return Err(ChannelError::NotStochastic);
        }
        let sum = probs.iter().cloned().fold(T::zero(), |a, b| a + b);
        if sum.abs_diff(&one) > T::tolerance() {
            return Err(ChannelError::NotStochastic);
        }
        Ok(ReliabilityColumn { probs })
    }

    pub(crate) fn from_raw(probs: Vec<T>) -> Self {
        ReliabilityColumn { probs }
    }

    /// All mass on `at`.
    pub fn hard(q: usize, at: Elem) -> Self {
        let mut probs = vec![T::zero(); q];
        probs[at.index()] = T::one();
        ReliabilityColumn { probs }
    }

    pub fn uniform(q: usize) -> Self {
        let v = T::one() / T::from_usize_lossy(q);
        ReliabilityColumn { probs: vec![v; q] }
    }

    pub fn q(&self) -> usize {
        self.probs.len()
    }

    pub fn probs(&self) -> &[T] {
        &self.probs
    }

    #[inline]
    pub fn get(&self, a: Elem) -> &T {
        &self.probs[a.index()]
    }

    pub fn sum(&self) -> T {
        self.probs.iter().cloned().fold(T::zero(), |a, b| a + b)
    }

    /// Rescales so the entries sum to one; leaves an all-zero column untouched.
    pub fn normalize(&mut self) {
        let s = self.sum();
        if s.is_zero() {
            return;
        }
        for p in &mut self.probs {
            *p = p.clone() / s.clone();
        }
    }

    pub fn norm2(&self) -> T {
        self.probs
            .iter()
            .fold(T::zero(), |acc, p| acc + p.clone() * p.clone())
    }
}

/// q x n matrix of reliability columns, one per code coordinate.
#[derive(Clone, Debug, PartialEq)]
pub struct ReliabilityMatrix<T> {
    q: usize,
    columns: Vec<ReliabilityColumn<T>>,
}

impl<T: Probability> ReliabilityMatrix<T> {
    pub fn new(columns: Vec<ReliabilityColumn<T>>) -> Result<Self, ChannelError> {
        let q = columns.first().map_or(0, ReliabilityColumn::q);
        if let Some(bad) = columns.iter().find(|c| c.q() != q) {
            return Err(ChannelError::SizeMismatch(q, bad.q()));
        }
        Ok(ReliabilityMatrix { q, columns })
    }

    /// Indicator matrix of a word (hard columns).
    pub fn hard(q: usize, word: &[Elem]) -> Self {
        ReliabilityMatrix {
            q,
            columns: word.iter().map(|&a| ReliabilityColumn::hard(q, a)).collect(),
        }
    }

    pub fn uniform(q: usize, n: usize) -> Self {
        ReliabilityMatrix {
            q,
            columns: vec![ReliabilityColumn::uniform(q); n],
        }
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn n(&self) -> usize {
        self.columns.len()
    }

    pub fn columns(&self) -> &[ReliabilityColumn<T>] {
        &self.columns
    }

    pub fn column(&self, i: usize) -> &ReliabilityColumn<T> {
        &self.columns[i]
    }

    #[inline]
    pub fn entry(&self, row: Elem, col: usize) -> &T {
        self.columns[col].get(row)
    }

    /// Splits into the left and right halves of a length-2n word.
    pub fn split_halves(&self) -> (Self, Self) {
        let half = self.n() / 2;
        let (l, r) = self.columns.split_at(half);
        (
            ReliabilityMatrix {
                q: self.q,
                columns: l.to_vec(),
            },
            ReliabilityMatrix {
                q: self.q,
                columns: r.to_vec(),
            },
        )
    }

    /// `<Pi, floor(c)>`: total probability placed on the symbols of `word`.
    pub fn inner_with_word(&self, word: &[Elem]) -> T {
        self.columns
            .iter()
            .zip(word)
            .fold(T::zero(), |acc, (col, &a)| acc + col.get(a).clone())
    }

    /// `<Pi, Pi>`.
    pub fn inner_self(&self) -> T {
        self.columns
            .iter()
            .fold(T::zero(), |acc, col| acc + col.norm2())
    }

    /// Argmax symbol of every column, lowest index on ties.
    pub fn hard_decision(&self) -> Vec<Elem> {
        self.columns.iter().map(|c| column_stats(c).top).collect()
    }
}

impl<T: Probability> FromIterator<ReliabilityColumn<T>> for ReliabilityMatrix<T> {
    /// Panics if the columns have different alphabet sizes.
    fn from_iter<I: IntoIterator<Item = ReliabilityColumn<T>>>(iter: I) -> Self {
        ReliabilityMatrix::new(iter.into_iter().collect()).expect("columns share one alphabet")
    }
}

/// Parameters of the q-ary symmetric channel q-SC_p.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QscParams {
    p: f64,
    q: u32,
}

impl QscParams {
    pub fn new(p: f64, q: u32) -> Result<Self, ChannelError> {
        if !(0.0..1.0).contains(&p) || q < 2 {
            return Err(ChannelError::InvalidCrossover(p));
        }
        Ok(QscParams { p, q })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Posterior column for a received symbol: `1 - p` on it, `p / (q - 1)` elsewhere.
    pub fn column<T: Probability>(&self, received: Elem) -> ReliabilityColumn<T> {
        qsc_column(T::from_f64(self.p).unwrap(), self.q as usize, received)
    }

    pub fn matrix(&self, received: &[Elem]) -> ReliabilityMatrix<f64> {
        received.iter().map(|&y| self.column(y)).collect()
    }

    pub fn sparse_column(&self, received: Elem) -> SparseColumn<f64> {
        SparseColumn::qsc(self.p, self.q as usize, received)
    }

    /// Each symbol survives with probability `1 - p`, otherwise it is replaced
    /// by one of the other `q - 1` symbols uniformly.
    pub fn sample_with<R: Rng + ?Sized>(&self, word: &[Elem], rng: &mut R) -> Vec<Elem> {
        word.iter().map(|&x| self.corrupt(x, rng)).collect()
    }

    /// Deterministic in `seed`.
    pub fn sample(&self, word: &[Elem], seed: u64) -> Vec<Elem> {
        self.sample_with(word, &mut ChaCha8Rng::seed_from_u64(seed))
    }

    #[inline]
    pub fn corrupt<R: Rng + ?Sized>(&self, x: Elem, rng: &mut R) -> Elem {
        if self.p > 0.0 && rng.gen::<f64>() < self.p {
            random_other(x, self.q, rng)
        } else {
            x
        }
    }
}

/// Uniform element different from `x`.
pub fn random_other<R: Rng + ?Sized>(x: Elem, q: u32, rng: &mut R) -> Elem {
    let r = rng.gen_range(0..q - 1) as u16;
    Elem(if r >= x.0 { r + 1 } else { r })
}

/// q-SC posterior column with crossover `p` over an alphabet of size `q`.
pub fn qsc_column<T: Probability>(p: T, q: usize, received: Elem) -> ReliabilityColumn<T> {
    let off = p.clone() / T::from_usize_lossy(q - 1);
    let mut probs = vec![off; q];
    probs[received.index()] = T::one() - p;
    ReliabilityColumn { probs }
}

/// Per-trial RNG stream derived from a base seed and a trial index.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}
