use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use crate::channel::ReliabilityMatrix;
use crate::galois::Elem;
use crate::scalar::Probability;

/// Interpolation multiplicities `m[alpha][i]`, one per (symbol, coordinate).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicityMatrix {
    q: usize,
    n: usize,
    m: Vec<u32>,
}

impl MultiplicityMatrix {
    pub fn zeros(q: usize, n: usize) -> Self {
        MultiplicityMatrix {
            q,
            n,
            m: vec![0; q * n],
        }
    }

    /// Multiplicity `mult` on every symbol of `word`: Guruswami-Sudan.
    pub fn uniform_hard(q: usize, word: &[Elem], mult: u32) -> Self {
        let mut out = Self::zeros(q, word.len());
        for (i, &a) in word.iter().enumerate() {
            out.set(a, i, mult);
        }
        out
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, row: Elem, col: usize) -> u32 {
        self.m[col * self.q + row.index()]
    }

    pub fn set(&mut self, row: Elem, col: usize, v: u32) {
        self.m[col * self.q + row.index()] = v;
    }

    /// Nonzero entries as `(column, symbol, multiplicity)`, column-major.
    pub fn entries(&self) -> impl Iterator<Item = (usize, Elem, u32)> + '_ {
        self.m
            .iter()
            .enumerate()
            .filter(|(_, &v)| v > 0)
            .map(|(idx, &v)| (idx / self.q, Elem((idx % self.q) as u16), v))
    }

    /// Number of linear constraints, `sum m (m + 1) / 2`.
    pub fn cost(&self) -> u64 {
        self.m.iter().map(|&v| v as u64 * (v as u64 + 1) / 2).sum()
    }

    /// Number of greedy increments, `sum m`.
    pub fn total(&self) -> u64 {
        self.m.iter().map(|&v| v as u64).sum()
    }

    pub fn max(&self) -> u32 {
        self.m.iter().copied().max().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.m.iter().all(|&v| v == 0)
    }

    /// `S_M(c) = sum_i m[c(i)][i]`.
    pub fn score(&self, word: &[Elem]) -> u64 {
        word.iter()
            .enumerate()
            .map(|(i, &a)| self.get(a, i) as u64)
            .sum()
    }
}

#[derive(PartialEq)]
struct Slot {
    ratio: f64,
    col: Reverse<usize>,
    row: Reverse<u16>,
}

impl Eq for Slot {}

impl PartialOrd for Slot {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Slot {
    fn cmp(&self, other: &Self) -> Ordering {
        self.ratio
            .total_cmp(&other.ratio)
            .then(self.col.cmp(&other.col))
            .then(self.row.cmp(&other.row))
    }
}

/// Greedy assignment: `s` times, increment the entry maximizing
/// `Pi[a][i] / (m[a][i] + 1)`, ties to the lower column then the lower row.
pub fn kv_multiplicity<T: Probability>(pi: &ReliabilityMatrix<T>, s: usize) -> MultiplicityMatrix {
    let mut out = MultiplicityMatrix::zeros(pi.q(), pi.n());
    let mut heap = BinaryHeap::new();
    for (i, col) in pi.columns().iter().enumerate() {
        for (a, p) in col.probs().iter().enumerate() {
            let ratio = p.to_f64_lossy();
            if ratio > 0.0 {
                heap.push(Slot {
                    ratio,
                    col: Reverse(i),
                    row: Reverse(a as u16),
                });
            }
        }
    }
    for _ in 0..s {
        let Some(top) = heap.pop() else { break };
        let (i, a) = (top.col.0, Elem(top.row.0));
        let m = out.get(a, i) + 1;
        out.set(a, i, m);
        heap.push(Slot {
            ratio: pi.entry(a, i).to_f64_lossy() / (m + 1) as f64,
            ..top
        });
    }
    out
}
