use rand::Rng;

use super::UuvError;
use crate::galois::{Elem, FieldContext};

/// Diagonals of the blocks `D1..D4` of a nonsingular `2n x 2n` matrix
/// `D = [[D1, D3], [D2, D4]]`, acting as `(u D1 + v D2 | u D3 + v D4)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiagonalQuadruple {
    pub d1: Vec<Elem>,
    pub d2: Vec<Elem>,
    pub d3: Vec<Elem>,
    pub d4: Vec<Elem>,
}

impl DiagonalQuadruple {
    /// Checks equal lengths and `d1 d4 - d2 d3 != 0` at every coordinate.
    pub fn new(
        f: &FieldContext,
        d1: Vec<Elem>,
        d2: Vec<Elem>,
        d3: Vec<Elem>,
        d4: Vec<Elem>,
    ) -> Result<Self, UuvError> {
        let n = d1.len();
        for d in [&d2, &d3, &d4] {
            if d.len() != n {
                return Err(UuvError::LengthMismatch {
                    expected: n,
                    got: d.len(),
                });
            }
        }
        let q = DiagonalQuadruple { d1, d2, d3, d4 };
        if let Some(i) = (0..n).find(|&i| q.det(f, i).is_zero()) {
            return Err(UuvError::Singular(i));
        }
        Ok(q)
    }

    /// `D1 = D3 = D4 = I`, `D2 = 0`: the plain (u | u + v) code.
    pub fn identity(n: usize) -> Self {
        DiagonalQuadruple {
            d1: vec![Elem::ONE; n],
            d2: vec![Elem::ZERO; n],
            d3: vec![Elem::ONE; n],
            d4: vec![Elem::ONE; n],
        }
    }

    /// All four diagonals uniform over nonzero elements, singular
    /// coordinates resampled.
    pub fn random<R: Rng + ?Sized>(f: &FieldContext, n: usize, rng: &mut R) -> Self {
        let q = f.q();
        let mut nz = || Elem(rng.gen_range(1..q) as u16);
        let mut out = DiagonalQuadruple {
            d1: Vec::with_capacity(n),
            d2: Vec::with_capacity(n),
            d3: Vec::with_capacity(n),
            d4: Vec::with_capacity(n),
        };
        for _ in 0..n {
            loop {
                let (a, b, c, d) = (nz(), nz(), nz(), nz());
                if f.mul(a, d) != f.mul(b, c) {
                    out.d1.push(a);
                    out.d2.push(b);
                    out.d3.push(c);
                    out.d4.push(d);
                    break;
                }
            }
        }
        out
    }

    pub fn len(&self) -> usize {
        self.d1.len()
    }

    pub fn is_empty(&self) -> bool {
        self.d1.is_empty()
    }

    /// `d1(i) d4(i) - d2(i) d3(i)`.
    pub fn det(&self, f: &FieldContext, i: usize) -> Elem {
        f.sub(f.mul(self.d1[i], self.d4[i]), f.mul(self.d2[i], self.d3[i]))
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.len())
    }

    /// The decoder divides by `d1` and `d3`.
    pub fn check_decodable(&self) -> Result<(), UuvError> {
        match (0..self.len()).find(|&i| self.d1[i].is_zero() || self.d3[i].is_zero()) {
            Some(i) => Err(UuvError::Undecodable(i)),
            None => Ok(()),
        }
    }

    /// Quadruple `D'` with `[U^perp, V^perp]·D'` the dual of `[U, V]·D`:
    /// `D'1 = D4 / det`, `D'2 = -D3 / det`, `D'3 = -D2 / det`, `D'4 = D1 / det`.
    pub fn dual(&self, f: &FieldContext) -> Self {
        let n = self.len();
        let mut out = DiagonalQuadruple {
            d1: Vec::with_capacity(n),
            d2: Vec::with_capacity(n),
            d3: Vec::with_capacity(n),
            d4: Vec::with_capacity(n),
        };
        for i in 0..n {
            let inv = f.inv(self.det(f, i)).expect("quadruple is nonsingular");
            out.d1.push(f.mul(self.d4[i], inv));
            out.d2.push(f.neg(f.mul(self.d3[i], inv)));
            out.d3.push(f.neg(f.mul(self.d2[i], inv)));
            out.d4.push(f.mul(self.d1[i], inv));
        }
        out
    }

    /// `(u D1 + v D2 | u D3 + v D4)`.
    pub fn combine(&self, f: &FieldContext, u: &[Elem], v: &[Elem]) -> Vec<Elem> {
        let n = self.len();
        let mut out = Vec::with_capacity(2 * n);
        out.extend((0..n).map(|i| f.add(f.mul(u[i], self.d1[i]), f.mul(v[i], self.d2[i]))));
        out.extend((0..n).map(|i| f.add(f.mul(u[i], self.d3[i]), f.mul(v[i], self.d4[i]))));
        out
    }
}
