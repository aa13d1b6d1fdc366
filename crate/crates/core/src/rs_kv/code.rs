use std::sync::Arc;

use super::RsError;
use crate::galois::{Elem, FieldContext, Matrix, Poly};

/// `[n, k, n - k + 1]_q` Reed-Solomon code: evaluations of polynomials of
/// degree `< k` at `n` distinct points.
#[derive(Clone, Debug, PartialEq)]
pub struct RSCode {
    field: Arc<FieldContext>,
    points: Vec<Elem>,
    k: usize,
}

impl RSCode {
    /// Evaluation points are the first `n` elements of the field.
    pub fn new(field: Arc<FieldContext>, n: usize, k: usize) -> Result<Self, RsError> {
        if n > field.size() {
            return Err(RsError::InvalidParameters { n, k, q: field.q() });
        }
        let points = (0..n).map(|i| Elem(i as u16)).collect();
        Self::with_points(field, points, k)
    }

    pub fn with_points(
        field: Arc<FieldContext>,
        points: Vec<Elem>,
        k: usize,
    ) -> Result<Self, RsError> {
        let n = points.len();
        if n == 0 || k == 0 || k > n || points.iter().any(|p| p.index() >= field.size()) {
            return Err(RsError::InvalidParameters { n, k, q: field.q() });
        }
        let mut sorted = points.clone();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(RsError::Galois(
                crate::galois::GaloisError::DuplicateEvaluationPoint(w[0]),
            ));
        }
        Ok(RSCode { field, points, k })
    }

    pub fn field(&self) -> &FieldContext {
        &self.field
    }

    pub fn field_arc(&self) -> &Arc<FieldContext> {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn points(&self) -> &[Elem] {
        &self.points
    }

    pub fn rate(&self) -> f64 {
        self.k as f64 / self.n() as f64
    }

    pub fn min_distance(&self) -> usize {
        self.n() - self.k + 1
    }

    /// Evaluates the message polynomial (coefficients lowest first) at every point.
    pub fn encode(&self, message: &[Elem]) -> Result<Vec<Elem>, RsError> {
        if message.len() != self.k {
            return Err(RsError::LengthMismatch {
                expected: self.k,
                got: message.len(),
            });
        }
        Ok(self.encode_poly(&Poly::from_coeffs(message.to_vec())))
    }

    pub fn encode_poly(&self, f: &Poly) -> Vec<Elem> {
        f.eval_many(&self.field, &self.points)
    }

    /// `G[j][i] = x_i^j`.
    pub fn generator_matrix(&self) -> Matrix {
        let f = &self.field;
        let mut g = Matrix::zeros(self.k, self.n());
        for (i, &x) in self.points.iter().enumerate() {
            let mut v = Elem::ONE;
            for j in 0..self.k {
                g.set(j, i, v);
                v = f.mul(v, x);
            }
        }
        g
    }

    pub fn parity_check_matrix(&self) -> Matrix {
        self.generator_matrix().nullspace(&self.field)
    }

    /// Message of a codeword, or `None` if `word` is not in the code.
    pub fn message_of(&self, word: &[Elem]) -> Option<Vec<Elem>> {
        if word.len() != self.n() {
            return None;
        }
        let pts: Vec<(Elem, Elem)> = self
            .points
            .iter()
            .zip(word)
            .take(self.k)
            .map(|(&x, &y)| (x, y))
            .collect();
        let f = Poly::interpolate(&self.field, &pts).ok()?;
        (self.encode_poly(&f) == word).then(|| f.padded(self.k))
    }
}
