use super::{Elem, FieldContext, GaloisError};

/// Univariate polynomial over F_q, lowest degree first, trailing zeros trimmed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    coeffs: Vec<Elem>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Elem) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// The monomial `c * X^deg`.
    pub fn monomial(c: Elem, deg: usize) -> Self {
        let mut coeffs = vec![Elem::ZERO; deg + 1];
        coeffs[deg] = c;
        Poly::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<Elem>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    /// Coefficient of `X^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(Elem::ZERO)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficients padded (or truncated) to exactly `len` entries.
    pub fn padded(&self, len: usize) -> Vec<Elem> {
        let mut out = self.coeffs.clone();
        out.resize(len, Elem::ZERO);
        out
    }

    pub fn eval(&self, f: &FieldContext, x: Elem) -> Elem {
        self.coeffs
            .iter()
            .rev()
            .fold(Elem::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn eval_many(&self, f: &FieldContext, xs: &[Elem]) -> Vec<Elem> {
        xs.iter().map(|&x| self.eval(f, x)).collect()
    }

    pub fn add(&self, f: &FieldContext, other: &Poly) -> Poly {
        let len = self.coeffs.len().max(other.coeffs.len());
        Poly::from_coeffs(
            (0..len)
                .map(|i| f.add(self.coeff(i), other.coeff(i)))
                .collect(),
        )
    }

    pub fn sub(&self, f: &FieldContext, other: &Poly) -> Poly {
        let len = self.coeffs.len().max(other.coeffs.len());
        Poly::from_coeffs(
            (0..len)
                .map(|i| f.sub(self.coeff(i), other.coeff(i)))
                .collect(),
        )
    }

    pub fn scale(&self, f: &FieldContext, c: Elem) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn mul(&self, f: &FieldContext, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Elem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::from_coeffs(out)
    }

    /// The unique polynomial of degree < `points.len()` through `points`
    /// (Newton divided differences).
    pub fn interpolate(f: &FieldContext, points: &[(Elem, Elem)]) -> Result<Poly, GaloisError> {
        let n = points.len();
        for i in 0..n {
            for j in 0..i {
                if points[i].0 == points[j].0 {
                    return Err(GaloisError::DuplicateEvaluationPoint(points[i].0));
                }
            }
        }
        let xs: Vec<Elem> = points.iter().map(|p| p.0).collect();
        let mut table: Vec<Elem> = points.iter().map(|p| p.1).collect();
        for level in 1..n {
            for i in (level..n).rev() {
                let num = f.sub(table[i], table[i - 1]);
                let den = f.sub(xs[i], xs[i - level]);
                table[i] = f.div(num, den)?;
            }
        }
        // Horner on the Newton form
        let mut acc = Poly::zero();
        for i in (0..n).rev() {
            let shift = Poly::from_coeffs(vec![f.neg(xs[i]), Elem::ONE]);
            acc = acc.mul(f, &shift).add(f, &Poly::constant(table[i]));
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn constant_through_two_points() {
        let f = FieldContext::new(7).unwrap();
        let p = Poly::interpolate(&f, &[(Elem(0), Elem(5)), (Elem(1), Elem(5))]).unwrap();
        assert_eq!(p, Poly::constant(Elem(5)));
    }

    // Vandermonde solve by hand: 2X through (1,2), (2,4), (3,6) over F_7.
    #[test]
    fn line_through_three_points() {
        let f = FieldContext::new(7).unwrap();
        let pts = [(Elem(1), Elem(2)), (Elem(2), Elem(4)), (Elem(3), Elem(6))];
        let p = Poly::interpolate(&f, &pts).unwrap();
        assert_eq!(p.coeffs(), &[Elem(0), Elem(2)]);
        assert_eq!(p.degree(), Some(1));
    }

    #[test]
    fn duplicate_points_rejected() {
        let f = FieldContext::new(8).unwrap();
        let pts = [(Elem(3), Elem(1)), (Elem(3), Elem(2))];
        assert_eq!(
            Poly::interpolate(&f, &pts),
            Err(GaloisError::DuplicateEvaluationPoint(Elem(3)))
        );
    }

    #[test]
    fn zero_polynomial_has_no_degree() {
        assert_eq!(Poly::zero().degree(), None);
        assert_eq!(Poly::from_coeffs(vec![Elem(0), Elem(0)]), Poly::zero());
    }

    proptest! {
        #[test]
        fn interp_of_eval_is_identity(
            q in prop::sample::select(vec![7u32, 16, 25, 256]),
            raw in prop::collection::vec(any::<u16>(), 1..12),
        ) {
            let f = FieldContext::new(q).unwrap();
            let coeffs: Vec<Elem> = raw.iter().map(|&c| Elem(c % q as u16)).collect();
            let k = coeffs.len().min(q as usize);
            let poly = Poly::from_coeffs(coeffs[..k].to_vec());
            let pts: Vec<(Elem, Elem)> = (0..k as u32)
                .map(|i| (Elem(i as u16), poly.eval(&f, Elem(i as u16))))
                .collect();
            prop_assert_eq!(Poly::interpolate(&f, &pts).unwrap(), poly);
        }

        #[test]
        fn field_axioms_on_samples(q in prop::sample::select(vec![4u32, 9, 11, 32, 125, 256, 4096]),
                                   a in any::<u16>(), b in any::<u16>(), c in any::<u16>()) {
            let f = FieldContext::new(q).unwrap();
            let (a, b, c) = (Elem(a % q as u16), Elem(b % q as u16), Elem(c % q as u16));
            prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
            prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
            prop_assert_eq!(f.add(a, b), f.add(b, a));
            prop_assert_eq!(f.mul(a, b), f.mul(b, a));
            prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        }
    }
}
