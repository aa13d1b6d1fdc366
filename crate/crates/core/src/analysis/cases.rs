//! Error-pattern cases for one coordinate of a depth-1 and a depth-2 plain
//! construction, with their occurrence probabilities as integer polynomials
//! in `p` and the squared norms of the limit (q -> infinity) columns.

use crate::scalar::{powi, Probability};

/// Polynomial in `p` with integer coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPoly(Vec<i64>);

impl IntPoly {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        IntPoly(coeffs)
    }

    pub fn constant(c: i64) -> Self {
        Self::new(vec![c])
    }

    /// `c p^a (1 - p)^b`.
    pub fn term(c: i64, a: usize, b: usize) -> Self {
        let mut out = IntPoly::constant(c);
        for _ in 0..a {
            out = out.mul(&IntPoly::new(vec![0, 1]));
        }
        for _ in 0..b {
            out = out.mul(&IntPoly::new(vec![1, -1]));
        }
        out
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let n = self.0.len().max(other.0.len());
        IntPoly::new(
            (0..n)
                .map(|i| self.0.get(i).unwrap_or(&0) + other.0.get(i).unwrap_or(&0))
                .collect(),
        )
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.0.is_empty() || other.0.is_empty() {
            return IntPoly(Vec::new());
        }
        let mut out = vec![0i64; self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    pub fn eval<T: Probability>(&self, p: &T) -> T {
        self.0
            .iter()
            .rev()
            .fold(T::zero(), |acc, &c| acc * p.clone() + T::from_i64(c).unwrap())
    }
}

/// One row of a case table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Case {
    pub id: u8,
    /// Number of corrupted received symbols in the coordinate.
    pub errors: u8,
    pub probability: IntPoly,
}

/// Depth 1, symbols `(y1, y2)`: no error, one error, two errors.
pub fn depth1_cases() -> Vec<Case> {
    vec![
        Case { id: 1, errors: 0, probability: IntPoly::term(1, 0, 2) },
        Case { id: 2, errors: 1, probability: IntPoly::term(2, 1, 1) },
        Case { id: 3, errors: 2, probability: IntPoly::term(1, 2, 0) },
    ]
}

/// Depth 2, symbols `(y1, y2, y3, y4)` grouped into the pairs feeding the
/// two first-level product columns. Case 6 is both errors inside one pair,
/// case 7 one error in each pair.
pub fn depth2_cases() -> Vec<Case> {
    vec![
        Case { id: 4, errors: 0, probability: IntPoly::term(1, 0, 4) },
        Case { id: 5, errors: 1, probability: IntPoly::term(4, 1, 3) },
        Case { id: 6, errors: 2, probability: IntPoly::term(2, 2, 2) },
        Case { id: 7, errors: 2, probability: IntPoly::term(4, 2, 2) },
        Case { id: 8, errors: 3, probability: IntPoly::term(4, 3, 1) },
        Case { id: 9, errors: 4, probability: IntPoly::term(1, 4, 0) },
    ]
}

/// Sum of the case probabilities of a table.
pub fn total_probability(cases: &[Case]) -> IntPoly {
    cases
        .iter()
        .fold(IntPoly::constant(0), |acc, c| acc.add(&c.probability))
}

/// `(1 - p) / (2 - p)`, the peak height of a two-peak limit column.
fn two_peak<T: Probability>(p: &T) -> T {
    (T::one() - p.clone()) / (T::from_i64(2).unwrap() - p.clone())
}

/// Limit `‖π‖²` of the product column `Π × Π` per depth-1 case.
pub fn product_limit_norm2<T: Probability>(case: u8, p: &T) -> T {
    let a = two_peak(p);
    match case {
        1 => T::one(),
        _ => T::from_i64(2).unwrap() * a.clone() * a,
    }
}

/// Limit `‖π‖²` of the sum column `Π ⊕ Π` per depth-1 case: a single peak of
/// mass `(1 - p)²` wherever it lands.
pub fn sum_limit_norm2<T: Probability>(_case: u8, p: &T) -> T {
    powi(&(T::one() - p.clone()), 4)
}

/// Limit `‖π‖²` of `Π1 × Π1` per depth-2 case, `Π1 = Π × Π`.
pub fn product_product_limit_norm2<T: Probability>(case: u8, p: &T) -> T {
    match case {
        4..=7 => T::one(),
        _ => {
            // four peaks of (1 - p) / (4 - 3p)
            let b = (T::one() - p.clone())
                / (T::from_i64(4).unwrap() - T::from_i64(3).unwrap() * p.clone());
            T::from_i64(4).unwrap() * b.clone() * b
        }
    }
}

/// Limit `‖π‖²` of `Π1 ⊕ Π1` per depth-2 case.
pub fn product_sum_limit_norm2<T: Probability>(case: u8, p: &T) -> T {
    let a = two_peak(p);
    let a2 = a.clone() * a;
    match case {
        4 => T::one(),
        5 | 6 => T::from_i64(2).unwrap() * a2,
        _ => T::from_i64(4).unwrap() * a2.clone() * a2,
    }
}

/// `Σ_case prob(case) · norm2(case)`.
pub fn case_sum<T: Probability>(cases: &[Case], p: &T, norm2: impl Fn(u8, &T) -> T) -> T {
    cases.iter().fold(T::zero(), |acc, c| {
        acc + c.probability.eval(p) * norm2(c.id, p)
    })
}
