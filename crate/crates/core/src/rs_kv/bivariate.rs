use crate::galois::{Elem, FieldContext, Poly};

/// Polynomial in `X` and `Y`, stored as `Y`-coefficients `rows[b](X)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BivariatePoly {
    rows: Vec<Poly>,
}

impl BivariatePoly {
    pub fn zero() -> Self {
        BivariatePoly { rows: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_rows(vec![Poly::constant(Elem::ONE)])
    }

    pub fn from_rows(mut rows: Vec<Poly>) -> Self {
        while rows.last().is_some_and(Poly::is_zero) {
            rows.pop();
        }
        BivariatePoly { rows }
    }

    /// Sum of terms `c X^a Y^b`.
    pub fn from_terms(f: &FieldContext, terms: &[(usize, usize, Elem)]) -> Self {
        let ydeg = terms.iter().map(|t| t.1).max().map_or(0, |d| d + 1);
        let mut rows = vec![Poly::zero(); ydeg];
        for &(a, b, c) in terms {
            rows[b] = rows[b].add(f, &Poly::monomial(c, a));
        }
        Self::from_rows(rows)
    }

    /// `Y - g(X)`.
    pub fn y_minus(f: &FieldContext, g: &Poly) -> Self {
        Self::from_rows(vec![g.scale(f, f.neg(Elem::ONE)), Poly::constant(Elem::ONE)])
    }

    pub fn rows(&self) -> &[Poly] {
        &self.rows
    }

    pub fn coeff(&self, a: usize, b: usize) -> Elem {
        self.rows.get(b).map_or(Elem::ZERO, |r| r.coeff(a))
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn y_degree(&self) -> Option<usize> {
        self.rows.len().checked_sub(1)
    }

    /// Nonzero terms `(a, b, c)`.
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, Elem)> + '_ {
        self.rows.iter().enumerate().flat_map(|(b, row)| {
            row.coeffs()
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(move |(a, &c)| (a, b, c))
        })
    }

    /// Maximum of `a + b (k - 1)` over the terms.
    pub fn weighted_degree(&self, k: usize) -> Option<usize> {
        self.terms().map(|(a, b, _)| a + b * (k - 1)).max()
    }

    pub fn eval(&self, f: &FieldContext, x: Elem, y: Elem) -> Elem {
        self.rows
            .iter()
            .rev()
            .fold(Elem::ZERO, |acc, row| f.add(f.mul(acc, y), row.eval(f, x)))
    }

    /// `Q(X, g(X))`.
    pub fn compose(&self, f: &FieldContext, g: &Poly) -> Poly {
        self.rows
            .iter()
            .rev()
            .fold(Poly::zero(), |acc, row| acc.mul(f, g).add(f, row))
    }

    pub fn add(&self, f: &FieldContext, other: &Self) -> Self {
        let len = self.rows.len().max(other.rows.len());
        Self::from_rows(
            (0..len)
                .map(|b| {
                    let zero = Poly::zero();
                    let x = self.rows.get(b).unwrap_or(&zero);
                    let y = other.rows.get(b).unwrap_or(&zero);
                    x.add(f, y)
                })
                .collect(),
        )
    }

    pub fn mul(&self, f: &FieldContext, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut rows = vec![Poly::zero(); self.rows.len() + other.rows.len() - 1];
        for (i, a) in self.rows.iter().enumerate() {
            for (j, b) in other.rows.iter().enumerate() {
                rows[i + j] = rows[i + j].add(f, &a.mul(f, b));
            }
        }
        Self::from_rows(rows)
    }

    /// Hasse derivative `D_{a,b} Q` evaluated at `(x, y)`:
    /// `sum_{i,j} Q_{i,j} C(i,a) C(j,b) x^(i-a) y^(j-b)`.
    pub fn hasse(&self, f: &FieldContext, a: usize, b: usize, x: Elem, y: Elem) -> Elem {
        let p = f.characteristic();
        let mut acc = Elem::ZERO;
        for (i, j, c) in self.terms() {
            if i < a || j < b {
                continue;
            }
            let binom = binomial_mod_p(i as u64, a as u64, p) * binomial_mod_p(j as u64, b as u64, p)
                % p as u64;
            if binom == 0 {
                continue;
            }
            let term = f.mul(
                f.mul(c, f.from_int(binom)),
                f.mul(f.pow(x, (i - a) as u64), f.pow(y, (j - b) as u64)),
            );
            acc = f.add(acc, term);
        }
        acc
    }
}

/// `C(n, r) mod p` for prime `p` (Lucas).
pub fn binomial_mod_p(mut n: u64, mut r: u64, p: u32) -> u64 {
    let p = p as u64;
    let mut out = 1u64;
    while r > 0 {
        let (ni, ri) = (n % p, r % p);
        if ri > ni {
            return 0;
        }
        out = out * small_binomial(ni, ri, p) % p;
        n /= p;
        r /= p;
    }
    out
}

fn small_binomial(n: u64, r: u64, p: u64) -> u64 {
    let r = r.min(n - r);
    let (mut num, mut den) = (1u64, 1u64);
    for i in 0..r {
        num = num * ((n - i) % p) % p;
        den = den * ((i + 1) % p) % p;
    }
    num * mod_pow(den, p - 2, p) % p
}

fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut out = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            out = out * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    out
}
