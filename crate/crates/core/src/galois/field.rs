use std::fmt;

use super::GaloisError;

/// An element of F_q, stored as its canonical index.
///
/// For q = p^m the index is the integer value of the coefficient vector of the
/// residue polynomial read in base p, so index 0 is the additive identity and
/// index 1 the multiplicative identity.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem(pub u16);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum AddKind {
    Binary,
    Prime,
    Digits,
}

/// Arithmetic context for F_q with 2 <= q <= 2^16.
///
/// Multiplication uses exp/log tables over a primitive element. Addition is
/// xor in characteristic 2, integer addition mod p for prime fields and
/// digit-wise addition otherwise. Immutable once built.
#[derive(Clone)]
pub struct FieldContext {
    q: u32,
    characteristic: u32,
    degree: u32,
    modulus: Option<Vec<u32>>,
    generator: Elem,
    add_kind: AddKind,
    exp: Vec<u16>,
    log: Vec<u32>,
}

impl fmt::Debug for FieldContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldContext")
            .field("q", &self.q)
            .field("characteristic", &self.characteristic)
            .field("modulus", &self.modulus)
            .field("generator", &self.generator)
            .finish()
    }
}

impl PartialEq for FieldContext {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q && self.modulus == other.modulus
    }
}

impl Eq for FieldContext {}

pub(crate) const MAX_Q: u32 = 1 << 16;

/// Returns (p, m) with q = p^m, or None if q is not a prime power.
pub(crate) fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q && q % p != 0 {
        p += 1;
    }
    if q % p != 0 {
        p = q;
    }
    let (mut rest, mut m) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        m += 1;
    }
    (rest == 1).then_some((p, m))
}

/// Digit-level helpers for F_p[x]/(f) used only while building tables.
struct Residues<'a> {
    p: u32,
    m: u32,
    // low coefficients c_0..c_{m-1} of the monic modulus
    low: &'a [u32],
}

impl Residues<'_> {
    fn digits(&self, mut a: u32) -> Vec<u32> {
        (0..self.m)
            .map(|_| {
                let d = a % self.p;
                a /= self.p;
                d
            })
            .collect()
    }

    fn index(&self, digits: &[u32]) -> u32 {
        digits.iter().rev().fold(0, |acc, &d| acc * self.p + d)
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        let (p, m) = (self.p as u64, self.m as usize);
        let (da, db) = (self.digits(a), self.digits(b));
        let mut prod = vec![0u64; 2 * m];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        // x^m = -(c_0 + ... + c_{m-1} x^{m-1})
        for top in (m..2 * m).rev() {
            let t = prod[top];
            if t == 0 {
                continue;
            }
            prod[top] = 0;
            for (j, &c) in self.low.iter().enumerate() {
                let sub = t * c as u64 % p;
                prod[top - m + j] = (prod[top - m + j] + p - sub) % p;
            }
        }
        let digits: Vec<u32> = prod[..m].iter().map(|&d| d as u32).collect();
        self.index(&digits)
    }

    fn mul_by_x(&self, a: u32) -> u32 {
        let high = self.p.pow(self.m - 1);
        let top = a / high;
        let mut shifted = (a % high) * self.p;
        if top == 0 {
            return shifted;
        }
        let mut out = 0;
        let mut place = 1;
        for &c in self.low {
            let d = shifted % self.p;
            shifted /= self.p;
            out += (d + self.p - top * c % self.p) % self.p * place;
            place *= self.p;
        }
        out
    }

    /// Multiplicative order of `g`, stopping early once it exceeds `limit`.
    fn order(&self, g: u32, limit: u32) -> u32 {
        let by_x = self.m > 1 && g == self.p;
        let mut acc = g;
        let mut k = 1;
        while acc != 1 {
            acc = if by_x { self.mul_by_x(acc) } else { self.mul(acc, g) };
            k += 1;
            if k > limit || acc == 0 {
                return 0;
            }
        }
        k
    }
}

/// Polynomials over F_p as coefficient vectors, lowest degree first.
fn poly_rem_mod_p(num: &[u32], den: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u64> = num.iter().map(|&c| c as u64).collect();
    let p = p as u64;
    let dd = den.len() - 1;
    let lead = *den.last().unwrap() as u64;
    let lead_inv = mod_pow(lead, p - 2, p);
    while r.len() > dd {
        let top = *r.last().unwrap();
        if top != 0 {
            let factor = top * lead_inv % p;
            let shift = r.len() - 1 - dd;
            for (j, &c) in den.iter().enumerate() {
                let sub = factor * c as u64 % p;
                r[shift + j] = (r[shift + j] + p - sub) % p;
            }
        }
        r.pop();
    }
    r.into_iter().map(|c| c as u32).collect()
}

fn mod_pow(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

/// Trial division by every monic polynomial of degree 1..=deg/2.
fn is_irreducible(modulus: &[u32], p: u32) -> bool {
    let m = modulus.len() - 1;
    for d in 1..=m / 2 {
        let count = (p as u64).pow(d as u32);
        for v in 0..count {
            let mut div = Vec::with_capacity(d + 1);
            let mut rest = v;
            for _ in 0..d {
                div.push((rest % p as u64) as u32);
                rest /= p as u64;
            }
            div.push(1);
            if poly_rem_mod_p(modulus, &div, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl FieldContext {
    /// Builds F_q with the canonical modulus: the monic primitive polynomial of
    /// degree m whose coefficient vector, read in base p, is smallest.
    pub fn new(q: u32) -> Result<Self, GaloisError> {
        let (p, m) = Self::check_q(q)?;
        if m == 1 {
            return Self::build(q, p, 1, None);
        }
        let low_count = p.pow(m);
        for v in 1..low_count {
            if v % p == 0 {
                continue;
            }
            let low: Vec<u32> = Residues { p, m, low: &[] }.digits(v);
            let res = Residues { p, m, low: &low };
            // x has index p
            if res.order(p, q - 1) == q - 1 {
                let mut modulus = low;
                modulus.push(1);
                return Self::build(q, p, m, Some(modulus));
            }
        }
        unreachable!("every finite field has a primitive polynomial")
    }

    /// Builds F_q from an explicit monic modulus, lowest coefficient first.
    pub fn with_modulus(q: u32, modulus: &[u32]) -> Result<Self, GaloisError> {
        let (p, m) = Self::check_q(q)?;
        let reducible = GaloisError::ReducibleModulus {
            characteristic: p,
            degree: m,
        };
        if modulus.len() != m as usize + 1
            || *modulus.last().unwrap() != 1
            || modulus.iter().any(|&c| c >= p)
        {
            return Err(reducible);
        }
        if m == 1 {
            return Self::build(q, p, 1, None);
        }
        if !is_irreducible(modulus, p) {
            return Err(reducible);
        }
        Self::build(q, p, m, Some(modulus.to_vec()))
    }

    fn check_q(q: u32) -> Result<(u32, u32), GaloisError> {
        if q > MAX_Q {
            return Err(GaloisError::NotPrimePower(q));
        }
        prime_power(q).ok_or(GaloisError::NotPrimePower(q))
    }

    fn build(q: u32, p: u32, m: u32, modulus: Option<Vec<u32>>) -> Result<Self, GaloisError> {
        let low: Vec<u32> = match &modulus {
            Some(f) => f[..m as usize].to_vec(),
            // F_p as F_p[x]/(x): x^1 = 0
            None => vec![0],
        };
        let res = Residues { p, m, low: &low };
        let generator = if q == 2 {
            1
        } else {
            (2..q)
                .find(|&g| res.order(g, q - 1) == q - 1)
                .expect("multiplicative group is cyclic")
        };
        let order = (q - 1) as usize;
        let mut exp = vec![0u16; 2 * order.max(1)];
        let mut log = vec![u32::MAX; q as usize];
        let mut acc = 1u32;
        for i in 0..order {
            exp[i] = acc as u16;
            log[acc as usize] = i as u32;
            acc = res.mul(acc, generator);
        }
        for i in order..2 * order {
            exp[i] = exp[i - order];
        }
        let add_kind = match (p, m) {
            (2, _) => AddKind::Binary,
            (_, 1) => AddKind::Prime,
            _ => AddKind::Digits,
        };
        Ok(FieldContext {
            q,
            characteristic: p,
            degree: m,
            modulus,
            generator: Elem(generator as u16),
            add_kind,
            exp,
            log,
        })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn size(&self) -> usize {
        self.q as usize
    }

    pub fn characteristic(&self) -> u32 {
        self.characteristic
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// The defining polynomial (monic, lowest coefficient first), `None` for prime fields.
    pub fn modulus(&self) -> Option<&[u32]> {
        self.modulus.as_deref()
    }

    /// The primitive element the log tables are built on.
    pub fn generator(&self) -> Elem {
        self.generator
    }

    /// Checked conversion from an index.
    pub fn elem(&self, index: u32) -> Option<Elem> {
        (index < self.q).then_some(Elem(index as u16))
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.q).map(|i| Elem(i as u16))
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        match self.add_kind {
            AddKind::Binary => Elem(a.0 ^ b.0),
            AddKind::Prime => {
                let s = a.0 as u32 + b.0 as u32;
                Elem(if s >= self.q { s - self.q } else { s } as u16)
            }
            AddKind::Digits => self.digitwise(a, b, |x, y, p| (x + y) % p),
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        match self.add_kind {
            AddKind::Binary => a,
            AddKind::Prime => Elem(if a.0 == 0 { 0 } else { self.q as u16 - a.0 }),
            AddKind::Digits => self.digitwise(Elem::ZERO, a, |_, y, p| (p - y) % p),
        }
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        match self.add_kind {
            AddKind::Binary => Elem(a.0 ^ b.0),
            AddKind::Prime => Elem(if a.0 >= b.0 {
                a.0 - b.0
            } else {
                (a.0 as u32 + self.q - b.0 as u32) as u16
            }),
            AddKind::Digits => self.digitwise(a, b, |x, y, p| (x + p - y) % p),
        }
    }

    fn digitwise(&self, a: Elem, b: Elem, op: impl Fn(u32, u32, u32) -> u32) -> Elem {
        let p = self.characteristic;
        let (mut x, mut y) = (a.0 as u32, b.0 as u32);
        let (mut out, mut place) = (0u32, 1u32);
        for _ in 0..self.degree {
            out += op(x % p, y % p, p) * place;
            x /= p;
            y /= p;
            place *= p;
        }
        Elem(out as u16)
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem::ZERO;
        }
        let s = self.log[a.index()] + self.log[b.index()];
        Elem(self.exp[s as usize])
    }

    /// `dst[i] += c * src[i]` over the common prefix.
    #[inline]
    pub fn axpy(&self, dst: &mut [Elem], c: Elem, src: &[Elem]) {
        if c.is_zero() {
            return;
        }
        let lc = self.log[c.index()] as usize;
        let (exp, log) = (&self.exp[lc..], &self.log[..]);
        if self.add_kind == AddKind::Binary {
            for (d, &s) in dst.iter_mut().zip(src) {
                if s.0 != 0 {
                    d.0 ^= exp[log[s.index()] as usize];
                }
            }
            return;
        }
        for (d, &s) in dst.iter_mut().zip(src) {
            if s.0 != 0 {
                *d = self.add(*d, Elem(exp[log[s.index()] as usize]));
            }
        }
    }

    pub fn inv(&self, a: Elem) -> Result<Elem, GaloisError> {
        if a.is_zero() {
            return Err(GaloisError::DivisionByZero);
        }
        let order = self.q - 1;
        Ok(Elem(self.exp[((order - self.log[a.index()]) % order) as usize]))
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem, GaloisError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return Elem::ONE;
        }
        if a.is_zero() {
            return Elem::ZERO;
        }
        let order = (self.q - 1) as u64;
        let l = self.log[a.index()] as u64 * (e % order) % order;
        Elem(self.exp[l as usize])
    }

    /// Discrete log base `generator()`; `None` for zero.
    pub fn log(&self, a: Elem) -> Option<u32> {
        (!a.is_zero()).then(|| self.log[a.index()])
    }

    /// `generator()^e`.
    pub fn exp(&self, e: u32) -> Elem {
        Elem(self.exp[(e % (self.q - 1)) as usize])
    }

    /// The image of an integer under Z -> F_q.
    pub fn from_int(&self, n: u64) -> Elem {
        Elem((n % self.characteristic as u64) as u16)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // Multiplication of residues mod (x^2 + x + 1) over F_2, by hand.
    #[test]
    fn gf4_generator_squares_to_g_plus_one() {
        let f = FieldContext::with_modulus(4, &[1, 1, 1]).unwrap();
        let g = Elem(2);
        assert_eq!(f.mul(g, g), f.add(g, Elem::ONE));
        assert_eq!(f.mul(g, g), Elem(3));
    }

    #[test]
    fn non_prime_powers_are_rejected() {
        for q in [0, 1, 6, 10, 12, 100, 65537, 1 << 17] {
            assert!(matches!(
                FieldContext::new(q),
                Err(GaloisError::NotPrimePower(_))
            ));
        }
    }

    #[test]
    fn gf7_inverses_are_integer_inverses() {
        let f = FieldContext::new(7).unwrap();
        assert_eq!(f.mul(Elem(3), Elem(5)), Elem(1));
        for a in 1..7u16 {
            let inv = f.inv(Elem(a)).unwrap();
            assert_eq!((a as u32 * inv.0 as u32) % 7, 1);
        }
    }

    #[test]
    fn gf8_x_times_x_squared() {
        let f = FieldContext::with_modulus(8, &[1, 1, 0, 1]).unwrap();
        // x = 0b010, x^2 = 0b100, x^3 = x + 1 = 0b011
        assert_eq!(f.mul(Elem(2), Elem(4)), Elem(3));
        for a in f.elements() {
            assert_eq!(f.mul(a, Elem::ONE), a);
        }
    }

    #[test]
    fn canonical_moduli_are_the_usual_ones() {
        assert_eq!(FieldContext::new(8).unwrap().modulus(), Some(&[1, 1, 0, 1][..]));
        let f256 = FieldContext::new(256).unwrap();
        let m = f256.modulus().unwrap();
        let value: u32 = m.iter().rev().fold(0, |acc, &c| acc * 2 + c);
        assert_eq!(value, 0x11d);
        assert_eq!(f256.generator(), Elem(2));
    }

    #[test]
    fn reducible_modulus_is_rejected() {
        // x^2 + 1 = (x + 1)^2 over F_2
        assert!(matches!(
            FieldContext::with_modulus(4, &[1, 0, 1]),
            Err(GaloisError::ReducibleModulus { .. })
        ));
        // x^2 + 1 is irreducible over F_3, x^2 + 2 = (x+1)(x+2) is not
        assert!(FieldContext::with_modulus(9, &[1, 0, 1]).is_ok());
        assert!(FieldContext::with_modulus(9, &[2, 0, 1]).is_err());
        // non-primitive but irreducible: x^4+x^3+x^2+x+1 over F_2
        let f = FieldContext::with_modulus(16, &[1, 1, 1, 1, 1]).unwrap();
        assert_ne!(f.generator(), Elem(2));
        assert_eq!(f.pow(Elem(2), 5), Elem::ONE);
    }

    #[test]
    fn negation_and_inverse_exhaustive() {
        for q in [2, 3, 4, 5, 8, 9, 25, 27, 49, 64, 121, 256, 1024] {
            let f = FieldContext::new(q).unwrap();
            for a in f.elements() {
                assert_eq!(f.add(a, f.neg(a)), Elem::ZERO, "q={q}");
                assert_eq!(f.sub(a, a), Elem::ZERO);
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), Elem::ONE, "q={q}");
                }
            }
            assert_eq!(f.inv(Elem::ZERO), Err(GaloisError::DivisionByZero));
        }
    }

    #[test]
    fn large_fields_build() {
        for q in [4096, 1 << 16, 65521, 3u32.pow(10)] {
            let f = FieldContext::new(q).unwrap();
            let a = f.exp(1234);
            assert_eq!(f.mul(a, f.inv(a).unwrap()), Elem::ONE);
        }
    }
}
