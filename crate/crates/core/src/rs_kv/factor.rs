use super::BivariatePoly;
use crate::galois::{Elem, FieldContext, Poly};

/// Every `f` with `deg f < k` and `Q(X, f(X)) = 0`, sorted and deduplicated.
///
/// Roth-Ruckenstein: strip the largest power of `X`, take the roots `g` of
/// `Q(0, Y)` as the next coefficient, recurse on `Q(X, XY + g)`. Depth is
/// capped at `k` and each leaf is verified by substitution.
pub fn kv_factorize(f: &FieldContext, q: &BivariatePoly, k: usize) -> Vec<Poly> {
    if q.is_zero() || k == 0 {
        return Vec::new();
    }
    let rows: Vec<Vec<Elem>> = q.rows().iter().map(|r| r.coeffs().to_vec()).collect();
    let mut found = Vec::new();
    let mut prefix = Vec::with_capacity(k);
    descend(f, rows, k, &mut prefix, &mut found);
    found.retain(|cand: &Poly| q.compose(f, cand).is_zero());
    found.sort();
    found.dedup();
    found
}

fn descend(
    f: &FieldContext,
    mut rows: Vec<Vec<Elem>>,
    k: usize,
    prefix: &mut Vec<Elem>,
    found: &mut Vec<Poly>,
) {
    if prefix.len() == k {
        found.push(Poly::from_coeffs(prefix.clone()));
        return;
    }
    let shift = rows
        .iter()
        .filter_map(|r| r.iter().position(|c| !c.is_zero()))
        .min();
    let Some(shift) = shift else {
        // Q vanished identically: every completion of the prefix is a root.
        found.push(Poly::from_coeffs(prefix.clone()));
        return;
    };
    for r in &mut rows {
        if r.len() >= shift {
            r.drain(..shift);
        }
    }
    while rows.last().is_some_and(|r| r.iter().all(|c| c.is_zero())) {
        rows.pop();
    }
    let mut at_zero: Vec<Elem> = rows
        .iter()
        .map(|r| r.first().copied().unwrap_or(Elem::ZERO))
        .collect();
    while at_zero.last().is_some_and(|c| c.is_zero()) {
        at_zero.pop();
    }
    if at_zero.len() <= 1 {
        return;
    }
    for g in roots(f, &at_zero) {
        prefix.push(g);
        descend(f, substitute(f, &rows, g), k, prefix, found);
        prefix.pop();
    }
}

/// Roots of `sum_b c[b] Y^b` by exhaustive evaluation.
fn roots(f: &FieldContext, c: &[Elem]) -> Vec<Elem> {
    if c.len() == 2 {
        // c0 + c1 Y
        return f
            .div(f.neg(c[0]), c[1])
            .map(|r| vec![r])
            .unwrap_or_default();
    }
    f.elements()
        .filter(|&y| {
            c.iter()
                .rev()
                .fold(Elem::ZERO, |acc, &v| f.add(f.mul(acc, y), v))
                .is_zero()
        })
        .collect()
}

/// Rows of `Q(X, XY + g)`: Taylor shift in `Y` by `g`, then row `t` times `X^t`.
fn substitute(f: &FieldContext, rows: &[Vec<Elem>], g: Elem) -> Vec<Vec<Elem>> {
    let mut c: Vec<Vec<Elem>> = rows.to_vec();
    let n = c.len();
    let mut out = Vec::with_capacity(n);
    for t in 0..n {
        for i in (t..n - 1).rev() {
            let (lo, hi) = c.split_at_mut(i + 1);
            let (dst, src) = (&mut lo[i], &hi[0]);
            if dst.len() < src.len() {
                dst.resize(src.len(), Elem::ZERO);
            }
            f.axpy(dst, g, src);
        }
        let mut row = vec![Elem::ZERO; t];
        row.extend_from_slice(&c[t]);
        out.push(row);
    }
    out
}
