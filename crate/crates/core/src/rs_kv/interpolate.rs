use super::{BivariatePoly, MultiplicityMatrix, RSCode, RsError};
use crate::galois::{Elem, FieldContext, Poly};

/// Largest `Y`-degree a minimal interpolation polynomial can need for `cost`
/// constraints: `floor(D / (k - 1))` for the least `D` whose (1, k-1)-weighted
/// monomial count exceeds `cost`, and `cost` itself when `k = 1`.
pub fn y_degree_cap(cost: u64, k: usize) -> usize {
    if k <= 1 {
        return cost as usize;
    }
    let v = (k - 1) as u64;
    let count = |d: u64| {
        let t = d / v;
        (t + 1) * (d + 1) - v * t * (t + 1) / 2
    };
    let (mut lo, mut hi) = (0u64, 1u64);
    while count(hi) <= cost {
        hi *= 2;
    }
    while lo < hi {
        let mid = (lo + hi) / 2;
        if count(mid) > cost {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    (lo / v) as usize
}

/// One candidate per `Y`-degree; `rows[l]` holds the `X`-coefficients of `Y^l`.
struct Candidate {
    rows: Vec<Vec<Elem>>,
    wdeg: usize,
}

/// Koetter's incremental interpolation.
///
/// Returns the nonzero `Q` of minimal (1, k-1)-weighted degree (ties to the
/// lower leading `Y`-degree) with a zero of multiplicity `m[a][i]` at every
/// `(x_i, a)`. Constraints at each point are taken in order of total Hasse
/// order, so every processed prefix stays closed under multiplication by `X`.
pub fn kv_interpolate(code: &RSCode, m: &MultiplicityMatrix) -> Result<BivariatePoly, RsError> {
    if m.is_zero() || m.n() != code.n() || m.q() != code.field().size() {
        return Err(RsError::InfeasibleConstraints);
    }
    let f = code.field();
    let k = code.k();
    let cap = y_degree_cap(m.cost(), k);
    let mut basis: Vec<Candidate> = (0..=cap)
        .map(|j| {
            let mut rows = vec![Vec::new(); cap + 1];
            rows[j] = vec![Elem::ONE];
            Candidate {
                rows,
                wdeg: j * (k - 1),
            }
        })
        .collect();

    let mut order: Vec<(usize, usize)> = Vec::new();
    for (col, alpha, mult) in m.entries() {
        let x = code.points()[col];
        let mult = mult as usize;
        order.clear();
        for t in 0..mult {
            order.extend((0..=t).map(|a| (a, t - a)));
        }
        let mut taylor: Vec<Vec<Elem>> = basis
            .iter()
            .map(|g| taylor_block(f, &g.rows, x, alpha, mult))
            .collect();

        for &(a, b) in &order {
            let at = a * mult + b;
            let Some(star) = (0..basis.len())
                .filter(|&j| !taylor[j][at].is_zero())
                .min_by_key(|&j| (basis[j].wdeg, j))
            else {
                continue;
            };
            let inv = f.inv(taylor[star][at])?;
            let (pivot_rows, pivot_taylor) = (basis[star].rows.clone(), taylor[star].clone());
            for j in 0..basis.len() {
                let delta = taylor[j][at];
                if j == star || delta.is_zero() {
                    continue;
                }
                let c = f.neg(f.mul(delta, inv));
                for (dst, src) in basis[j].rows.iter_mut().zip(&pivot_rows) {
                    if dst.len() < src.len() {
                        dst.resize(src.len(), Elem::ZERO);
                    }
                    f.axpy(dst, c, src);
                }
                f.axpy(&mut taylor[j], c, &pivot_taylor);
            }
            for row in &mut basis[star].rows {
                times_x_minus(f, row, x);
            }
            let t = &mut taylor[star];
            for a2 in (0..mult).rev() {
                for b2 in 0..mult - a2 {
                    t[a2 * mult + b2] = if a2 == 0 {
                        Elem::ZERO
                    } else {
                        t[(a2 - 1) * mult + b2]
                    };
                }
            }
            basis[star].wdeg += 1;
        }
    }

    let best = (0..basis.len())
        .min_by_key(|&j| (basis[j].wdeg, j))
        .expect("basis is nonempty");
    let rows = std::mem::take(&mut basis[best].rows)
        .into_iter()
        .map(Poly::from_coeffs)
        .collect();
    Ok(BivariatePoly::from_rows(rows))
}

/// `row <- (X - x) * row`.
fn times_x_minus(f: &FieldContext, row: &mut Vec<Elem>, x: Elem) {
    if row.iter().all(|c| c.is_zero()) {
        return;
    }
    let nx = f.neg(x);
    row.push(Elem::ZERO);
    for i in (0..row.len()).rev() {
        let lower = if i == 0 { Elem::ZERO } else { row[i - 1] };
        row[i] = f.add(lower, f.mul(nx, row[i]));
    }
}

/// Hasse derivatives `D_{a,b} g(x, y)` for `a + b < mult`, as `t[a * mult + b]`.
///
/// Taylor coefficients come from repeated synthetic division by `X - x`,
/// then by `Y - y`, which avoids binomials in every characteristic.
fn taylor_block(f: &FieldContext, rows: &[Vec<Elem>], x: Elem, y: Elem, mult: usize) -> Vec<Elem> {
    let mut h = vec![vec![Elem::ZERO; rows.len()]; mult];
    let mut buf = Vec::new();
    for (l, row) in rows.iter().enumerate() {
        buf.clear();
        buf.extend_from_slice(row);
        synthetic_taylor(f, &mut buf, x, mult, |a, v| h[a][l] = v);
    }
    let mut out = vec![Elem::ZERO; mult * mult];
    for (a, ha) in h.iter_mut().enumerate() {
        synthetic_taylor(f, ha, y, mult - a, |b, v| out[a * mult + b] = v);
    }
    out
}

/// Emits the first `count` Taylor coefficients of `c` at `x`, consuming `c`.
fn synthetic_taylor(
    f: &FieldContext,
    c: &mut [Elem],
    x: Elem,
    count: usize,
    mut emit: impl FnMut(usize, Elem),
) {
    let mut len = c.len();
    while len > 0 && c[len - 1].is_zero() {
        len -= 1;
    }
    let mut start = 0;
    for t in 0..count {
        if start >= len {
            break;
        }
        for i in (start..len - 1).rev() {
            c[i] = f.add(c[i], f.mul(x, c[i + 1]));
        }
        emit(t, c[start]);
        start += 1;
    }
}
