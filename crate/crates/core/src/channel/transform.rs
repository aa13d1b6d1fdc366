use super::{ChannelError, ReliabilityColumn};
use crate::galois::{Elem, FieldContext};
use crate::scalar::Probability;

/// Sum model: distribution of `X2 - X1` for independent `X1 ~ c1`, `X2 ~ c2`,
/// `out(a) = sum_b c1(b) * c2(a + b)`.
pub fn reliability_sum<T: Probability>(
    f: &FieldContext,
    c1: &ReliabilityColumn<T>,
    c2: &ReliabilityColumn<T>,
) -> Result<ReliabilityColumn<T>, ChannelError> {
    check_sizes(f, c1, c2)?;
    let q = f.size();
    let mut out = vec![T::zero(); q];
    for (b, w1) in c1.probs().iter().enumerate() {
        if w1.is_zero() {
            continue;
        }
        let b = Elem(b as u16);
        for (a, slot) in out.iter_mut().enumerate() {
            let w2 = c2.get(f.add(Elem(a as u16), b));
            if !w2.is_zero() {
                *slot = slot.clone() + w1.clone() * w2.clone();
            }
        }
    }
    Ok(ReliabilityColumn::from_raw(out))
}

/// Product model: `out(a) = c1(a) * c2(a + shift) / sum_b c1(b) * c2(b + shift)`.
///
/// Fails with `ZeroDenominator` when the supports do not meet; decoders map
/// that to the uniform column.
pub fn reliability_product<T: Probability>(
    f: &FieldContext,
    c1: &ReliabilityColumn<T>,
    c2: &ReliabilityColumn<T>,
    shift: Elem,
) -> Result<ReliabilityColumn<T>, ChannelError> {
    check_sizes(f, c1, c2)?;
    let raw: Vec<T> = f
        .elements()
        .map(|a| c1.get(a).clone() * c2.get(f.add(a, shift)).clone())
        .collect();
    let den = raw.iter().cloned().fold(T::zero(), |s, v| s + v);
    if den.is_zero() {
        return Err(ChannelError::ZeroDenominator);
    }
    Ok(ReliabilityColumn::from_raw(
        raw.into_iter().map(|v| v / den.clone()).collect(),
    ))
}

/// `out(a) = c(scale * a + offset)`: the column of `(X - offset) / scale`.
pub fn reliability_affine_remap<T: Probability>(
    f: &FieldContext,
    c: &ReliabilityColumn<T>,
    scale: Elem,
    offset: Elem,
) -> Result<ReliabilityColumn<T>, ChannelError> {
    if scale.is_zero() {
        return Err(ChannelError::ZeroScale);
    }
    if c.q() != f.size() {
        return Err(ChannelError::SizeMismatch(f.size(), c.q()));
    }
    if scale == Elem::ONE && offset == Elem::ZERO {
        return Ok(c.clone());
    }
    Ok(ReliabilityColumn::from_raw(
        f.elements()
            .map(|a| c.get(f.add(f.mul(scale, a), offset)).clone())
            .collect(),
    ))
}

#[derive(Clone, Debug, PartialEq)]
pub struct ColumnStats<T> {
    /// `sum_a c(a)^2`
    pub norm2: T,
    /// argmax, lowest index on ties
    pub top: Elem,
}

pub fn column_stats<T: Probability>(c: &ReliabilityColumn<T>) -> ColumnStats<T> {
    let mut top = 0;
    for (i, p) in c.probs().iter().enumerate() {
        if *p > c.probs()[top] {
            top = i;
        }
    }
    ColumnStats {
        norm2: c.norm2(),
        top: Elem(top as u16),
    }
}

fn check_sizes<T>(
    f: &FieldContext,
    c1: &ReliabilityColumn<T>,
    c2: &ReliabilityColumn<T>,
) -> Result<(), ChannelError>
where
    T: Probability,
{
    if c1.q() != f.size() {
        return Err(ChannelError::SizeMismatch(f.size(), c1.q()));
    }
    if c2.q() != f.size() {
        return Err(ChannelError::SizeMismatch(f.size(), c2.q()));
    }
    Ok(())
}
