use std::collections::BTreeMap;

use super::{ChannelError, ReliabilityColumn};
use crate::galois::{Elem, FieldContext};
use crate::scalar::Probability;

/// Column that equals `floor` everywhere except on a few peaks.
///
/// q-SC columns and every column reachable from them through a bounded
/// number of sum, product and remap steps have this shape, so the transforms
/// below cost O(peaks^2) instead of O(q^2).
#[derive(Clone, Debug, PartialEq)]
pub struct SparseColumn<T> {
    q: usize,
    floor: T,
    peaks: BTreeMap<Elem, T>,
}

impl<T: Probability> SparseColumn<T> {
    pub fn qsc(p: f64, q: usize, received: Elem) -> Self
    where
        T: From<f64>,
    {
        Self::qsc_exact(T::from(p), q, received)
    }

    pub fn qsc_exact(p: T, q: usize, received: Elem) -> Self {
        let floor = p.clone() / T::from_usize_lossy(q - 1);
        let mut peaks = BTreeMap::new();
        peaks.insert(received, T::one() - p);
        SparseColumn { q, floor, peaks }
    }

    pub fn uniform(q: usize) -> Self {
        SparseColumn {
            q,
            floor: T::one() / T::from_usize_lossy(q),
            peaks: BTreeMap::new(),
        }
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn floor(&self) -> &T {
        &self.floor
    }

    pub fn peaks(&self) -> impl Iterator<Item = (Elem, &T)> {
        self.peaks.iter().map(|(a, v)| (*a, v))
    }

    pub fn get(&self, a: Elem) -> T {
        self.peaks.get(&a).unwrap_or(&self.floor).clone()
    }

    fn deviations(&self) -> impl Iterator<Item = (Elem, T)> + '_ {
        self.peaks
            .iter()
            .map(|(a, v)| (*a, v.clone() - self.floor.clone()))
    }

    pub fn norm2(&self) -> T {
        let f2 = self.floor.clone() * self.floor.clone();
        self.peaks.values().fold(
            T::from_usize_lossy(self.q) * f2.clone(),
            |acc, v| acc + v.clone() * v.clone() - f2.clone(),
        )
    }

    pub fn sum(&self) -> T {
        self.peaks.values().fold(
            T::from_usize_lossy(self.q) * self.floor.clone(),
            |acc, v| acc + v.clone() - self.floor.clone(),
        )
    }

    pub fn to_dense(&self) -> ReliabilityColumn<T> {
        ReliabilityColumn::from_raw((0..self.q).map(|i| self.get(Elem(i as u16))).collect())
    }

    /// Same semantics as [`super::reliability_sum`].
    pub fn reliability_sum(f: &FieldContext, a: &Self, b: &Self) -> Self {
        let q = T::from_usize_lossy(a.q);
        let da: Vec<(Elem, T)> = a.deviations().collect();
        let db: Vec<(Elem, T)> = b.deviations().collect();
        let sda = da.iter().fold(T::zero(), |s, (_, d)| s + d.clone());
        let sdb = db.iter().fold(T::zero(), |s, (_, d)| s + d.clone());
        let floor = q * a.floor.clone() * b.floor.clone()
            + a.floor.clone() * sdb
            + b.floor.clone() * sda;
        let mut peaks: BTreeMap<Elem, T> = BTreeMap::new();
        for (x, dx) in &da {
            for (y, dy) in &db {
                let at = f.sub(*y, *x);
                let v = peaks.entry(at).or_insert_with(|| floor.clone());
                *v = v.clone() + dx.clone() * dy.clone();
            }
        }
        SparseColumn {
            q: a.q,
            floor,
            peaks,
        }
    }

    /// Same semantics as [`super::reliability_product`].
    pub fn reliability_product(
        f: &FieldContext,
        a: &Self,
        b: &Self,
        shift: Elem,
    ) -> Result<Self, ChannelError> {
        let base = a.floor.clone() * b.floor.clone();
        let mut raw: BTreeMap<Elem, T> = BTreeMap::new();
        let support = a
            .peaks
            .keys()
            .copied()
            .chain(b.peaks.keys().map(|&y| f.sub(y, shift)));
        for x in support {
            raw.entry(x)
                .or_insert_with(|| a.get(x) * b.get(f.add(x, shift)));
        }
        let den = raw.values().fold(
            T::from_usize_lossy(a.q) * base.clone(),
            |s, v| s + v.clone() - base.clone(),
        );
        if den.is_zero() {
            return Err(ChannelError::ZeroDenominator);
        }
        Ok(SparseColumn {
            q: a.q,
            floor: base / den.clone(),
            peaks: raw.into_iter().map(|(k, v)| (k, v / den.clone())).collect(),
        })
    }

    /// Same semantics as [`super::reliability_affine_remap`].
    pub fn affine_remap(
        &self,
        f: &FieldContext,
        scale: Elem,
        offset: Elem,
    ) -> Result<Self, ChannelError> {
        let inv = f.inv(scale).map_err(|_| ChannelError::ZeroScale)?;
        Ok(SparseColumn {
            q: self.q,
            floor: self.floor.clone(),
            peaks: self
                .peaks
                .iter()
                .map(|(x, v)| (f.mul(f.sub(*x, offset), inv), v.clone()))
                .collect(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{qsc_column, reliability_affine_remap, reliability_product, reliability_sum};

    fn close(a: &ReliabilityColumn<f64>, b: &ReliabilityColumn<f64>) {
        for (x, y) in a.probs().iter().zip(b.probs()) {
            assert!((x - y).abs() < 1e-14, "{x} vs {y}");
        }
    }

    #[test]
    fn matches_dense_transforms() {
        for q in [16u32, 27, 31] {
            let f = FieldContext::new(q).unwrap();
            let qs = q as usize;
            let ys = [Elem(3), Elem(5), Elem(3), Elem(11)];
            let sp: Vec<SparseColumn<f64>> =
                ys.iter().map(|&y| SparseColumn::qsc(0.4, qs, y)).collect();
            let de: Vec<ReliabilityColumn<f64>> =
                ys.iter().map(|&y| qsc_column(0.4, qs, y)).collect();
            close(&sp[0].to_dense(), &de[0]);

            let s01 = SparseColumn::reliability_sum(&f, &sp[0], &sp[1]);
            close(&s01.to_dense(), &reliability_sum(&f, &de[0], &de[1]).unwrap());
            let p23 = SparseColumn::reliability_product(&f, &sp[2], &sp[3], Elem(7)).unwrap();
            close(
                &p23.to_dense(),
                &reliability_product(&f, &de[2], &de[3], Elem(7)).unwrap(),
            );
            let deep = SparseColumn::reliability_sum(&f, &s01, &p23);
            let deep_dense = reliability_sum(
                &f,
                &reliability_sum(&f, &de[0], &de[1]).unwrap(),
                &reliability_product(&f, &de[2], &de[3], Elem(7)).unwrap(),
            )
            .unwrap();
            close(&deep.to_dense(), &deep_dense);
            assert!((deep.norm2() - deep_dense.norm2()).abs() < 1e-14);
            assert!((deep.sum() - 1.0).abs() < 1e-12);

            let r = deep.affine_remap(&f, Elem(2), Elem(9)).unwrap();
            close(
                &r.to_dense(),
                &reliability_affine_remap(&f, &deep_dense, Elem(2), Elem(9)).unwrap(),
            );
        }
    }

    #[test]
    fn zero_denominator_and_scale() {
        let f = FieldContext::new(8).unwrap();
        let a = SparseColumn::<f64>::qsc(0.0, 8, Elem(1));
        let b = SparseColumn::<f64>::qsc(0.0, 8, Elem(2));
        assert_eq!(
            SparseColumn::reliability_product(&f, &a, &b, Elem(0)),
            Err(ChannelError::ZeroDenominator)
        );
        assert_eq!(a.affine_remap(&f, Elem(0), Elem(0)), Err(ChannelError::ZeroScale));
    }
}
