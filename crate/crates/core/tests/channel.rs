use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use uuv_core::channel::{
    qsc_column, reliability_affine_remap, reliability_product, reliability_sum, trial_rng, ChannelError,
    QscParams,
};
use uuv_core::{Column, Elem, FieldContext, ReliabilityMatrix, SparseColumn};

fn sorted(c: &Column) -> Vec<f64> {
    let mut v = c.probs().to_vec();
    v.sort_by(f64::total_cmp);
    v
}

fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
}

fn stochastic(c: &Column) -> bool {
    c.probs().iter().all(|&x| (0.0..=1.0 + 1e-12).contains(&x)) && (c.sum() - 1.0).abs() <= 1e-12
}

fn field_and_p() -> impl Strategy<Value = (u32, f64)> {
    (prop::sample::select(vec![5u32, 8, 9, 16, 64]), 0.0..0.95f64)
}

proptest! {
    #[test]
    fn transforms_of_qsc_columns_are_symmetric(
        (q, p) in field_and_p(),
        peaks in prop::array::uniform4(0u16..64),
        shift in 0u16..64,
    ) {
        let f = FieldContext::new(q).unwrap();
        let [a, b, c, d] = peaks.map(|x| Elem(x % q as u16));
        let shift = Elem(shift % q as u16);
        let col = |x| -> Column { qsc_column(p, q as usize, x) };
        let s1 = reliability_sum(&f, &col(a), &col(b)).unwrap();
        let s2 = reliability_sum(&f, &col(c), &col(d)).unwrap();
        prop_assert!(stochastic(&s1));
        prop_assert!(close(&sorted(&s1), &sorted(&s2), 1e-12));
        let p1 = reliability_product(&f, &col(a), &col(b), shift).unwrap();
        let p2 = reliability_product(&f, &col(c), &col(d), shift).unwrap();
        prop_assert!(stochastic(&p1));
        // equal-peak products differ from distinct-peak ones, so compare by class
        let same = |x: Elem, y: Elem| f.add(x, shift) == y;
        if same(a, b) == same(c, d) {
            prop_assert!(close(&sorted(&p1), &sorted(&p2), 1e-12));
        }
    }

    #[test]
    fn sparse_and_dense_transforms_agree(
        (q, p) in field_and_p(),
        peaks in prop::array::uniform3(0u16..64),
    ) {
        let f = FieldContext::new(q).unwrap();
        let [a, b, s] = peaks.map(|x| Elem(x % q as u16));
        let (sa, sb) = (SparseColumn::qsc(p, q as usize, a), SparseColumn::qsc(p, q as usize, b));
        let (da, db): (Column, Column) = (qsc_column(p, q as usize, a), qsc_column(p, q as usize, b));
        let sum = SparseColumn::reliability_sum(&f, &sa, &sb);
        let dsum = reliability_sum(&f, &da, &db).unwrap();
        prop_assert!(close(sum.to_dense().probs(), dsum.probs(), 1e-12));
        prop_assert!((sum.norm2() - dsum.norm2()).abs() <= 1e-12);
        let prod = SparseColumn::reliability_product(&f, &sum, &sa, s).unwrap();
        let dprod = reliability_product(&f, &dsum, &da, s).unwrap();
        prop_assert!(close(prod.to_dense().probs(), dprod.probs(), 1e-12));
    }

    #[test]
    fn remap_permutes_entries(q in prop::sample::select(vec![7u32, 16, 49]), seed in any::<u64>()) {
        let f = FieldContext::new(q).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let raw: Vec<f64> = (0..q).map(|_| rng.gen::<f64>() + 1e-3).collect();
        let total: f64 = raw.iter().sum();
        let c = Column::new(raw.iter().map(|x| x / total).collect()).unwrap();
        let scale = Elem(rng.gen_range(1..q) as u16);
        let offset = Elem(rng.gen_range(0..q) as u16);
        let r = reliability_affine_remap(&f, &c, scale, offset).unwrap();
        prop_assert!(close(&sorted(&r), &sorted(&c), 0.0));
        for a in f.elements() {
            prop_assert_eq!(r.get(a), c.get(f.add(f.mul(scale, a), offset)));
        }
    }
}

#[test]
fn sum_is_distribution_of_the_difference() {
    // brute-force oracle over pairs
    let f = FieldContext::new(9).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut random = || {
        let raw: Vec<f64> = (0..9).map(|_| rng.gen::<f64>()).collect();
        let t: f64 = raw.iter().sum();
        Column::new(raw.iter().map(|x| x / t).collect()).unwrap()
    };
    let (c1, c2) = (random(), random());
    let mut oracle = [0.0; 9];
    for x1 in f.elements() {
        for x2 in f.elements() {
            oracle[f.sub(x2, x1).index()] += c1.get(x1) * c2.get(x2);
        }
    }
    let out = reliability_sum(&f, &c1, &c2).unwrap();
    assert!(close(out.probs(), &oracle, 1e-12));
}

#[test]
fn disjoint_product_reports_zero_denominator() {
    let f = FieldContext::new(4).unwrap();
    let a = Column::hard(4, Elem(1));
    let b = Column::hard(4, Elem(2));
    assert_eq!(reliability_product(&f, &a, &b, Elem(0)), Err(ChannelError::ZeroDenominator));
}

#[test]
fn invalid_crossover_rejected() {
    assert!(QscParams::new(1.0, 16).is_err());
    assert!(QscParams::new(-0.1, 16).is_err());
    assert!(QscParams::new(0.0, 16).is_ok());
}

/// `E π(true) = E ‖π‖²` for the channel and its derived channels.
#[test]
fn posterior_of_truth_matches_squared_norm() {
    let q = 64u32;
    let f = FieldContext::new(q).unwrap();
    for p in [0.1, 0.3, 0.6] {
        let ch = QscParams::new(p, q).unwrap();
        for kind in 0..3 {
            let mut rng = trial_rng(17, kind);
            let samples = 10_000;
            let (mut s, mut s2) = (0.0, 0.0);
            for _ in 0..samples {
                let (u, v) = (Elem(rng.gen_range(0..q) as u16), Elem(rng.gen_range(0..q) as u16));
                let (col, truth): (Column, Elem) = match kind {
                    0 => (ch.column(ch.corrupt(u, &mut rng)), u),
                    1 => {
                        let y1: Column = ch.column(ch.corrupt(u, &mut rng));
                        let y2: Column = ch.column(ch.corrupt(f.add(u, v), &mut rng));
                        (reliability_sum(&f, &y1, &y2).unwrap(), v)
                    }
                    _ => {
                        let y1: Column = ch.column(ch.corrupt(u, &mut rng));
                        let y2: Column = ch.column(ch.corrupt(f.add(u, v), &mut rng));
                        (reliability_product(&f, &y1, &y2, v).unwrap(), u)
                    }
                };
                let d = col.get(truth) - col.norm2();
                s += d;
                s2 += d * d;
            }
            let n = samples as f64;
            let mean = s / n;
            let se = ((s2 / n - mean * mean) / (n - 1.0)).sqrt();
            assert!(mean.abs() <= 3.0 * se + 1e-12, "p={p} kind={kind}: {mean} vs {se}");
        }
    }
}

/// Chebyshev bound on `<Π, ⌊0⌋>` falling below `(1 - ε) n E‖π‖²`.
#[test]
fn concentration_of_the_score() {
    let (q, n, eps) = (256u32, 512usize, 0.2);
    for p in [0.3, 0.6] {
        let ch = QscParams::new(p, q).unwrap();
        let e = (1.0 - p) * (1.0 - p) + p * p / (q as f64 - 1.0);
        let zero = vec![Elem::ZERO; n];
        let low = (0..500u64)
            .filter(|&t| {
                let y = ch.sample(&zero, t);
                let pi: ReliabilityMatrix = ch.matrix(&y);
                pi.inner_with_word(&zero) <= (1.0 - eps) * n as f64 * e
            })
            .count();
        let bound = 1.0 / (n as f64 * eps * eps * e * e) + 0.05;
        assert!(low as f64 / 500.0 <= bound, "p={p}: {low}/500 vs {bound}");
    }
}

#[test]
fn sampling_is_reproducible_and_has_the_right_rate() {
    let ch = QscParams::new(0.25, 256).unwrap();
    let word: Vec<Elem> = (0..4000u32).map(|i| Elem((i % 256) as u16)).collect();
    let a = ch.sample(&word, 99);
    assert_eq!(a, ch.sample(&word, 99));
    assert_ne!(a, ch.sample(&word, 100));
    let flips = a.iter().zip(&word).filter(|(x, y)| x != y).count() as f64 / 4000.0;
    // binomial sd ≈ 0.0068
    assert!((flips - 0.25).abs() < 0.03, "{flips}");
}

#[test]
fn exact_columns_over_rationals() {
    use num_bigint::BigInt;
    use uuv_core::{ExactColumn, Rational};
    let f = FieldContext::new(7).unwrap();
    let p = Rational::new(BigInt::from(1), BigInt::from(3));
    let c = |x| -> ExactColumn { qsc_column(p.clone(), 7, Elem(x)) };
    let s = reliability_sum(&f, &c(1), &c(1)).unwrap();
    // (2/3)^2 + 6 (1/18)^2
    assert_eq!(*s.get(Elem(0)), Rational::new(BigInt::from(25), BigInt::from(54)));
    let total = s.probs().iter().cloned().fold(Rational::from_integer(0.into()), |a, b| a + b);
    assert_eq!(total, Rational::from_integer(1.into()));
}
