use std::sync::Arc;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use uuv_core::channel::{random_other, trial_rng, QscParams};
use uuv_core::rs_kv::{
    kv_decode, kv_decode_with_multiplicity, kv_factorize, kv_interpolate, kv_multiplicity, kv_success_predicate,
    BivariatePoly, MultiplicityMatrix, RSCode,
};
use uuv_core::{Elem, FieldContext, Poly, ReliabilityMatrix};

fn gf(q: u32) -> Arc<FieldContext> {
    Arc::new(FieldContext::new(q).unwrap())
}

fn random_message<R: Rng>(k: usize, q: u32, rng: &mut R) -> Vec<Elem> {
    (0..k).map(|_| Elem(rng.gen_range(0..q) as u16)).collect()
}

fn distance(a: &[Elem], b: &[Elem]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

fn all_codewords(code: &RSCode) -> Vec<Vec<Elem>> {
    let (q, k) = (code.field().size(), code.k());
    (0..q.pow(k as u32))
        .map(|i| {
            let m: Vec<Elem> = (0..k).map(|j| Elem((i / q.pow(j as u32) % q) as u16)).collect();
            code.encode(&m).unwrap()
        })
        .collect()
}

/// `Q(X + x, Y + y)` by expanding the binomials with polynomial products.
fn shifted(f: &FieldContext, q: &BivariatePoly, x: Elem, y: Elem) -> BivariatePoly {
    let xs = BivariatePoly::from_terms(f, &[(1, 0, Elem::ONE), (0, 0, x)]);
    let ys = BivariatePoly::from_terms(f, &[(0, 1, Elem::ONE), (0, 0, y)]);
    let pow = |b: &BivariatePoly, e: usize| (0..e).fold(BivariatePoly::one(), |acc, _| acc.mul(f, b));
    q.terms().fold(BivariatePoly::zero(), |acc, (a, b, c)| {
        let term = pow(&xs, a)
            .mul(f, &pow(&ys, b))
            .mul(f, &BivariatePoly::from_terms(f, &[(0, 0, c)]));
        acc.add(f, &term)
    })
}

fn soft_matrix(code: &RSCode, p: f64, seed: u64) -> (Vec<Elem>, ReliabilityMatrix) {
    let f = code.field();
    let mut rng = trial_rng(seed, 0);
    let c = code.encode(&random_message(code.k(), f.q(), &mut rng)).unwrap();
    let ch = QscParams::new(p, f.q()).unwrap();
    let y = ch.sample_with(&c, &mut rng);
    (c, ch.matrix(&y))
}

#[test]
fn interpolation_meets_every_multiplicity() {
    for (q, n, k, s, seed) in [(16u32, 10usize, 3usize, 30usize, 1u64), (7, 6, 2, 20, 2), (9, 8, 3, 25, 3)] {
        let f = gf(q);
        let code = RSCode::new(f.clone(), n, k).unwrap();
        let (_, pi) = soft_matrix(&code, 0.3, seed);
        let m = kv_multiplicity(&pi, s);
        let qxy = kv_interpolate(&code, &m).unwrap();
        assert!(!qxy.is_zero());
        for (i, alpha, mult) in m.entries() {
            let x = code.points()[i];
            let sh = shifted(&f, &qxy, x, alpha);
            assert!(
                sh.terms().all(|(a, b, _)| a + b >= mult as usize),
                "q={q} point ({x:?}, {alpha:?}) multiplicity {mult}"
            );
            for a in 0..mult as usize {
                for b in 0..mult as usize - a {
                    assert!(qxy.hasse(&f, a, b, x, alpha).is_zero());
                }
            }
        }
    }
}

#[test]
fn lists_are_sound() {
    let f = gf(16);
    let code = RSCode::new(f.clone(), 15, 5).unwrap();
    for seed in 0..20 {
        let (_, pi) = soft_matrix(&code, 0.35, seed);
        let m = kv_multiplicity(&pi, 60);
        let qxy = kv_interpolate(&code, &m).unwrap();
        for g in kv_factorize(&f, &qxy, 5) {
            assert!(g.degree().map_or(true, |d| d < 5));
            assert!(qxy.compose(&f, &g).is_zero());
        }
        if let Ok(list) = kv_decode_with_multiplicity(&code, &m) {
            for c in &list {
                assert_eq!(code.encode(&c.message).unwrap(), c.codeword);
                assert_eq!(c.score, m.score(&c.codeword));
                let g = Poly::from_coeffs(c.message.clone());
                assert!(qxy.compose(&f, &g).is_zero());
            }
            assert!(list.windows(2).all(|w| w[0].score >= w[1].score));
        }
    }
}

/// Every pattern below `n - sqrt(n(k-1)) - n/m` is corrected, and the list
/// holds every codeword that close.
fn gs_radius_check(q: u32, n: usize, k: usize, mult: u32, exhaustive: bool, seed: u64) {
    let f = gf(q);
    let code = RSCode::new(f.clone(), n, k).unwrap();
    let radius = n as f64 - (n as f64 * (k as f64 - 1.0)).sqrt() - n as f64 / mult as f64;
    let tau = radius.ceil() as usize - 1;
    let words = all_codewords(&code);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sent = code.encode(&random_message(k, q, &mut rng)).unwrap();
    let mut patterns: Vec<Vec<Elem>> = Vec::new();
    if exhaustive {
        for support in 0u32..1 << n {
            let w = support.count_ones() as usize;
            if w > tau {
                continue;
            }
            let pos: Vec<usize> = (0..n).filter(|i| support >> i & 1 == 1).collect();
            for mut v in 0..(q as usize - 1).pow(w as u32) {
                let mut y = sent.clone();
                for &i in &pos {
                    y[i] = f.add(y[i], Elem((v % (q as usize - 1) + 1) as u16));
                    v /= q as usize - 1;
                }
                patterns.push(y);
            }
        }
    } else {
        for _ in 0..1500 {
            let w = rng.gen_range(0..=tau);
            let mut y = sent.clone();
            for i in rand::seq::index::sample(&mut rng, n, w) {
                y[i] = random_other(y[i], q, &mut rng);
            }
            patterns.push(y);
        }
    }
    for y in patterns {
        let list = kv_decode_with_multiplicity(&code, &MultiplicityMatrix::uniform_hard(q as usize, &y, mult)).unwrap();
        let got: Vec<&Vec<Elem>> = list.iter().map(|c| &c.codeword).collect();
        for c in words.iter().filter(|c| distance(c, &y) <= tau) {
            assert!(got.contains(&c), "q={q} n={n} k={k} m={mult}: missed a codeword at distance {}", distance(c, &y));
        }
        assert!(got.contains(&&sent));
    }
}

#[test]
fn guruswami_sudan_radius_exhaustive_gf7() {
    gs_radius_check(7, 7, 2, 4, true, 1);
}

#[test]
fn guruswami_sudan_radius_sampled_gf11() {
    gs_radius_check(11, 10, 3, 4, false, 2);
    gs_radius_check(11, 10, 2, 6, false, 3);
}

#[test]
fn larger_budgets_keep_the_sent_codeword() {
    let f = gf(16);
    let code = RSCode::new(f.clone(), 15, 5).unwrap();
    let (mut kept, mut had) = (0, 0);
    for seed in 0..100 {
        let (c, pi) = soft_matrix(&code, 0.3, 100 + seed);
        let contains = |s| kv_decode(&code, &pi, s).is_ok_and(|l| l.iter().any(|x| x.codeword == c));
        if contains(30) {
            had += 1;
            kept += usize::from(contains(60) && contains(120));
        }
    }
    assert!(had >= 50, "{had}");
    assert!(kept as f64 >= 0.95 * had as f64, "{kept}/{had}");
}

#[test]
fn success_predicate_below_threshold() {
    let (q, n, p) = (256u32, 256usize, 0.3);
    let k = (0.8 * (1.0 - p) * (1.0 - p) * n as f64) as usize;
    let ch = QscParams::new(p, q).unwrap();
    let zero = vec![Elem::ZERO; n];
    let hits = (0..200)
        .filter(|&t| kv_success_predicate(&ch.matrix(&ch.sample(&zero, t)), &zero, k))
        .count();
    assert!(hits >= 180, "{hits}/200 with k = {k}");
}

#[test]
fn minimum_distance_is_mds() {
    for (q, n, k) in [(8u32, 7usize, 3usize), (7, 6, 2), (9, 5, 3)] {
        let code = RSCode::new(gf(q), n, k).unwrap();
        let d = all_codewords(&code)
            .iter()
            .map(|c| c.iter().filter(|e| !e.is_zero()).count())
            .filter(|&w| w > 0)
            .min()
            .unwrap();
        assert_eq!(d, n - k + 1);
        assert_eq!(code.min_distance(), d);
    }
}

proptest! {
    #[test]
    fn multiplicity_budget_is_spent(seed in any::<u64>(), s in 1usize..200) {
        let code = RSCode::new(gf(16), 12, 4).unwrap();
        let (_, pi) = soft_matrix(&code, 0.4, seed);
        let m = kv_multiplicity(&pi, s);
        prop_assert_eq!(m.total(), s as u64);
        let cost: u64 = m.entries().map(|(_, _, v)| v as u64 * (v as u64 + 1) / 2).sum();
        prop_assert_eq!(m.cost(), cost);
    }

    #[test]
    fn noiseless_words_decode_first(seed in any::<u64>()) {
        let f = gf(32);
        let code = RSCode::new(f.clone(), 20, 7).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = code.encode(&random_message(7, 32, &mut rng)).unwrap();
        let pi = QscParams::new(0.1, 32).unwrap().matrix(&c);
        let list = kv_decode(&code, &pi, 40).unwrap();
        prop_assert_eq!(&list[0].codeword, &c);
    }
}
