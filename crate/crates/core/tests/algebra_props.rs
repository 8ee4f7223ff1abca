use std::sync::Arc;

use expander_concat::algebra::{Fe, Field, GrsCode};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn field_axioms(ell: u32) {
    let f = Field::new(ell).unwrap();
    let q = f.size() as u16;
    let mut runner = TestRunner::new(Config {
        cases: 100_000,
        failure_persistence: None,
        ..Config::default()
    });
    runner
        .run(&(0..q, 0..q, 0..q), |(a, b, c)| {
            let (a, b, c) = (Fe(a), Fe(b), Fe(c));
            prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
            prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
            prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            prop_assert_eq!(f.mul(a, b), f.mul(b, a));
            if !a.is_zero() {
                let inv = f.inv(a).unwrap();
                prop_assert_eq!(f.mul(a, inv), Fe::ONE);
                prop_assert_eq!(f.div(b, a).unwrap(), f.mul(b, inv));
            }
            Ok(())
        })
        .unwrap();
}

#[test]
fn field_axioms_gf8() {
    field_axioms(3);
}

#[test]
fn field_axioms_gf16() {
    field_axioms(4);
}

#[test]
fn field_axioms_gf256() {
    field_axioms(8);
}

fn random_grs(rng: &mut ChaCha8Rng, ell: u32, delta: usize, k: usize) -> GrsCode {
    let f = Arc::new(Field::new(ell).unwrap());
    let mut pts: Vec<u16> = (0..f.size() as u16).collect();
    pts.shuffle(rng);
    let points = pts[..delta].iter().map(|&v| Fe(v)).collect();
    let mults = (0..delta).map(|_| Fe(rng.gen_range(1..f.size()) as u16)).collect();
    GrsCode::with_points(f, k, points, mults).unwrap()
}

fn all_messages(q: usize, k: usize) -> impl Iterator<Item = Vec<Fe>> {
    (0..q.pow(k as u32)).map(move |mut i| {
        (0..k)
            .map(|_| {
                let v = i % q;
                i /= q;
                Fe(v as u16)
            })
            .collect()
    })
}

#[test]
fn random_grs_codes_are_mds() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for (ell, delta, k) in [(3, 8, 2), (3, 7, 3), (3, 6, 4), (4, 8, 3), (3, 5, 1), (4, 8, 4)] {
        for _ in 0..3 {
            let code = random_grs(&mut rng, ell, delta, k);
            let q = 1 << ell;
            let min = all_messages(q, k)
                .skip(1)
                .map(|m| code.encode(&m).unwrap().iter().filter(|v| !v.is_zero()).count())
                .min()
                .unwrap();
            assert_eq!(min, delta - k + 1, "ℓ={ell} Δ={delta} k={k}");
        }
    }
}

fn error_erasure_patterns(delta: usize, d: usize, q: u16) -> Vec<Vec<Option<u16>>> {
    // each entry: None = erased, Some(0) = clean, Some(e) = error value e
    let mut out = Vec::new();
    let mut cur = vec![Some(0u16); delta];
    fn rec(
        i: usize,
        cur: &mut Vec<Option<u16>>,
        errs: usize,
        eras: usize,
        d: usize,
        q: u16,
        out: &mut Vec<Vec<Option<u16>>>,
    ) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        rec(i + 1, cur, errs, eras, d, q, out);
        if 2 * errs + eras + 1 < d {
            cur[i] = None;
            rec(i + 1, cur, errs, eras + 1, d, q, out);
        }
        if 2 * (errs + 1) + eras < d {
            for e in 1..q {
                cur[i] = Some(e);
                rec(i + 1, cur, errs + 1, eras, d, q, out);
            }
        }
        cur[i] = Some(0);
    }
    rec(0, &mut cur, 0, 0, d, q, &mut out);
    out
}

#[test]
fn errors_and_erasures_exhaustive_rs73() {
    let f = Arc::new(Field::new(3).unwrap());
    let code = GrsCode::new(f.clone(), 7, 3).unwrap();
    let patterns = error_erasure_patterns(7, code.distance(), 8);
    assert_eq!(patterns.len(), 1079 + 301 + 756 + 35 + 35);
    for m in all_messages(8, 3) {
        let c = code.encode(&m).unwrap();
        for p in &patterns {
            let w: Vec<Option<Fe>> = c.iter().zip(p).map(|(&v, e)| e.map(|e| f.add(v, Fe(e)))).collect();
            assert_eq!(code.decode_errors_erasures(&w).unwrap(), Ok(c.clone()), "{p:?}");
        }
    }
}

proptest! {
    #[test]
    fn random_grs_decodes_within_radius(
        seed in any::<u64>(),
        shape in prop::sample::select(vec![(3u32, 8usize, 2usize), (3, 7, 3), (4, 8, 4), (4, 12, 5), (5, 20, 8)]),
    ) {
        let (ell, delta, k) = shape;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let code = random_grs(&mut rng, ell, delta, k);
        let f = code.field().clone();
        let q = f.size();
        let m: Vec<Fe> = (0..k).map(|_| Fe(rng.gen_range(0..q) as u16)).collect();
        let c = code.encode(&m).unwrap();
        let d = code.distance();
        let nu = rng.gen_range(0..d);
        let theta = rng.gen_range(0..=(d - 1 - nu) / 2);
        let theta = if 2 * theta + nu >= d { 0 } else { theta };
        let mut pos: Vec<usize> = (0..delta).collect();
        pos.shuffle(&mut rng);
        let mut w: Vec<Option<Fe>> = c.iter().copied().map(Some).collect();
        for &i in &pos[..nu] {
            w[i] = None;
        }
        for &i in &pos[nu..nu + theta] {
            w[i] = Some(f.add(c[i], Fe(rng.gen_range(1..q) as u16)));
        }
        prop_assert_eq!(code.decode_errors_erasures(&w).unwrap(), Ok(c));
    }
}
