#![allow(dead_code)]

use proptest::prelude::*;
use proptest::test_runner::RngSeed;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use supergeom::exactpoly::{int, Monomial, Polynomial, Rational, Ring, RingContext, RingMode};
use supergeom::groupoid::in_domain;
use supergeom::invariants::{Setting, Space};
use supergeom::rootdata::Root;

/// Fixed seed so every run explores the same cases.
pub fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, rng_seed: RngSeed::Fixed(0x5eed), failure_persistence: None, ..ProptestConfig::default() }
}

pub fn affine(n: usize) -> Ring {
    RingContext::new(RingMode::Affine, (1..=n).map(|i| format!("X{i}"))).unwrap()
}

pub fn laurent(n: usize) -> Ring {
    RingContext::new(RingMode::Laurent, (1..=n).map(|i| format!("x{i}"))).unwrap()
}

pub fn experimental(ty: &str, space: Space) -> Setting {
    Setting::experimental(ty.parse().unwrap(), space).unwrap()
}

pub fn setting(ty: &str, space: Space) -> Setting {
    Setting::new(ty.parse().unwrap(), space).unwrap()
}

/// Raw terms: exponent vectors of total degree `<= deg` (absolute degree
/// when `negative`) and small nonzero coefficients.
pub fn raw_terms(n: usize, deg: i32, negative: bool, max_terms: usize) -> impl Strategy<Value = Vec<(Vec<i32>, i64)>> {
    let lo = if negative { -deg } else { 0 };
    let term = (proptest::collection::vec(lo..=deg, n), (-5i64..=5).prop_filter("nonzero", |c| *c != 0))
        .prop_filter("degree", move |(e, _)| e.iter().map(|x| x.abs()).sum::<i32>() <= deg);
    proptest::collection::vec(term, 0..=max_terms)
}

pub fn build(ring: &Ring, terms: &[(Vec<i32>, i64)]) -> Polynomial {
    Polynomial::from_terms(ring, terms.iter().map(|(e, c)| (Monomial::new(e.clone()), int(*c)))).unwrap()
}

pub fn poly(ring: Ring, deg: i32, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    let negative = ring.is_laurent();
    raw_terms(ring.arity(), deg, negative, max_terms).prop_map(move |t| build(&ring, &t))
}

pub fn small_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(a, b)| Rational::new(a.into(), b.into()))
}

pub fn nonzero_rational() -> impl Strategy<Value = Rational> {
    small_rational().prop_filter("nonzero", |r| *r != int(0))
}

pub fn rational(rng: &mut ChaCha8Rng, nonzero: bool) -> Rational {
    loop {
        let r = Rational::new(rng.gen_range(-5i64..=5).into(), rng.gen_range(1i64..=3).into());
        if !nonzero || r != int(0) {
            return r;
        }
    }
}

/// A random point of `Π_α` (or `𝕋_α`), solving the defining equation for
/// one coordinate.
pub fn domain_point(rng: &mut ChaCha8Rng, s: &Setting, alpha: &Root) -> Option<Vec<Rational>> {
    let rs = s.rs();
    let v = rs.hyperplane_vector(alpha);
    let mut p: Vec<Rational> = (0..s.dim()).map(|_| rational(rng, !s.is_additive())).collect();
    if s.is_additive() {
        let w: Vec<i64> = (0..p.len()).map(|k| rs.gram[k] * v.0[k]).collect();
        let k = w.iter().position(|&x| x != 0)?;
        let rest: Rational = (0..p.len()).filter(|&i| i != k).map(|i| &p[i] * int(w[i])).sum();
        p[k] = -rest / int(w[k]);
    } else {
        let k = v.0.iter().position(|&x| x.abs() == 1)?;
        let mut rest = int(1);
        for i in (0..p.len()).filter(|&i| i != k) {
            for _ in 0..v.0[i].abs() {
                rest = if v.0[i] > 0 { rest * &p[i] } else { rest / &p[i] };
            }
        }
        p[k] = if v.0[k] == 1 { rest.recip() } else { rest };
    }
    assert!(in_domain(s, &p, alpha));
    Some(p)
}
