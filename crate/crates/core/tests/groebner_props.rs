mod common;

use common::*;
use proptest::prelude::*;
use supergeom::exactpoly::{int, Polynomial, Rational, Ring, RingContext, RingMode};
use supergeom::groebner::{
    elimination_ideal, ideal_intersect, ideal_membership, radical_membership, reduce_by_basis, Budget, Ideal,
    MonomialOrder,
};

fn budget() -> Budget {
    Budget::default()
}

fn point_ideal(ring: &Ring, p: &[Rational]) -> Ideal {
    let gens = p.iter().enumerate().map(|(i, a)| &Polynomial::var(ring, i) - &Polynomial::constant(ring, a.clone()));
    Ideal::new(ring, gens).unwrap()
}

fn square(i: &Ideal) -> Ideal {
    let g = i.generators();
    let prods = g.iter().flat_map(|a| g.iter().map(move |b| a * b));
    Ideal::new(i.ring(), prods).unwrap()
}

fn points_ideal(ring: &Ring, pts: &[Vec<Rational>], squared: bool) -> Ideal {
    let mut acc = Ideal::unit(ring);
    for p in pts {
        let m = point_ideal(ring, p);
        let m = if squared { square(&m) } else { m };
        acc = ideal_intersect(&acc, &m, &budget()).unwrap();
    }
    acc
}

fn ideal_gens(n: usize) -> impl Strategy<Value = Vec<Vec<(Vec<i32>, i64)>>> {
    proptest::collection::vec(raw_terms(n, 2, false, 3), 1..=3)
}

proptest! {
    #![proptest_config(config(40))]

    #[test]
    fn reduced_basis_is_unique(gens in ideal_gens(3), scales in proptest::collection::vec(nonzero_rational(), 3), rot in 0usize..3) {
        let ring = affine(3);
        let polys: Vec<Polynomial> = gens.iter().map(|t| build(&ring, t)).collect();
        let mut other: Vec<Polynomial> = polys.iter().zip(&scales).map(|(p, c)| p.scale(c)).collect();
        let k = rot % other.len();
        other.rotate_left(k);
        other.reverse();
        let a = Ideal::new(&ring, polys).unwrap();
        let b = Ideal::new(&ring, other).unwrap();
        for ord in [MonomialOrder::Grevlex, MonomialOrder::Lex, MonomialOrder::block(&[0])] {
            prop_assert_eq!(a.groebner(&ord, &budget()).unwrap(), b.groebner(&ord, &budget()).unwrap());
        }
    }

    #[test]
    fn basis_reduces_generators_to_zero(gens in ideal_gens(3)) {
        let ring = affine(3);
        let ideal = Ideal::new(&ring, gens.iter().map(|t| build(&ring, t))).unwrap();
        for ord in [MonomialOrder::Grevlex, MonomialOrder::Lex] {
            let gb = ideal.groebner(&ord, &budget()).unwrap();
            for g in ideal.generators() {
                prop_assert!(reduce_by_basis(g, &gb, &ord).is_zero());
            }
        }
    }

    #[test]
    fn membership_implies_radical_membership(gens in ideal_gens(3), mult in proptest::collection::vec(poly(affine(3), 1, 3), 3), f in poly(affine(3), 2, 3)) {
        let ring = affine(3);
        let ideal = Ideal::new(&ring, gens.iter().map(|t| build(&ring, t))).unwrap();
        let combo = ideal.generators().iter().zip(&mult).fold(Polynomial::zero(&ring), |acc, (g, m)| &acc + &(g * m));
        prop_assert!(ideal_membership(&combo, &ideal, &budget()).unwrap());
        prop_assert!(radical_membership(&combo, &ideal, &budget()).unwrap());
        if ideal_membership(&f, &ideal, &budget()).unwrap() {
            prop_assert!(radical_membership(&f, &ideal, &budget()).unwrap());
        }
        // powers of radical members are members of the radical too
        if radical_membership(&f, &ideal, &budget()).unwrap() {
            prop_assert!(radical_membership(&f.pow(2), &ideal, &budget()).unwrap());
        }
    }
}

proptest! {
    #![proptest_config(config(24))]

    #[test]
    fn elimination_projects_finite_point_sets(
        pts in proptest::collection::vec(proptest::collection::vec(small_rational(), 3), 1..=3),
        probe in proptest::collection::vec(small_rational(), 2),
        squared in any::<bool>(),
    ) {
        let ring = affine(3);
        let ideal = points_ideal(&ring, &pts, squared);
        let elim = elimination_ideal(&ideal, &[0], &budget()).unwrap();
        let sub = elim.ring().clone();
        prop_assert_eq!(sub.arity(), 2);
        let projected: Vec<Vec<Rational>> = pts.iter().map(|p| p[1..].to_vec()).collect();
        for q in &projected {
            for g in elim.generators() {
                prop_assert_eq!(g.eval(q).unwrap(), int(0));
            }
        }
        let expected = points_ideal(&sub, &projected, false);
        prop_assert!(elim.same_locus(&expected, &budget()).unwrap());
        if !projected.contains(&probe) {
            prop_assert!(elim.generators().iter().any(|g| g.eval(&probe).unwrap() != int(0)));
        }
        if !squared {
            // the ideal of finitely many points is radical, and so is its projection
            prop_assert_eq!(elim.canonical_form(&budget()).unwrap(), expected.canonical_form(&budget()).unwrap());
        }
    }

    #[test]
    fn intersection_is_membership_in_both(
        a in ideal_gens(2),
        b in ideal_gens(2),
        f in poly(affine(2), 3, 4),
    ) {
        let ring = affine(2);
        let i = Ideal::new(&ring, a.iter().map(|t| build(&ring, t))).unwrap();
        let j = Ideal::new(&ring, b.iter().map(|t| build(&ring, t))).unwrap();
        let both = ideal_intersect(&i, &j, &budget()).unwrap();
        let mut probes = vec![f];
        for g in i.generators() {
            probes.push(g.clone());
            for h in j.generators() {
                probes.push(g * h);
            }
        }
        probes.extend(j.generators().iter().cloned());
        for p in &probes {
            let lhs = both.contains(p, &budget()).unwrap();
            let rhs = i.contains(p, &budget()).unwrap() && j.contains(p, &budget()).unwrap();
            prop_assert_eq!(lhs, rhs, "{}", p);
        }
    }

    #[test]
    fn laurent_membership_matches_affine_multiple(f in poly(laurent(2), 2, 3), g in poly(laurent(2), 2, 3)) {
        prop_assume!(!g.is_zero());
        let ideal = Ideal::new(g.ring(), [g.clone()]).unwrap();
        prop_assert!(ideal_membership(&(&f * &g), &ideal, &budget()).unwrap());
    }
}

#[test]
fn twisted_cubic_elimination() {
    let r = RingContext::new(RingMode::Affine, ["t", "x", "y", "z"].map(String::from)).unwrap();
    let ideal = Ideal::parse(&r, &["x - t", "y - t^2", "z - t^3"]).unwrap();
    let elim = elimination_ideal(&ideal, &[0], &budget()).unwrap();
    let expected = Ideal::parse(elim.ring(), &["y - x^2", "z - x*y", "x*z - y^2"]).unwrap();
    assert_eq!(elim.canonical_form(&budget()).unwrap(), expected.canonical_form(&budget()).unwrap());
}
