use super::*;
use crate::exactpoly::{int, rat};
use crate::groebner::Ideal;
use crate::groupoid::orbit_description;
use crate::invariants::{t_element, Space};

fn setting(ty: &str, space: Space) -> Setting {
    Setting::new(ty.parse().unwrap(), space).unwrap()
}

fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&a| int(a)).collect()
}

fn budget() -> Budget {
    Budget::default()
}

fn w_orbit(s: &Setting, p: &[Rational]) -> Vec<Vec<Rational>> {
    let mut out: Vec<Vec<Rational>> = s.rs().weyl_group().iter().map(|w| crate::groupoid::act_weyl(s, w, p)).collect();
    out.sort();
    out.dedup();
    out
}

#[test]
fn projection_examples() {
    let s = setting("gl(2|1)", Space::Additive);
    let chain = s.rs().standard_chain(1).unwrap();
    let sub = projection_substitution(&s, &chain).unwrap();
    let images: Vec<String> = sub.images().iter().map(|p| p.to_string()).collect();
    assert_eq!(images, vec!["X1", "0", "0"]);
    // λ - p(λ) ∈ kβ for λ ∈ Π_β
    let lam = ints(&[3, 1, -1]);
    let proj: Vec<Rational> = sub.images().iter().map(|p| p.eval(&lam).unwrap()).collect();
    let diff: Vec<Rational> = lam.iter().zip(&proj).map(|(a, b)| a - b).collect();
    assert_eq!(diff, ints(&[0, 1, -1]));

    let s = setting("gl(2|2)", Space::Multiplicative);
    let chain = s.rs().standard_chain(1).unwrap();
    let sub = projection_substitution(&s, &chain).unwrap();
    let lam = vec![rat(3, 1), rat(5, 2), rat(7, 1), rat(5, 2)];
    let proj: Vec<Rational> = sub.images().iter().map(|p| p.eval(&lam).unwrap()).collect();
    let ratio: Vec<Rational> = lam.iter().zip(&proj).map(|(a, b)| a / b).collect();
    // c_β(x2) for β = e2 - d2
    assert_eq!(ratio, vec![int(1), rat(5, 2), int(1), rat(5, 2)]);

    let empty = projection_substitution(&s, &[]).unwrap();
    assert_eq!(empty.images(), Substitution::identity(s.ring()).images());
    let bad = vec![s.rs().parse_root("e1-d1").unwrap()];
    assert!(projection_substitution(&s, &bad).is_err());
}

#[test]
fn gl11_singleton_closes_to_line() {
    let s = setting("gl(1|1)", Space::Additive);
    let v = ClosedSet::from_points(&s, &[ints(&[1, -1])], &budget()).unwrap();
    assert!(v.w_invariant);
    let l1 = level_ideal(&v, 1, &s, ZConvention::Beta, &budget()).unwrap();
    assert_eq!(l1.canonical_form(&budget()).unwrap(), vec!["X1 + Y1"]);
    let res = s_closure(&v, &s, ZConvention::Beta, &budget()).unwrap();
    assert_eq!(res.atyp, 1);
    let line = Ideal::parse(s.ring(), &["X1+Y1"]).unwrap();
    assert!(res.closure.same_locus(&line, &budget()).unwrap());
    assert!(!is_superalgebraic(&v, &s, &budget()).unwrap());

    let typical = ClosedSet::from_points(&s, &[ints(&[1, 0])], &budget()).unwrap();
    let res = s_closure(&typical, &s, ZConvention::Beta, &budget()).unwrap();
    assert_eq!(res.atyp, 0);
    assert!(is_superalgebraic(&typical, &s, &budget()).unwrap());
}

#[test]
fn sigma_convention_differs() {
    let s = setting("gl(1|1)", Space::Additive);
    let v = ClosedSet::from_points(&s, &[ints(&[1, -1])], &budget()).unwrap();
    let l1 = level_ideal(&v, 1, &s, ZConvention::Sigma, &budget()).unwrap();
    assert_eq!(l1.canonical_form(&budget()).unwrap(), vec!["X1"]);
}

#[test]
fn whole_space_and_t_locus() {
    let s = setting("gl(2|1)", Space::Additive);
    let all = ClosedSet::new(Ideal::zero(s.ring()), &s, &budget()).unwrap();
    let res = s_closure(&all, &s, ZConvention::Beta, &budget()).unwrap();
    assert!(res.closure.generators().is_empty());
    let t = t_element(&s).unwrap().poly;
    let v = ClosedSet::new(Ideal::new(s.ring(), [t]).unwrap(), &s, &budget()).unwrap();
    assert!(is_superalgebraic(&v, &s, &budget()).unwrap());
}

#[test]
fn non_invariant_input_rejected() {
    let s = setting("gl(2|1)", Space::Additive);
    let v = ClosedSet::new(Ideal::parse(s.ring(), &["X1"]).unwrap(), &s, &budget()).unwrap();
    assert!(!v.w_invariant);
    assert!(matches!(s_closure(&v, &s, ZConvention::Beta, &budget()), Err(Error::NotWInvariant(_))));
    let q = setting("q(3)", Space::Additive);
    let v = ClosedSet::new(Ideal::zero(q.ring()), &q, &budget()).unwrap();
    assert!(s_closure(&v, &q, ZConvention::Beta, &budget()).is_err());
}

#[test]
fn typical_orbit_is_fixed() {
    for (ty, space, p) in [
        ("gl(2|1)", Space::Additive, ints(&[3, 1, 5])),
        ("gl(2|2)", Space::Additive, ints(&[1, 2, 5, 7])),
        ("gl(2|1)", Space::Multiplicative, ints(&[3, 2, 5])),
    ] {
        let s = setting(ty, space);
        let v = ClosedSet::from_points(&s, &w_orbit(&s, &p), &budget()).unwrap();
        assert!(v.w_invariant);
        let res = s_closure(&v, &s, ZConvention::Beta, &budget()).unwrap();
        assert_eq!(res.atyp, 0);
        assert!(res.closure.same_locus(&v.ideal, &budget()).unwrap());
    }
}

#[test]
fn orbit_ideal_matches_closure_of_w_orbit() {
    for (ty, space, p) in [
        ("gl(1|1)", Space::Additive, ints(&[2, -2])),
        ("gl(2|1)", Space::Additive, ints(&[3, 1, -1])),
        ("gl(2|2)", Space::Additive, ints(&[1, 0, -1, 0])),
        ("gl(2|1)", Space::Multiplicative, ints(&[3, 2, 2])),
    ] {
        let s = setting(ty, space);
        let orbit = orbit_closure_ideal(&s, &p, &budget()).unwrap();
        let v = ClosedSet::from_points(&s, &w_orbit(&s, &p), &budget()).unwrap();
        let res = s_closure(&v, &s, ZConvention::Beta, &budget()).unwrap();
        assert!(res.closure.same_locus(&orbit.ideal, &budget()).unwrap(), "{ty} {space}");
    }
    let s = setting("gl(1|1)", Space::Additive);
    let o = orbit_closure_ideal(&s, &ints(&[2, -2]), &budget()).unwrap();
    assert_eq!(o.ideal.canonical_form(&budget()).unwrap(), vec!["X1 + Y1"]);
    assert!(o.flagged.is_empty());
}

#[test]
fn orbit_ideal_vanishes_on_orbit() {
    for (ty, space, p) in [
        ("gl(2|2)", Space::Multiplicative, ints(&[3, 2, 5, 2])),
        ("osp(3|2)", Space::Multiplicative, ints(&[2, 2])),
        ("osp(3|2)", Space::Additive, ints(&[2, -2])),
        ("q(3)", Space::Additive, ints(&[4, -4, 1])),
    ] {
        let s = setting(ty, space);
        let o = orbit_closure_ideal(&s, &p, &budget()).unwrap();
        let desc = orbit_description(&s, &p).unwrap();
        assert_eq!(desc.dim(), 1, "{ty}");
        for w in s.rs().weyl_group() {
            for t in [rat(2, 1), rat(-1, 3)] {
                let q = desc.point(&s, w, &[t]).unwrap();
                for g in o.ideal.generators() {
                    assert!(g.eval(&q).unwrap() == int(0), "{ty}: {g} at {q:?}");
                }
            }
        }
    }
}

#[test]
fn tau_stability_into_closure() {
    let s = setting("gl(2|2)", Space::Additive);
    let v = ClosedSet::from_points(&s, &w_orbit(&s, &ints(&[1, 0, -1, 0])), &budget()).unwrap();
    let res = s_closure(&v, &s, ZConvention::Beta, &budget()).unwrap();
    assert_eq!(res.atyp, 2);
    for level in &res.levels {
        let rep = tau_maps_into(&s, level, &res.closure, &budget()).unwrap();
        assert!(rep.failures.is_empty(), "{:?}", rep.failures);
    }
    // The first level on its own is not stable: its points on Π_β leave it.
    let rep = tau_maps_into(&s, &res.levels[1], &res.levels[1], &budget()).unwrap();
    assert!(!rep.failures.is_empty());
}
