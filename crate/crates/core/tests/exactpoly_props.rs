mod common;

use common::*;
use proptest::prelude::*;
use supergeom::exactpoly::{generate_group, int, Polynomial, SignedPerm, Substitution};

fn hyperoctahedral(n: usize) -> Vec<SignedPerm> {
    let mut gens: Vec<SignedPerm> = (0..n - 1).map(|i| SignedPerm::transposition(n, i, i + 1)).collect();
    gens.push(SignedPerm::sign_flip(n, 0));
    generate_group(n, &gens)
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn term_order_does_not_matter(terms in raw_terms(3, 4, false, 8), seed in any::<u64>()) {
        let ring = affine(3);
        let mut shuffled = terms.clone();
        // deterministic rotation plus reversal
        let k = (seed as usize) % shuffled.len().max(1);
        shuffled.rotate_left(k);
        shuffled.reverse();
        prop_assert_eq!(build(&ring, &terms).to_string(), build(&ring, &shuffled).to_string());
    }

    #[test]
    fn ring_axioms(f in poly(affine(3), 3, 5), g in poly(affine(3), 3, 5), h in poly(affine(3), 2, 4)) {
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert!((&(&(&f + &g) - &g) - &f).is_zero());
    }

    #[test]
    fn laurent_ring_axioms(f in poly(laurent(2), 3, 5), g in poly(laurent(2), 3, 5)) {
        prop_assert_eq!(&f * &g, &g * &f);
        let x = Polynomial::var(f.ring(), 0);
        let xi = x.unit_inverse().unwrap();
        prop_assert_eq!(&(&f * &x) * &xi, f.clone());
    }

    #[test]
    fn substitution_is_a_ring_homomorphism(
        f in poly(affine(3), 3, 5),
        g in poly(affine(3), 3, 5),
        images in proptest::collection::vec(poly(affine(2), 2, 3), 3),
    ) {
        let target = images[0].ring().clone();
        let s = Substitution::new(f.ring(), &target, images).unwrap();
        let lhs = (&f * &g).substitute(&s).unwrap();
        let rhs = &f.substitute(&s).unwrap() * &g.substitute(&s).unwrap();
        prop_assert_eq!(lhs, rhs);
        let lhs = (&f + &g).substitute(&s).unwrap();
        prop_assert_eq!(lhs, &f.substitute(&s).unwrap() + &g.substitute(&s).unwrap());
    }

    #[test]
    fn group_action_distributes(f in poly(laurent(3), 2, 4), g in poly(laurent(3), 2, 4), k in 0usize..48) {
        let group = hyperoctahedral(3);
        let w = &group[k % group.len()];
        let act = |p: &Polynomial| p.apply_group_element(w).unwrap();
        prop_assert_eq!(act(&(&f * &g)), &act(&f) * &act(&g));
        prop_assert_eq!(act(&(&f + &g)), &act(&f) + &act(&g));
        // (uv)·f = u·(v·f)
        let u = &group[(k * 7 + 3) % group.len()];
        prop_assert_eq!(
            f.apply_group_element(&u.compose(w)).unwrap(),
            act(&f).apply_group_element(u).unwrap()
        );
    }

    #[test]
    fn reynolds_is_idempotent_and_invariant(f in poly(affine(3), 3, 5), laurent_f in poly(laurent(2), 2, 4)) {
        for (p, group) in [(f, hyperoctahedral(3)), (laurent_f, hyperoctahedral(2))] {
            let r = p.reynolds(&group).unwrap();
            prop_assert_eq!(r.reynolds(&group).unwrap(), r.clone());
            for w in &group {
                prop_assert_eq!(r.apply_group_element(w).unwrap(), r.clone());
            }
        }
    }

    #[test]
    fn eval_is_a_homomorphism(f in poly(affine(3), 3, 5), g in poly(affine(3), 3, 5), p in proptest::collection::vec(small_rational(), 3)) {
        prop_assert_eq!((&f * &g).eval(&p).unwrap(), f.eval(&p).unwrap() * g.eval(&p).unwrap());
    }
}

proptest! {
    #![proptest_config(config(200))]

    #[test]
    fn divide_exact_recovers_factor(f in poly(affine(3), 4, 6), g in poly(affine(3), 4, 6)) {
        prop_assume!(!g.is_zero());
        let q = (&f * &g).divide_exact(&g).unwrap();
        prop_assert_eq!(q, Some(f));
    }

    #[test]
    fn divide_exact_laurent(f in poly(laurent(2), 4, 5), g in poly(laurent(2), 4, 5)) {
        prop_assume!(!g.is_zero());
        let q = (&f * &g).divide_exact(&g).unwrap().expect("exact quotient");
        prop_assert_eq!(&q * &g, &f * &g);
    }
}

#[test]
fn non_divisible_is_rejected() {
    let r = affine(2);
    let f = Polynomial::parse(&r, "X1^2 + X2").unwrap();
    let g = Polynomial::parse(&r, "X1 + 1").unwrap();
    assert_eq!(f.divide_exact(&g).unwrap(), None);
    assert_eq!(f.scale(&int(3)).divide_exact(&f).unwrap(), Some(Polynomial::from_int(&r, 3)));
}
