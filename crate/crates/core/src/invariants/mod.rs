//! Membership oracles for the supersymmetric invariants, the element `T`,
//! the evaluation map `ev` and a few verified generators.
//!
//! The additive side uses the affine ring on `X1.., Y1..`; the torus side the
//! Laurent ring on `x1.., y1..`. Types p and q only have the `X`/`x` block.

mod oracle;
mod setting;
mod space;
mod telem;

pub use oracle::{
    condition_roots, derivative, is_supersymmetric, is_w_invariant, supersymmetry_check, supersymmetry_defects,
    Membership,
};
pub use setting::{Setting, Space};
pub use space::{ev_kernel, generator_candidates, invariant_basis, supersymmetric_subspace};
pub use telem::{ev_lift_point, ev_map, rho_iso, t_element, TElement};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::{rat, Polynomial};
    use crate::rootdata::SuperType;

    fn setting(ty: &str, space: Space) -> Setting {
        Setting::new(ty.parse::<SuperType>().unwrap(), space).unwrap()
    }

    fn add(ty: &str) -> Setting {
        setting(ty, Space::Additive)
    }

    fn mul(ty: &str) -> Setting {
        setting(ty, Space::Multiplicative)
    }

    fn ss(s: &Setting, f: &str) -> bool {
        is_supersymmetric(&s.parse(f).unwrap(), s).unwrap()
    }

    #[test]
    fn p_additive_rejected() {
        assert!(Setting::new(SuperType::p(3), Space::Additive).is_err());
    }

    #[test]
    fn w_invariance() {
        let s = add("gl(2|1)");
        assert!(is_w_invariant(&s.parse("X1+X2+Y1").unwrap(), &s).unwrap());
        assert!(!is_w_invariant(&s.parse("X1").unwrap(), &s).unwrap());
        let s = mul("osp(5|2)");
        assert!(is_w_invariant(&s.parse("x1+x1^-1+x2+x2^-1").unwrap(), &s).unwrap());
        assert!(!is_w_invariant(&s.parse("x1+x2").unwrap(), &s).unwrap());
        let other = add("gl(1|1)");
        assert!(is_w_invariant(&other.parse("X1").unwrap(), &s).is_err());
    }

    #[test]
    fn gl11_examples() {
        let s = add("gl(1|1)");
        assert!(ss(&s, "X1+Y1"));
        assert!(!ss(&s, "X1"));
        assert!(ss(&s, "X1*(X1+Y1)"));
        let m = supersymmetry_check(&s.parse("X1").unwrap(), &s, false).unwrap();
        assert!(m.witness.unwrap().contains("e1-d1"));
    }

    #[test]
    fn power_sum_signs() {
        let s = add("gl(2|1)");
        assert!(ss(&s, "X1+X2+Y1"));
        assert!(!ss(&s, "X1+X2-Y1"));
        assert!(ss(&s, "X1^2+X2^2-Y1^2"));
        assert!(!ss(&s, "X1^2+X2^2+Y1^2"));
        assert!(ss(&s, "X1^3+X2^3+Y1^3"));
    }

    #[test]
    fn q_examples() {
        let s = add("q(2)");
        assert!(ss(&s, "X1+X2"));
        assert!(!ss(&s, "X1*X2"));
        let s = mul("q(3)");
        assert!(ss(&s, "x1+x2+x3"));
        assert!(ss(&s, "x1^-1+x2^-1+x3^-1"));
        assert!(!ss(&s, "x1^2+x2^2+x3^2"));
    }

    #[test]
    fn torus_gl() {
        let s = mul("gl(1|1)");
        assert!(ss(&s, "x1 - y1"));
        assert!(!ss(&s, "x1 + y1"));
        assert!(ss(&s, "x1*y1^-1"));
    }

    #[test]
    fn t_elements() {
        let s = add("gl(2|1)");
        assert_eq!(t_element(&s).unwrap().poly, s.parse("(X1+Y1)*(X2+Y1)").unwrap());
        let s = add("q(3)");
        assert_eq!(t_element(&s).unwrap().poly, s.parse("(X1+X2)*(X1+X3)*(X2+X3)").unwrap());
        let s = mul("p(2)");
        assert_eq!(t_element(&s).unwrap().poly, s.parse("1-x1*x2").unwrap());
        let s = add("osp(3|2)");
        assert_eq!(t_element(&s).unwrap().poly, s.parse("X1^2-Y1^2").unwrap());
        for (ty, sp) in [
            ("gl(2|2)", Space::Multiplicative),
            ("gl(2|1)", Space::Multiplicative),
            ("osp(5|4)", Space::Additive),
            ("osp(4|2)", Space::Multiplicative),
            ("osp(3|2)", Space::Multiplicative),
            ("q(3)", Space::Multiplicative),
            ("p(3)", Space::Multiplicative),
            ("sl(3|1)", Space::Additive),
        ] {
            let s = setting(ty, sp);
            let t = t_element(&s).unwrap_or_else(|e| panic!("{ty} {sp}: {e}"));
            assert!(!t.poly.is_constant());
        }
    }

    #[test]
    fn rho_iso_values() {
        let s = add("gl(2|2)");
        assert_eq!(rho_iso(s.rs()), vec![rat(1, 1), rat(1, 1), rat(-1, 1), rat(-1, 1)]);
        let s = add("gl(2|1)");
        assert_eq!(rho_iso(s.rs())[0], rat(1, 2));
    }

    #[test]
    fn ev_examples() {
        let s = add("gl(2|1)");
        assert!(ev_map(&s.parse("(X1+Y1)*(X2+Y1)").unwrap(), &s).unwrap().is_zero());
        let s = add("q(3)");
        let v = ev_map(&s.parse("X1+X2+X3").unwrap(), &s).unwrap();
        assert_eq!(v.to_string(), "X1");
        let s = mul("gl(2|2)");
        let v = ev_map(&s.parse("x1+x2-y1-y2").unwrap(), &s).unwrap();
        let r = s.reduced().unwrap();
        assert_eq!(v, r.parse("x1-y1").unwrap());
        assert!(is_supersymmetric(&v, &r).unwrap());
        let s = mul("q(3)");
        assert_eq!(ev_map(&s.parse("x1+x2+x3").unwrap(), &s).unwrap().to_string(), "x1");
        assert!(ev_map(&add("gl(1|0)").parse("X1").unwrap(), &add("gl(1|0)")).is_err());
    }

    #[test]
    fn oracle_agrees_with_defects() {
        for s in [add("gl(2|1)"), mul("gl(2|2)"), add("q(3)"), mul("q(3)"), mul("p(3)"), add("osp(3|2)")] {
            for f in invariant_basis(&s, 3).unwrap() {
                let by_division = is_supersymmetric(&f, &s).unwrap();
                let by_restriction = supersymmetry_defects(&f, &s, true).unwrap().iter().all(Polynomial::is_zero);
                assert_eq!(by_division, by_restriction, "{} {f}", s.ty());
            }
        }
    }

    #[test]
    fn strict_mode_agrees() {
        for s in [add("gl(2|2)"), mul("osp(3|2)"), add("q(3)")] {
            for f in invariant_basis(&s, 2).unwrap() {
                let a = supersymmetry_check(&f, &s, false).unwrap().member;
                let b = supersymmetry_check(&f, &s, true).unwrap().member;
                assert_eq!(a, b, "{f}");
            }
        }
    }

    #[test]
    fn subspace_members_pass_oracle() {
        let s = add("gl(2|1)");
        let sub = supersymmetric_subspace(&s, &invariant_basis(&s, 3).unwrap()).unwrap();
        // at least 1, p1, p1^2, p2, p1^3, p1 p2, p3
        assert!(sub.len() >= 7);
        for f in &sub {
            assert!(is_supersymmetric(f, &s).unwrap(), "{f}");
        }
    }

    #[test]
    fn candidates_verified() {
        for s in [add("gl(2|1)"), mul("gl(2|2)"), add("q(3)"), mul("q(3)"), mul("p(3)"), add("osp(5|4)")] {
            let c = generator_candidates(&s, 3).unwrap();
            assert!(c.iter().any(Polynomial::is_one));
            assert!(c.contains(&t_element(&s).unwrap().poly));
            for f in &c {
                assert!(is_supersymmetric(f, &s).unwrap());
            }
        }
        let s = add("gl(2|1)");
        let c = generator_candidates(&s, 3).unwrap();
        assert!(c.contains(&s.parse("X1^2+X2^2-Y1^2").unwrap()));
    }

    #[test]
    fn kernel_of_ev_is_t_multiples() {
        for (s, d) in [(add("gl(2|1)"), 4), (mul("gl(2|2)"), 4), (add("q(3)"), 4), (mul("q(3)"), 4), (mul("p(3)"), 3)] {
            let t = t_element(&s).unwrap().poly;
            let sub = supersymmetric_subspace(&s, &invariant_basis(&s, d).unwrap()).unwrap();
            let ker = ev_kernel(&s, &sub).unwrap();
            assert!(!ker.is_empty(), "{}", s.ty());
            for f in &ker {
                let q = f.divide_exact(&t).unwrap().unwrap_or_else(|| panic!("{}: T does not divide {f}", s.ty()));
                assert!(is_w_invariant(&q, &s).unwrap());
            }
        }
    }
}
