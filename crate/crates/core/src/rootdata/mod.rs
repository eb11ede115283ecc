//! Root data for gl, sl, osp, p and q: roots, the invariant form, Weyl
//! groups, iso-sets, rank-lowering reductions and one-parameter subgroups.
//!
//! Coordinates are `ε_1..ε_m, δ_1..δ_n` with `(ε_i, ε_j) = δ_ij` and, in
//! the KM families, `(δ_i, δ_j) = -δ_ij`. Types p and q have only ε.

mod ds;
mod system;
mod types;

pub use ds::{
    check_admissible, check_span_nondegenerate, delta_beta, ds_reduction, verify_pairing_law, DsReduction,
    PairingReport, SpanCheck,
};
pub use system::{build_root_system, Root, RootSystem};
pub use types::{Family, SuperType};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::int;

    fn rs(s: &str) -> RootSystem {
        build_root_system(s.parse().unwrap()).unwrap()
    }

    fn labels(rs: &RootSystem, v: &[Root]) -> Vec<String> {
        v.iter().map(|r| rs.root_label(r)).collect()
    }

    #[test]
    fn gl11() {
        let r = rs("gl(1|1)");
        assert_eq!(labels(&r, &r.iso), vec!["-e1+d1", "e1-d1"]);
        assert_eq!(r.weyl_group().len(), 1);
        assert_eq!(labels(&r, &r.omega), vec!["e1-d1"]);
    }

    #[test]
    fn q3() {
        let r = rs("q(3)");
        let mut pos = labels(&r, &r.iso);
        pos.sort();
        assert_eq!(pos, vec!["e1-e2", "e1-e3", "e2-e3"]);
        assert_eq!(r.weyl_group().len(), 6);
        assert_eq!(r.defect(), 1);
    }

    #[test]
    fn osp32() {
        let r = rs("osp(3|2)");
        assert_eq!(r.iso.len(), 4);
        assert_eq!(r.omega, r.iso);
        assert_eq!(r.weyl_group().len(), 4);
    }

    #[test]
    fn weyl_orders() {
        assert_eq!(rs("gl(3|2)").weyl_group().len(), 12);
        assert_eq!(rs("osp(5|4)").weyl_group().len(), 64);
        assert_eq!(rs("osp(4|2)").weyl_group().len(), 4 * 2);
        assert_eq!(rs("osp(6|2)").weyl_group().len(), 24 * 2);
    }

    #[test]
    fn bilinear_examples() {
        let gl = rs("gl(1|1)");
        let a = gl.parse_root("e1-d1").unwrap().to_rational();
        assert_eq!(gl.bilinear(&a, &a).unwrap(), int(0));
        let q = rs("q(2)");
        let e1 = q.parse_vector("e1").unwrap().to_rational();
        assert_eq!(q.bilinear(&e1, &e1).unwrap(), int(1));
        let x = q.parse_vector("e1-e2").unwrap().to_rational();
        let y = q.parse_vector("e1+e2").unwrap().to_rational();
        assert_eq!(q.bilinear(&x, &y).unwrap(), int(0));
        assert!(q.bilinear(&x, &[int(1)]).is_err());
    }

    #[test]
    fn form_is_weyl_invariant() {
        for t in ["gl(2|2)", "osp(5|4)", "osp(4|2)", "q(4)", "p(3)"] {
            let r = rs(t);
            let roots: Vec<Root> = r.roots().cloned().collect();
            for w in &r.weyl_generators {
                for a in &roots {
                    assert!(r.is_root(&r.act_root(w, a)), "{t}: root list not W-stable");
                    for b in &roots {
                        assert_eq!(r.form(&r.act_root(w, a), &r.act_root(w, b)), r.form(a, b));
                    }
                }
            }
        }
    }

    #[test]
    fn label_round_trip() {
        let r = rs("osp(5|4)");
        for a in r.roots() {
            assert_eq!(&r.parse_root(&r.root_label(a)).unwrap(), a);
        }
        assert!(r.parse_root("e1+e2+e3").is_err());
    }

    #[test]
    fn ds_rows() {
        let cases = [
            ("gl(3|2)", "e3-d2", "gl(2|1)"),
            ("gl(2|2)", "e2-d2", "gl(1|1)"),
            ("osp(5|4)", "e2-d2", "osp(3|2)"),
            ("osp(4|2)", "e2-d1", "osp(2|0)"),
            ("q(4)", "e3-e4", "q(2)"),
            ("p(4)", "e3-e4", "p(2)"),
        ];
        for (src, beta, tgt) in cases {
            let r = rs(src);
            let red = ds_reduction(&r, &r.parse_root(beta).unwrap()).unwrap();
            assert_eq!(red.target.ty.to_string(), tgt);
            assert!(red.matches_target, "{src} at {beta}");
        }
        let r = rs("gl(2|2)");
        let red = ds_reduction(&r, &r.parse_root("e2-d2").unwrap()).unwrap();
        assert_eq!(labels(&r, &red.delta_odd), vec!["-e1+d1", "e1-d1"]);
        assert!(red.delta_even.is_empty());
        assert!(ds_reduction(&r, &r.parse_root("e1-e2").unwrap()).is_err());
    }

    #[test]
    fn ds_twice_along_chain() {
        let r = rs("gl(3|2)");
        let chain = r.standard_chain(2).unwrap();
        let first = ds_reduction(&r, &chain[0]).unwrap();
        let mid = &first.target;
        let second = ds_reduction(mid, &mid.standard_chain(1).unwrap()[0]).unwrap();
        assert_eq!(second.target.ty.to_string(), "gl(1|0)");
        assert!(second.matches_target);
    }

    #[test]
    fn span_determinants() {
        let r = rs("gl(2|2)");
        let c = check_span_nondegenerate(&r, &r.parse_root("e2-d2").unwrap()).unwrap();
        assert_eq!(c.determinant, int(0));
        assert!(!c.nondegenerate);
        let r = rs("gl(3|1)");
        let c = check_span_nondegenerate(&r, &r.parse_root("e3-d1").unwrap()).unwrap();
        assert_eq!(c.determinant, int(2));
        assert!(c.nondegenerate);
        let r = rs("gl(1|1)");
        let c = check_span_nondegenerate(&r, &r.parse_root("e1-d1").unwrap()).unwrap();
        assert!(c.basis.is_empty());
        assert_eq!(c.determinant, int(1));
    }

    #[test]
    fn c_beta_examples() {
        let r = rs("gl(2|2)");
        assert_eq!(r.c_beta(&r.parse_root("e1-d1").unwrap()).unwrap(), vec![1, 0, 1, 0]);
        let q = rs("q(3)");
        assert_eq!(q.c_beta(&q.parse_root("e1-e3").unwrap()).unwrap(), vec![1, 0, -1]);
        let beta = r.parse_root("e1-d1").unwrap();
        assert_eq!(r.form(&beta, &beta), 0);
    }

    #[test]
    fn pairing_law_all_pairs() {
        for t in ["gl(2|2)", "osp(5|2)", "q(3)", "p(3)"] {
            let rep = verify_pairing_law(&rs(t)).unwrap();
            assert!(rep.checked > 0);
            assert!(rep.failures.is_empty(), "{t}: {:?}", rep.failures);
        }
    }

    #[test]
    fn bar_pairing_is_symmetric() {
        for t in ["q(4)", "p(5)"] {
            let r = rs(t);
            for a in &r.iso {
                for b in &r.iso {
                    assert_eq!(r.iso_orthogonal(a, b), r.iso_orthogonal(b, a));
                }
            }
        }
    }

    #[test]
    fn isoset_enumeration() {
        let r = rs("gl(2|1)");
        assert_eq!(r.defect(), 1);
        let mut sets: Vec<Vec<String>> = r.enumerate_isosets(1).iter().map(|s| labels(&r, s)).collect();
        sets.sort();
        assert_eq!(sets, vec![vec!["e1-d1"], vec!["e2-d1"]]);

        let r = rs("gl(2|2)");
        let chain = r.standard_chain(2).unwrap();
        assert_eq!(labels(&r, &chain), vec!["e2-d2", "e1-d1"]);
        let chain_set: std::collections::BTreeSet<Root> = chain.iter().cloned().collect();
        for s in r.enumerate_isosets(2).into_iter().filter(|s| s.len() == 2) {
            let conj = r
                .weyl_group()
                .iter()
                .any(|w| s.iter().map(|a| r.act_root(w, a)).collect::<std::collections::BTreeSet<_>>() == chain_set);
            assert!(conj);
        }

        let r = rs("q(2)");
        assert_eq!(r.enumerate_isosets(5).len(), 1);
        assert_eq!(r.defect(), 1);
        assert_eq!(rs("q(5)").defect(), 2);
        assert_eq!(rs("osp(5|4)").defect(), 2);
    }

    #[test]
    fn even_reflections_are_signed_permutations() {
        let r = rs("osp(5|4)");
        for g in &r.even {
            let s = r.reflection(g).expect("reflection");
            assert_eq!(r.act_root(&s, g), g.neg());
            assert!(r.weyl_group().contains(&s));
        }
    }
}
