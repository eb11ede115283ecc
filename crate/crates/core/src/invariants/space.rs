use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;

use super::oracle::{is_supersymmetric, supersymmetry_defects};
use super::setting::Setting;
use super::telem::{ev_map, t_element};
use crate::error::Result;
use crate::exactpoly::{linalg, Monomial, Polynomial, Rational};
use crate::rootdata::Family;

/// Exponent vectors of length `n` with total degree (additive) or absolute
/// degree (Laurent) at most `d`.
fn exponent_box(n: usize, d: i32, laurent: bool) -> Vec<Vec<i32>> {
    let mut out = Vec::new();
    let mut cur = vec![0; n];
    fn rec(k: usize, left: i32, laurent: bool, cur: &mut Vec<i32>, out: &mut Vec<Vec<i32>>) {
        if k == cur.len() {
            out.push(cur.clone());
            return;
        }
        let lo = if laurent { -left } else { 0 };
        for e in lo..=left {
            cur[k] = e;
            rec(k + 1, left - e.abs(), laurent, cur, out);
        }
        cur[k] = 0;
    }
    rec(0, d, laurent, &mut cur, &mut out);
    out
}

/// Basis of the W-invariants of bounded degree: Reynolds images of the
/// monomials, up to scaling.
pub fn invariant_basis(setting: &Setting, max_degree: u32) -> Result<Vec<Polynomial>> {
    let ring = setting.ring();
    let group = setting.rs().weyl_group();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for e in exponent_box(ring.arity(), max_degree as i32, ring.is_laurent()) {
        let p = Polynomial::monomial(ring, &e)?.reynolds(group)?;
        if p.is_zero() {
            continue;
        }
        let p = p.primitive();
        if seen.insert(p.to_string()) {
            out.push(p);
        }
    }
    Ok(out)
}

/// Combinations `Σ c_i items_i` with `Σ c_i images_i = 0`, where each image
/// is a list of polynomials compared slot by slot.
fn kernel(items: &[Polynomial], images: &[Vec<Polynomial>]) -> Vec<Polynomial> {
    let mut rows: BTreeMap<(usize, Monomial), usize> = BTreeMap::new();
    for img in images {
        for (slot, p) in img.iter().enumerate() {
            for (m, _) in p.terms() {
                let next = rows.len();
                rows.entry((slot, m.clone())).or_insert(next);
            }
        }
    }
    let mut mat = vec![vec![Rational::zero(); items.len()]; rows.len()];
    for (col, img) in images.iter().enumerate() {
        for (slot, p) in img.iter().enumerate() {
            for (m, c) in p.terms() {
                mat[rows[&(slot, m.clone())]][col] = c.clone();
            }
        }
    }
    linalg::nullspace(&mat, items.len())
        .into_iter()
        .filter_map(|v| {
            let mut acc = Polynomial::zero(items[0].ring());
            for (c, p) in v.iter().zip(items) {
                if !c.is_zero() {
                    acc = &acc + &p.scale(c);
                }
            }
            (!acc.is_zero()).then(|| acc.primitive())
        })
        .collect()
}

/// Basis of the supersymmetric elements inside the span of the given
/// W-invariant polynomials.
pub fn supersymmetric_subspace(setting: &Setting, span: &[Polynomial]) -> Result<Vec<Polynomial>> {
    if span.is_empty() {
        return Ok(Vec::new());
    }
    let images = span.iter().map(|f| supersymmetry_defects(f, setting, false)).collect::<Result<Vec<_>>>()?;
    Ok(kernel(span, &images))
}

/// Basis of the kernel of `ev` restricted to the span of `space`.
pub fn ev_kernel(setting: &Setting, space: &[Polynomial]) -> Result<Vec<Polynomial>> {
    if space.is_empty() {
        return Ok(Vec::new());
    }
    let images = space.iter().map(|f| Ok(vec![ev_map(f, setting)?])).collect::<Result<Vec<_>>>()?;
    Ok(kernel(space, &images))
}

/// Low-degree supersymmetric elements: `1`, `T`, power sums in whichever
/// sign convention the oracle accepts and, in type p, a basis of the
/// supersymmetric subspace in degree at most 3. Every entry is checked.
pub fn generator_candidates(setting: &Setting, max_degree: u32) -> Result<Vec<Polynomial>> {
    let ring = setting.ring();
    let rs = setting.rs();
    let one = Polynomial::one(ring);
    let mut raw = vec![one.clone(), t_element(setting)?.poly];

    let sum = |range: std::ops::Range<usize>, e: i32, both: bool| -> Result<Polynomial> {
        let mut acc = Polynomial::zero(ring);
        for k in range {
            let mut exps = vec![0; ring.arity()];
            exps[k] = e;
            acc = &acc + &Polynomial::monomial(ring, &exps)?;
            if both {
                exps[k] = -e;
                acc = &acc + &Polynomial::monomial(ring, &exps)?;
            }
        }
        Ok(acc)
    };
    let (ne, nd) = (rs.n_eps, rs.n_delta);
    for r in 1..=max_degree as i32 {
        let exps: Vec<(i32, bool)> =
            if setting.is_additive() { vec![(r, false)] } else { vec![(r, false), (-r, false), (r, true)] };
        for (e, both) in exps {
            let a = sum(0..ne, e, both)?;
            if nd == 0 {
                raw.push(a);
                continue;
            }
            let b = sum(ne..ne + nd, e, both)?;
            raw.push(&a + &b);
            raw.push(&a - &b);
        }
    }
    if rs.ty.family == Family::P {
        let span = invariant_basis(setting, max_degree.min(3))?;
        raw.extend(supersymmetric_subspace(setting, &span)?);
    }

    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for p in raw {
        if p.is_zero() || !seen.insert(p.to_string()) {
            continue;
        }
        if is_supersymmetric(&p, setting)? {
            out.push(p);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn box_sizes() {
        assert_eq!(exponent_box(2, 2, false).len(), 6);
        assert_eq!(exponent_box(2, 1, true).len(), 5);
    }
}
