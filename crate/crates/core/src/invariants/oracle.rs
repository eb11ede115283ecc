use std::collections::BTreeMap;

use serde::Serialize;

use super::setting::Setting;
use crate::error::{Error, Result};
use crate::exactpoly::ring::check_same;
use crate::exactpoly::{Polynomial, Rational, Substitution};
use crate::rootdata::Root;

/// Verdict of the membership oracle, with a human-readable reason on failure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Membership {
    pub member: bool,
    pub witness: Option<String>,
}

impl Membership {
    fn yes() -> Self {
        Membership { member: true, witness: None }
    }

    fn no(why: String) -> Self {
        Membership { member: false, witness: Some(why) }
    }
}

pub fn is_w_invariant(f: &Polynomial, setting: &Setting) -> Result<bool> {
    check_same(f.ring(), setting.ring())?;
    for w in &setting.rs().weyl_generators {
        if &f.apply_group_element(w)? != f {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Roots along which the supersymmetry condition is tested: one per W-orbit
/// on `Ω`, or all of `Ω` in strict mode.
pub fn condition_roots(setting: &Setting, strict: bool) -> Vec<Root> {
    let rs = setting.rs();
    if strict {
        rs.omega.clone()
    } else {
        rs.orbit_representatives(&rs.omega)
    }
}

pub fn is_supersymmetric(f: &Polynomial, setting: &Setting) -> Result<bool> {
    Ok(supersymmetry_check(f, setting, false)?.member)
}

/// Full oracle: W-invariance, then the per-type condition along each root
/// returned by [`condition_roots`].
pub fn supersymmetry_check(f: &Polynomial, setting: &Setting, strict: bool) -> Result<Membership> {
    setting.require_invariants()?;
    if !is_w_invariant(f, setting)? {
        return Ok(Membership::no("not W-invariant".into()));
    }
    for alpha in condition_roots(setting, strict) {
        if let Some(why) = condition_fails(f, setting, &alpha)? {
            return Ok(Membership::no(format!("along {}: {why}", setting.rs().root_label(&alpha))));
        }
    }
    Ok(Membership::yes())
}

/// Slots `(i, j)` of `α = ε_i - ε_j` in types p and q, with `i < j`.
fn pq_slots(alpha: &Root) -> Result<(usize, usize)> {
    let i = alpha.0.iter().position(|&c| c == 1);
    let j = alpha.0.iter().position(|&c| c == -1);
    match (i, j) {
        (Some(i), Some(j)) if alpha.support().len() == 2 => Ok((i.min(j), i.max(j))),
        _ => Err(Error::NotAdmissible(format!("{:?}", alpha.0))),
    }
}

fn condition_fails(f: &Polynomial, setting: &Setting, alpha: &Root) -> Result<Option<String>> {
    let ring = setting.ring();
    if setting.rs().is_km() {
        if setting.is_additive() {
            let tr = setting.with_parameter("t")?;
            let n = ring.arity();
            let t = Polynomial::var(&tr, n);
            let images = (0..n)
                .map(|k| &Polynomial::var(&tr, k) + &t.scale(&Rational::from_integer(alpha.0[k].into())))
                .collect();
            let shifted = f.substitute(&Substitution::new(ring, &tr, images)?)?;
            let diff = &shifted - &f.embed(&tr)?;
            let h = setting.h(alpha);
            for (k, c) in diff.coefficients_in(n) {
                if k == 0 {
                    continue;
                }
                let c = c.embed(ring)?;
                if c.divide_exact(&h)?.is_none() {
                    return Ok(Some(format!("coefficient of t^{k} is {c}, not divisible by {h}")));
                }
            }
            Ok(None)
        } else {
            let d = derivative(f, setting, alpha)?;
            let e = &setting.character(alpha)? - &Polynomial::one(ring);
            if d.divide_exact(&e)?.is_none() {
                return Ok(Some(format!("D f = {d} is not divisible by {e}")));
            }
            Ok(None)
        }
    } else {
        let g = pq_restriction(f, setting, alpha)?;
        let t = ring.arity();
        let coeffs = g.coefficients_in(t);
        if coeffs.keys().any(|&k| k != 0) {
            return Ok(Some(format!("restriction {g} depends on t")));
        }
        Ok(None)
    }
}

/// `D_α f = Σ (α, m) c_m x^m`.
pub fn derivative(f: &Polynomial, setting: &Setting, alpha: &Root) -> Result<Polynomial> {
    setting.require_invariants()?;
    let gram = &setting.rs().gram;
    let terms = f.terms().map(|(m, c)| {
        let pairing: i64 = m.exps().iter().enumerate().map(|(k, &e)| e as i64 * gram[k] * alpha.0[k]).sum();
        (m.clone(), c * Rational::from_integer(pairing.into()))
    });
    Polynomial::from_terms(setting.ring(), terms)
}

/// The type p/q restriction: `x_j ↦ t` and `x_i ↦ -t` (type q) or
/// `x_i ↦ t^{-1}` (type p), in the ring extended by `t`.
fn pq_restriction(f: &Polynomial, setting: &Setting, alpha: &Root) -> Result<Polynomial> {
    let ring = setting.ring();
    let (i, j) = pq_slots(alpha)?;
    let tr = setting.with_parameter("t")?;
    let t = Polynomial::var(&tr, ring.arity());
    let other = match setting.ty().family {
        crate::rootdata::Family::Q => -&t,
        _ => t.pow_signed(-1)?,
    };
    let map = BTreeMap::from([(j, t), (i, other)]);
    f.substitute(&Substitution::partial(ring, &tr, &map)?)
}

/// Polynomials that all vanish exactly when a W-invariant `f` passes the
/// oracle. Each is linear in `f`, computed by restricting to the relevant
/// hyperplane rather than by division; used for linear algebra and as an
/// independent cross-check of [`supersymmetry_check`].
pub fn supersymmetry_defects(f: &Polynomial, setting: &Setting, strict: bool) -> Result<Vec<Polynomial>> {
    setting.require_invariants()?;
    check_same(f.ring(), setting.ring())?;
    let ring = setting.ring();
    let n = ring.arity();
    let gram = &setting.rs().gram;
    let mut out = Vec::new();
    for alpha in condition_roots(setting, strict) {
        if !setting.rs().is_km() {
            let g = pq_restriction(f, setting, &alpha)?;
            let tr = g.ring().clone();
            let t0 = if setting.is_additive() { 0 } else { 1 };
            let at = Substitution::partial(&tr, &tr, &BTreeMap::from([(n, Polynomial::from_int(&tr, t0))]))?;
            out.push(&g - &g.substitute(&at)?);
            continue;
        }
        let p = alpha.0.iter().position(|&c| c != 0).expect("nonzero root");
        if setting.is_additive() {
            // λ_p solved from (λ, α) = 0.
            let tr = setting.with_parameter("t")?;
            let t = Polynomial::var(&tr, n);
            let lead = Rational::from_integer((gram[p] * alpha.0[p]).into());
            let mut solved = Polynomial::zero(&tr);
            for k in (0..n).filter(|&k| k != p) {
                let c = Rational::from_integer((gram[k] * alpha.0[k]).into());
                solved = &solved - &Polynomial::var(&tr, k).scale(&(c / &lead));
            }
            let base: Vec<Polynomial> =
                (0..n).map(|k| if k == p { solved.clone() } else { Polynomial::var(&tr, k) }).collect();
            let shifted: Vec<Polynomial> = base
                .iter()
                .enumerate()
                .map(|(k, b)| b + &t.scale(&Rational::from_integer(alpha.0[k].into())))
                .collect();
            let a = f.substitute(&Substitution::new(ring, &tr, shifted)?)?;
            let b = f.substitute(&Substitution::new(ring, &tr, base)?)?;
            out.push(&a - &b);
        } else {
            // e^α = 1 solved for x_p, using α_p = ±1.
            let ap = alpha.0[p];
            if ap.abs() != 1 {
                return Err(Error::NotAdmissible(setting.rs().root_label(&alpha)));
            }
            let exps: Vec<i32> = (0..n).map(|k| if k == p { 0 } else { (-alpha.0[k] * ap) as i32 }).collect();
            let map = BTreeMap::from([(p, Polynomial::monomial(ring, &exps)?)]);
            let d = derivative(f, setting, &alpha)?;
            out.push(d.substitute(&Substitution::partial(ring, ring, &map)?)?);
        }
    }
    Ok(out)
}
