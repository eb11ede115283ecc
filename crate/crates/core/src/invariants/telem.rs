use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::oracle::{is_w_invariant, supersymmetry_check};
use super::setting::Setting;
use crate::error::{Error, Result};
use crate::exactpoly::{Polynomial, Rational, Substitution};
use crate::rootdata::{Family, RootSystem};

/// `ρ_iso = ½ Σ α` over the positive isotropic roots.
pub fn rho_iso(rs: &RootSystem) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); rs.dim()];
    for a in &rs.iso_positive {
        for (k, &c) in a.0.iter().enumerate() {
            out[k] += Rational::new(c.into(), 2.into());
        }
    }
    out
}

/// The distinguished invariant whose multiples form the kernel of `ev`.
#[derive(Clone, Debug)]
pub struct TElement {
    pub poly: Polynomial,
    pub setting: Setting,
}

pub fn t_element(setting: &Setting) -> Result<TElement> {
    setting.require_invariants()?;
    let poly = build_t(setting)?;
    let failed = |what: &str| Err(Error::UnsupportedSetting(format!("T = {poly} for {} fails {what}", setting.ty())));
    if !is_w_invariant(&poly, setting)? {
        return failed("W-invariance");
    }
    if let Some(w) = supersymmetry_check(&poly, setting, true)?.witness {
        return failed(&w);
    }
    match ev_map(&poly, setting) {
        Ok(v) if !v.is_zero() => return failed("ev(T) = 0"),
        Err(Error::RankTooSmall(_)) | Ok(_) => {}
        Err(e) => return Err(e),
    }
    Ok(TElement { poly, setting: setting.clone() })
}

fn build_t(setting: &Setting) -> Result<Polynomial> {
    let rs = setting.rs();
    let ring = setting.ring();
    let one = Polynomial::one(ring);
    let n = rs.dim();
    let mut t = one.clone();
    match rs.ty.family {
        Family::Q | Family::P => {
            for i in 0..n {
                for j in i + 1..n {
                    let (xi, xj) = (Polynomial::var(ring, i), Polynomial::var(ring, j));
                    let factor = if rs.ty.family == Family::Q { &xi + &xj } else { &one - &(&xi * &xj) };
                    t = &t * &factor;
                }
            }
        }
        _ if setting.is_additive() => {
            for b in &rs.iso_positive {
                t = &t * &setting.h(b);
            }
        }
        _ => {
            let rho = rho_iso(rs);
            if rho.iter().all(|c| c.is_integer()) {
                let exps: Vec<i32> = rho.iter().map(|c| c.to_integer().try_into().unwrap()).collect();
                t = Polynomial::monomial(ring, &exps)?;
                for a in &rs.iso_positive {
                    t = &t * &(&one - &setting.character(&a.neg())?);
                }
            } else {
                for a in &rs.iso_positive {
                    t = &t * &(&setting.character(a)? - &one);
                }
            }
        }
    }
    Ok(t)
}

/// Values given to the two coordinates removed by `ev`.
fn ev_values(setting: &Setting) -> (i64, i64) {
    match (setting.ty().family, setting.is_additive()) {
        (_, true) => (0, 0),
        (Family::Q, false) => (-1, 1),
        _ => (1, 1),
    }
}

/// Restriction to the reduced rank: the first standard-chain slots are set
/// to the values of `ev` and the result is read in the reduced setting's ring.
pub fn ev_map(f: &Polynomial, setting: &Setting) -> Result<Polynomial> {
    setting.require_invariants()?;
    crate::exactpoly::ring::check_same(f.ring(), setting.ring())?;
    let target = setting.reduced()?;
    let (a, b) = setting.rs().chain_slots(0)?;
    let (va, vb) = ev_values(setting);
    let ring = setting.ring();
    let map = BTreeMap::from([(a, Polynomial::from_int(ring, va)), (b, Polynomial::from_int(ring, vb))]);
    let g = f.substitute(&Substitution::partial(ring, ring, &map)?)?;
    g.embed(target.ring())
}

/// The point of the reduced space as a point of the full space, padding the
/// removed slots with the values used by `ev`.
pub fn ev_lift_point(setting: &Setting, point: &[Rational]) -> Result<Vec<Rational>> {
    let (a, b) = setting.rs().chain_slots(0)?;
    let (va, vb) = ev_values(setting);
    let n = setting.dim();
    if point.len() + 2 != n {
        return Err(Error::Dimension { expected: n - 2, got: point.len() });
    }
    let mut it = point.iter();
    Ok((0..n)
        .map(|k| {
            if k == a {
                Rational::from_integer(va.into())
            } else if k == b {
                Rational::from_integer(vb.into())
            } else {
                it.next().cloned().unwrap_or_else(Rational::one)
            }
        })
        .collect())
}
