//! Superalgebraic geometry: the level ideals built from elimination and
//! W-unions, the S-closure of a W-invariant closed set, the
//! superalgebraic-set test and implicit equations for groupoid orbits.
//!
//! Only the Kac-Moody families (gl, sl, osp) are supported by the closure
//! machinery; orbit ideals work in every setting.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactpoly::{Polynomial, Rational, Ring, RingMode, Substitution};
use crate::groebner::{elimination_ideal, ideal_intersect, radical_membership, Budget, Ideal};
use crate::groupoid::{check_point, orbit_description};
use crate::invariants::{condition_roots, is_supersymmetric, Setting};
use crate::rootdata::Root;

/// Which equation cuts the `β`-direction back in after elimination.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ZConvention {
    /// `z_β = h_β` (resp. `e^β - 1`).
    #[default]
    Beta,
    /// `z_β = h_{σ(β)}` with `σ(β) = ε_i` (resp. `e^{ε_i} - 1`).
    Sigma,
}

impl std::str::FromStr for ZConvention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "beta" => Ok(ZConvention::Beta),
            "sigma" => Ok(ZConvention::Sigma),
            _ => Err(Error::InvalidArgument(format!("unknown z convention {s:?}"))),
        }
    }
}

/// A closed subset `V(I)` of the setting's space.
#[derive(Clone, Debug)]
pub struct ClosedSet {
    pub ideal: Ideal,
    pub w_invariant: bool,
}

impl ClosedSet {
    /// Checks W-invariance by radical membership of every `w·g`, `w` a
    /// Weyl generator.
    pub fn new(ideal: Ideal, setting: &Setting, budget: &Budget) -> Result<Self> {
        crate::exactpoly::ring::check_same(ideal.ring(), setting.ring())?;
        let mut w_invariant = true;
        'outer: for w in &setting.rs().weyl_generators {
            for g in ideal.generators() {
                if !radical_membership(&g.apply_group_element(w)?, &ideal, budget)? {
                    w_invariant = false;
                    break 'outer;
                }
            }
        }
        Ok(ClosedSet { ideal, w_invariant })
    }

    /// Vanishing ideal of a finite set of points.
    pub fn from_points(setting: &Setting, points: &[Vec<Rational>], budget: &Budget) -> Result<Self> {
        let ideal = points_ideal(setting, points, budget)?;
        ClosedSet::new(ideal, setting, budget)
    }
}

fn require_km(setting: &Setting) -> Result<()> {
    if !setting.rs().is_km() {
        return Err(Error::UnsupportedSetting(format!(
            "{}: closures are implemented for gl, sl and osp",
            setting.ty()
        )));
    }
    Ok(())
}

fn affine_ring(setting: &Setting) -> Ring {
    setting.ring().with_mode(RingMode::Affine)
}

/// Moves an ideal computed in the affine ring on the same variables to the
/// setting's ring (localizing on the torus side).
fn to_setting(setting: &Setting, ideal: &Ideal) -> Result<Ideal> {
    let gens = ideal.generators().iter().map(|g| g.with_ring(setting.ring())).collect::<Result<Vec<_>>>()?;
    Ideal::new(setting.ring(), gens)
}

/// `I(P)` for a finite `P`.
pub fn points_ideal(setting: &Setting, points: &[Vec<Rational>], budget: &Budget) -> Result<Ideal> {
    let ring = affine_ring(setting);
    let mut acc: Option<Ideal> = None;
    for p in points {
        check_point(setting, p)?;
        let gens = (0..p.len()).map(|k| &Polynomial::var(&ring, k) - &Polynomial::constant(&ring, p[k].clone()));
        let m = Ideal::new(&ring, gens)?;
        acc = Some(match acc {
            None => m,
            Some(a) => ideal_intersect(&a, &m, budget)?,
        });
    }
    let acc = acc.unwrap_or_else(|| Ideal::unit(&ring));
    to_setting(setting, &acc)
}

/// The comorphism of `p_A`: zero (additive) or one (torus) on the
/// coordinate pairs of the chain prefix `A`.
pub fn projection_substitution(setting: &Setting, a: &[Root]) -> Result<Substitution> {
    let rs = setting.rs();
    if rs.standard_chain(a.len())? != a {
        return Err(Error::NotAdmissible("not a prefix of the standard chain".into()));
    }
    let ring = setting.ring();
    let v = if setting.is_additive() { 0 } else { 1 };
    let mut map = BTreeMap::new();
    for i in 0..a.len() {
        let (x, y) = rs.chain_slots(i)?;
        map.insert(x, Polynomial::from_int(ring, v));
        map.insert(y, Polynomial::from_int(ring, v));
    }
    Substitution::partial(ring, ring, &map)
}

fn z_equation(setting: &Setting, beta: &Root, slot: usize, z: ZConvention) -> Result<Polynomial> {
    match z {
        ZConvention::Beta => setting.hyperplane(beta),
        ZConvention::Sigma => {
            let mut v = vec![0; setting.dim()];
            v[slot] = 1;
            setting.hyperplane(&Root(v))
        }
    }
}

/// Maximum `q` with `I + (h_{β_1}, …, h_{β_q}) ≠ (1)`.
pub fn atyp_of_set(v: &ClosedSet, setting: &Setting, budget: &Budget) -> Result<usize> {
    require_km(setting)?;
    let rs = setting.rs();
    let max = rs.n_eps.min(rs.n_delta);
    let mut r = 0;
    for q in 1..=max {
        let chain = rs.standard_chain(q)?;
        let eqs = chain.iter().map(|b| setting.hyperplane(b)).collect::<Result<Vec<_>>>()?;
        if v.ideal.extend(eqs)?.is_unit(budget)? {
            break;
        }
        r = q;
    }
    Ok(r)
}

/// `I_q = ∩_{w} w L_{A(q)}`.
pub fn level_ideal(v: &ClosedSet, q: usize, setting: &Setting, z: ZConvention, budget: &Budget) -> Result<Ideal> {
    require_km(setting)?;
    let rs = setting.rs();
    let max = rs.n_eps.min(rs.n_delta);
    if q == 0 || q > max {
        return Err(Error::LevelOutOfRange { q, max });
    }
    let chain = rs.standard_chain(q)?;
    let eqs = chain.iter().map(|b| setting.hyperplane(b)).collect::<Result<Vec<_>>>()?;
    let j = v.ideal.extend(eqs)?;
    let mut drop = Vec::new();
    let mut zs = Vec::new();
    for (i, b) in chain.iter().enumerate() {
        let (x, y) = rs.chain_slots(i)?;
        drop.extend([x, y]);
        zs.push(z_equation(setting, b, x, z)?);
    }
    let k = elimination_ideal(&j, &drop, budget)?;
    let l = k.embed(setting.ring())?.extend(zs)?;
    w_union(setting, &l, budget)
}

/// `∩_w w·L` over the distinct W-images of `L`, intersected in sorted W order.
pub fn w_union(setting: &Setting, l: &Ideal, budget: &Budget) -> Result<Ideal> {
    if l.is_unit(budget)? {
        return Ok(l.clone());
    }
    Ok(union_of_images(setting, l, budget)?.0)
}

fn union_of_images(setting: &Setting, l: &Ideal, budget: &Budget) -> Result<(Ideal, usize)> {
    let mut seen = BTreeSet::new();
    let mut acc: Option<Ideal> = None;
    for w in setting.rs().weyl_group() {
        let img = l.apply_group_element(w)?;
        if !seen.insert(img.canonical_form(budget)?) {
            continue;
        }
        acc = Some(match acc {
            None => img,
            Some(a) => ideal_intersect(&a, &img, budget)?,
        });
    }
    Ok((acc.expect("W is nonempty"), seen.len()))
}

#[derive(Clone, Debug)]
pub struct SClosureResult {
    /// `I_0 = I, I_1, …, I_r`.
    pub levels: Vec<Ideal>,
    /// `I(V^S) = ∩_q I_q`.
    pub closure: Ideal,
    pub atyp: usize,
}

pub fn s_closure(v: &ClosedSet, setting: &Setting, z: ZConvention, budget: &Budget) -> Result<SClosureResult> {
    require_km(setting)?;
    if !v.w_invariant {
        return Err(Error::NotWInvariant("closure input must be W-invariant".into()));
    }
    let r = atyp_of_set(v, setting, budget)?;
    let mut levels = vec![v.ideal.clone()];
    let mut closure = v.ideal.clone();
    for q in 1..=r {
        let iq = level_ideal(v, q, setting, z, budget)?;
        closure = ideal_intersect(&closure, &iq, budget)?;
        levels.push(iq);
    }
    Ok(SClosureResult { levels, closure, atyp: r })
}

/// `V^S = V` at the level of zero loci.
pub fn is_superalgebraic(v: &ClosedSet, setting: &Setting, budget: &Budget) -> Result<bool> {
    let res = s_closure(v, setting, ZConvention::Beta, budget)?;
    res.closure.same_locus(&v.ideal, budget)
}

/// Outcome of the symbolic `τ` test: for each level `I_q`, each
/// representative `β` and each generator `f` of the target, whether
/// `f(τ_{β,t} x)` vanishes on `V(I_q) ∩ Π_β`.
#[derive(Clone, Debug, Default, Serialize)]
pub struct TauReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

/// Checks that `τ_{β,t}` maps `V(source) ∩ Π_β` into `V(target)` for one
/// `β` per W-orbit on `Ω`, with `t` symbolic.
pub fn tau_maps_into(setting: &Setting, source: &Ideal, target: &Ideal, budget: &Budget) -> Result<TauReport> {
    let ring = setting.ring();
    let tr = setting.with_parameter("t")?;
    let n = ring.arity();
    let t = Polynomial::var(&tr, n);
    let mut report = TauReport::default();
    for beta in condition_roots(setting, false) {
        let images: Vec<Polynomial> = if setting.is_additive() {
            (0..n).map(|k| &Polynomial::var(&tr, k) + &t.scale(&Rational::from_integer(beta.0[k].into()))).collect()
        } else {
            let c = setting.rs().c_beta(&beta)?;
            (0..n).map(|k| Ok(&Polynomial::var(&tr, k) * &t.pow_signed(c[k])?)).collect::<Result<_>>()?
        };
        let s = Substitution::new(ring, &tr, images)?;
        let domain = source.embed(&tr)?.extend([setting.hyperplane(&beta)?.embed(&tr)?])?;
        for f in target.generators() {
            report.checked += 1;
            if !radical_membership(&f.substitute(&s)?, &domain, budget)? {
                report.failures.push(format!("{} moves {f}", setting.rs().root_label(&beta)));
            }
        }
    }
    Ok(report)
}

/// Implicit equations of the orbit through `λ`.
#[derive(Clone, Debug)]
pub struct OrbitIdeal {
    pub ideal: Ideal,
    pub components: usize,
    /// Reynolds images of the generators that pass the membership oracle.
    pub symmetrized: Vec<Polynomial>,
    /// Generators whose Reynolds image is zero or fails the oracle.
    pub flagged: Vec<String>,
}

/// Eliminates the parameters from `w(λ + Σ t_α α)` (or `w(∏ c_α(t_α) λ)`)
/// and intersects over the distinct W-images.
pub fn orbit_closure_ideal(setting: &Setting, lambda: &[Rational], budget: &Budget) -> Result<OrbitIdeal> {
    let desc = orbit_description(setting, lambda)?;
    let rs = setting.rs();
    let n = setting.dim();
    let k = desc.f.len();
    let base = affine_ring(setting);
    // Torus parameters come with partners s_i = t_i^{-1}.
    let names: Vec<String> = (0..k)
        .map(|i| format!("t{}", i + 1))
        .chain((0..if setting.is_additive() { 0 } else { k }).map(|i| format!("s{}", i + 1)))
        .map(|v| base.fresh_name(&v))
        .collect();
    let big = base.extended(RingMode::Affine, &names)?;
    let mut gens = Vec::new();
    for (j, l) in lambda.iter().enumerate() {
        let xj = Polynomial::var(&big, j);
        let lj = Polynomial::constant(&big, l.clone());
        if setting.is_additive() {
            let mut p = &xj - &lj;
            for (i, a) in desc.f.iter().enumerate() {
                p = &p - &Polynomial::var(&big, n + i).scale(&Rational::from_integer(a.0[j].into()));
            }
            gens.push(p);
        } else {
            let (mut pos, mut neg) = (vec![0; big.arity()], vec![0; big.arity()]);
            for (i, a) in desc.f.iter().enumerate() {
                let e = rs.c_beta(a)?[j];
                if e > 0 {
                    pos[n + i] = e as i32;
                } else {
                    neg[n + i] = -e as i32;
                }
            }
            gens.push(&(&xj * &Polynomial::monomial(&big, &neg)?) - &(&lj * &Polynomial::monomial(&big, &pos)?));
        }
    }
    if !setting.is_additive() {
        for i in 0..k {
            gens.push(&(&Polynomial::var(&big, n + i) * &Polynomial::var(&big, n + k + i)) - &Polynomial::one(&big));
        }
    }
    let params: Vec<usize> = (n..big.arity()).collect();
    let c0 = elimination_ideal(&Ideal::new(&big, gens)?, &params, budget)?;
    let c0 = Ideal::new(&base, c0.generators().iter().map(|g| g.embed(&base)).collect::<Result<Vec<_>>>()?)?;

    let has_flips = rs.weyl_generators.iter().any(|w| (0..w.len()).any(|i| w.image(i).1));
    let (ideal, components) = if setting.is_additive() || !has_flips {
        let (u, c) = union_of_images(setting, &c0, budget)?;
        (to_setting(setting, &u)?, c)
    } else {
        union_of_images(setting, &to_setting(setting, &c0)?, budget)?
    };

    let group = rs.weyl_group();
    let mut symmetrized = Vec::new();
    let mut flagged = Vec::new();
    for g in ideal.generators() {
        let r = g.reynolds(group)?;
        if r.is_zero() {
            flagged.push(format!("{g}: symmetrizes to 0"));
        } else if is_supersymmetric(&r, setting)? {
            symmetrized.push(r);
        } else {
            flagged.push(format!("{g}: symmetrization is not supersymmetric"));
        }
    }
    Ok(OrbitIdeal { ideal, components, symmetrized, flagged })
}

#[cfg(test)]
mod tests;
