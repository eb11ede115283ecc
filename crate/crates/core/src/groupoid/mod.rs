//! The continuous Weyl groupoid on `𝔥*` and on the torus: atypicality,
//! generator application, orbit descriptions and orbit membership with
//! replayable witnesses.
//!
//! Points are coordinate vectors in the order `ε_1.., δ_1..` (additive) or
//! `x_1.., y_1..` (torus).

use num_traits::{One, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactpoly::{format_rational, linalg, parse_rational, Rational, SignedPerm};
use crate::invariants::Setting;
use crate::rootdata::Root;

pub type Point = Vec<Rational>;

/// `w ∈ W`, or `τ_{α,t}` defined on `Π_α` (resp. `𝕋_α`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupoidGenerator {
    Weyl(SignedPerm),
    Tau { alpha: Root, t: Rational },
}

pub fn check_point(setting: &Setting, p: &[Rational]) -> Result<()> {
    if p.len() != setting.dim() {
        return Err(Error::Dimension { expected: setting.dim(), got: p.len() });
    }
    if !setting.is_additive() && p.iter().any(Zero::is_zero) {
        return Err(Error::InvalidArgument("torus coordinates must be nonzero".into()));
    }
    Ok(())
}

/// Parses `{"eps": [..], "delta": [..]}`, `{"x": [..], "y": [..]}` or a flat
/// array; entries are rational strings or integers.
pub fn point_from_json(setting: &Setting, v: &Value) -> Result<Point> {
    let entries = |v: Option<&Value>| -> Result<Vec<Rational>> {
        match v {
            None | Some(Value::Null) => Ok(Vec::new()),
            Some(Value::Array(a)) => a
                .iter()
                .map(|e| match e {
                    Value::String(s) => parse_rational(s),
                    Value::Number(n) => parse_rational(&n.to_string()),
                    _ => Err(Error::Parse(format!("bad coordinate {e}"))),
                })
                .collect(),
            Some(other) => Err(Error::Parse(format!("expected an array, got {other}"))),
        }
    };
    let p = match v {
        Value::Array(_) => entries(Some(v))?,
        Value::Object(o) => {
            let (a, b) = if setting.is_additive() { ("eps", "delta") } else { ("x", "y") };
            if let Some(k) = o.keys().find(|k| *k != a && *k != b) {
                return Err(Error::Parse(format!("unexpected key {k:?}; use {a:?} and {b:?}")));
            }
            let mut p = entries(o.get(a))?;
            p.extend(entries(o.get(b))?);
            p
        }
        _ => return Err(Error::Parse("a point is an object or an array".into())),
    };
    check_point(setting, &p)?;
    Ok(p)
}

pub fn point_to_json(setting: &Setting, p: &[Rational]) -> Value {
    let ne = setting.rs().n_eps;
    let s = |v: &[Rational]| v.iter().map(format_rational).collect::<Vec<_>>();
    if setting.is_additive() {
        json!({"eps": s(&p[..ne]), "delta": s(&p[ne..])})
    } else {
        json!({"x": s(&p[..ne]), "y": s(&p[ne..])})
    }
}

/// `(λ, v)` on the additive side, `e^v(λ)` on the torus.
fn pairing(setting: &Setting, p: &[Rational], v: &Root) -> Rational {
    if setting.is_additive() {
        let gram = &setting.rs().gram;
        (0..p.len()).map(|k| &p[k] * Rational::from_integer((gram[k] * v.0[k]).into())).sum()
    } else {
        p.iter().zip(&v.0).fold(Rational::one(), |acc, (x, &e)| acc * pow(x, e))
    }
}

fn pow(x: &Rational, e: i64) -> Rational {
    if e >= 0 {
        num_traits::pow(x.clone(), e as usize)
    } else {
        num_traits::pow(x.recip(), (-e) as usize)
    }
}

/// Whether `τ_{α,·}` is defined at `p`: `p ∈ Π_α` or `p ∈ 𝕋_α`.
pub fn in_domain(setting: &Setting, p: &[Rational], alpha: &Root) -> bool {
    let v = setting.rs().hyperplane_vector(alpha);
    let x = pairing(setting, p, &v);
    if setting.is_additive() {
        x.is_zero()
    } else {
        x.is_one()
    }
}

pub fn act_weyl(setting: &Setting, w: &SignedPerm, p: &[Rational]) -> Point {
    if setting.is_additive() {
        w.act_additive(p)
    } else {
        w.act_multiplicative(p)
    }
}

pub fn apply_generator(setting: &Setting, g: &GroupoidGenerator, p: &[Rational]) -> Result<Point> {
    check_point(setting, p)?;
    match g {
        GroupoidGenerator::Weyl(w) => {
            if w.len() != p.len() {
                return Err(Error::Dimension { expected: p.len(), got: w.len() });
            }
            Ok(act_weyl(setting, w, p))
        }
        GroupoidGenerator::Tau { alpha, t } => {
            let rs = setting.rs();
            if !rs.iso.contains(alpha) {
                return Err(Error::NotAdmissible(rs.root_label(alpha)));
            }
            if !in_domain(setting, p, alpha) {
                return Err(Error::NotDefinedAt(format!("tau along {} at {:?}", rs.root_label(alpha), fmt_point(p))));
            }
            if setting.is_additive() {
                Ok(p.iter().zip(&alpha.0).map(|(x, &a)| x + t * Rational::from_integer(a.into())).collect())
            } else {
                if t.is_zero() {
                    return Err(Error::InvalidArgument("tau on the torus needs t != 0".into()));
                }
                let c = rs.c_beta(alpha)?;
                Ok(p.iter().zip(&c).map(|(x, &e)| x * pow(t, e)).collect())
            }
        }
    }
}

pub fn fmt_point(p: &[Rational]) -> Vec<String> {
    p.iter().map(format_rational).collect()
}

/// `E(λ)`: isotropic roots whose hyperplane (or subtorus) contains `λ`.
pub fn e_set(setting: &Setting, p: &[Rational]) -> Vec<Root> {
    setting.rs().iso.iter().filter(|a| in_domain(setting, p, a)).cloned().collect()
}

/// `F(λ)`: a maximum iso-set inside `E(λ) ∩ Ω`, preferring the standard
/// chain when it qualifies.
pub fn maximal_isoset_at(setting: &Setting, p: &[Rational]) -> Result<(Vec<Root>, Vec<Root>)> {
    check_point(setting, p)?;
    let rs = setting.rs();
    let e = e_set(setting, p);
    let pool: Vec<Root> = rs.omega.iter().filter(|a| e.contains(a)).cloned().collect();
    let mut best: Vec<Root> = Vec::new();
    for s in rs.isosets_within(&pool, usize::MAX) {
        if s.len() > best.len() {
            best = s;
        }
    }
    if let Ok(chain) = rs.standard_chain(best.len()) {
        if chain.iter().all(|a| pool.contains(a)) {
            best = chain;
        }
    }
    Ok((e, best))
}

/// Degree of atypicality.
pub fn atyp(setting: &Setting, p: &[Rational]) -> Result<usize> {
    Ok(maximal_isoset_at(setting, p)?.1.len())
}

/// The orbit `∪_w w(λ + Σ_{α∈F} kα)`, or its torus analog.
#[derive(Clone, Debug)]
pub struct OrbitDescription {
    pub base: Point,
    pub f: Vec<Root>,
    pub e: Vec<Root>,
}

impl OrbitDescription {
    pub fn dim(&self) -> usize {
        self.f.len()
    }

    /// `w(τ_{α_1,t_1} ⋯ τ_{α_k,t_k} λ)` for `α_i ∈ F`.
    pub fn point(&self, setting: &Setting, w: &SignedPerm, ts: &[Rational]) -> Result<Point> {
        Witness { w: w.clone(), alphas: self.f.clone(), ts: ts.to_vec() }.replay(setting, &self.base)
    }

    pub fn to_json(&self, setting: &Setting) -> Value {
        let rs = setting.rs();
        json!({
            "type": setting.ty().to_string(),
            "space": setting.space(),
            "base": point_to_json(setting, &self.base),
            "F": self.f.iter().map(|a| rs.root_label(a)).collect::<Vec<_>>(),
            "E": self.e.iter().map(|a| rs.root_label(a)).collect::<Vec<_>>(),
            "dim": self.dim(),
            "atyp": self.dim(),
            "weyl_order": rs.weyl_group().len(),
        })
    }
}

pub fn orbit_description(setting: &Setting, p: &[Rational]) -> Result<OrbitDescription> {
    let (e, f) = maximal_isoset_at(setting, p)?;
    Ok(OrbitDescription { base: p.to_vec(), f, e })
}

/// `μ = w(τ_{α_1,t_1} ⋯ τ_{α_k,t_k} λ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub w: SignedPerm,
    pub alphas: Vec<Root>,
    pub ts: Vec<Rational>,
}

impl Witness {
    pub fn generators(&self) -> Vec<GroupoidGenerator> {
        let mut out: Vec<GroupoidGenerator> = self
            .alphas
            .iter()
            .zip(&self.ts)
            .map(|(a, t)| GroupoidGenerator::Tau { alpha: a.clone(), t: t.clone() })
            .collect();
        out.push(GroupoidGenerator::Weyl(self.w.clone()));
        out
    }

    /// Applies the generators one by one, each checked against its domain.
    pub fn replay(&self, setting: &Setting, start: &[Rational]) -> Result<Point> {
        if self.ts.len() != self.alphas.len() {
            return Err(Error::Dimension { expected: self.alphas.len(), got: self.ts.len() });
        }
        let mut p = start.to_vec();
        for g in self.generators() {
            // Trivial steps are skipped: τ_{α,0} (resp. τ_{α,1}) is the
            // identity even off its domain.
            if let GroupoidGenerator::Tau { t, .. } = &g {
                if (setting.is_additive() && t.is_zero()) || (!setting.is_additive() && t.is_one()) {
                    continue;
                }
            }
            p = apply_generator(setting, &g, &p)?;
        }
        Ok(p)
    }

    pub fn to_json(&self, setting: &Setting) -> Value {
        let rs = setting.rs();
        let perm: Vec<usize> = (0..self.w.len()).map(|i| self.w.image(i).0).collect();
        let flip: Vec<bool> = (0..self.w.len()).map(|i| self.w.image(i).1).collect();
        json!({
            "weyl": {"perm": perm, "flip": flip},
            "tau": self.alphas.iter().zip(&self.ts).map(|(a, t)| json!({
                "alpha": rs.root_label(a),
                "t": format_rational(t),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Searches `w ∈ W` (in sorted order) and parameters along `F(λ)` with
/// `μ = w(λ + Σ t_α α)` or `μ = w(∏ c_α(t_α) λ)`. Every answer is replayed.
pub fn orbit_contains(setting: &Setting, lambda: &[Rational], mu: &[Rational]) -> Result<Option<Witness>> {
    check_point(setting, mu)?;
    let desc = orbit_description(setting, lambda)?;
    let rs = setting.rs();
    let f = &desc.f;
    for w in rs.weyl_group() {
        let nu = act_weyl(setting, &w.inverse(), mu);
        let ts = if setting.is_additive() {
            let diff: Vec<Rational> = nu.iter().zip(lambda).map(|(a, b)| a - b).collect();
            let cols: Vec<Vec<Rational>> = f.iter().map(Root::to_rational).collect();
            match linalg::solve_combination(&cols, &diff) {
                Some(ts) => ts,
                None => continue,
            }
        } else {
            // Supports of the c_α for an iso-set are disjoint, so each t_α
            // is read off the first coordinate it moves.
            let mut ts = Vec::with_capacity(f.len());
            for a in f {
                let c = rs.c_beta(a)?;
                let k = c.iter().position(|&e| e != 0).expect("nonzero root");
                ts.push(pow(&(&nu[k] / &lambda[k]), c[k]));
            }
            ts
        };
        let witness = Witness { w: w.clone(), alphas: f.clone(), ts };
        if let Ok(end) = witness.replay(setting, lambda) {
            if end == mu {
                return Ok(Some(witness));
            }
        }
    }
    Ok(None)
}

pub fn equivalent(setting: &Setting, a: &[Rational], b: &[Rational]) -> Result<bool> {
    Ok(orbit_contains(setting, a, b)?.is_some() || orbit_contains(setting, b, a)?.is_some())
}

/// Outcome of searching, for each `β ∈ E(λ) \ F(λ)`, an element `u ∈ W`
/// with `uλ = λ` and `uβ ∈ ±F(λ)`. Failures list the offending `β`.
#[derive(Clone, Debug, Serialize)]
pub struct ReflectionReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

pub fn check_stabilizer_moves(setting: &Setting, p: &[Rational]) -> Result<ReflectionReport> {
    let (e, f) = maximal_isoset_at(setting, p)?;
    let rs = setting.rs();
    let stab: Vec<&SignedPerm> = rs.weyl_group().iter().filter(|w| act_weyl(setting, w, p) == p).collect();
    let mut report = ReflectionReport { checked: 0, failures: Vec::new() };
    for beta in e.iter().filter(|b| !f.contains(b)) {
        report.checked += 1;
        let ok = stab.iter().any(|u| {
            let img = rs.act_root(u, beta);
            f.contains(&img) || f.contains(&img.neg())
        });
        if !ok {
            report.failures.push(rs.root_label(beta));
        }
    }
    Ok(report)
}
