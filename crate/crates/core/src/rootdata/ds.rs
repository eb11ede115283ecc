use std::collections::BTreeSet;

use num_traits::Zero;
use serde::Serialize;

use super::system::{build_root_system, Root, RootSystem};
use crate::error::{Error, Result};
use crate::exactpoly::{linalg, Monomial, Polynomial, Rational, RingContext, RingMode, Substitution};

/// Output of the rank-lowering reduction at `β`.
#[derive(Clone, Debug)]
pub struct DsReduction {
    pub beta: Root,
    /// `Δ(β)`, split by parity, in the coordinates of the source system.
    pub delta_even: Vec<Root>,
    pub delta_odd: Vec<Root>,
    /// Source coordinates that survive, in order.
    pub kept: Vec<usize>,
    pub target: RootSystem,
    /// Whether `Δ(β)` equals the target's roots placed on `kept`.
    pub matches_target: bool,
}

impl DsReduction {
    pub fn delta(&self) -> impl Iterator<Item = &Root> {
        self.delta_even.iter().chain(self.delta_odd.iter())
    }
}

/// Checks `β` is admissible: an isotropic root in KM types, `ε_i - ε_j`
/// with `i < j` in types p and q.
pub fn check_admissible(rs: &RootSystem, beta: &Root) -> Result<()> {
    if beta.0.len() != rs.dim() {
        return Err(Error::Dimension { expected: rs.dim(), got: beta.0.len() });
    }
    if !rs.iso.contains(beta) {
        return Err(Error::NotAdmissible(rs.root_label(beta)));
    }
    Ok(())
}

/// `Δ(β) = {α ∈ Δ | (α, β) = 0, α ≠ ±β}` (with `β̄` in place of `β` for p, q).
pub fn delta_beta(rs: &RootSystem, beta: &Root) -> Result<(Vec<Root>, Vec<Root>)> {
    check_admissible(rs, beta)?;
    let hv = rs.hyperplane_vector(beta);
    let minus = beta.neg();
    let keep = |a: &&Root| rs.form(a, &hv) == 0 && *a != beta && **a != minus;
    Ok((rs.even.iter().filter(keep).cloned().collect(), rs.odd.iter().filter(keep).cloned().collect()))
}

pub fn ds_reduction(rs: &RootSystem, beta: &Root) -> Result<DsReduction> {
    let (delta_even, delta_odd) = delta_beta(rs, beta)?;
    let target = build_root_system(rs.ty.reduced()?)?;
    let support = beta.support();
    let kept: Vec<usize> = (0..rs.dim()).filter(|i| !support.contains(i)).collect();

    // Target coordinates, ε then δ, land on the kept ε then kept δ slots.
    let kept_eps: Vec<usize> = kept.iter().copied().filter(|&i| i < rs.n_eps).collect();
    let kept_delta: Vec<usize> = kept.iter().copied().filter(|&i| i >= rs.n_eps).collect();
    let shape_ok = kept_eps.len() == target.n_eps && kept_delta.len() == target.n_delta;
    let matches_target = shape_ok && {
        let place = |r: &Root| {
            let mut v = vec![0; rs.dim()];
            for (k, &c) in r.0.iter().enumerate() {
                let slot = if k < target.n_eps { kept_eps[k] } else { kept_delta[k - target.n_eps] };
                v[slot] = c;
            }
            Root(v)
        };
        let te: BTreeSet<Root> = target.even.iter().map(place).collect();
        let to: BTreeSet<Root> = target.odd.iter().map(place).collect();
        te == delta_even.iter().cloned().collect() && to == delta_odd.iter().cloned().collect()
    };
    Ok(DsReduction { beta: beta.clone(), delta_even, delta_odd, kept, target, matches_target })
}

/// Gram determinant of the form restricted to `span Δ(β)`.
#[derive(Clone, Debug)]
pub struct SpanCheck {
    pub basis: Vec<Root>,
    pub determinant: Rational,
    pub nondegenerate: bool,
}

pub fn check_span_nondegenerate(rs: &RootSystem, beta: &Root) -> Result<SpanCheck> {
    let (even, odd) = delta_beta(rs, beta)?;
    let mut basis: Vec<Root> = Vec::new();
    for r in even.iter().chain(odd.iter()) {
        let mut trial: Vec<Vec<Rational>> = basis.iter().map(Root::to_rational).collect();
        trial.push(r.to_rational());
        if linalg::rank(&trial) == trial.len() {
            basis.push(r.clone());
        }
    }
    let gram: Vec<Vec<Rational>> =
        basis.iter().map(|a| basis.iter().map(|b| Rational::from_integer(rs.form(a, b).into())).collect()).collect();
    let determinant = linalg::determinant(&gram);
    let nondegenerate = !determinant.is_zero();
    Ok(SpanCheck { basis, determinant, nondegenerate })
}

/// Result of checking `e^α(c_β(t)) = t^{(α, β)}` symbolically.
#[derive(Clone, Debug, Default, Serialize)]
pub struct PairingReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

/// Substitutes `c_β(t)` into every character `e^α` (and `e^{ᾱ}` in types
/// p, q) and compares with `t^{(α, β)}`, over all pairs of roots.
pub fn verify_pairing_law(rs: &RootSystem) -> Result<PairingReport> {
    let torus = RingContext::new(RingMode::Laurent, rs.variable_names(true))?;
    let tring = RingContext::new(RingMode::Laurent, ["t"])?;
    let t = Polynomial::var(&tring, 0);
    let betas: Vec<Root> = if rs.is_km() { rs.roots().cloned().collect() } else { rs.iso.clone() };
    let mut alphas: Vec<Root> = rs.roots().cloned().collect();
    if !rs.is_km() {
        alphas.extend(rs.iso.iter().map(Root::bar));
    }
    let mut report = PairingReport::default();
    for beta in &betas {
        let c = rs.c_beta(beta)?;
        let images = c.iter().map(|&e| t.pow_signed(e)).collect::<Result<Vec<_>>>()?;
        let s = Substitution::new(&torus, &tring, images)?;
        for alpha in &alphas {
            let exps: Vec<i32> = alpha.0.iter().map(|&x| x as i32).collect();
            let character = Polynomial::monomial(&torus, &exps)?;
            let got = character.substitute(&s)?;
            let want = Polynomial::term(
                &tring,
                Monomial::new(vec![rs.form(alpha, beta) as i32]),
                Rational::from_integer(1.into()),
            );
            report.checked += 1;
            if got != want {
                report.failures.push(format!(
                    "alpha={} beta={}: got {got}, want {want}",
                    rs.root_label(alpha),
                    rs.root_label(beta)
                ));
            }
        }
    }
    Ok(report)
}
