use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use super::buchberger::{buchberger, reduce_by_basis};
use super::order::{Budget, MonomialOrder};
use crate::error::{Error, Result};
use crate::exactpoly::{Polynomial, Ring, RingContext, RingMode, SignedPerm, Substitution};

type GbCache = Arc<Mutex<BTreeMap<MonomialOrder, Arc<Vec<Polynomial>>>>>;

/// A finitely generated ideal, with reduced Gröbner bases cached per order.
/// Ideals in Laurent rings are handled through their affine chart.
#[derive(Clone)]
pub struct Ideal {
    ring: Ring,
    generators: Vec<Polynomial>,
    cache: GbCache,
}

impl std::fmt::Debug for Ideal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let gens: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
        write!(f, "Ideal({gens:?})")
    }
}

impl Ideal {
    pub fn new(ring: &Ring, generators: impl IntoIterator<Item = Polynomial>) -> Result<Self> {
        let mut gens = Vec::new();
        for g in generators {
            if !crate::exactpoly::same_ring(g.ring(), ring) {
                return Err(Error::RingMismatch(format!("generator {g} not in {:?}", ring.vars)));
            }
            if !g.is_zero() && !gens.contains(&g) {
                gens.push(g);
            }
        }
        Ok(Ideal { ring: ring.clone(), generators: gens, cache: Default::default() })
    }

    pub fn zero(ring: &Ring) -> Self {
        Ideal { ring: ring.clone(), generators: Vec::new(), cache: Default::default() }
    }

    pub fn unit(ring: &Ring) -> Self {
        Ideal::new(ring, [Polynomial::one(ring)]).unwrap()
    }

    pub fn parse(ring: &Ring, generators: &[&str]) -> Result<Self> {
        let gens = generators.iter().map(|s| Polynomial::parse(ring, s)).collect::<Result<Vec<_>>>()?;
        Ideal::new(ring, gens)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    /// Ideal generated by these generators plus `extra`.
    pub fn extend(&self, extra: impl IntoIterator<Item = Polynomial>) -> Result<Self> {
        Ideal::new(&self.ring, self.generators.iter().cloned().chain(extra))
    }

    pub fn apply_group_element(&self, w: &SignedPerm) -> Result<Self> {
        let gens = self.generators.iter().map(|g| g.apply_group_element(w)).collect::<Result<Vec<_>>>()?;
        Ideal::new(&self.ring, gens)
    }

    /// Moves generators into `target`, matching variables by name.
    pub fn embed(&self, target: &Ring) -> Result<Self> {
        let gens = self.generators.iter().map(|g| g.embed(target)).collect::<Result<Vec<_>>>()?;
        Ideal::new(target, gens)
    }

    /// Reduced Gröbner basis (affine rings only).
    pub fn groebner(&self, ord: &MonomialOrder, budget: &Budget) -> Result<Arc<Vec<Polynomial>>> {
        if let Some(gb) = self.cache.lock().unwrap().get(ord) {
            return Ok(gb.clone());
        }
        let gb = Arc::new(buchberger(&self.ring, &self.generators, ord, budget)?);
        self.cache.lock().unwrap().insert(ord.clone(), gb.clone());
        Ok(gb)
    }

    pub fn cached_basis(&self, ord: &MonomialOrder) -> Option<Arc<Vec<Polynomial>>> {
        self.cache.lock().unwrap().get(ord).cloned()
    }

    fn seed_cache(&self, ord: MonomialOrder, basis: Vec<Polynomial>) {
        self.cache.lock().unwrap().insert(ord, Arc::new(basis));
    }

    /// Whether `1` lies in the ideal.
    pub fn is_unit(&self, budget: &Budget) -> Result<bool> {
        if self.generators.iter().any(|g| g.is_constant()) {
            return Ok(true);
        }
        if self.ring.is_laurent() {
            return laurent_to_affine(self)?.ideal.is_unit(budget);
        }
        let gb = self.groebner(&MonomialOrder::Grevlex, budget)?;
        Ok(gb.iter().any(|g| g.is_constant()))
    }

    pub fn contains(&self, f: &Polynomial, budget: &Budget) -> Result<bool> {
        ideal_membership(f, self, budget)
    }

    /// The reduced grevlex basis, as strings; equal exactly for equal ideals.
    pub fn canonical_form(&self, budget: &Budget) -> Result<Vec<String>> {
        if self.ring.is_laurent() {
            let chart = laurent_to_affine(self)?;
            return chart.ideal.canonical_form(budget);
        }
        Ok(self.groebner(&MonomialOrder::Grevlex, budget)?.iter().map(|g| g.to_string()).collect())
    }

    /// `V(self) ⊆ V(other)`: every generator of `other` is in the radical.
    pub fn locus_contained_in(&self, other: &Ideal, budget: &Budget) -> Result<bool> {
        for g in other.generators() {
            if !radical_membership(g, self, budget)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality of zero loci over the algebraic closure.
    pub fn same_locus(&self, other: &Ideal, budget: &Budget) -> Result<bool> {
        Ok(self.locus_contained_in(other, budget)? && other.locus_contained_in(self, budget)?)
    }

    pub fn to_json(&self) -> IdealJson {
        let groebner = self
            .cache
            .lock()
            .unwrap()
            .iter()
            .next()
            .map(|(o, b)| GbJson { order: o.clone(), basis: b.iter().map(|g| g.to_string()).collect() });
        IdealJson {
            ring: (*self.ring).clone(),
            generators: self.generators.iter().map(|g| g.to_string()).collect(),
            groebner,
        }
    }

    pub fn from_json(j: &IdealJson) -> Result<Self> {
        let ring = RingContext::new(j.ring.mode, j.ring.vars.iter().cloned())?;
        let gens = j.generators.iter().map(|s| Polynomial::parse(&ring, s)).collect::<Result<Vec<_>>>()?;
        Ideal::new(&ring, gens)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GbJson {
    pub order: MonomialOrder,
    pub basis: Vec<String>,
}

/// Wire form: `{"ring": {...}, "generators": [...], "groebner": {...}}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdealJson {
    pub ring: RingContext,
    pub generators: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub groebner: Option<GbJson>,
}

pub fn normal_form(f: &Polynomial, ideal: &Ideal, ord: &MonomialOrder, budget: &Budget) -> Result<Polynomial> {
    crate::exactpoly::same_ring(f.ring(), ideal.ring())
        .then_some(())
        .ok_or_else(|| Error::RingMismatch("polynomial and ideal rings differ".into()))?;
    let gb = ideal.groebner(ord, budget)?;
    Ok(reduce_by_basis(f, &gb, ord))
}

pub fn ideal_membership(f: &Polynomial, ideal: &Ideal, budget: &Budget) -> Result<bool> {
    if f.is_zero() {
        return Ok(true);
    }
    if ideal.ring().is_laurent() {
        let chart = laurent_to_affine(ideal)?;
        let g = chart.to_chart(&f.clear_units().0)?;
        return ideal_membership(&g, &chart.ideal, budget);
    }
    Ok(normal_form(f, ideal, &MonomialOrder::Grevlex, budget)?.is_zero())
}

/// Whether `f` vanishes on `V(I)`, by testing `1 ∈ I + (z f - 1)`.
pub fn radical_membership(f: &Polynomial, ideal: &Ideal, budget: &Budget) -> Result<bool> {
    if !crate::exactpoly::same_ring(f.ring(), ideal.ring()) {
        return Err(Error::RingMismatch("polynomial and ideal rings differ".into()));
    }
    if f.is_zero() {
        return Ok(true);
    }
    if ideal.ring().is_laurent() {
        let chart = laurent_to_affine(ideal)?;
        let g = chart.to_chart(&f.clear_units().0)?;
        return radical_membership(&g, &chart.ideal, budget);
    }
    if ideal.contains(f, budget)? {
        return Ok(true);
    }
    let ring = ideal.ring();
    let z = ring.fresh_name("z");
    // The new variable goes first: with it last, grevlex bases of some
    // small inputs suffer severe coefficient growth.
    let big = RingContext::new(RingMode::Affine, std::iter::once(z).chain(ring.vars.iter().cloned()))?;
    let zv = Polynomial::var(&big, 0);
    let fz = f.embed(&big)?;
    let rab = &(&zv * &fz) - &Polynomial::one(&big);
    ideal.embed(&big)?.extend([rab])?.is_unit(budget)
}

/// `I ∩ k[kept variables]`, returned in the subring of kept variables.
pub fn elimination_ideal(ideal: &Ideal, drop: &[usize], budget: &Budget) -> Result<Ideal> {
    let ring = ideal.ring();
    if let Some(&bad) = drop.iter().find(|&&i| i >= ring.arity()) {
        return Err(Error::InvalidArgument(format!("variable index {bad} out of range")));
    }
    if ring.is_laurent() {
        let chart = laurent_to_affine(ideal)?;
        let n = ring.arity();
        let chart_drop: Vec<usize> = drop.iter().flat_map(|&i| [i, i + n]).collect();
        let elim = elimination_ideal(&chart.ideal, &chart_drop, budget)?;
        let keep: Vec<usize> = (0..n).filter(|i| !drop.contains(i)).collect();
        let sub = ring.subring(&keep);
        let gens = elim.generators().iter().map(|g| chart.from_chart_into(g, &sub)).collect::<Result<Vec<_>>>()?;
        return Ideal::new(&sub, gens);
    }
    let keep: Vec<usize> = (0..ring.arity()).filter(|i| !drop.contains(i)).collect();
    let sub = ring.subring(&keep);
    if drop.is_empty() {
        return ideal.embed(&sub);
    }
    let ord = MonomialOrder::block(drop);
    let gb = ideal.groebner(&ord, budget)?;
    let gens: Vec<Polynomial> =
        gb.iter().filter(|g| !drop.iter().any(|&i| g.involves(i))).map(|g| g.embed(&sub)).collect::<Result<_>>()?;
    let out = Ideal::new(&sub, gens.clone())?;
    out.seed_cache(MonomialOrder::Grevlex, gens);
    Ok(out)
}

/// `I ∩ J` by eliminating `t` from `t I + (1 - t) J`.
pub fn ideal_intersect(a: &Ideal, b: &Ideal, budget: &Budget) -> Result<Ideal> {
    if !crate::exactpoly::same_ring(a.ring(), b.ring()) {
        return Err(Error::RingMismatch("cannot intersect ideals of different rings".into()));
    }
    let ring = a.ring();
    if a.generators().is_empty() || b.generators().is_empty() {
        return Ok(Ideal::zero(ring));
    }
    if a.is_unit(budget)? {
        return Ok(b.clone());
    }
    if b.is_unit(budget)? {
        return Ok(a.clone());
    }
    if ring.is_laurent() {
        let ca = laurent_to_affine(a)?;
        let cb = laurent_to_affine(b)?;
        let both = ideal_intersect(&ca.ideal, &cb.ideal, budget)?;
        let gens = both.generators().iter().map(|g| ca.from_chart(g)).collect::<Result<Vec<_>>>()?;
        return Ideal::new(ring, gens);
    }
    let t = ring.fresh_name("t");
    let big = RingContext::new(RingMode::Affine, std::iter::once(t).chain(ring.vars.iter().cloned()))?;
    let tv = Polynomial::var(&big, 0);
    let one_minus_t = &Polynomial::one(&big) - &tv;
    let mut gens = Vec::new();
    for f in a.generators() {
        gens.push(&tv * &f.embed(&big)?);
    }
    for g in b.generators() {
        gens.push(&one_minus_t * &g.embed(&big)?);
    }
    let elim = elimination_ideal(&Ideal::new(&big, gens)?, &[0], budget)?;
    let gens = elim.generators().iter().map(|g| g.with_ring(ring)).collect::<Result<Vec<_>>>()?;
    let out = Ideal::new(ring, gens.clone())?;
    out.seed_cache(MonomialOrder::Grevlex, gens);
    Ok(out)
}

/// Affine chart of a Laurent ideal: each `x` gets a partner `x_inv` with
/// `x * x_inv = 1`.
#[derive(Clone, Debug)]
pub struct LaurentChart {
    pub laurent: Ring,
    pub affine: Ring,
    pub ideal: Ideal,
}

impl LaurentChart {
    pub fn for_ring(laurent: &Ring) -> Result<(Ring, Vec<Polynomial>)> {
        let n = laurent.arity();
        let mut names = Vec::with_capacity(n);
        for v in &laurent.vars {
            let probe = RingContext::new(RingMode::Affine, laurent.vars.iter().chain(names.iter()).cloned())?;
            names.push(probe.fresh_name(&format!("{v}_inv")));
        }
        let affine = laurent.extended(RingMode::Affine, &names)?;
        let rels = (0..n)
            .map(|i| &(&Polynomial::var(&affine, i) * &Polynomial::var(&affine, i + n)) - &Polynomial::one(&affine))
            .collect();
        Ok((affine, rels))
    }

    /// Exact image: `x^-k` becomes `x_inv^k`.
    pub fn to_chart(&self, f: &Polynomial) -> Result<Polynomial> {
        let n = self.laurent.arity();
        let mut out = Polynomial::zero(&self.affine);
        for (m, c) in f.terms() {
            let mut e = vec![0; 2 * n];
            for (i, &x) in m.exps().iter().enumerate() {
                if x >= 0 {
                    e[i] = x;
                } else {
                    e[i + n] = -x;
                }
            }
            out = &out + &Polynomial::try_term(&self.affine, crate::exactpoly::Monomial::new(e), c.clone())?;
        }
        Ok(out)
    }

    pub fn from_chart(&self, g: &Polynomial) -> Result<Polynomial> {
        self.from_chart_into(g, &self.laurent)
    }

    /// `x_inv -> x^-1`. `g` may live in any ring of chart variables (for
    /// example an elimination subring); `target` must hold the Laurent
    /// variables `g` uses.
    pub fn from_chart_into(&self, g: &Polynomial, target: &Ring) -> Result<Polynomial> {
        let n = self.laurent.arity();
        let src = g.ring();
        let images = (0..src.arity())
            .map(|i| {
                let k = self
                    .affine
                    .index_of(&src.vars[i])
                    .ok_or_else(|| Error::RingMismatch(format!("{} is not a chart variable", src.vars[i])))?;
                let name = &self.laurent.vars[k % n];
                match target.index_of(name) {
                    Some(j) => {
                        let v = Polynomial::var(target, j);
                        if k < n {
                            Ok(v)
                        } else {
                            v.pow_signed(-1)
                        }
                    }
                    None if !g.involves(i) => Ok(Polynomial::zero(target)),
                    None => Err(Error::RingMismatch(format!("variable {name} missing from target"))),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        let s = Substitution::new(src, target, images)?;
        g.substitute(&s)
    }
}

pub fn laurent_to_affine(ideal: &Ideal) -> Result<LaurentChart> {
    let laurent = ideal.ring().clone();
    if !laurent.is_laurent() {
        return Err(Error::InvalidArgument("laurent_to_affine expects a Laurent ring".into()));
    }
    let (affine, rels) = LaurentChart::for_ring(&laurent)?;
    let mut gens = Vec::new();
    for g in ideal.generators() {
        let cleared = g.clear_units().0;
        gens.push(cleared.with_ring(&laurent.with_mode(RingMode::Affine))?.embed(&affine)?);
    }
    gens.extend(rels);
    let ideal = Ideal::new(&affine, gens)?;
    Ok(LaurentChart { laurent, affine, ideal })
}
