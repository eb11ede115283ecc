//! Buchberger's algorithm over an order-keyed term representation.
//!
//! Each term stores its weight key `M e` next to the exponent vector; all
//! supported orders are weight-matrix orders, so keys add under
//! multiplication and comparing keys compares monomials.

use std::cmp::Ordering;

use num_traits::{One, Zero};

use super::order::{Budget, MonomialOrder};
use crate::error::{Error, Result};
use crate::exactpoly::{Monomial, Polynomial, Rational, Ring, RingMode};

#[derive(Clone, Debug)]
pub(crate) struct Term {
    key: Vec<i64>,
    exp: Vec<i32>,
    coef: Rational,
}

/// Terms in ascending order; the leading term is last.
#[derive(Clone, Debug, Default)]
pub(crate) struct OPoly {
    terms: Vec<Term>,
}

pub(crate) struct Ctx {
    weights: Vec<Vec<i64>>,
}

impl Ctx {
    pub(crate) fn new(ord: &MonomialOrder, arity: usize) -> Self {
        Ctx { weights: ord.weights(arity) }
    }

    fn key(&self, e: &[i32]) -> Vec<i64> {
        self.weights.iter().map(|r| r.iter().zip(e).map(|(a, &b)| a * b as i64).sum()).collect()
    }

    pub(crate) fn convert(&self, p: &Polynomial) -> OPoly {
        let mut terms: Vec<Term> =
            p.terms().map(|(m, c)| Term { key: self.key(m.exps()), exp: m.exps().to_vec(), coef: c.clone() }).collect();
        terms.sort_by(|a, b| a.key.cmp(&b.key));
        OPoly { terms }
    }

    pub(crate) fn back(&self, p: &OPoly, ring: &Ring) -> Polynomial {
        Polynomial::from_terms(ring, p.terms.iter().map(|t| (Monomial::new(t.exp.clone()), t.coef.clone())))
            .expect("terms come from the same ring")
    }
}

impl OPoly {
    pub(crate) fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn lead(&self) -> &Term {
        self.terms.last().expect("nonzero polynomial")
    }

    fn degree(&self) -> i64 {
        self.terms.iter().map(|t| t.exp.iter().map(|&e| e as i64).sum::<i64>()).max().unwrap_or(0)
    }

    fn make_monic(&mut self) {
        if let Some(l) = self.terms.last() {
            if !l.coef.is_one() {
                let inv = l.coef.recip();
                for t in &mut self.terms {
                    t.coef *= &inv;
                }
            }
        }
    }

    /// `self - c * x^shift * g`, where `shift_key` is the key of `shift`.
    fn sub_mul(&self, c: &Rational, shift: &[i32], shift_key: &[i64], g: &OPoly) -> OPoly {
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let shifted = g.terms.iter().map(|t| Term {
            key: t.key.iter().zip(shift_key).map(|(a, b)| a + b).collect(),
            exp: t.exp.iter().zip(shift).map(|(a, b)| a + b).collect(),
            coef: -(c * &t.coef),
        });
        let mut a = self.terms.iter().cloned().peekable();
        let mut b = shifted.peekable();
        loop {
            let ord = match (a.peek(), b.peek()) {
                (Some(x), Some(y)) => x.key.cmp(&y.key),
                (Some(_), None) => Ordering::Less,
                (None, Some(_)) => Ordering::Greater,
                (None, None) => break,
            };
            match ord {
                Ordering::Less => out.push(a.next().unwrap()),
                Ordering::Greater => out.push(b.next().unwrap()),
                Ordering::Equal => {
                    let mut x = a.next().unwrap();
                    let y = b.next().unwrap();
                    x.coef += y.coef;
                    if !x.coef.is_zero() {
                        out.push(x);
                    }
                }
            }
        }
        OPoly { terms: out }
    }
}

fn divides(a: &[i32], b: &[i32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &[i32], b: &[i32]) -> Vec<i32> {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn coprime(a: &[i32], b: &[i32]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

fn sub_exp(a: &[i32], b: &[i32]) -> Vec<i32> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Full reduction of `f` by the monic polynomials `basis`.
pub(crate) fn reduce(ctx: &Ctx, f: &OPoly, basis: &[&OPoly]) -> OPoly {
    let mut p = f.clone();
    let mut rem: Vec<Term> = Vec::new();
    while let Some(lt) = p.terms.last() {
        let hit = basis.iter().find(|g| divides(&g.lead().exp, &lt.exp));
        match hit {
            Some(g) => {
                let shift = sub_exp(&lt.exp, &g.lead().exp);
                let skey = ctx.key(&shift);
                let c = lt.coef.clone();
                p = p.sub_mul(&c, &shift, &skey, g);
            }
            None => rem.push(p.terms.pop().unwrap()),
        }
    }
    rem.reverse();
    OPoly { terms: rem }
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Vec<i32>,
    lcm_key: Vec<i64>,
    sugar: i64,
}

struct Engine<'a> {
    ctx: Ctx,
    polys: Vec<OPoly>,
    sugar: Vec<i64>,
    active: Vec<usize>,
    pairs: Vec<Pair>,
    budget: &'a Budget,
    /// Sugar selection for degree-compatible orders; otherwise the pair
    /// with the least lcm goes first.
    graded: bool,
}

impl Engine<'_> {
    fn spoly(&self, p: &Pair) -> OPoly {
        let f = &self.polys[p.i];
        let g = &self.polys[p.j];
        let sf = sub_exp(&p.lcm, &f.lead().exp);
        let sg = sub_exp(&p.lcm, &g.lead().exp);
        let zero = OPoly::default();
        let a = zero.sub_mul(&-Rational::one(), &sf, &self.ctx.key(&sf), f);
        a.sub_mul(&Rational::one(), &sg, &self.ctx.key(&sg), g)
    }

    /// Gebauer–Möller update with the new basis element `h`.
    fn update(&mut self, h: usize) {
        let hl = self.polys[h].lead().exp.clone();
        let mut cands: Vec<Pair> = self
            .active
            .iter()
            .map(|&g| {
                let gl = &self.polys[g].lead().exp;
                let l = lcm(gl, &hl);
                let sugar = (self.sugar[g] + deg(&sub_exp(&l, gl))).max(self.sugar[h] + deg(&sub_exp(&l, &hl)));
                Pair { i: g, j: h, lcm_key: self.ctx.key(&l), lcm: l, sugar }
            })
            .collect();
        let is_coprime = |p: &Pair, polys: &[OPoly]| coprime(&polys[p.i].lead().exp, &hl);

        // Criterion M / F on the new pairs.
        let mut kept: Vec<Pair> = Vec::new();
        while let Some(p) = cands.pop() {
            let dominated =
                !is_coprime(&p, &self.polys) && cands.iter().chain(kept.iter()).any(|q| divides(&q.lcm, &p.lcm));
            if !dominated {
                kept.push(p);
            }
        }
        kept.retain(|p| !is_coprime(p, &self.polys));

        // Criterion B on old pairs.
        let polys = &self.polys;
        self.pairs.retain(|p| {
            if !divides(&hl, &p.lcm) {
                return true;
            }
            let l1 = lcm(&polys[p.i].lead().exp, &hl);
            let l2 = lcm(&polys[p.j].lead().exp, &hl);
            l1 == p.lcm || l2 == p.lcm
        });
        self.pairs.extend(kept);
        self.active.retain(|&g| !divides(&hl, &polys[g].lead().exp));
        self.active.push(h);
    }

    fn add(&mut self, mut p: OPoly, sugar: i64) -> Result<()> {
        p.make_monic();
        if p.degree() > self.budget.max_degree {
            return Err(Error::BudgetExceeded(format!(
                "basis element of degree {} exceeds max_degree {}",
                p.degree(),
                self.budget.max_degree
            )));
        }
        self.polys.push(p);
        self.sugar.push(sugar);
        self.update(self.polys.len() - 1);
        Ok(())
    }

    fn reducers(&self) -> Vec<&OPoly> {
        self.active.iter().map(|&i| &self.polys[i]).collect()
    }

    fn run(&mut self) -> Result<()> {
        let mut processed = 0usize;
        while !self.pairs.is_empty() {
            let best = (0..self.pairs.len())
                .min_by(|&a, &b| {
                    let (p, q) = (&self.pairs[a], &self.pairs[b]);
                    let by_sugar = if self.graded { p.sugar.cmp(&q.sugar) } else { Ordering::Equal };
                    by_sugar.then_with(|| p.lcm_key.cmp(&q.lcm_key)).then_with(|| (p.i, p.j).cmp(&(q.i, q.j)))
                })
                .unwrap();
            let pair = self.pairs.swap_remove(best);
            processed += 1;
            if processed > self.budget.max_pairs {
                return Err(Error::BudgetExceeded(format!("more than {} S-pairs", self.budget.max_pairs)));
            }
            if deg(&pair.lcm) > self.budget.max_degree {
                return Err(Error::BudgetExceeded(format!(
                    "S-pair of degree {} exceeds max_degree {}",
                    deg(&pair.lcm),
                    self.budget.max_degree
                )));
            }
            let s = self.spoly(&pair);
            let h = reduce(&self.ctx, &s, &self.reducers());
            if !h.is_zero() {
                self.add(h, pair.sugar)?;
            }
        }
        Ok(())
    }
}

fn deg(e: &[i32]) -> i64 {
    e.iter().map(|&x| x as i64).sum()
}

/// Reduces each input by the ones before it, repeating until nothing
/// changes. Leads only ever decrease, so this terminates. Seeding the
/// engine with the raw inputs instead lets elimination orders wander into
/// huge intermediate coefficients.
fn interreduce(ctx: &Ctx, mut polys: Vec<OPoly>) -> Vec<OPoly> {
    for p in &mut polys {
        p.make_monic();
    }
    loop {
        let mut changed = false;
        let mut next: Vec<OPoly> = Vec::with_capacity(polys.len());
        for (i, f) in polys.iter().enumerate() {
            let prev: Vec<&OPoly> = polys[..i].iter().collect();
            let mut r = reduce(ctx, f, &prev);
            if r.is_zero() {
                changed = true;
                continue;
            }
            r.make_monic();
            changed |= !same_terms(&r, f);
            next.push(r);
        }
        polys = next;
        if !changed {
            return polys;
        }
    }
}

fn same_terms(a: &OPoly, b: &OPoly) -> bool {
    a.terms.len() == b.terms.len() && a.terms.iter().zip(&b.terms).all(|(x, y)| x.exp == y.exp && x.coef == y.coef)
}

/// Reduced Gröbner basis of the ideal generated by `gens`, monic and sorted
/// by ascending leading monomial.
pub fn buchberger(ring: &Ring, gens: &[Polynomial], ord: &MonomialOrder, budget: &Budget) -> Result<Vec<Polynomial>> {
    if ring.mode == RingMode::Laurent {
        return Err(Error::UnsupportedSetting(
            "Gröbner bases need an affine ring; convert Laurent ideals first".into(),
        ));
    }
    ord.validate(ring.arity())?;
    for g in gens {
        if !crate::exactpoly::same_ring(g.ring(), ring) {
            return Err(Error::RingMismatch(format!("generator {g} not in {:?}", ring.vars)));
        }
    }
    let ctx = Ctx::new(ord, ring.arity());
    let inputs: Vec<OPoly> = gens.iter().filter(|g| !g.is_zero()).map(|g| ctx.convert(g)).collect();
    let mut inputs = interreduce(&ctx, inputs);
    inputs.sort_by(|a, b| a.lead().key.cmp(&b.lead().key));
    let mut eng = Engine {
        ctx,
        polys: Vec::new(),
        sugar: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
        budget,
        graded: *ord == MonomialOrder::Grevlex,
    };
    for f in inputs {
        let s = f.degree();
        eng.add(f, s)?;
    }
    eng.run()?;

    // Minimal basis, then interreduce.
    let mut candidates: Vec<&OPoly> = eng.active.iter().map(|&i| &eng.polys[i]).collect();
    candidates.sort_by(|a, b| a.lead().key.cmp(&b.lead().key));
    let mut basis: Vec<OPoly> = Vec::with_capacity(candidates.len());
    for p in candidates {
        if !basis.iter().any(|q| divides(&q.lead().exp, &p.lead().exp)) {
            basis.push(p.clone());
        }
    }
    let mut reduced = Vec::with_capacity(basis.len());
    for k in 0..basis.len() {
        let others: Vec<&OPoly> = basis.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, p)| p).collect();
        let lead = basis[k].terms.last().cloned().unwrap();
        let tail = OPoly { terms: basis[k].terms[..basis[k].terms.len() - 1].to_vec() };
        let mut r = reduce(&eng.ctx, &tail, &others);
        let pos = r.terms.partition_point(|t| t.key < lead.key);
        r.terms.insert(pos, lead);
        r.make_monic();
        reduced.push(r);
    }
    Ok(reduced.iter().map(|p| eng.ctx.back(p, ring)).collect())
}

/// Remainder of `f` on division by a Gröbner basis.
pub fn reduce_by_basis(f: &Polynomial, basis: &[Polynomial], ord: &MonomialOrder) -> Polynomial {
    let ring = f.ring();
    let ctx = Ctx::new(ord, ring.arity());
    let mut gs: Vec<OPoly> = basis.iter().map(|g| ctx.convert(g)).collect();
    for g in &mut gs {
        g.make_monic();
    }
    let refs: Vec<&OPoly> = gs.iter().collect();
    ctx.back(&reduce(&ctx, &ctx.convert(f), &refs), ring)
}

/// Leading monomial of `f` in the given order.
pub fn leading_monomial(f: &Polynomial, ord: &MonomialOrder) -> Option<Monomial> {
    let ctx = Ctx::new(ord, f.ring().arity());
    let p = ctx.convert(f);
    p.terms.last().map(|t| Monomial::new(t.exp.clone()))
}
