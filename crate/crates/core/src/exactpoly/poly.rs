use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::group::SignedPerm;
use super::ring::{check_same, Ring, RingMode};
use super::Rational;
use crate::error::{Error, Result};

/// Dense exponent vector. Ordered graded-lexicographically, so the
/// largest element of a term map is the leading term in that order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub(crate) Vec<i32>);

impl Monomial {
    pub fn one(arity: usize) -> Self {
        Monomial(vec![0; arity])
    }

    pub fn new(exps: Vec<i32>) -> Self {
        Monomial(exps)
    }

    pub fn exps(&self) -> &[i32] {
        &self.0
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    /// Sum of absolute exponents; the size measure used for Laurent terms.
    pub fn abs_degree(&self) -> i64 {
        self.0.iter().map(|&e| (e as i64).abs()).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn has_negative(&self) -> bool {
        self.0.iter().any(|&e| e < 0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Pow(i64),
}

/// Sparse polynomial with exact rational coefficients.
#[derive(Clone)]
pub struct Polynomial {
    ring: Ring,
    terms: BTreeMap<Monomial, Rational>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        super::ring::same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl Hash for Polynomial {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ring.vars.hash(state);
        for (m, c) in &self.terms {
            m.hash(state);
            c.hash(state);
        }
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl Polynomial {
    pub fn zero(ring: &Ring) -> Self {
        Polynomial { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ring: &Ring) -> Self {
        Self::constant(ring, Rational::one())
    }

    pub fn constant(ring: &Ring, c: Rational) -> Self {
        Self::term(ring, Monomial::one(ring.arity()), c)
    }

    pub fn from_int(ring: &Ring, c: i64) -> Self {
        Self::constant(ring, Rational::from_integer(c.into()))
    }

    /// Panics if the monomial is malformed for the ring; use
    /// [`Polynomial::try_term`] for untrusted input.
    pub fn term(ring: &Ring, m: Monomial, c: Rational) -> Self {
        Self::try_term(ring, m, c).expect("monomial incompatible with ring")
    }

    pub fn try_term(ring: &Ring, m: Monomial, c: Rational) -> Result<Self> {
        if m.0.len() != ring.arity() {
            return Err(Error::Dimension { expected: ring.arity(), got: m.0.len() });
        }
        if ring.mode == RingMode::Affine && m.has_negative() {
            return Err(Error::RingMismatch("negative exponent in affine ring".into()));
        }
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Ok(Polynomial { ring: ring.clone(), terms })
    }

    pub fn var(ring: &Ring, i: usize) -> Self {
        let mut e = vec![0; ring.arity()];
        e[i] = 1;
        Self::term(ring, Monomial(e), Rational::one())
    }

    /// Laurent monomial `prod x_i^{e_i}`.
    pub fn monomial(ring: &Ring, exps: &[i32]) -> Result<Self> {
        Self::try_term(ring, Monomial(exps.to_vec()), Rational::one())
    }

    pub fn from_terms(ring: &Ring, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Result<Self> {
        let mut out = Self::zero(ring);
        for (m, c) in terms {
            if m.0.len() != ring.arity() {
                return Err(Error::Dimension { expected: ring.arity(), got: m.0.len() });
            }
            if ring.mode == RingMode::Affine && m.has_negative() {
                return Err(Error::RingMismatch("negative exponent in affine ring".into()));
            }
            out.add_term(m, c);
        }
        Ok(out)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.iter().next().map(|(m, c)| m.is_one() && c.is_one()).unwrap_or(false)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn constant_term(&self) -> Rational {
        self.terms.get(&Monomial::one(self.ring.arity())).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Leading term in graded-lex order.
    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<i64> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn abs_degree(&self) -> i64 {
        self.terms.keys().map(Monomial::abs_degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> Option<i32> {
        self.terms.keys().map(|m| m.0[var]).max()
    }

    pub fn min_degree_in(&self, var: usize) -> Option<i32> {
        self.terms.keys().map(|m| m.0[var]).min()
    }

    pub fn involves(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.0[var] != 0)
    }

    /// Is a nonzero scalar times a monomial.
    pub fn is_unit_term(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn has_negative_exponents(&self) -> bool {
        self.terms.keys().any(Monomial::has_negative)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        Polynomial { ring: self.ring.clone(), terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Result<Self> {
        let terms: BTreeMap<_, _> = self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect();
        if self.ring.mode == RingMode::Affine && terms.keys().any(Monomial::has_negative) {
            return Err(Error::RingMismatch("negative exponent in affine ring".into()));
        }
        Ok(Polynomial { ring: self.ring.clone(), terms })
    }

    /// Makes the leading coefficient one.
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
            None => self.clone(),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        check_same(&self.ring, &other.ring)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        check_same(&self.ring, &other.ring)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        check_same(&self.ring, &other.ring)?;
        let mut out = Self::zero(&self.ring);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one(&self.ring);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Inverse of a unit (single-term polynomial in a Laurent ring).
    pub fn unit_inverse(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (m, c) = self.terms.iter().next()?;
        if self.ring.mode == RingMode::Affine && !m.is_one() {
            return None;
        }
        let inv = Monomial(m.0.iter().map(|e| -e).collect());
        Some(Self::term(&self.ring, inv, c.recip()))
    }

    /// Integer power; negative powers require a unit.
    pub fn pow_signed(&self, e: i64) -> Result<Self> {
        let e32 = u32::try_from(e.unsigned_abs()).map_err(|_| Error::InvalidArgument("exponent too large".into()))?;
        if e >= 0 {
            Ok(self.pow(e32))
        } else {
            let inv = self.unit_inverse().ok_or_else(|| Error::LaurentUnsafe(self.to_string()))?;
            Ok(inv.pow(e32))
        }
    }

    /// Value at a point. Laurent terms with a negative exponent at a zero
    /// coordinate are an error.
    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.ring.arity() {
            return Err(Error::Dimension { expected: self.ring.arity(), got: point.len() });
        }
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e == 0 {
                    continue;
                }
                if e < 0 {
                    if x.is_zero() {
                        return Err(Error::InvalidArgument("inverse of zero coordinate".into()));
                    }
                    v *= num_traits::pow(x.recip(), (-e) as usize);
                } else {
                    v *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += v;
        }
        Ok(acc)
    }

    /// Simultaneous substitution.
    pub fn substitute(&self, s: &Substitution) -> Result<Self> {
        check_same(&self.ring, &s.source)?;
        let target = &s.target;
        let mut out = Self::zero(target);
        let mut cache: Vec<BTreeMap<i32, Polynomial>> = vec![BTreeMap::new(); self.ring.arity()];
        for (m, c) in &self.terms {
            let mut acc = Self::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !cache[i].contains_key(&e) {
                    let p = s.images[i]
                        .pow_signed(e as i64)
                        .map_err(|_| Error::LaurentUnsafe(self.ring.vars[i].clone()))?;
                    cache[i].insert(e, p);
                }
                acc = &acc * &cache[i][&e];
            }
            for (k, v) in acc.terms {
                out.add_term(k, v);
            }
        }
        Ok(out)
    }

    /// Pullback along the inverse of `w`: `(w f)(x) = f(w^{-1} x)`.
    /// A flipped slot negates the variable in an affine ring and inverts it
    /// in a Laurent ring.
    pub fn apply_group_element(&self, w: &SignedPerm) -> Result<Self> {
        let n = self.ring.arity();
        if w.len() != n {
            return Err(Error::Dimension { expected: n, got: w.len() });
        }
        let laurent = self.ring.mode == RingMode::Laurent;
        let mut out = Self::zero(&self.ring);
        for (m, c) in &self.terms {
            let mut e = vec![0; n];
            let mut negate = false;
            for (i, &ei) in m.0.iter().enumerate() {
                let (j, flip) = w.image(i);
                if flip && laurent {
                    e[j] = -ei;
                } else {
                    e[j] = ei;
                    if flip && ei % 2 != 0 {
                        negate = !negate;
                    }
                }
            }
            let coef = if negate { -c.clone() } else { c.clone() };
            out.add_term(Monomial(e), coef);
        }
        Ok(out)
    }

    /// Average of `w f` over the listed group elements.
    pub fn reynolds(&self, group: &[SignedPerm]) -> Result<Self> {
        if group.is_empty() {
            return Err(Error::EmptyGroup);
        }
        let mut acc = Self::zero(&self.ring);
        for w in group {
            acc = acc.checked_add(&self.apply_group_element(w)?)?;
        }
        Ok(acc.scale(&Rational::new(1.into(), (group.len() as i64).into())))
    }

    /// Exact quotient `q` with `self = q * g`, or `None` when `g` does not
    /// divide. In a Laurent ring monomial units are cleared first.
    pub fn divide_exact(&self, g: &Self) -> Result<Option<Self>> {
        check_same(&self.ring, &g.ring)?;
        if g.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Some(Self::zero(&self.ring)));
        }
        if self.ring.mode == RingMode::Laurent {
            let (f0, fshift) = self.clear_units();
            let (g0, gshift) = g.clear_units();
            return Ok(divide_affine(&f0, &g0).map(|q| {
                let shift = fshift.div(&gshift);
                q.mul_monomial(&shift).expect("laurent ring accepts any monomial")
            }));
        }
        Ok(divide_affine(self, g))
    }

    /// Writes `self = m * p` where `m` is a monomial and `p` has
    /// nonnegative exponents with no variable dividing it.
    pub fn clear_units(&self) -> (Self, Monomial) {
        let n = self.ring.arity();
        if self.is_zero() {
            return (self.clone(), Monomial::one(n));
        }
        let mins: Vec<i32> = (0..n).map(|i| self.terms.keys().map(|m| m.0[i]).min().unwrap_or(0)).collect();
        let shift = Monomial(mins);
        let terms = self.terms.iter().map(|(m, c)| (m.div(&shift), c.clone())).collect();
        (Polynomial { ring: self.ring.clone(), terms }, shift)
    }

    /// Same terms, reinterpreted in a ring with identical arity.
    pub fn with_ring(&self, ring: &Ring) -> Result<Self> {
        if ring.arity() != self.ring.arity() {
            return Err(Error::Dimension { expected: ring.arity(), got: self.ring.arity() });
        }
        if ring.mode == RingMode::Affine && self.has_negative_exponents() {
            return Err(Error::RingMismatch("negative exponent in affine ring".into()));
        }
        Ok(Polynomial { ring: ring.clone(), terms: self.terms.clone() })
    }

    /// Moves the polynomial into `target` matching variables by name. Unused
    /// variables need not exist in `target`.
    pub fn embed(&self, target: &Ring) -> Result<Self> {
        let map: Vec<usize> = self
            .ring
            .vars
            .iter()
            .enumerate()
            .map(|(i, v)| match target.index_of(v) {
                Some(j) => Ok(j),
                None if !self.involves(i) => Ok(usize::MAX),
                None => Err(Error::RingMismatch(format!("variable {v} missing from target ring"))),
            })
            .collect::<Result<_>>()?;
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0; target.arity()];
            for (i, &ei) in m.0.iter().enumerate() {
                if ei != 0 {
                    e[map[i]] = ei;
                }
            }
            if target.mode == RingMode::Affine && e.iter().any(|&x| x < 0) {
                return Err(Error::RingMismatch("negative exponent in affine ring".into()));
            }
            out.add_term(Monomial(e), c.clone());
        }
        Ok(out)
    }

    /// Coefficients of the powers of variable `var`, keyed by exponent.
    pub fn coefficients_in(&self, var: usize) -> BTreeMap<i32, Self> {
        let mut out: BTreeMap<i32, Self> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.0[var];
            let mut rest = m.clone();
            rest.0[var] = 0;
            out.entry(e).or_insert_with(|| Self::zero(&self.ring)).add_term(rest, c.clone());
        }
        out
    }

    /// Multiplies every coefficient by the lcm of denominators and divides by
    /// the gcd of numerators; result has coprime integer coefficients with a
    /// positive leading coefficient.
    pub fn primitive(&self) -> Self {
        use num_integer::Integer;
        if self.is_zero() {
            return self.clone();
        }
        let mut lcm = num_bigint::BigInt::one();
        for c in self.terms.values() {
            lcm = lcm.lcm(c.denom());
        }
        let mut g = num_bigint::BigInt::zero();
        for c in self.terms.values() {
            let v = c.numer() * (&lcm / c.denom());
            g = g.gcd(&v);
        }
        let mut factor = Rational::new(lcm, g);
        if self.leading().map(|(_, c)| c.is_negative()).unwrap_or(false) {
            factor = -factor;
        }
        self.scale(&factor)
    }
}

fn divide_affine(f: &Polynomial, g: &Polynomial) -> Option<Polynomial> {
    let (lm, lc) = g.leading().map(|(m, c)| (m.clone(), c.clone()))?;
    let mut rem = f.clone();
    let mut q = Polynomial::zero(&f.ring);
    while let Some((m, c)) = rem.leading().map(|(m, c)| (m.clone(), c.clone())) {
        let shift = m.div(&lm);
        if shift.has_negative() {
            return None;
        }
        let coef = c / &lc;
        for (gm, gc) in &g.terms {
            rem.add_term(gm.mul(&shift), -(gc * &coef));
        }
        q.add_term(shift, coef);
    }
    Some(q)
}

/// Simultaneous substitution `x_i -> images[i]` from `source` into `target`.
#[derive(Clone, Debug)]
pub struct Substitution {
    source: Ring,
    target: Ring,
    images: Vec<Polynomial>,
}

impl Substitution {
    pub fn new(source: &Ring, target: &Ring, images: Vec<Polynomial>) -> Result<Self> {
        if images.len() != source.arity() {
            return Err(Error::Dimension { expected: source.arity(), got: images.len() });
        }
        for p in &images {
            check_same(p.ring(), target)?;
        }
        Ok(Substitution { source: source.clone(), target: target.clone(), images })
    }

    /// Rebinds the listed variables; every other variable maps to the
    /// variable of the same name in `target`.
    pub fn partial(source: &Ring, target: &Ring, rebind: &BTreeMap<usize, Polynomial>) -> Result<Self> {
        let images = (0..source.arity())
            .map(|i| match rebind.get(&i) {
                Some(p) => Ok(p.clone()),
                None => {
                    let name = &source.vars[i];
                    let j = target
                        .index_of(name)
                        .ok_or_else(|| Error::RingMismatch(format!("variable {name} missing from target")))?;
                    Ok(Polynomial::var(target, j))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(source, target, images)
    }

    pub fn identity(ring: &Ring) -> Self {
        Substitution {
            source: ring.clone(),
            target: ring.clone(),
            images: (0..ring.arity()).map(|i| Polynomial::var(ring, i)).collect(),
        }
    }

    pub fn source(&self) -> &Ring {
        &self.source
    }

    pub fn target(&self) -> &Ring {
        &self.target
    }

    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }
}

/// Checked arithmetic dispatch.
pub fn arith(f: &Polynomial, g: &Polynomial, op: ArithOp) -> Result<Polynomial> {
    match op {
        ArithOp::Add => f.checked_add(g),
        ArithOp::Sub => f.checked_sub(g),
        ArithOp::Mul => f.checked_mul(g),
        ArithOp::Pow(e) => {
            if e < 0 {
                return Err(Error::NegativePower(e));
            }
            let e = u32::try_from(e).map_err(|_| Error::InvalidArgument("exponent too large".into()))?;
            Ok(f.pow(e))
        }
    }
}

// Operator impls panic on ring mismatch, mirroring shape errors in array
// libraries; the checked_* methods return errors instead.
impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("polynomial ring mismatch")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("polynomial ring mismatch")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("polynomial ring mismatch")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}
