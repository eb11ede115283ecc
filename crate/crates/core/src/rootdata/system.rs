use std::collections::BTreeSet;
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::types::{Family, SuperType};
use crate::error::{Error, Result};
use crate::exactpoly::{generate_group, Polynomial, Rational, RingContext, RingMode, SignedPerm};

/// Integer vector in the ε/δ basis (ε coordinates first).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Root(pub Vec<i64>);

impl Root {
    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn neg(&self) -> Root {
        Root(self.0.iter().map(|x| -x).collect())
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| self.0[i] != 0).collect()
    }

    pub fn to_rational(&self) -> Vec<Rational> {
        self.0.iter().map(|&x| Rational::from_integer(x.into())).collect()
    }

    /// `ε_i + ε_j` for `α = ε_i - ε_j` (types p and q).
    pub fn bar(&self) -> Root {
        Root(self.0.iter().map(|x| x.abs()).collect())
    }
}

/// Roots, form and Weyl group of one supported type.
#[derive(Clone, Debug)]
pub struct RootSystem {
    pub ty: SuperType,
    pub n_eps: usize,
    pub n_delta: usize,
    pub labels: Vec<String>,
    /// Diagonal of the Gram matrix in the ε/δ basis.
    pub gram: Vec<i64>,
    pub even: Vec<Root>,
    pub odd: Vec<Root>,
    /// Isotropic odd roots (KM), or the positive even roots (p, q).
    pub iso: Vec<Root>,
    /// One representative of each `±` pair in `iso`.
    pub iso_positive: Vec<Root>,
    pub omega: Vec<Root>,
    pub weyl_generators: Vec<SignedPerm>,
    weyl: OnceLock<Vec<SignedPerm>>,
}

impl PartialEq for RootSystem {
    fn eq(&self, other: &Self) -> bool {
        self.ty == other.ty
    }
}

fn unit(dim: usize, i: usize, c: i64) -> Vec<i64> {
    let mut v = vec![0; dim];
    v[i] = c;
    v
}

fn combo(dim: usize, parts: &[(usize, i64)]) -> Root {
    let mut v = vec![0; dim];
    for &(i, c) in parts {
        v[i] += c;
    }
    Root(v)
}

pub fn build_root_system(ty: SuperType) -> Result<RootSystem> {
    ty.validate()?;
    let ne = ty.n_eps();
    let nd = ty.n_delta();
    let dim = ne + nd;
    let e = |i: usize| i;
    let d = |j: usize| ne + j;
    let mut even = BTreeSet::new();
    let mut odd = BTreeSet::new();
    let mut gens = Vec::new();
    let mut labels: Vec<String> = (1..=ne).map(|i| format!("e{i}")).collect();
    labels.extend((1..=nd).map(|j| format!("d{j}")));
    let gram: Vec<i64> = (0..dim).map(|i| if ty.is_km() && i >= ne { -1 } else { 1 }).collect();

    match ty.family {
        Family::Gl | Family::Sl => {
            for i in 0..ne {
                for k in 0..ne {
                    if i != k {
                        even.insert(combo(dim, &[(e(i), 1), (e(k), -1)]));
                    }
                }
                for j in 0..nd {
                    odd.insert(combo(dim, &[(e(i), 1), (d(j), -1)]));
                    odd.insert(combo(dim, &[(e(i), -1), (d(j), 1)]));
                }
            }
            for j in 0..nd {
                for l in 0..nd {
                    if j != l {
                        even.insert(combo(dim, &[(d(j), 1), (d(l), -1)]));
                    }
                }
            }
        }
        Family::Osp => {
            let odd_m = ty.m % 2 == 1;
            for i in 0..ne {
                for k in i + 1..ne {
                    for (a, b) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                        even.insert(combo(dim, &[(e(i), a), (e(k), b)]));
                    }
                }
                if odd_m {
                    even.insert(combo(dim, &[(e(i), 1)]));
                    even.insert(combo(dim, &[(e(i), -1)]));
                }
                for j in 0..nd {
                    for (a, b) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                        odd.insert(combo(dim, &[(e(i), a), (d(j), b)]));
                    }
                }
            }
            for j in 0..nd {
                for l in j + 1..nd {
                    for (a, b) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                        even.insert(combo(dim, &[(d(j), a), (d(l), b)]));
                    }
                }
                even.insert(combo(dim, &[(d(j), 2)]));
                even.insert(combo(dim, &[(d(j), -2)]));
                if odd_m {
                    odd.insert(combo(dim, &[(d(j), 1)]));
                    odd.insert(combo(dim, &[(d(j), -1)]));
                }
            }
        }
        Family::P | Family::Q => {
            for i in 0..ne {
                for k in 0..ne {
                    if i != k {
                        even.insert(combo(dim, &[(e(i), 1), (e(k), -1)]));
                    }
                }
            }
            if ty.family == Family::Q {
                odd = even.clone();
            } else {
                for i in 0..ne {
                    odd.insert(combo(dim, &[(e(i), 2)]));
                    for k in i + 1..ne {
                        odd.insert(combo(dim, &[(e(i), 1), (e(k), 1)]));
                        odd.insert(combo(dim, &[(e(i), -1), (e(k), -1)]));
                    }
                }
            }
        }
    }

    // Weyl group generators.
    for i in 0..ne.saturating_sub(1) {
        gens.push(SignedPerm::transposition(dim, e(i), e(i + 1)));
    }
    if ty.family == Family::Osp && ne >= 1 {
        if ty.m % 2 == 1 {
            gens.push(SignedPerm::sign_flip(dim, e(ne - 1)));
        } else if ne >= 2 {
            gens.push(SignedPerm::signed_transposition(dim, e(ne - 2), e(ne - 1)));
        }
    }
    for j in 0..nd.saturating_sub(1) {
        gens.push(SignedPerm::transposition(dim, d(j), d(j + 1)));
    }
    if ty.family == Family::Osp && nd >= 1 {
        gens.push(SignedPerm::sign_flip(dim, d(nd - 1)));
    }

    let even: Vec<Root> = even.into_iter().collect();
    let odd: Vec<Root> = odd.into_iter().collect();
    let form = |a: &Root, b: &Root| -> i64 { (0..dim).map(|k| a.0[k] * b.0[k] * gram[k]).sum() };

    let (iso, iso_positive, omega): (Vec<Root>, Vec<Root>, Vec<Root>) = if ty.is_km() {
        let iso: Vec<Root> = odd.iter().filter(|a| form(a, a) == 0).cloned().collect();
        // Positive: first nonzero coordinate (an ε coordinate) is positive.
        let pos: Vec<Root> =
            iso.iter().filter(|a| a.0.iter().find(|&&x| x != 0).map(|&x| x > 0).unwrap_or(false)).cloned().collect();
        let omega = match ty.family {
            Family::Gl | Family::Sl => pos.clone(),
            // osp(2|2n): the odd part splits into two modules.
            Family::Osp if ty.m == 2 => pos.clone(),
            _ => iso.clone(),
        };
        (iso, pos, omega)
    } else {
        let pos: Vec<Root> = (0..ne)
            .flat_map(|i| (i + 1..ne).map(move |k| (i, k)))
            .map(|(i, k)| combo(dim, &[(e(i), 1), (e(k), -1)]))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        (pos.clone(), pos.clone(), pos)
    };

    Ok(RootSystem {
        ty,
        n_eps: ne,
        n_delta: nd,
        labels,
        gram,
        even,
        odd,
        iso,
        iso_positive,
        omega,
        weyl_generators: gens,
        weyl: OnceLock::new(),
    })
}

impl RootSystem {
    pub fn dim(&self) -> usize {
        self.n_eps + self.n_delta
    }

    pub fn is_km(&self) -> bool {
        self.ty.is_km()
    }

    pub fn roots(&self) -> impl Iterator<Item = &Root> {
        self.even.iter().chain(self.odd.iter())
    }

    pub fn is_root(&self, r: &Root) -> bool {
        self.even.binary_search(r).is_ok() || self.odd.binary_search(r).is_ok()
    }

    pub fn weyl_group(&self) -> &[SignedPerm] {
        self.weyl.get_or_init(|| generate_group(self.dim(), &self.weyl_generators))
    }

    pub fn form(&self, a: &Root, b: &Root) -> i64 {
        (0..self.dim()).map(|k| a.0[k] * b.0[k] * self.gram[k]).sum()
    }

    pub fn bilinear(&self, a: &[Rational], b: &[Rational]) -> Result<Rational> {
        let n = self.dim();
        for v in [a, b] {
            if v.len() != n {
                return Err(Error::Dimension { expected: n, got: v.len() });
            }
        }
        Ok((0..n).map(|k| &a[k] * &b[k] * Rational::from_integer(self.gram[k].into())).sum())
    }

    /// The vector whose pairing cuts out `Π_α` and `𝕋_α`: `α` itself in KM
    /// types, `ᾱ` in types p and q.
    pub fn hyperplane_vector(&self, alpha: &Root) -> Root {
        if self.is_km() {
            alpha.clone()
        } else {
            alpha.bar()
        }
    }

    /// Orthogonality relation used for iso-sets: `(α, β) = 0` in KM types,
    /// `(α, β̄) = 0` in types p and q.
    pub fn iso_orthogonal(&self, a: &Root, b: &Root) -> bool {
        self.form(a, &self.hyperplane_vector(b)) == 0
    }

    pub fn root_label(&self, r: &Root) -> String {
        let mut out = String::new();
        for (k, &c) in r.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if c < 0 {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            if c.abs() != 1 {
                out.push_str(&c.abs().to_string());
            }
            out.push_str(&self.labels[k]);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// Parses an integer combination of basis labels, e.g. `e2-d2` or `2d1`.
    pub fn parse_vector(&self, s: &str) -> Result<Root> {
        let ring = RingContext::new(RingMode::Affine, self.labels.iter().cloned())?;
        let p = Polynomial::parse(&ring, &insert_star(s))?;
        let mut v = vec![0i64; self.dim()];
        for (m, c) in p.terms() {
            if m.degree() != 1 || !c.is_integer() {
                return Err(Error::Parse(format!("{s:?} is not an integer combination of {:?}", self.labels)));
            }
            let k = m.exps().iter().position(|&e| e == 1).unwrap();
            v[k] = i64::try_from(c.to_integer()).map_err(|_| Error::Parse(s.into()))?;
        }
        Ok(Root(v))
    }

    pub fn parse_root(&self, s: &str) -> Result<Root> {
        let r = self.parse_vector(s)?;
        if !self.is_root(&r) {
            return Err(Error::NotAdmissible(format!("{s} is not a root of {}", self.ty)));
        }
        Ok(r)
    }

    /// Maximum size of an iso-set, by exhaustive search.
    pub fn defect(&self) -> usize {
        let mut best = 0;
        search_isosets(self, &self.iso_positive, usize::MAX, &mut |s| best = best.max(s.len()));
        best
    }

    /// All nonempty iso-sets contained in `Ω` with at most `cap` elements.
    pub fn enumerate_isosets(&self, cap: usize) -> Vec<Vec<Root>> {
        let mut out = Vec::new();
        search_isosets(self, &self.omega, cap, &mut |s| out.push(s.to_vec()));
        out
    }

    /// All nonempty iso-sets drawn from `pool` with at most `cap` elements.
    pub fn isosets_within(&self, pool: &[Root], cap: usize) -> Vec<Vec<Root>> {
        let mut out = Vec::new();
        search_isosets(self, pool, cap, &mut |s| out.push(s.to_vec()));
        out
    }

    /// Coordinate slots consumed by the `i`-th element (0-based) of the
    /// standard chain.
    pub fn chain_slots(&self, i: usize) -> Result<(usize, usize)> {
        if self.is_km() {
            if i >= self.n_eps.min(self.n_delta) {
                return Err(Error::LevelOutOfRange { q: i + 1, max: self.n_eps.min(self.n_delta) });
            }
            Ok((self.n_eps - 1 - i, self.n_eps + self.n_delta - 1 - i))
        } else {
            if 2 * i + 2 > self.n_eps {
                return Err(Error::LevelOutOfRange { q: i + 1, max: self.n_eps / 2 });
            }
            Ok((self.n_eps - 2 * i - 2, self.n_eps - 2 * i - 1))
        }
    }

    /// `A(q) = {β_1, …, β_q}`: `β_i = ε_{m-i+1} - δ_{n-i+1}` in KM types and
    /// `ε_{n-2i+1} - ε_{n-2i+2}` in types p and q.
    pub fn standard_chain(&self, q: usize) -> Result<Vec<Root>> {
        (0..q)
            .map(|i| {
                let (a, b) = self.chain_slots(i)?;
                Ok(combo(self.dim(), &[(a, 1), (b, -1)]))
            })
            .collect()
    }

    /// Exponent vector of the one-parameter subgroup `c_β`:
    /// `e_k = (basis_k, β)`.
    pub fn c_beta(&self, beta: &Root) -> Result<Vec<i64>> {
        let ok = if self.is_km() { self.is_root(beta) } else { self.iso.contains(beta) };
        if !ok || beta.0.len() != self.dim() {
            return Err(Error::NotAdmissible(format!("{} is not a root here", self.root_label(beta))));
        }
        Ok((0..self.dim()).map(|k| self.gram[k] * beta.0[k]).collect())
    }

    /// Reflection in an even root, as a signed permutation of the basis.
    pub fn reflection(&self, gamma: &Root) -> Option<SignedPerm> {
        let gg = self.form(gamma, gamma);
        if gg == 0 {
            return None;
        }
        let n = self.dim();
        let mut perm = vec![0; n];
        let mut flip = vec![false; n];
        for (i, slot) in perm.iter_mut().enumerate() {
            let basis = Root(unit(n, i, 1));
            let num = 2 * self.form(&basis, gamma);
            if num % gg != 0 {
                return None;
            }
            let k = num / gg;
            let img: Vec<i64> = (0..n).map(|j| basis.0[j] - k * gamma.0[j]).collect();
            let nz: Vec<usize> = (0..n).filter(|&j| img[j] != 0).collect();
            if nz.len() != 1 || img[nz[0]].abs() != 1 {
                return None;
            }
            *slot = nz[0];
            flip[i] = img[nz[0]] < 0;
        }
        SignedPerm::new(perm, flip).ok()
    }

    pub fn act_root(&self, w: &SignedPerm, r: &Root) -> Root {
        Root(w.act_int(&r.0))
    }

    /// Representatives (smallest element) of the W-orbits on `set`.
    pub fn orbit_representatives(&self, set: &[Root]) -> Vec<Root> {
        let mut seen: BTreeSet<Root> = BTreeSet::new();
        let mut reps = Vec::new();
        let mut sorted = set.to_vec();
        sorted.sort();
        for r in sorted {
            if seen.contains(&r) {
                continue;
            }
            reps.push(r.clone());
            for w in self.weyl_group() {
                seen.insert(self.act_root(w, &r));
            }
        }
        reps
    }

    /// Names of the coordinate functions on `𝔥*` (`X1.., Y1..`) or on the
    /// torus (`x1.., y1..`).
    pub fn variable_names(&self, multiplicative: bool) -> Vec<String> {
        let (a, b) = if multiplicative { ("x", "y") } else { ("X", "Y") };
        (1..=self.n_eps).map(|i| format!("{a}{i}")).chain((1..=self.n_delta).map(|j| format!("{b}{j}"))).collect()
    }
}

/// `2d1` becomes `2*d1`; digits that end a label are left alone.
fn insert_star(s: &str) -> String {
    let mut out = String::new();
    let mut in_label = false;
    let mut prev_digit_coeff = false;
    for c in s.chars() {
        if c.is_ascii_alphabetic() {
            if prev_digit_coeff {
                out.push('*');
            }
            in_label = true;
            prev_digit_coeff = false;
        } else if c.is_ascii_digit() {
            prev_digit_coeff = !in_label;
        } else {
            in_label = false;
            prev_digit_coeff = false;
        }
        out.push(c);
    }
    out
}

fn rank_of(vectors: &[&Root]) -> usize {
    let m: Vec<Vec<Rational>> = vectors.iter().map(|r| r.to_rational()).collect();
    crate::exactpoly::linalg::rank(&m)
}

fn search_isosets(rs: &RootSystem, pool: &[Root], cap: usize, visit: &mut dyn FnMut(&[Root])) {
    fn go(
        rs: &RootSystem,
        pool: &[Root],
        start: usize,
        cur: &mut Vec<Root>,
        cap: usize,
        visit: &mut dyn FnMut(&[Root]),
    ) {
        if !cur.is_empty() {
            visit(cur);
        }
        if cur.len() == cap {
            return;
        }
        for k in start..pool.len() {
            let r = &pool[k];
            if !rs.iso_orthogonal(r, r) {
                continue;
            }
            if !cur.iter().all(|c| rs.iso_orthogonal(c, r) && rs.iso_orthogonal(r, c)) {
                continue;
            }
            let mut refs: Vec<&Root> = cur.iter().collect();
            refs.push(r);
            if rank_of(&refs) != refs.len() {
                continue;
            }
            cur.push(r.clone());
            go(rs, pool, k + 1, cur, cap, visit);
            cur.pop();
        }
    }
    go(rs, pool, 0, &mut Vec::new(), cap, visit);
}

impl fmt::Display for RootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.ty)
    }
}
