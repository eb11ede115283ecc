use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactpoly::{Polynomial, Rational, Ring, RingContext, RingMode};
use crate::rootdata::{build_root_system, Family, Root, RootSystem, SuperType};

/// `𝔥*` with coordinates `X, Y`, or the torus with coordinates `x, y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Space {
    Additive,
    #[serde(alias = "torus")]
    Multiplicative,
}

impl std::str::FromStr for Space {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "additive" | "h" => Ok(Space::Additive),
            "multiplicative" | "torus" | "T" => Ok(Space::Multiplicative),
            _ => Err(Error::InvalidArgument(format!("unknown space {s:?}"))),
        }
    }
}

impl std::fmt::Display for Space {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Space::Additive => "additive",
            Space::Multiplicative => "multiplicative",
        })
    }
}

/// A root system together with the space its functions live on.
#[derive(Clone, Debug)]
pub struct Setting {
    rs: Arc<RootSystem>,
    space: Space,
    ring: Ring,
    experimental: bool,
}

impl Setting {
    pub fn new(ty: SuperType, space: Space) -> Result<Self> {
        let s = Setting::experimental(ty, space)?;
        s.require_invariants()?;
        Ok(s)
    }

    /// Like [`Setting::new`] but also admits `p(n)` on the additive side,
    /// where only the groupoid machinery is available.
    pub fn experimental(ty: SuperType, space: Space) -> Result<Self> {
        let rs = build_root_system(ty)?;
        let mode = match space {
            Space::Additive => RingMode::Affine,
            Space::Multiplicative => RingMode::Laurent,
        };
        let ring = RingContext::new(mode, rs.variable_names(space == Space::Multiplicative))?;
        let experimental = ty.family == Family::P && space == Space::Additive;
        Ok(Setting { rs: Arc::new(rs), space, ring, experimental })
    }

    pub fn is_experimental(&self) -> bool {
        self.experimental
    }

    /// Fails for settings without invariant theory (`p(n)` additive).
    pub fn require_invariants(&self) -> Result<()> {
        if self.experimental {
            return Err(Error::UnsupportedSetting(format!(
                "{} on the additive side: the center has a unique prime ideal",
                self.ty()
            )));
        }
        Ok(())
    }

    pub fn rs(&self) -> &RootSystem {
        &self.rs
    }

    pub fn ty(&self) -> SuperType {
        self.rs.ty
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn is_additive(&self) -> bool {
        self.space == Space::Additive
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn dim(&self) -> usize {
        self.rs.dim()
    }

    /// Setting for the rank-lowered algebra.
    pub fn reduced(&self) -> Result<Setting> {
        Setting::new(self.rs.ty.reduced()?, self.space)
    }

    pub fn parse(&self, text: &str) -> Result<Polynomial> {
        Polynomial::parse(&self.ring, text)
    }

    /// The linear function `λ ↦ (λ, v)` on `𝔥*`.
    pub fn h(&self, v: &Root) -> Polynomial {
        let ring = if self.is_additive() { self.ring.clone() } else { self.ring.with_mode(RingMode::Affine) };
        let mut out = Polynomial::zero(&ring);
        for k in 0..self.dim() {
            let c = self.rs.gram[k] * v.0[k];
            if c != 0 {
                out = &out + &Polynomial::var(&ring, k).scale(&Rational::from_integer(c.into()));
            }
        }
        out
    }

    /// The character `e^v` as a Laurent monomial.
    pub fn character(&self, v: &Root) -> Result<Polynomial> {
        let ring = if self.is_additive() { self.ring.with_mode(RingMode::Laurent) } else { self.ring.clone() };
        let exps: Vec<i32> = v.0.iter().map(|&x| x as i32).collect();
        Polynomial::monomial(&ring, &exps)
    }

    /// Equation of `Π_α` (additive) or `𝕋_α` (multiplicative, cleared of
    /// units), using `ᾱ` in types p and q.
    pub fn hyperplane(&self, alpha: &Root) -> Result<Polynomial> {
        let v = self.rs.hyperplane_vector(alpha);
        if self.is_additive() {
            Ok(self.h(&v))
        } else {
            let e = &self.character(&v)? - &Polynomial::one(&self.ring);
            Ok(e.clear_units().0)
        }
    }

    /// The point `c_β(t)` scaled into a point, or `λ + tβ`, as images of
    /// the coordinate functions in a ring with an extra variable `t` placed
    /// last.
    pub fn with_parameter(&self, name: &str) -> Result<Ring> {
        self.ring.extended(self.ring.mode, &[self.ring.fresh_name(name)])
    }
}
