use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Gl,
    Sl,
    /// `osp(m|2n)`: `m` is the dimension of the orthogonal block.
    Osp,
    P,
    Q,
}

/// Algebra descriptor, e.g. `{"family":"gl","m":2,"n":1}` or
/// `{"family":"q","n":3}`. For `osp`, `m` is the orthogonal dimension and
/// `n` the symplectic rank, so `osp(5|4)` is `m = 5, n = 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SuperType {
    pub family: Family,
    #[serde(default)]
    pub m: usize,
    pub n: usize,
}

impl SuperType {
    pub fn gl(m: usize, n: usize) -> Self {
        SuperType { family: Family::Gl, m, n }
    }

    pub fn sl(m: usize, n: usize) -> Self {
        SuperType { family: Family::Sl, m, n }
    }

    /// `osp(m|2n)`.
    pub fn osp(m: usize, n: usize) -> Self {
        SuperType { family: Family::Osp, m, n }
    }

    pub fn p(n: usize) -> Self {
        SuperType { family: Family::P, m: 0, n }
    }

    pub fn q(n: usize) -> Self {
        SuperType { family: Family::Q, m: 0, n }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |why: &str| Err(Error::InvalidType(format!("{self}: {why}")));
        match self.family {
            Family::Gl if self.m + self.n == 0 => bad("m and n cannot both be 0"),
            Family::Sl if self.m == self.n => bad("sl requires m != n"),
            Family::Sl if self.m + self.n == 0 => bad("m and n cannot both be 0"),
            Family::Osp if self.m / 2 + self.n == 0 => bad("rank is zero"),
            Family::P | Family::Q if self.n == 0 => bad("n must be at least 1"),
            Family::P | Family::Q if self.m != 0 => bad("p and q take only n"),
            _ => Ok(()),
        }
    }

    /// Number of ε coordinates.
    pub fn n_eps(&self) -> usize {
        match self.family {
            Family::Gl | Family::Sl => self.m,
            Family::Osp => self.m / 2,
            Family::P | Family::Q => self.n,
        }
    }

    /// Number of δ coordinates.
    pub fn n_delta(&self) -> usize {
        match self.family {
            Family::P | Family::Q => 0,
            _ => self.n,
        }
    }

    pub fn is_km(&self) -> bool {
        !matches!(self.family, Family::P | Family::Q)
    }

    /// Target of the rank-lowering reduction.
    pub fn reduced(&self) -> Result<SuperType> {
        let small = || Error::RankTooSmall(self.to_string());
        let t = match self.family {
            Family::Gl | Family::Sl => {
                if self.m == 0 || self.n == 0 {
                    return Err(small());
                }
                SuperType { family: self.family, m: self.m - 1, n: self.n - 1 }
            }
            Family::Osp => {
                if self.m < 2 || self.n == 0 {
                    return Err(small());
                }
                SuperType::osp(self.m - 2, self.n - 1)
            }
            Family::P | Family::Q => {
                if self.n < 2 {
                    return Err(small());
                }
                SuperType { family: self.family, m: 0, n: self.n - 2 }
            }
        };
        // A zero-rank target (gl(0|0), osp(1|0), q(0), ...) is not an algebra.
        t.validate().map_err(|_| small())?;
        Ok(t)
    }
}

impl fmt::Display for SuperType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::Gl => write!(f, "gl({}|{})", self.m, self.n),
            Family::Sl => write!(f, "sl({}|{})", self.m, self.n),
            Family::Osp => write!(f, "osp({}|{})", self.m, 2 * self.n),
            Family::P => write!(f, "p({})", self.n),
            Family::Q => write!(f, "q({})", self.n),
        }
    }
}

impl std::str::FromStr for SuperType {
    type Err = Error;

    /// Accepts `gl(2|1)`, `osp(5|4)`, `q(3)` and friends.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidType(format!("cannot parse algebra {s:?}"));
        let (name, rest) = s.split_once('(').ok_or_else(bad)?;
        let inner = rest.strip_suffix(')').ok_or_else(bad)?;
        let num = |x: &str| x.trim().parse::<usize>().map_err(|_| bad());
        let t = match name.trim() {
            "gl" | "sl" | "osp" => {
                let (a, b) = inner.split_once('|').ok_or_else(bad)?;
                let (a, b) = (num(a)?, num(b)?);
                match name.trim() {
                    "gl" => SuperType::gl(a, b),
                    "sl" => SuperType::sl(a, b),
                    _ => {
                        if b % 2 != 0 {
                            return Err(bad());
                        }
                        SuperType::osp(a, b / 2)
                    }
                }
            }
            "p" => SuperType::p(num(inner)?),
            "q" => SuperType::q(num(inner)?),
            _ => return Err(bad()),
        };
        t.validate()?;
        Ok(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_and_parse_agree() {
        for s in ["gl(2|1)", "sl(3|1)", "osp(5|4)", "osp(2|0)", "q(3)", "p(4)"] {
            let t: SuperType = s.parse().unwrap();
            assert_eq!(t.to_string(), s);
        }
        assert!("sl(2|2)".parse::<SuperType>().is_err());
        assert!("osp(3|3)".parse::<SuperType>().is_err());
    }

    #[test]
    fn json_descriptor() {
        let t: SuperType = serde_json::from_str(r#"{"family":"q","n":3}"#).unwrap();
        assert_eq!(t, SuperType::q(3));
        let t: SuperType = serde_json::from_str(r#"{"family":"osp","m":5,"n":2}"#).unwrap();
        assert_eq!(t.to_string(), "osp(5|4)");
    }
}
