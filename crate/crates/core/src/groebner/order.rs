use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Term orders. Variable 0 is the largest variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum MonomialOrder {
    Lex,
    Grevlex,
    /// Grevlex on the `front` variables, ties broken by grevlex on the rest.
    /// Any monomial involving a front variable beats every monomial that
    /// does not, so the front block can be eliminated.
    Block {
        front: Vec<usize>,
    },
}

impl MonomialOrder {
    pub fn block(front: &[usize]) -> Self {
        let mut f = front.to_vec();
        f.sort_unstable();
        f.dedup();
        MonomialOrder::Block { front: f }
    }

    pub fn validate(&self, arity: usize) -> Result<()> {
        if let MonomialOrder::Block { front } = self {
            if let Some(&bad) = front.iter().find(|&&i| i >= arity) {
                return Err(Error::InvalidArgument(format!("block variable {bad} out of range")));
            }
        }
        Ok(())
    }

    /// Weight matrix `M` with `a < b` iff `M a < M b` lexicographically.
    pub(crate) fn weights(&self, arity: usize) -> Vec<Vec<i64>> {
        fn grevlex_rows(vars: &[usize], arity: usize, rows: &mut Vec<Vec<i64>>) {
            let mut total = vec![0; arity];
            for &v in vars {
                total[v] = 1;
            }
            rows.push(total);
            for &v in vars.iter().rev() {
                let mut r = vec![0; arity];
                r[v] = -1;
                rows.push(r);
            }
        }
        let mut rows = Vec::new();
        match self {
            MonomialOrder::Lex => {
                for v in 0..arity {
                    let mut r = vec![0; arity];
                    r[v] = 1;
                    rows.push(r);
                }
            }
            MonomialOrder::Grevlex => {
                let all: Vec<usize> = (0..arity).collect();
                grevlex_rows(&all, arity, &mut rows);
            }
            MonomialOrder::Block { front } => {
                let rest: Vec<usize> = (0..arity).filter(|i| !front.contains(i)).collect();
                grevlex_rows(front, arity, &mut rows);
                grevlex_rows(&rest, arity, &mut rows);
            }
        }
        rows
    }
}

impl std::fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MonomialOrder::Lex => write!(f, "lex"),
            MonomialOrder::Grevlex => write!(f, "grevlex"),
            MonomialOrder::Block { front } => write!(f, "block{front:?}"),
        }
    }
}

/// Resource limits for a Gröbner computation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub max_pairs: usize,
    pub max_degree: i64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_pairs: 200_000, max_degree: 64 }
    }
}

impl Budget {
    /// Defaults overridden by `SUPERGEOM_MAX_PAIRS` / `SUPERGEOM_MAX_DEGREE`.
    pub fn from_env() -> Self {
        let mut b = Budget::default();
        if let Some(v) = std::env::var("SUPERGEOM_MAX_PAIRS").ok().and_then(|s| s.parse().ok()) {
            b.max_pairs = v;
        }
        if let Some(v) = std::env::var("SUPERGEOM_MAX_DEGREE").ok().and_then(|s| s.parse().ok()) {
            b.max_degree = v;
        }
        b
    }
}
