use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Whether negative exponents are allowed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RingMode {
    Affine,
    Laurent,
}

/// Variable names and mode shared by every polynomial of a ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RingContext {
    pub mode: RingMode,
    pub vars: Vec<String>,
}

pub type Ring = Arc<RingContext>;

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl RingContext {
    pub fn new<S: Into<String>>(mode: RingMode, vars: impl IntoIterator<Item = S>) -> Result<Ring> {
        let vars: Vec<String> = vars.into_iter().map(Into::into).collect();
        for (i, v) in vars.iter().enumerate() {
            if !valid_name(v) {
                return Err(Error::InvalidArgument(format!("bad variable name {v:?}")));
            }
            if vars[..i].contains(v) {
                return Err(Error::InvalidArgument(format!("duplicate variable {v}")));
            }
        }
        Ok(Arc::new(RingContext { mode, vars }))
    }

    pub fn arity(&self) -> usize {
        self.vars.len()
    }

    pub fn is_laurent(&self) -> bool {
        self.mode == RingMode::Laurent
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// A name derived from `base` that does not clash with existing variables.
    pub fn fresh_name(&self, base: &str) -> String {
        if self.index_of(base).is_none() {
            return base.to_string();
        }
        (1..).map(|k| format!("{base}_{k}")).find(|n| self.index_of(n).is_none()).unwrap()
    }

    /// Same variables followed by `extra`, in the given mode.
    pub fn extended(&self, mode: RingMode, extra: &[String]) -> Result<Ring> {
        RingContext::new(mode, self.vars.iter().cloned().chain(extra.iter().cloned()))
    }

    pub fn subring(&self, keep: &[usize]) -> Ring {
        Arc::new(RingContext { mode: self.mode, vars: keep.iter().map(|&i| self.vars[i].clone()).collect() })
    }

    pub fn with_mode(&self, mode: RingMode) -> Ring {
        Arc::new(RingContext { mode, vars: self.vars.clone() })
    }
}

pub fn same_ring(a: &Ring, b: &Ring) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

pub(crate) fn check_same(a: &Ring, b: &Ring) -> Result<()> {
    if same_ring(a, b) {
        Ok(())
    } else {
        Err(Error::RingMismatch(format!("{:?} vs {:?}", a.vars, b.vars)))
    }
}
