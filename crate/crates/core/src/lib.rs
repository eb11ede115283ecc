pub mod cli;
pub mod error;
pub mod exactpoly;
pub mod groebner;
pub mod groupoid;
pub mod invariants;
pub mod rootdata;
pub mod selftest;
pub mod sgeom;

pub use error::{Error, Result};
