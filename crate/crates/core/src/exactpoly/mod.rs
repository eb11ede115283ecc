//! Exact sparse polynomials and Laurent polynomials over the rationals.
//!
//! Every polynomial carries its [`RingContext`]; arithmetic between different
//! rings is an error. Signed permutations act on variables, which covers the
//! symmetric, hyperoctahedral and torus-character actions of the Weyl groups
//! used elsewhere in the crate.

pub mod group;
pub mod linalg;
mod parse;
mod poly;
pub mod ring;

pub use group::{generate_group, SignedPerm};
pub use parse::{format_rational, parse_rational};
pub use poly::{arith, ArithOp, Monomial, Polynomial, Substitution};
pub use ring::{same_ring, Ring, RingContext, RingMode};

pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}
