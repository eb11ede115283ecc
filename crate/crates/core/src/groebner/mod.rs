//! Gröbner bases over the rationals: reduced bases, normal forms,
//! membership, radical membership, elimination and intersection.

mod buchberger;
mod ideal;
mod order;

pub use buchberger::{buchberger, leading_monomial, reduce_by_basis};
pub use ideal::{
    elimination_ideal, ideal_intersect, ideal_membership, laurent_to_affine, normal_form, radical_membership, GbJson,
    Ideal, IdealJson, LaurentChart,
};
pub use order::{Budget, MonomialOrder};
