//! Sparse multivariate polynomials over the fields of [`crate::exactalg`],
//! polynomial matrices, interpolation on simplex grids and a small
//! Buchberger engine.

mod groebner;
mod interp;
mod matrix;
pub mod monomial;
mod poly;

pub use groebner::{
    groebner_basis, groebner_zero_dim_degree, normal_form, standard_monomial_count, GroebnerBasis,
};
pub use interp::{interpolate, InterpOptions, Interpolant, DEFAULT_CHECKS};
pub use matrix::{eval_poly_matrix, partial_derivatives, restrict_linear, AffineMap, PolyMatrix};
pub use poly::MultiPoly;
