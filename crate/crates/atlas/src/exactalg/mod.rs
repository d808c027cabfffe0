//! Exact arithmetic over odd prime fields, their extensions and the
//! rationals, plus dense linear algebra on top of them.

mod ext;
mod field;
mod mat;
mod prime;
mod rational;
mod subspace;

pub use ext::{ExtField, MAX_EXT_ORDER};
pub use field::{Field, FieldSpec, SquareClass};
pub use mat::{rank_in_place, Mat};
pub use prime::{PrimeField, MAX_PRIME};
pub use rational::{Rationals, RANDOM_RANGE};
pub use subspace::{for_each_subspace, gaussian_binomial, normalize_projective};

/// Builds `F_{p^r}`, returning the plain prime field when `r = 1`.
pub fn ext_field_make(p: u64, r: u32) -> crate::Result<ExtField> {
    ExtField::new(p, r)
}

/// Square class of `x`: zero, a nonzero square, or a nonsquare.
pub fn square_class<F: Field>(field: &F, x: &F::Elem) -> SquareClass {
    field.square_class(x)
}

/// Rank and right kernel basis (as columns).
pub fn mat_rank_kernel<F: Field>(m: &Mat<F>) -> (usize, Mat<F>) {
    m.rank_kernel()
}

pub fn mat_det<F: Field>(m: &Mat<F>) -> crate::Result<F::Elem> {
    m.det()
}
