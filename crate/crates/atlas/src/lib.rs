//! Pointwise computations on quadratic and Lagrangian degeneracy loci.
//!
//! The crate is layered: [`exactalg`] provides fields and dense matrices,
//! [`polyring`] sparse polynomials and Gröbner bases, [`quadloci`] families of
//! quadratic forms and the double cover fiber signature, [`lagloci`] pairs of
//! Lagrangian frames, and [`epw`] the exterior algebra of a six dimensional
//! space with the strata it carries.

pub mod epw;
pub mod error;
pub mod exactalg;
pub mod lagloci;
pub mod polyring;
pub mod quadloci;
pub mod rng;

pub use error::{Error, Result};
