//! Pairs of Lagrangian frames in a symplectic space over a chart: their
//! intersection strata, the fiber signature of the double cover, isotropic
//! reduction and conversion to a family of quadrics.

mod assess;
mod checks;
mod convert;
mod random;
mod reduce;
mod sample;
mod space;

pub use assess::{assess_lag_matrices, lag_corank_at, lag_fiber_signature, LagAssessment, LagPair};
pub use checks::{lag_quad_check, reduction_check, Agreement, LagQuadCheck, ReductionCheck};
pub use convert::{
    lag_to_quad, lag_to_quad_matrix, random_transverse_lagrangian, LagQuad, PointConversion,
};
pub use random::{
    graph_frame, random_invertible, random_matrix, random_pair, random_reduction_family,
    random_symmetric, random_symmetric_family, random_symplectic, random_triple,
};
pub use reduce::{
    corrected_assessment, isotropic_reduce, reduce_fiber, IsotropicReduction, ReducedFiber,
};
pub use sample::{format_point, sample_points, SampleConfig};
pub use space::{check_lagrangian, symplectic_basis, LagrangianFrame, SymplecticSpace};
