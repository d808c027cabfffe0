//! The exterior algebra of a six dimensional space, Lagrangian subspaces of
//! its cube, and the strata `Y`, `Y^dual` and `Z` they cut out.

mod census;
mod chart;
mod checks;
mod fibration;
mod lagrangian;
mod space;
mod strata;

pub use census::{
    census, decomposable_screen, decomposable_screen_ext, grassmannian_point, projective_point,
    thread_count, wedge_kernel_dim, CensusOptions, CensusReport, CensusSpace, ScreenReport,
    DEFAULT_POINT_BUDGET, THREADS_ENV,
};
pub use chart::{chart_determinant, chart_pairing_matrix, chart_point_datum, ChartDeterminant};
pub use checks::{
    candidate_seed, census_with_resample, degree_check, dimension_probe, epw_stein_check, q1_check,
    random_hyperplane, screened_lagrangian, stratum_counts, surface_degree_check, CensusRun,
    DegreeCheck, DegreeOptions, DimensionProbe, Discard, EpwSteinCheck, Q1Check, Screened,
    SurfaceDegree, SurfaceDegreeCheck, DEFAULT_SCREEN_BUDGET, MAX_RESAMPLES, MAX_SCREEN_DRAWS,
};
pub use fibration::{first_quadratic_fibration_at, intersection_basis, Q1Assessment, Q1Record};
pub use lagrangian::{
    format_explicit, lambda_pairing, make_lagrangian, parse_explicit, wedge3_matrix, EpwLagrangian,
    ExplicitLagrangian, LagrangianSpec, Provenance, LAMBDA_DIM,
};
pub use space::{perm_sign, wedge3_pairing, SixSpace};
pub use strata::{
    default_chart, epw_corank_at, epw_fiber_signature, epw_fiber_signature_in_chart, fiber_frame,
    fiber_space, fiber_vectors, Chart, CorankEvaluator, EpwSignature, Flavor,
};
