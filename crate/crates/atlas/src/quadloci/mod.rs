//! Families of quadratic forms: corank strata, regularity, the fiber
//! signature of the double cover of `S_k`, the Veronese model, rulings of
//! isotropic subspaces and symmetroids.

mod assess;
mod checks;
mod family;
mod regular;
mod rulings;
mod symmetroid;
mod veronese;

pub use assess::{
    assess_matrix, assess_point, det_class_on_complement, same_square_class, signed_disc_class,
    signed_discriminant, AssessmentRecord, PointAssessment, Signature,
};
pub use checks::{
    branch_check, branch_check_family, branch_hypotheses_hold, for_each_symmetric, stein_check,
    symmetroid_check, synthetic_branch_family, veronese_check, BranchCheck, SteinCheck,
    SymmetroidCheck, VeroneseCheck,
};
pub use family::{sym_index, QuadraticFamily};
pub use regular::{expected_smoothness_at, p_regular_at, p_regular_enumerated, tangent_map_matrix};
pub use rulings::{
    enumerate_isotropic_rulings, enumerate_isotropic_rulings_with_budget, has_rational_ruling,
    hilbert_dim_formula, stabilize_to_even, witt_reduce, RulingReport, DEFAULT_RULING_BUDGET,
    MAX_RULING_FIELD, MAX_RULING_SIZE,
};
pub use symmetroid::{family_determinant, symmetroid_family};
pub use veronese::{veronese_square_root, VeroneseRoot};
