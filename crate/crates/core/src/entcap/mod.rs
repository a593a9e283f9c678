//! Negativity-based entanglement measures and the entangling capacity of
//! finite-dimensional operations.

mod bounds;
mod measures;
mod saturation;
mod schmidt;

pub use bounds::{
    convex_split, distance_bounds, ec_bounds_deterministic, ec_bounds_probabilistic, ec_bounds_with_split,
    negative_part_adjoint, state_distance_bound, BoundOptions, DistanceBounds, EcBounds, ProbabilisticBounds,
    SubBound,
};
pub use measures::{
    density_from_vector, gamma_norm_channel, gamma_norm_operator, log_negativity, negativity,
    norm_equivalence_check, LogBase, NormEquivalence,
};
pub use saturation::{saturation_check, SaturationReport, OVERLAP_TOL};
pub use schmidt::{
    campbell_check, is_ppt_unitary, is_separable_pure, operator_schmidt, vector_schmidt_coefficients,
    CampbellReport, OperatorSchmidt,
};
