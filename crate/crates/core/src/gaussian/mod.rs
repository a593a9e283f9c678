//! Gaussian states described by their covariance matrices, and the block
//! entanglement of fully symmetric states.

mod covariance;
mod pure;
mod sup;
mod symmetric;

pub use covariance::{
    is_valid_state, log_negativity_gaussian, partial_transpose_cov, symplectic_eigenvalues, two_mode_invariants,
    CovarianceMatrix, SymplecticForm, TwoModeInvariants,
};
pub use pure::{pure_state_covariance, pure_state_oracle};
pub use sup::{max_gap_ratio, sup_block_entanglement, sup_gap_ratio, Measure, SupResult};
pub use symmetric::{
    block_log_negativity, block_negativity, boundary_limit, critical_value, entanglement_vs_nd, f_block,
    f_block_direct, localize_blocks, params_to_standard, purity, standard_to_params, BlockSpec, Purities,
    StandardForm, SymmetricParams,
};
