//! Dense complex linear algebra used throughout the crate.

mod eigen;
mod json;
mod matrix;
mod spectral;
mod structure;

pub use eigen::{eig_hermitian, hermiticity_defect, Eigen};
pub use json::MatrixJson;
pub use matrix::ComplexMatrix;
pub use num_complex::Complex64;
pub use spectral::{
    hermitian_function, operator_norm, positive_negative_parts, schatten_norm, singular_values, split_from_eigen,
    sqrt_psd, svd, trace_norm, zero_cut, HermitianSplit, Svd,
};
pub use structure::{partial_trace, partial_transpose, partial_transpose_factors, tensor, BipartiteDims, Subsystem};

/// Numerical thresholds shared by the whole crate.
pub mod tol {
    use super::ComplexMatrix;

    /// Jacobi stops once the off-diagonal Frobenius mass drops below this
    /// fraction of ‖H‖_F.
    pub const JACOBI_OFFDIAG: f64 = 1e-13;
    pub const JACOBI_MAX_SWEEPS: usize = 100;
    /// Eigenvalues with |λ| ≤ ZERO_EIGENVALUE·‖H‖_∞ count as zero.
    pub const ZERO_EIGENVALUE: f64 = 1e-10;
    /// Default absolute tolerance for predicates (CP, TP, unit trace, ...).
    pub const DEFAULT: f64 = 1e-9;

    /// Hermiticity tolerance scaled to the size of the entries.
    pub fn hermitian_tol(h: &ComplexMatrix) -> f64 {
        DEFAULT * h.max_abs().max(1.0)
    }
}
