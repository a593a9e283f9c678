//! Entangling capacity of finite-dimensional quantum operations and block
//! entanglement of symmetric Gaussian states.
//!
//! * [`linalg`]: dense complex matrices, Jacobi eigensolver, Schatten norms,
//!   partial trace and partial transpose.
//! * [`channel`]: linear maps on operators stored as Choi matrices.
//! * [`entcap`]: negativity, capacity bounds, Schmidt forms, saturation.
//! * [`gaussian`]: covariance matrices, symplectic spectra and the block
//!   entanglement of symmetric states.
//!
//! Bipartite indices are |i⟩⊗|j⟩ ↦ i·d_B + j throughout. Phase-space
//! coordinates are ordered (x₁, p₁, …, xₙ, pₙ).

pub mod channel;
pub mod entcap;
pub mod error;
pub mod families;
pub mod gaussian;
pub mod linalg;
pub mod random;

pub use channel::{Channel, KrausForm, MapSplit};
pub use error::{Error, Result};
pub use linalg::{BipartiteDims, Complex64, ComplexMatrix, Subsystem};
