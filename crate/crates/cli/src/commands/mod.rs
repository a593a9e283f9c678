pub mod channel;
pub mod gaussian;
pub mod saturate;
pub mod soundness;

use std::path::Path;

use negacap::families::{mixture_pair, Family};
use negacap::linalg::{eig_hermitian, ComplexMatrix};
use negacap::Channel;

use crate::error::{CliError, CliResult};
use crate::SweepFamily;

pub fn read_input(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Parse(format!("cannot read {}: {e}", path.display())))
}

pub fn family_of(f: SweepFamily) -> Option<Family> {
    match f {
        SweepFamily::Rot22 => Some(Family::Rot22),
        SweepFamily::Gencnot => Some(Family::GenCnot),
        SweepFamily::Rot23 => Some(Family::Rot23),
        SweepFamily::Rot33 => Some(Family::Rot33),
        SweepFamily::Mix => None,
    }
}

/// p S₁ + (1 − p) S₂ for the separating pair of `pair`.
pub fn mixture(pair: Family, p: f64) -> CliResult<Channel> {
    if !(0.0..=1.0).contains(&p) {
        return Err(CliError::Validation(format!("mixing weight must lie in [0, 1], got {p}")));
    }
    let (s1, s2) = mixture_pair(pair);
    Ok(negacap::channel::mix(&[s1, s2], &[p, 1.0 - p])?)
}

/// Smallest and largest eigenvalue of a Hermitian matrix.
pub fn eigen_range(m: &ComplexMatrix) -> CliResult<(f64, f64)> {
    let e = eig_hermitian(m, negacap::linalg::tol::hermitian_tol(m))?;
    Ok((e.values[0], *e.values.last().expect("nonempty spectrum")))
}
