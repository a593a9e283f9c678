//! Real Gaussian pure states ψ ∝ exp(−a Σ x_i² + b Σ_{i≠j} x_i x_j), used as
//! an independent check of the covariance pipeline.

use super::covariance::CovarianceMatrix;
use crate::entcap::LogBase;
use crate::error::{Error, Result};
use crate::linalg::{hermitian_function, Complex64, ComplexMatrix};

fn check(a: f64, b: f64, n: usize) -> Result<()> {
    if n < 2 || !a.is_finite() || !b.is_finite() || !(a > 0.0 && a + b > 0.0 && a - (n as f64 - 1.0) * b > 0.0) {
        return Err(Error::InvalidWavefunction(format!(
            "need a > 0, a + b > 0, a - (N-1) b > 0 and N >= 2; got a = {a}, b = {b}, N = {n}"
        )));
    }
    Ok(())
}

/// Log-negativity between two single modes of the N-mode state:
/// ½ log d with d = (a+b)/(a−b) for b ≥ 0 and (a+b−bN)/(a+3b−bN) for b < 0.
pub fn pure_state_oracle(a: f64, b: f64, n: usize, base: LogBase) -> Result<f64> {
    check(a, b, n)?;
    let nf = n as f64;
    let d = if b >= 0.0 { (a + b) / (a - b) } else { (a + b - b * nf) / (a + 3.0 * b - b * nf) };
    Ok(if d > 1.0 { 0.5 * base.log(d) } else { 0.0 })
}

/// σ_x = ½ A⁻¹, σ_p = (ħ²/2) A, no x–p correlations, where A is the
/// quadratic form of the exponent: A_ii = 2a, A_ij = −2b.
pub fn pure_state_covariance(a: f64, b: f64, n: usize, hbar: f64) -> Result<CovarianceMatrix> {
    check(a, b, n)?;
    let form = ComplexMatrix::from_fn(n, n, |i, j| Complex64::new(if i == j { 2.0 * a } else { -2.0 * b }, 0.0));
    let inv = hermitian_function(&form, |l| Complex64::new(1.0 / l, 0.0))?;
    let d = 2 * n;
    let mut sigma = vec![0.0; d * d];
    for i in 0..n {
        for j in 0..n {
            sigma[2 * i * d + 2 * j] = 0.5 * inv[(i, j)].re;
            sigma[(2 * i + 1) * d + 2 * j + 1] = 0.5 * hbar * hbar * form[(i, j)].re;
        }
    }
    CovarianceMatrix::new(n, sigma, hbar)
}
