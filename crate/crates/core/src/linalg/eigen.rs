//! Cyclic Jacobi eigensolver for complex Hermitian matrices.
//!
//! Each rotation first removes the phase of the pivot a_pq and then applies
//! the classical real Jacobi rotation, so the combined 2×2 unitary is
//!
//! ```text
//! U = [[ c,          s         ],
//!      [ -s·e^{-iφ},  c·e^{-iφ} ]]      a_pq = |a_pq|·e^{iφ}
//! ```
//!
//! Matrices here are small (a few dozen rows), so accuracy matters more than
//! asymptotic speed.

use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use super::tol;
use crate::error::{Error, Result};

/// Eigenvalues in ascending order with matching unit eigenvectors as columns.
#[derive(Debug, Clone)]
pub struct Eigen {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl Eigen {
    pub fn vector(&self, k: usize) -> Vec<Complex64> {
        self.vectors.column(k)
    }

    /// Largest |λ|; equals the operator norm of the decomposed matrix.
    pub fn spectral_radius(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// V f(Λ) V†
    pub fn reassemble(&self, f: impl Fn(f64) -> Complex64) -> ComplexMatrix {
        let n = self.values.len();
        let fv: Vec<Complex64> = self.values.iter().map(|&v| f(v)).collect();
        let v = &self.vectors;
        let mut out = ComplexMatrix::zeros(n, n);
        for (k, &w) in fv.iter().enumerate() {
            if w.re == 0.0 && w.im == 0.0 {
                continue;
            }
            for i in 0..n {
                let vik = v[(i, k)] * w;
                for j in 0..n {
                    out[(i, j)] += vik * v[(j, k)].conj();
                }
            }
        }
        out
    }
}

/// Operator norm of H − H†, short-circuiting through the Frobenius bound.
pub fn hermiticity_defect(h: &ComplexMatrix) -> f64 {
    let n = h.rows();
    // i(H − H†) is exactly Hermitian, so its spectral radius is the norm.
    let skew = ComplexMatrix::from_fn(n, n, |i, j| (h[(i, j)] - h[(j, i)].conj()) * Complex64::i());
    let frob = skew.frobenius_norm();
    if frob == 0.0 {
        return 0.0;
    }
    match jacobi(&skew) {
        Ok(e) => e.spectral_radius(),
        Err(_) => frob,
    }
}

/// Eigendecomposition of a Hermitian matrix.
///
/// `tol` bounds the allowed ‖H − H†‖_∞; only the Hermitian part is
/// diagonalized.
pub fn eig_hermitian(h: &ComplexMatrix, tol: f64) -> Result<Eigen> {
    if !h.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "eigendecomposition needs a square matrix, got {}x{}",
            h.rows(),
            h.cols()
        )));
    }
    let defect = hermiticity_defect(h);
    if defect > tol {
        return Err(Error::NotHermitian(defect));
    }
    jacobi(&h.hermitian_part())
}

/// Jacobi iteration on an exactly Hermitian input.
pub(crate) fn jacobi(h: &ComplexMatrix) -> Result<Eigen> {
    let n = h.rows();
    let mut a = h.clone();
    for i in 0..n {
        a[(i, i)].im = 0.0;
    }
    let mut v = ComplexMatrix::identity(n);
    let norm_f = a.frobenius_norm();
    let threshold = tol::JACOBI_OFFDIAG * norm_f;

    let mut converged = n <= 1 || norm_f == 0.0;
    let mut sweep = 0;
    while !converged {
        if off_diagonal_norm(&a) < threshold {
            converged = true;
            break;
        }
        if sweep == tol::JACOBI_MAX_SWEEPS {
            break;
        }
        sweep += 1;
        for p in 0..n - 1 {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }
    if !converged {
        return Err(Error::NoConvergence(tol::JACOBI_MAX_SWEEPS));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |i, k| v[(i, order[k])]);
    Ok(Eigen { values, vectors })
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let mag = apq.norm();
    if mag == 0.0 {
        return;
    }
    let phase = apq / mag; // e^{iφ}
    let theta = (a[(q, q)].re - a[(p, p)].re) / (2.0 * mag);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        let sign = if theta >= 0.0 { 1.0 } else { -1.0 };
        sign / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let ph_conj = phase.conj();

    let n = a.rows();
    // columns: A ← A·U, V ← V·U
    for m in [&mut *a, &mut *v] {
        let data = m.data_mut();
        for k in 0..n {
            let kp = data[k * n + p];
            let kq = data[k * n + q];
            data[k * n + p] = kp * c - kq * (ph_conj * s);
            data[k * n + q] = kp * s + kq * (ph_conj * c);
        }
    }
    // rows: A ← U†·A
    let data = a.data_mut();
    for k in 0..n {
        let pk = data[p * n + k];
        let qk = data[q * n + k];
        data[p * n + k] = pk * c - qk * (phase * s);
        data[q * n + k] = pk * s + qk * (phase * c);
    }
    data[p * n + q] = Complex64::new(0.0, 0.0);
    data[q * n + p] = Complex64::new(0.0, 0.0);
    data[p * n + p].im = 0.0;
    data[q * n + q].im = 0.0;
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn residual(h: &ComplexMatrix, e: &Eigen) -> f64 {
        let lhs = h * &e.vectors;
        let rhs = &e.vectors * &ComplexMatrix::diag(&e.values);
        lhs.max_abs_diff(&rhs)
    }

    fn orthonormality_defect(v: &ComplexMatrix) -> f64 {
        (&v.adjoint() * v).max_abs_diff(&ComplexMatrix::identity(v.cols()))
    }

    fn hermitian_from(n: usize, re: &[f64], im: &[f64]) -> ComplexMatrix {
        let mut h = ComplexMatrix::from_fn(n, n, |i, j| Complex64::new(re[i * n + j], im[i * n + j]));
        h = h.hermitian_part();
        h
    }

    #[test]
    fn identity_has_unit_spectrum() {
        let e = eig_hermitian(&ComplexMatrix::identity(2), 1e-12).unwrap();
        assert_eq!(e.values, vec![1.0, 1.0]);
        assert!(orthonormality_defect(&e.vectors) < 1e-15);
    }

    #[test]
    fn diagonal_input_is_sorted() {
        let e = eig_hermitian(&ComplexMatrix::diag(&[2.0, -1.0]), 1e-12).unwrap();
        assert_eq!(e.values, vec![-1.0, 2.0]);
        assert_eq!(e.vectors[(1, 0)].norm(), 1.0);
        assert_eq!(e.vectors[(0, 1)].norm(), 1.0);
    }

    #[test]
    fn pauli_x_eigenvectors() {
        let x = ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0]).unwrap();
        let e = eig_hermitian(&x, 1e-12).unwrap();
        assert!((e.values[0] + 1.0).abs() < 1e-15 && (e.values[1] - 1.0).abs() < 1e-15);
        let v0 = e.vector(0);
        // (1, −1)/√2 up to phase
        assert!((v0[0] + v0[1]).norm() < 1e-14);
        assert!((v0[0].norm() - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-14);
    }

    #[test]
    fn complex_pivot_is_zeroed() {
        let h = ComplexMatrix::new(
            2,
            2,
            vec![
                Complex64::new(1.0, 0.0),
                Complex64::new(0.0, 2.0),
                Complex64::new(0.0, -2.0),
                Complex64::new(-3.0, 0.0),
            ],
        )
        .unwrap();
        let e = eig_hermitian(&h, 1e-12).unwrap();
        // eigenvalues −1 ± √8
        assert!((e.values[0] - (-1.0 - 8f64.sqrt())).abs() < 1e-13);
        assert!((e.values[1] - (-1.0 + 8f64.sqrt())).abs() < 1e-13);
        assert!(residual(&h, &e) < 1e-13);
    }

    #[test]
    fn rejects_non_hermitian_input() {
        let m = ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 0.0, 0.0]).unwrap();
        assert!(matches!(eig_hermitian(&m, 1e-9), Err(Error::NotHermitian(_))));
        assert!(eig_hermitian(&ComplexMatrix::zeros(2, 3), 1e-9).is_err());
    }

    #[test]
    fn degenerate_spectrum_still_orthonormal() {
        let mut h = ComplexMatrix::identity(6).scale_real(2.0);
        h[(0, 5)] = Complex64::new(0.0, 1e-3);
        h[(5, 0)] = Complex64::new(0.0, -1e-3);
        let e = eig_hermitian(&h, 1e-12).unwrap();
        assert!(orthonormality_defect(&e.vectors) < 1e-13);
        assert!(residual(&h, &e) < 1e-13);
    }

    proptest! {
        #[test]
        fn decomposition_residual_is_small(
            n in 1usize..12,
            seed in prop::collection::vec(-5.0f64..5.0, 288),
        ) {
            let h = hermitian_from(n, &seed[..n * n], &seed[144..144 + n * n]);
            let e = eig_hermitian(&h, 1e-12).unwrap();
            let scale = h.frobenius_norm().max(1.0);
            prop_assert!(residual(&h, &e) <= 1e-10 * scale);
            prop_assert!(orthonormality_defect(&e.vectors) <= 1e-10);
            prop_assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
            let tr: f64 = e.values.iter().sum();
            prop_assert!((tr - h.trace().re).abs() <= 1e-10 * scale);
        }
    }
}
