use num_complex::Complex64;

use super::eigen::{eig_hermitian, jacobi, Eigen};
use super::matrix::ComplexMatrix;
use super::tol;
use crate::error::{Error, Result};

/// H = plus − minus with plus, minus ≥ 0 supported on orthogonal subspaces.
#[derive(Debug, Clone)]
pub struct HermitianSplit {
    pub plus: ComplexMatrix,
    pub minus: ComplexMatrix,
    /// Eigenvalues with |λ| at or below this were treated as zero.
    pub tolerance: f64,
}

/// Eigenvalue cut below which an eigenvalue of `e` counts as zero.
pub fn zero_cut(e: &Eigen) -> f64 {
    tol::ZERO_EIGENVALUE * e.spectral_radius()
}

/// Spectral split of a Hermitian matrix by eigenvalue sign.
pub fn positive_negative_parts(h: &ComplexMatrix) -> Result<HermitianSplit> {
    let e = eig_hermitian(h, tol::hermitian_tol(h))?;
    Ok(split_from_eigen(&e))
}

pub fn split_from_eigen(e: &Eigen) -> HermitianSplit {
    let cut = zero_cut(e);
    let plus = e.reassemble(|l| Complex64::new(if l > cut { l } else { 0.0 }, 0.0));
    let minus = e.reassemble(|l| Complex64::new(if l < -cut { -l } else { 0.0 }, 0.0));
    HermitianSplit { plus, minus, tolerance: cut }
}

/// Singular values in descending order, zeros included.
///
/// Hermitian inputs use |λ| directly. Other inputs go through the Hermitian
/// dilation [[0, O], [O†, 0]], whose eigenvalues are ±σ_i: this avoids the
/// square-root loss of accuracy that eigenvalues of O†O would incur on small
/// singular values.
pub fn singular_values(o: &ComplexMatrix) -> Result<Vec<f64>> {
    let mut s = if is_numerically_hermitian(o) {
        jacobi(&o.hermitian_part())?.values.iter().map(|v| v.abs()).collect()
    } else {
        let (m, n) = (o.rows(), o.cols());
        let e = jacobi(&dilation(o))?;
        // Eigenvalues are ±σ plus |m − n| zeros; the top min(m,n) are the σ.
        let k = m.min(n);
        e.values.iter().rev().take(k).map(|v| v.max(0.0)).collect::<Vec<f64>>()
    };
    s.sort_by(|a: &f64, b: &f64| b.total_cmp(a));
    Ok(s)
}

fn is_numerically_hermitian(o: &ComplexMatrix) -> bool {
    if !o.is_square() {
        return false;
    }
    let n = o.rows();
    let scale = o.max_abs();
    (0..n).all(|i| (i..n).all(|j| (o[(i, j)] - o[(j, i)].conj()).norm() <= 1e-14 * scale))
}

fn dilation(o: &ComplexMatrix) -> ComplexMatrix {
    let (m, n) = (o.rows(), o.cols());
    ComplexMatrix::from_fn(m + n, m + n, |i, j| match (i < m, j < m) {
        (true, false) => o[(i, j - m)],
        (false, true) => o[(j, i - m)].conj(),
        _ => Complex64::new(0.0, 0.0),
    })
}

/// Schatten p-norm; `p = f64::INFINITY` gives the operator norm.
pub fn schatten_norm(o: &ComplexMatrix, p: f64) -> Result<f64> {
    if !(p >= 1.0) {
        return Err(Error::InvalidP(format!("p must be at least 1, got {p}")));
    }
    let s = singular_values(o)?;
    Ok(norm_of_values(&s, p))
}

fn norm_of_values(s: &[f64], p: f64) -> f64 {
    if p.is_infinite() {
        s.iter().fold(0.0, |m, v| m.max(v.abs()))
    } else if p == 1.0 {
        s.iter().map(|v| v.abs()).sum()
    } else if p == 2.0 {
        s.iter().map(|v| v * v).sum::<f64>().sqrt()
    } else {
        s.iter().map(|v| v.abs().powf(p)).sum::<f64>().powf(1.0 / p)
    }
}

pub fn trace_norm(o: &ComplexMatrix) -> Result<f64> {
    schatten_norm(o, 1.0)
}

pub fn operator_norm(o: &ComplexMatrix) -> Result<f64> {
    schatten_norm(o, f64::INFINITY)
}

/// Thin singular value decomposition O = Σ_k σ_k u_k w_k†, zero terms dropped.
#[derive(Debug, Clone)]
pub struct Svd {
    pub values: Vec<f64>,
    pub left: Vec<Vec<Complex64>>,
    pub right: Vec<Vec<Complex64>>,
}

pub fn svd(o: &ComplexMatrix) -> Result<Svd> {
    let (m, n) = (o.rows(), o.cols());
    let e = jacobi(&dilation(o))?;
    let cut = zero_cut(&e);
    let mut out = Svd { values: vec![], left: vec![], right: vec![] };
    // Eigenvectors of +σ have the form (u, w)/√2 with O w = σ u.
    for k in (0..m + n).rev() {
        let s = e.values[k];
        if s <= cut {
            break;
        }
        let x = e.vector(k);
        let norm = |v: &[Complex64]| v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let (u, w) = x.split_at(m);
        let (nu, nw) = (norm(u), norm(w));
        out.values.push(s);
        out.left.push(u.iter().map(|z| z / nu).collect());
        out.right.push(w.iter().map(|z| z / nw).collect());
    }
    Ok(out)
}

/// Square root of a positive semidefinite matrix.
pub fn sqrt_psd(p: &ComplexMatrix, tol: f64) -> Result<ComplexMatrix> {
    let e = eig_hermitian(p, tol)?;
    if let Some(&lo) = e.values.first() {
        if lo < -tol {
            return Err(Error::NotPsd(lo));
        }
    }
    Ok(e.reassemble(|l| Complex64::new(l.max(0.0).sqrt(), 0.0)))
}

/// f(H) for Hermitian H via its eigendecomposition.
pub fn hermitian_function(h: &ComplexMatrix, f: impl Fn(f64) -> Complex64) -> Result<ComplexMatrix> {
    let e = eig_hermitian(h, tol::hermitian_tol(h))?;
    Ok(e.reassemble(f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn hermitian_from(n: usize, v: &[f64]) -> ComplexMatrix {
        ComplexMatrix::from_fn(n, n, |i, j| Complex64::new(v[i * n + j], v[64 + i * n + j])).hermitian_part()
    }

    fn general_from(r: usize, c: usize, v: &[f64]) -> ComplexMatrix {
        ComplexMatrix::from_fn(r, c, |i, j| Complex64::new(v[i * c + j], v[64 + i * c + j]))
    }

    #[test]
    fn split_of_diagonal() {
        let s = positive_negative_parts(&ComplexMatrix::diag(&[3.0, -2.0])).unwrap();
        assert!(s.plus.max_abs_diff(&ComplexMatrix::diag(&[3.0, 0.0])) < 1e-15);
        assert!(s.minus.max_abs_diff(&ComplexMatrix::diag(&[0.0, 2.0])) < 1e-15);
    }

    #[test]
    fn split_of_psd_has_no_minus() {
        let g = general_from(3, 3, &(0..128).map(|k| (k as f64 * 0.37).sin()).collect::<Vec<_>>());
        let p = &g.adjoint() * &g;
        let s = positive_negative_parts(&p).unwrap();
        assert!(s.plus.max_abs_diff(&p) < 1e-12);
        assert!(s.minus.max_abs() < 1e-12);
    }

    #[test]
    fn diagonal_schatten_norms() {
        let d = ComplexMatrix::diag(&[3.0, -4.0]);
        assert_eq!(schatten_norm(&d, 1.0).unwrap(), 7.0);
        assert_eq!(schatten_norm(&d, f64::INFINITY).unwrap(), 4.0);
        assert!((schatten_norm(&d, 2.0).unwrap() - 5.0).abs() < 1e-15);
        assert!(matches!(schatten_norm(&d, 0.5), Err(Error::InvalidP(_))));
    }

    #[test]
    fn rectangular_singular_values() {
        // [[3, 0, 0], [0, 0, -2i]] has singular values 3 and 2.
        let mut m = ComplexMatrix::zeros(2, 3);
        m[(0, 0)] = Complex64::new(3.0, 0.0);
        m[(1, 2)] = Complex64::new(0.0, -2.0);
        let s = singular_values(&m).unwrap();
        assert!((s[0] - 3.0).abs() < 1e-14 && (s[1] - 2.0).abs() < 1e-14);
        let d = svd(&m).unwrap();
        assert_eq!(d.values.len(), 2);
    }

    #[test]
    fn sqrt_examples() {
        let r = sqrt_psd(&ComplexMatrix::diag(&[4.0, 9.0]), 1e-12).unwrap();
        assert!(r.max_abs_diff(&ComplexMatrix::diag(&[2.0, 3.0])) < 1e-15);
        let i = sqrt_psd(&ComplexMatrix::identity(3), 1e-12).unwrap();
        assert!(i.max_abs_diff(&ComplexMatrix::identity(3)) < 1e-15);
        assert!(matches!(sqrt_psd(&ComplexMatrix::diag(&[1.0, -1.0]), 1e-9), Err(Error::NotPsd(_))));
    }

    proptest! {
        #[test]
        fn split_matches_eigenvalue_sign_sum(n in 1usize..7, v in prop::collection::vec(-3.0f64..3.0, 128)) {
            let h = hermitian_from(n, &v);
            let s = positive_negative_parts(&h).unwrap();
            // brute-force oracle: rank-one sums over each eigenpair
            let e = eig_hermitian(&h, 1e-12).unwrap();
            let mut plus = ComplexMatrix::zeros(n, n);
            let mut minus = ComplexMatrix::zeros(n, n);
            for k in 0..n {
                let vk = e.vector(k);
                let proj = ComplexMatrix::outer(&vk, &vk);
                if e.values[k] > s.tolerance {
                    plus = &plus + &proj.scale_real(e.values[k]);
                } else if e.values[k] < -s.tolerance {
                    minus = &minus + &proj.scale_real(-e.values[k]);
                }
            }
            prop_assert!(s.plus.max_abs_diff(&plus) < 1e-10);
            prop_assert!(s.minus.max_abs_diff(&minus) < 1e-10);
            prop_assert!((&s.plus - &s.minus).max_abs_diff(&h) < 1e-9);
            let hn = operator_norm(&h).unwrap();
            prop_assert!((&s.plus * &s.minus).max_abs() <= 1e-9 * hn * hn + 1e-15);
            let tn = trace_norm(&h).unwrap();
            prop_assert!((tn - (h.trace().re + 2.0 * s.minus.trace().re)).abs() < 1e-9);
        }

        #[test]
        fn norm_ordering(r in 1usize..6, c in 1usize..6, v in prop::collection::vec(-3.0f64..3.0, 128)) {
            let m = general_from(r, c, &v);
            let n1 = schatten_norm(&m, 1.0).unwrap();
            let n2 = schatten_norm(&m, 2.0).unwrap();
            let ni = schatten_norm(&m, f64::INFINITY).unwrap();
            prop_assert!(ni <= n2 + 1e-12 && n2 <= n1 + 1e-12);
            prop_assert!((n2 - m.frobenius_norm()).abs() < 1e-10);
        }

        #[test]
        fn svd_reconstructs(r in 1usize..6, c in 1usize..6, v in prop::collection::vec(-3.0f64..3.0, 128)) {
            let m = general_from(r, c, &v);
            let d = svd(&m).unwrap();
            let mut back = ComplexMatrix::zeros(r, c);
            for k in 0..d.values.len() {
                back = &back + &ComplexMatrix::outer(&d.left[k], &d.right[k]).scale_real(d.values[k]);
            }
            prop_assert!(back.max_abs_diff(&m) < 1e-10);
        }

        #[test]
        fn sqrt_squares_back(n in 1usize..7, v in prop::collection::vec(-3.0f64..3.0, 128)) {
            let g = general_from(n, n, &v);
            let p = &g.adjoint() * &g;
            let r = sqrt_psd(&p, 1e-9).unwrap();
            let pn = operator_norm(&p).unwrap().max(1e-300);
            prop_assert!((&r * &r).max_abs_diff(&p) <= 1e-9 * pn);
            prop_assert!(eig_hermitian(&r, 1e-9).unwrap().values[0] >= -1e-9 * pn.sqrt());
        }
    }
}
