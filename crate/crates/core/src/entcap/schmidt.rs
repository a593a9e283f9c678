use num_complex::Complex64;
use serde::Serialize;

use super::bounds::negative_part_adjoint;
use crate::channel::{Channel, KrausForm};
use crate::error::{Error, Result};
use crate::linalg::{operator_norm, svd, tensor, trace_norm, BipartiteDims, ComplexMatrix};

/// V = Σ_i λ_i A_i ⊗ B_i with Hilbert-Schmidt orthonormal A_i, B_i.
#[derive(Debug, Clone)]
pub struct OperatorSchmidt {
    pub coefficients: Vec<f64>,
    pub left_ops: Vec<ComplexMatrix>,
    pub right_ops: Vec<ComplexMatrix>,
}

impl OperatorSchmidt {
    pub fn rank(&self) -> usize {
        self.coefficients.len()
    }

    pub fn coefficient_sum(&self) -> f64 {
        self.coefficients.iter().sum()
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        let mut it = self.coefficients.iter().zip(self.left_ops.iter().zip(&self.right_ops));
        let (l0, (a0, b0)) = it.next().expect("nonzero operator has at least one term");
        let mut acc = tensor(a0, b0).scale_real(*l0);
        for (l, (a, b)) in it {
            acc = &acc + &tensor(a, b).scale_real(*l);
        }
        acc
    }

    /// S^Γ₋†(I) for S(ρ) = VρV†, assembled from the antisymmetric vectors
    /// V⁻_jk = (A_j*⊗B_k − A_k*⊗B_j)/√2, which span the negative eigenspace
    /// of T(S^Γ) with eigenvalues −λ_jλ_k.
    pub fn minus_adjoint_identity(&self) -> ComplexMatrix {
        let a_conj: Vec<ComplexMatrix> = self.left_ops.iter().map(|a| a.conj()).collect();
        let n = a_conj[0].rows() * self.right_ops[0].rows();
        let mut m = ComplexMatrix::zeros(n, n);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        for j in 0..self.rank() {
            for k in j + 1..self.rank() {
                let v = (&tensor(&a_conj[j], &self.right_ops[k]) - &tensor(&a_conj[k], &self.right_ops[j])).scale_real(s);
                let w = self.coefficients[j] * self.coefficients[k];
                m = &m + &(&v.adjoint() * &v).scale_real(w);
            }
        }
        m
    }
}

/// Operator Schmidt decomposition from the SVD of the realigned matrix
/// R[(i,j),(k,l)] = V[(i,k),(j,l)].
pub fn operator_schmidt(v: &ComplexMatrix, dims: BipartiteDims) -> Result<OperatorSchmidt> {
    dims.check_square(v)?;
    let (da, db) = (dims.d_a(), dims.d_b());
    let r = ComplexMatrix::from_fn(da * da, db * db, |row, col| {
        let (i, j) = (row / da, row % da);
        let (k, l) = (col / db, col % db);
        v[(i * db + k, j * db + l)]
    });
    let d = svd(&r)?;
    let mut out = OperatorSchmidt { coefficients: vec![], left_ops: vec![], right_ops: vec![] };
    for ((s, u), w) in d.values.into_iter().zip(d.left).zip(d.right) {
        out.coefficients.push(s);
        out.left_ops.push(ComplexMatrix::from_fn(da, da, |i, j| u[i * da + j]));
        out.right_ops.push(ComplexMatrix::from_fn(db, db, |k, l| w[k * db + l].conj()));
    }
    Ok(out)
}

/// Schmidt coefficients of a bipartite pure state, descending, zeros dropped.
pub fn vector_schmidt_coefficients(psi: &[Complex64], dims: BipartiteDims) -> Result<Vec<f64>> {
    if psi.len() != dims.total() {
        return Err(Error::DimensionMismatch(format!(
            "vector has length {}, dims need {}",
            psi.len(),
            dims.total()
        )));
    }
    let m = ComplexMatrix::from_fn(dims.d_a(), dims.d_b(), |i, k| psi[i * dims.d_b() + k]);
    Ok(svd(&m)?.values)
}

fn require_unitary(u: &ComplexMatrix) -> Result<()> {
    let dev = operator_norm(&(&(&u.adjoint() * u) - &ComplexMatrix::identity(u.cols())))?;
    if !u.is_square() || dev > 1e-9 {
        return Err(Error::NotUnitary(dev));
    }
    Ok(())
}

/// True iff U = U_A ⊗ U_B, i.e. operator Schmidt rank one.
pub fn is_ppt_unitary(u: &ComplexMatrix, dims: BipartiteDims) -> Result<bool> {
    dims.check_square(u)?;
    require_unitary(u)?;
    Ok(operator_schmidt(u, dims)?.rank() == 1)
}

/// True iff |ψ⟩ = |a⟩|b⟩.
pub fn is_separable_pure(psi: &[Complex64], dims: BipartiteDims) -> Result<bool> {
    let norm = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > 1e-9 {
        return Err(Error::NotNormalized(norm));
    }
    Ok(vector_schmidt_coefficients(psi, dims)?.len() == 1)
}

/// Both routes to the capacity of a mixture of Kraus-rank-one operations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CampbellReport {
    /// 1 + 2‖Σ_i S_i^Γ₋†(I)‖ from the spectral split of each Choi matrix.
    pub lhs: f64,
    /// The same quantity assembled from the V⁻ vectors of each Schmidt form.
    pub lhs_schmidt: f64,
    /// ‖Σ_i (Σ_j λ_ij A_ij*†A_ij*) ⊗ (Σ_k λ_ik B_ik†B_ik)‖
    pub mid: f64,
    /// Σ_i ‖Σ_j λ_ij A_ij†A_ij‖·‖Σ_k λ_ik B_ik†B_ik‖
    pub rhs: f64,
    /// 1 + 2‖Σ_i S_i^Γ₋†(I)‖₁/(d_A d_B)
    pub lower_spectral: f64,
    /// (Σ_j λ_j)²/(d_A d_B), present for a single operation.
    pub lower_schmidt: Option<f64>,
}

/// Compare the spectral and Schmidt forms for subs S_i(ρ) = V_i ρ V_i†.
pub fn campbell_check(kraus: &[ComplexMatrix], dims: BipartiteDims) -> Result<CampbellReport> {
    if kraus.is_empty() {
        return Err(Error::NotTpSum("no sub-operations given".into()));
    }
    let n = dims.total();
    let mut tp = ComplexMatrix::zeros(n, n);
    for v in kraus {
        dims.check_square(v)?;
        tp = &tp + &(&v.adjoint() * v);
    }
    let tp_dev = operator_norm(&(&tp - &ComplexMatrix::identity(n)))?;
    if tp_dev > 1e-9 {
        return Err(Error::NotTpSum(format!("Σ V_i†V_i deviates from I by {tp_dev:.3e}")));
    }

    let mut m_spec = ComplexMatrix::zeros(n, n);
    let mut m_schmidt = ComplexMatrix::zeros(n, n);
    let mut mid = ComplexMatrix::zeros(n, n);
    let mut rhs = 0.0;
    let mut single = None;
    for v in kraus {
        let ch = Channel::from_kraus(&KrausForm::single(v.clone()), dims, dims)?;
        m_spec = &m_spec + &negative_part_adjoint(&ch)?;
        let s = operator_schmidt(v, dims)?;
        m_schmidt = &m_schmidt + &s.minus_adjoint_identity();
        let mut a_sum = ComplexMatrix::zeros(dims.d_a(), dims.d_a());
        let mut b_sum = ComplexMatrix::zeros(dims.d_b(), dims.d_b());
        for ((l, a), b) in s.coefficients.iter().zip(&s.left_ops).zip(&s.right_ops) {
            let ac = a.conj();
            a_sum = &a_sum + &(&ac.adjoint() * &ac).scale_real(*l);
            b_sum = &b_sum + &(&b.adjoint() * b).scale_real(*l);
        }
        rhs += operator_norm(&a_sum)? * operator_norm(&b_sum)?;
        mid = &mid + &tensor(&a_sum, &b_sum);
        single = Some(s.coefficient_sum().powi(2) / n as f64);
    }
    Ok(CampbellReport {
        lhs: 1.0 + 2.0 * operator_norm(&m_spec)?,
        lhs_schmidt: 1.0 + 2.0 * operator_norm(&m_schmidt)?,
        mid: operator_norm(&mid)?,
        rhs,
        lower_spectral: 1.0 + 2.0 * trace_norm(&m_spec)? / n as f64,
        lower_schmidt: if kraus.len() == 1 { single } else { None },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dims(a: usize, b: usize) -> BipartiteDims {
        BipartiteDims::new(a, b).unwrap()
    }

    fn cnot() -> ComplexMatrix {
        ComplexMatrix::from_real(4, 4, &[1., 0., 0., 0., 0., 1., 0., 0., 0., 0., 0., 1., 0., 0., 1., 0.]).unwrap()
    }

    fn swap() -> ComplexMatrix {
        ComplexMatrix::from_real(4, 4, &[1., 0., 0., 0., 0., 0., 1., 0., 0., 1., 0., 0., 0., 0., 0., 1.]).unwrap()
    }

    #[test]
    fn product_unitary_has_rank_one() {
        let a = ComplexMatrix::from_real(2, 2, &[0.6, 0.8, -0.8, 0.6]).unwrap();
        let b = ComplexMatrix::identity(3);
        let u = tensor(&a, &b);
        let s = operator_schmidt(&u, dims(2, 3)).unwrap();
        assert_eq!(s.rank(), 1);
        assert!((s.coefficients[0] - 6f64.sqrt()).abs() < 1e-12);
        assert!(is_ppt_unitary(&u, dims(2, 3)).unwrap());
        let r = campbell_check(&[u], dims(2, 3)).unwrap();
        for x in [r.lhs, r.lhs_schmidt, r.mid, r.rhs] {
            assert!((x - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn cnot_has_two_equal_coefficients() {
        let s = operator_schmidt(&cnot(), dims(2, 2)).unwrap();
        assert_eq!(s.rank(), 2);
        for l in &s.coefficients {
            assert!((l - 2f64.sqrt()).abs() < 1e-12);
        }
        assert!(s.reconstruct().max_abs_diff(&cnot()) < 1e-12);
        assert!(!is_ppt_unitary(&cnot(), dims(2, 2)).unwrap());
        let r = campbell_check(&[cnot()], dims(2, 2)).unwrap();
        assert!((r.lhs - 2.0).abs() < 1e-12 && (r.mid - 2.0).abs() < 1e-12);
        assert!((r.lower_schmidt.unwrap() - 2.0).abs() < 1e-12);
        assert!((r.lower_spectral - 2.0).abs() < 1e-12);
    }

    #[test]
    fn swap_has_four_unit_coefficients() {
        let s = operator_schmidt(&swap(), dims(2, 2)).unwrap();
        assert_eq!(s.rank(), 4);
        assert!(s.coefficients.iter().all(|l| (l - 1.0).abs() < 1e-12));
        let sq: f64 = s.coefficients.iter().map(|l| l * l).sum();
        assert!((sq - 4.0).abs() < 1e-12);
    }

    #[test]
    fn schmidt_minus_part_matches_spectral() {
        let u = &cnot() * &swap();
        let ch = Channel::unitary(&u, dims(2, 2)).unwrap();
        let spectral = negative_part_adjoint(&ch).unwrap();
        let schmidt = operator_schmidt(&u, dims(2, 2)).unwrap().minus_adjoint_identity();
        assert!(spectral.max_abs_diff(&schmidt) < 1e-12);
    }

    #[test]
    fn pure_state_separability() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let c = |x: f64| Complex64::new(x, 0.0);
        assert!(is_separable_pure(&[c(s), c(s), c(0.0), c(0.0)], dims(2, 2)).unwrap());
        assert!(!is_separable_pure(&[c(s), c(0.0), c(0.0), c(s)], dims(2, 2)).unwrap());
        assert!(matches!(
            is_separable_pure(&[c(1.0), c(1.0), c(0.0), c(0.0)], dims(2, 2)),
            Err(Error::NotNormalized(_))
        ));
        assert!(matches!(is_ppt_unitary(&cnot().scale_real(2.0), dims(2, 2)), Err(Error::NotUnitary(_))));
    }
}
