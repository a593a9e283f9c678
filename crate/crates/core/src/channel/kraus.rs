use crate::linalg::ComplexMatrix;

/// Operator-sum form L(O) = Σ_i c_i V_i O V_i†.
#[derive(Debug, Clone, Default)]
pub struct KrausForm {
    pub coefficients: Vec<f64>,
    pub operators: Vec<ComplexMatrix>,
}

impl KrausForm {
    pub fn new(coefficients: Vec<f64>, operators: Vec<ComplexMatrix>) -> Self {
        assert_eq!(coefficients.len(), operators.len());
        Self { coefficients, operators }
    }

    /// O ↦ V O V†
    pub fn single(v: ComplexMatrix) -> Self {
        Self { coefficients: vec![1.0], operators: vec![v] }
    }

    pub fn len(&self) -> usize {
        self.operators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.operators.is_empty()
    }

    /// Σ_i c_i V_i O V_i†, evaluated directly.
    pub fn apply(&self, o: &ComplexMatrix) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.operators[0].rows(), self.operators[0].rows());
        for (c, v) in self.coefficients.iter().zip(&self.operators) {
            out = &out + &(&(v * o) * &v.adjoint()).scale_real(*c);
        }
        out
    }

    /// Largest |(V_i|V_j) − δ_ij| over all pairs.
    pub fn orthonormality_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (i, a) in self.operators.iter().enumerate() {
            for (j, b) in self.operators.iter().enumerate() {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((a.hs_inner(b) - target).norm());
            }
        }
        worst
    }
}
