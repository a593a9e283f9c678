use serde::{Deserialize, Serialize};

use crate::entcap::LogBase;
use crate::error::{Error, Result};
use crate::linalg::{eig_hermitian, sqrt_psd, Complex64, ComplexMatrix};

/// Second moments of the quadratures in (x₁, p₁, …, xₙ, pₙ) order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "CovarianceJson", into = "CovarianceJson")]
pub struct CovarianceMatrix {
    n_modes: usize,
    sigma: Vec<f64>,
    hbar: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CovarianceJson {
    n_modes: usize,
    #[serde(default = "default_hbar")]
    hbar: f64,
    sigma: Vec<Vec<f64>>,
}

pub(crate) fn default_hbar() -> f64 {
    1.0
}

impl TryFrom<CovarianceJson> for CovarianceMatrix {
    type Error = Error;
    fn try_from(j: CovarianceJson) -> Result<Self> {
        let dim = 2 * j.n_modes;
        if j.sigma.len() != dim || j.sigma.iter().any(|row| row.len() != dim) {
            return Err(Error::Parse(format!("sigma must be {dim}x{dim} for {} modes", j.n_modes)));
        }
        CovarianceMatrix::new(j.n_modes, j.sigma.concat(), j.hbar)
    }
}

impl From<CovarianceMatrix> for CovarianceJson {
    fn from(c: CovarianceMatrix) -> Self {
        let dim = c.dim();
        CovarianceJson { n_modes: c.n_modes, hbar: c.hbar, sigma: c.sigma.chunks(dim).map(<[f64]>::to_vec).collect() }
    }
}

impl CovarianceMatrix {
    /// `sigma` is row-major 2n×2n. Must be symmetric within 1e-12 (relative
    /// to the largest entry) and positive definite.
    pub fn new(n_modes: usize, sigma: Vec<f64>, hbar: f64) -> Result<Self> {
        if n_modes == 0 {
            return Err(Error::DimensionMismatch("covariance matrix needs at least one mode".into()));
        }
        if !(hbar > 0.0 && hbar.is_finite()) {
            return Err(Error::InvalidParams(format!("hbar must be positive, got {hbar}")));
        }
        let dim = 2 * n_modes;
        if sigma.len() != dim * dim {
            return Err(Error::DimensionMismatch(format!("{} entries for a {dim}x{dim} matrix", sigma.len())));
        }
        if sigma.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParams("non-finite covariance entry".into()));
        }
        let scale = sigma.iter().fold(1.0f64, |m, v| m.max(v.abs()));
        let mut asym: f64 = 0.0;
        for i in 0..dim {
            for j in 0..i {
                asym = asym.max((sigma[i * dim + j] - sigma[j * dim + i]).abs());
            }
        }
        if asym > 1e-12 * scale {
            return Err(Error::NotSymmetric(asym));
        }
        let c = Self { n_modes, sigma, hbar };
        let lo = eig_hermitian(&c.as_matrix(), 1e-12 * scale)?.values[0];
        if lo <= 0.0 {
            return Err(Error::NotPositiveDefinite(lo));
        }
        Ok(c)
    }

    pub fn vacuum(n_modes: usize, hbar: f64) -> Result<Self> {
        let dim = 2 * n_modes;
        let sigma = (0..dim * dim).map(|k| if k / dim == k % dim { hbar / 2.0 } else { 0.0 }).collect();
        Self::new(n_modes, sigma, hbar)
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn dim(&self) -> usize {
        2 * self.n_modes
    }

    pub fn sigma(&self) -> &[f64] {
        &self.sigma
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.sigma[i * self.dim() + j]
    }

    /// Symmetrized copy as a complex matrix.
    pub fn as_matrix(&self) -> ComplexMatrix {
        let d = self.dim();
        ComplexMatrix::from_fn(d, d, |i, j| Complex64::new(0.5 * (self.get(i, j) + self.get(j, i)), 0.0))
    }

    /// S σ Sᵀ for a real 2n×2n matrix S (row-major).
    pub fn congruence(&self, s: &[f64]) -> Result<Self> {
        let d = self.dim();
        if s.len() != d * d {
            return Err(Error::DimensionMismatch(format!("transform has {} entries, expected {}", s.len(), d * d)));
        }
        let mut tmp = vec![0.0; d * d];
        for i in 0..d {
            for k in 0..d {
                let sik = s[i * d + k];
                if sik != 0.0 {
                    for j in 0..d {
                        tmp[i * d + j] += sik * self.sigma[k * d + j];
                    }
                }
            }
        }
        let mut out = vec![0.0; d * d];
        for i in 0..d {
            for j in 0..d {
                out[i * d + j] = (0..d).map(|k| tmp[i * d + k] * s[j * d + k]).sum();
            }
        }
        for i in 0..d {
            for j in 0..i {
                let m = 0.5 * (out[i * d + j] + out[j * d + i]);
                out[i * d + j] = m;
                out[j * d + i] = m;
            }
        }
        Self::new(self.n_modes, out, self.hbar)
    }

    /// Covariance of the listed modes alone (a partial trace of the state).
    pub fn reduced(&self, modes: &[usize]) -> Result<Self> {
        let idx = self.quadrature_indices(modes)?;
        let m = idx.len();
        let sigma = (0..m * m).map(|k| self.get(idx[k / m], idx[k % m])).collect();
        Self::new(modes.len(), sigma, self.hbar)
    }

    pub fn determinant(&self) -> f64 {
        real_det(self.dim(), &self.sigma)
    }

    fn quadrature_indices(&self, modes: &[usize]) -> Result<Vec<usize>> {
        let mut idx = Vec::with_capacity(2 * modes.len());
        for &m in modes {
            if m >= self.n_modes {
                return Err(Error::BadIndex { index: m, n_modes: self.n_modes });
            }
            idx.extend([2 * m, 2 * m + 1]);
        }
        Ok(idx)
    }
}

/// Ω = ⊕ [[0, 1], [−1, 0]].
#[derive(Debug, Clone, PartialEq)]
pub struct SymplecticForm {
    n_modes: usize,
    omega: Vec<f64>,
}

impl SymplecticForm {
    pub fn new(n_modes: usize) -> Self {
        let d = 2 * n_modes;
        let mut omega = vec![0.0; d * d];
        for k in 0..n_modes {
            omega[2 * k * d + 2 * k + 1] = 1.0;
            omega[(2 * k + 1) * d + 2 * k] = -1.0;
        }
        Self { n_modes, omega }
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn omega(&self) -> &[f64] {
        &self.omega
    }

    /// max |S Ω Sᵀ − Ω| for a real 2n×2n matrix S.
    pub fn defect(&self, s: &[f64]) -> f64 {
        let d = 2 * self.n_modes;
        let mut worst: f64 = 0.0;
        for i in 0..d {
            for j in 0..d {
                // (SΩSᵀ)_ij = Σ_k (S_{i,2k} S_{j,2k+1} − S_{i,2k+1} S_{j,2k})
                let v: f64 = (0..self.n_modes)
                    .map(|k| s[i * d + 2 * k] * s[j * d + 2 * k + 1] - s[i * d + 2 * k + 1] * s[j * d + 2 * k])
                    .sum();
                worst = worst.max((v - self.omega[i * d + j]).abs());
            }
        }
        worst
    }
}

/// Determinant by Gaussian elimination with partial pivoting.
pub(crate) fn real_det(n: usize, a: &[f64]) -> f64 {
    let mut m = a.to_vec();
    let mut det = 1.0;
    for c in 0..n {
        let p = (c..n).max_by(|&i, &j| m[i * n + c].abs().total_cmp(&m[j * n + c].abs())).expect("nonempty");
        if m[p * n + c] == 0.0 {
            return 0.0;
        }
        if p != c {
            for j in 0..n {
                m.swap(p * n + j, c * n + j);
            }
            det = -det;
        }
        let piv = m[c * n + c];
        det *= piv;
        for i in c + 1..n {
            let f = m[i * n + c] / piv;
            for j in c..n {
                m[i * n + j] -= f * m[c * n + j];
            }
        }
    }
    det
}

/// Williamson spectrum in ascending order: the positive eigenvalues of the
/// Hermitian matrix i·σ^{1/2} Ω σ^{1/2}.
pub fn symplectic_eigenvalues(cov: &CovarianceMatrix) -> Result<Vec<f64>> {
    let n = cov.n_modes();
    let d = 2 * n;
    let sigma = cov.as_matrix();
    let root = sqrt_psd(&sigma, 1e-12 * sigma.max_abs().max(1.0))?;
    let omega = SymplecticForm::new(n);
    let om = ComplexMatrix::from_fn(d, d, |i, j| Complex64::new(0.0, omega.omega()[i * d + j]));
    let k = (&(&root * &om) * &root).hermitian_part();
    let e = eig_hermitian(&k, 1e-9 * k.max_abs().max(1.0))?;
    let nu: Vec<f64> = e.values[n..].to_vec();
    let top = nu.last().copied().unwrap_or(0.0);
    for (i, &v) in nu.iter().enumerate() {
        let partner = e.values[n - 1 - i];
        if (v + partner).abs() > 1e-9 * top || v <= 0.0 {
            return Err(Error::Internal(format!("unpaired symplectic eigenvalues {v} and {partner}")));
        }
    }
    Ok(nu)
}

pub fn is_valid_state(cov: &CovarianceMatrix) -> bool {
    symplectic_eigenvalues(cov).map(|nu| nu[0] >= cov.hbar() / 2.0 - 1e-10).unwrap_or(false)
}

/// Momentum reversal Λσ Λ on the listed modes.
pub fn partial_transpose_cov(cov: &CovarianceMatrix, modes: &[usize]) -> Result<CovarianceMatrix> {
    let d = cov.dim();
    let mut sign = vec![1.0; d];
    for &m in modes {
        if m >= cov.n_modes() {
            return Err(Error::BadIndex { index: m, n_modes: cov.n_modes() });
        }
        sign[2 * m + 1] = -1.0;
    }
    let sigma = (0..d * d).map(|k| sign[k / d] * sign[k % d] * cov.sigma()[k]).collect();
    CovarianceMatrix::new(cov.n_modes(), sigma, cov.hbar())
}

/// Determinant-based invariants of a two-mode state σ = [[A, C], [Cᵀ, B]]
/// and of its partial transpose on mode 2.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TwoModeInvariants {
    /// det A + det B + 2 det C
    pub delta: f64,
    /// det A + det B − 2 det C
    pub delta_tilde: f64,
    pub det: f64,
    pub nu_minus: f64,
    pub nu_plus: f64,
    pub nu_tilde_minus: f64,
    pub nu_tilde_plus: f64,
}

/// (ν₋, ν₊) from ν² = (Δ ± √(Δ² − 4 det σ))/2. The smaller root is taken
/// as 2 det σ/(Δ + √…) to avoid cancellation.
fn two_mode_pair(delta: f64, det: f64) -> (f64, f64) {
    let disc = (delta * delta - 4.0 * det).max(0.0).sqrt();
    let plus_sq = (delta + disc) / 2.0;
    let minus_sq = if delta + disc > 0.0 { 2.0 * det / (delta + disc) } else { 0.0 };
    (minus_sq.max(0.0).sqrt(), plus_sq.sqrt())
}

pub fn two_mode_invariants(cov: &CovarianceMatrix) -> Result<TwoModeInvariants> {
    if cov.n_modes() != 2 {
        return Err(Error::NotTwoMode(cov.n_modes()));
    }
    let g = |i, j| cov.get(i, j);
    let det_a = g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0);
    let det_b = g(2, 2) * g(3, 3) - g(2, 3) * g(3, 2);
    let det_c = g(0, 2) * g(1, 3) - g(0, 3) * g(1, 2);
    let det = cov.determinant();
    let delta = det_a + det_b + 2.0 * det_c;
    let delta_tilde = det_a + det_b - 2.0 * det_c;
    let (nu_minus, nu_plus) = two_mode_pair(delta, det);
    let (nu_tilde_minus, nu_tilde_plus) = two_mode_pair(delta_tilde, det);
    Ok(TwoModeInvariants { delta, delta_tilde, det, nu_minus, nu_plus, nu_tilde_minus, nu_tilde_plus })
}

/// Σ_i max(log(ħ/(2ν̃_i)), 0) over the spectrum of the state with the
/// listed modes momentum-reversed.
pub fn log_negativity_gaussian(cov: &CovarianceMatrix, partition: &[usize], base: LogBase) -> Result<f64> {
    let nu = symplectic_eigenvalues(cov)?;
    if nu[0] < cov.hbar() / 2.0 - 1e-10 {
        return Err(Error::InvalidState(nu[0]));
    }
    let pt = partial_transpose_cov(cov, partition)?;
    let h = cov.hbar();
    Ok(symplectic_eigenvalues(&pt)?.iter().map(|&v| base.log(h / (2.0 * v)).max(0.0)).sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Two-mode squeezed vacuum with squeezing s (ħ = 1).
    fn tmsv(s: f64) -> CovarianceMatrix {
        let (c, sh) = ((2.0 * s).cosh() / 2.0, (2.0 * s).sinh() / 2.0);
        #[rustfmt::skip]
        let sigma = vec![
            c, 0.0, sh, 0.0,
            0.0, c, 0.0, -sh,
            sh, 0.0, c, 0.0,
            0.0, -sh, 0.0, c,
        ];
        CovarianceMatrix::new(2, sigma, 1.0).unwrap()
    }

    #[test]
    fn vacuum_and_single_mode() {
        for n in 1..4 {
            let nu = symplectic_eigenvalues(&CovarianceMatrix::vacuum(n, 2.0).unwrap()).unwrap();
            assert!(nu.iter().all(|v| (v - 1.0).abs() < 1e-12));
        }
        let c = CovarianceMatrix::new(1, vec![1.7, 0.0, 0.0, 1.7], 1.0).unwrap();
        assert!((symplectic_eigenvalues(&c).unwrap()[0] - 1.7).abs() < 1e-12);
    }

    #[test]
    fn validity() {
        assert!(is_valid_state(&CovarianceMatrix::vacuum(2, 1.0).unwrap()));
        assert!(!is_valid_state(&CovarianceMatrix::new(1, vec![0.25, 0.0, 0.0, 0.25], 1.0).unwrap()));
        for s in [-2.0f64, -0.3, 0.0, 0.8, 2.5] {
            let sq = CovarianceMatrix::new(1, vec![(2.0 * s).exp() / 2.0, 0.0, 0.0, (-2.0 * s).exp() / 2.0], 1.0)
                .unwrap();
            assert!(is_valid_state(&sq), "s = {s}");
        }
    }

    #[test]
    fn constructor_rejects_bad_input() {
        assert!(matches!(CovarianceMatrix::new(1, vec![1.0, 0.1, 0.0, 1.0], 1.0), Err(Error::NotSymmetric(_))));
        assert!(matches!(CovarianceMatrix::new(1, vec![1.0, 2.0, 2.0, 1.0], 1.0), Err(Error::NotPositiveDefinite(_))));
        assert!(CovarianceMatrix::new(1, vec![1.0; 3], 1.0).is_err());
    }

    #[test]
    fn two_mode_closed_form_matches_spectrum() {
        #[rustfmt::skip]
        let sigma = vec![
            2.0, 0.3, 0.9, 0.1,
            0.3, 1.5, -0.2, -0.7,
            0.9, -0.2, 1.8, 0.0,
            0.1, -0.7, 0.0, 1.2,
        ];
        let c = CovarianceMatrix::new(2, sigma, 1.0).unwrap();
        let inv = two_mode_invariants(&c).unwrap();
        let nu = symplectic_eigenvalues(&c).unwrap();
        assert!((nu[0] - inv.nu_minus).abs() < 1e-10 && (nu[1] - inv.nu_plus).abs() < 1e-10);
        let nut = symplectic_eigenvalues(&partial_transpose_cov(&c, &[1]).unwrap()).unwrap();
        assert!((nut[0] - inv.nu_tilde_minus).abs() < 1e-10 && (nut[1] - inv.nu_tilde_plus).abs() < 1e-10);
        let pt = partial_transpose_cov(&c, &[1]).unwrap();
        assert!((pt.determinant() - c.determinant()).abs() < 1e-12);
    }

    #[test]
    fn global_momentum_reversal_keeps_spectrum() {
        let c = tmsv(0.6);
        let a = symplectic_eigenvalues(&c).unwrap();
        let b = symplectic_eigenvalues(&partial_transpose_cov(&c, &[0, 1]).unwrap()).unwrap();
        assert!(a.iter().zip(&b).all(|(x, y)| (x - y).abs() < 1e-10));
        assert_eq!(partial_transpose_cov(&c, &[]).unwrap(), c);
        assert!(matches!(partial_transpose_cov(&c, &[2]), Err(Error::BadIndex { index: 2, n_modes: 2 })));
    }

    #[test]
    fn squeezed_vacuum_log_negativity() {
        // ν̃₋ = e^{−2s}/2, so E_L = 2s/ln 2 in bits.
        let s = 0.45;
        let c = tmsv(s);
        let el = log_negativity_gaussian(&c, &[1], LogBase::TWO).unwrap();
        assert!((el - 2.0 * s / std::f64::consts::LN_2).abs() < 1e-9);
        let inv = two_mode_invariants(&c).unwrap();
        assert!((inv.nu_tilde_minus - (-2.0 * s).exp() / 2.0).abs() < 1e-12);
        assert!(inv.nu_tilde_plus >= 0.5 - 1e-10);
        let prod = CovarianceMatrix::vacuum(2, 1.0).unwrap();
        assert_eq!(log_negativity_gaussian(&prod, &[1], LogBase::TWO).unwrap(), 0.0);
        let pi = two_mode_invariants(&prod).unwrap();
        assert!((pi.nu_tilde_minus - 0.5).abs() < 1e-15 && (pi.nu_tilde_plus - 0.5).abs() < 1e-15);
    }

    #[test]
    fn json_round_trip() {
        let c = tmsv(0.2);
        let s = serde_json::to_string(&c).unwrap();
        assert!(s.contains("\"sigma\":[["));
        let back: CovarianceMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, c);
        let v: CovarianceMatrix = serde_json::from_str(r#"{"n_modes":1,"sigma":[[0.5,0],[0,0.5]]}"#).unwrap();
        assert_eq!(v.hbar(), 1.0);
        assert!(serde_json::from_str::<CovarianceMatrix>(r#"{"n_modes":2,"sigma":[[0.5,0],[0,0.5]]}"#).is_err());
    }

    #[test]
    fn symplectic_form_properties() {
        let w = SymplecticForm::new(3);
        assert_eq!(w.defect(w.omega()), 0.0);
        let id: Vec<f64> = (0..36).map(|k| if k / 6 == k % 6 { 1.0 } else { 0.0 }).collect();
        assert_eq!(w.defect(&id), 0.0);
    }
}
