//! Linear maps on operators, stored as Choi matrices.
//!
//! The Choi matrix of L: B(H₁) → B(H₂) is T(L) = Σ_ij E_ij ⊗ L(E_ij) with
//! row index i·d₂ + k (i on H₁, k on H₂). Everything else (Kraus forms,
//! adjoints, predicates) is derived from it.

mod json;
mod kraus;

pub use json::{ChannelJson, KrausTermJson};
pub use kraus::KrausForm;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{
    eig_hermitian, hermiticity_defect, operator_norm, partial_transpose_factors, split_from_eigen, tol,
    BipartiteDims, ComplexMatrix,
};

#[derive(Debug, Clone, PartialEq)]
pub struct Channel {
    choi: ComplexMatrix,
    in_dims: BipartiteDims,
    out_dims: BipartiteDims,
}

/// An HP map written as the difference of two CP maps.
#[derive(Debug, Clone)]
pub struct MapSplit {
    pub plus: Channel,
    pub minus: Channel,
}

impl MapSplit {
    /// Weighted sum of splits, e.g. Σ_i p_i S_i^Γ± for a convex mixture.
    pub fn combine(splits: &[MapSplit], weights: &[f64]) -> Result<MapSplit> {
        let plus: Vec<Channel> = splits.iter().map(|s| s.plus.clone()).collect();
        let minus: Vec<Channel> = splits.iter().map(|s| s.minus.clone()).collect();
        Ok(MapSplit {
            plus: linear_combination(&plus, weights)?,
            minus: linear_combination(&minus, weights)?,
        })
    }

    /// plus − minus
    pub fn difference(&self) -> Result<Channel> {
        self.plus.sub(&self.minus)
    }
}

impl Channel {
    pub fn from_choi(choi: ComplexMatrix, in_dims: BipartiteDims, out_dims: BipartiteDims) -> Result<Self> {
        let side = in_dims.total() * out_dims.total();
        if choi.rows() != side || choi.cols() != side {
            return Err(Error::DimensionMismatch(format!(
                "Choi matrix is {}x{} but dims need side {side}",
                choi.rows(),
                choi.cols()
            )));
        }
        Ok(Self { choi, in_dims, out_dims })
    }

    /// Σ_i c_i (I⊗V_i)|Ψ⟩⟨Ψ|(I⊗V_i)† with the unnormalized |Ψ⟩ = Σ_j |j⟩|j⟩.
    pub fn from_kraus(kraus: &KrausForm, in_dims: BipartiteDims, out_dims: BipartiteDims) -> Result<Self> {
        let (d1, d2) = (in_dims.total(), out_dims.total());
        let mut choi = ComplexMatrix::zeros(d1 * d2, d1 * d2);
        for (c, v) in kraus.coefficients.iter().zip(&kraus.operators) {
            if v.rows() != d2 || v.cols() != d1 {
                return Err(Error::DimensionMismatch(format!(
                    "Kraus operator is {}x{}, expected {d2}x{d1}",
                    v.rows(),
                    v.cols()
                )));
            }
            let vec: Vec<Complex64> = (0..d1 * d2).map(|r| v[(r % d2, r / d2)]).collect();
            for r in 0..d1 * d2 {
                let a = vec[r] * *c;
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for s in 0..d1 * d2 {
                    choi[(r, s)] += a * vec[s].conj();
                }
            }
        }
        Ok(Self { choi, in_dims, out_dims })
    }

    /// O ↦ U O U†
    pub fn unitary(u: &ComplexMatrix, dims: BipartiteDims) -> Result<Self> {
        Self::from_kraus(&KrausForm::single(u.clone()), dims, dims)
    }

    pub fn identity(dims: BipartiteDims) -> Self {
        Self::unitary(&ComplexMatrix::identity(dims.total()), dims).expect("identity dims are consistent")
    }

    pub fn zero(in_dims: BipartiteDims, out_dims: BipartiteDims) -> Self {
        let side = in_dims.total() * out_dims.total();
        Self { choi: ComplexMatrix::zeros(side, side), in_dims, out_dims }
    }

    /// Choi matrix of an arbitrary linear map given as a closure.
    pub fn from_linear_map(
        in_dims: BipartiteDims,
        out_dims: BipartiteDims,
        f: impl Fn(&ComplexMatrix) -> Result<ComplexMatrix>,
    ) -> Result<Self> {
        let (d1, d2) = (in_dims.total(), out_dims.total());
        let mut choi = ComplexMatrix::zeros(d1 * d2, d1 * d2);
        for i in 0..d1 {
            for j in 0..d1 {
                let mut e = ComplexMatrix::zeros(d1, d1);
                e[(i, j)] = Complex64::new(1.0, 0.0);
                let img = f(&e)?;
                if img.rows() != d2 || img.cols() != d2 {
                    return Err(Error::DimensionMismatch("map output has the wrong shape".into()));
                }
                for k in 0..d2 {
                    for l in 0..d2 {
                        choi[(i * d2 + k, j * d2 + l)] = img[(k, l)];
                    }
                }
            }
        }
        Ok(Self { choi, in_dims, out_dims })
    }

    /// Full transposition O ↦ Oᵀ; its Choi matrix is the swap operator.
    pub fn transpose_map(dims: BipartiteDims) -> Self {
        Self::from_linear_map(dims, dims, |o| Ok(o.transpose())).expect("transpose preserves shape")
    }

    pub fn choi(&self) -> &ComplexMatrix {
        &self.choi
    }

    pub fn in_dims(&self) -> BipartiteDims {
        self.in_dims
    }

    pub fn out_dims(&self) -> BipartiteDims {
        self.out_dims
    }

    /// L(O) = tr₁((Oᵀ⊗I) T(L)).
    pub fn apply(&self, o: &ComplexMatrix) -> Result<ComplexMatrix> {
        let (d1, d2) = (self.in_dims.total(), self.out_dims.total());
        if o.rows() != d1 || o.cols() != d1 {
            return Err(Error::DimensionMismatch(format!(
                "input is {}x{}, channel expects {d1}x{d1}",
                o.rows(),
                o.cols()
            )));
        }
        let mut out = ComplexMatrix::zeros(d2, d2);
        for i in 0..d1 {
            for j in 0..d1 {
                let w = o[(i, j)];
                if w.re == 0.0 && w.im == 0.0 {
                    continue;
                }
                for k in 0..d2 {
                    for l in 0..d2 {
                        out[(k, l)] += w * self.choi[(i * d2 + k, j * d2 + l)];
                    }
                }
            }
        }
        Ok(out)
    }

    /// L†(I) = tr₂ of the entrywise conjugate of T(L).
    pub fn adjoint_identity(&self) -> ComplexMatrix {
        let (d1, d2) = (self.in_dims.total(), self.out_dims.total());
        ComplexMatrix::from_fn(d1, d1, |i, j| {
            (0..d2).map(|k| self.choi[(i * d2 + k, j * d2 + k)].conj()).sum()
        })
    }

    pub fn is_hp(&self, tol: f64) -> bool {
        hermiticity_defect(&self.choi) <= tol
    }

    pub fn is_cp(&self, tol: f64) -> bool {
        if !self.is_hp(tol) {
            return false;
        }
        match eig_hermitian(&self.choi, tol) {
            Ok(e) => e.values[0] >= -tol,
            Err(_) => false,
        }
    }

    pub fn is_tp(&self, tol: f64) -> bool {
        let dev = &self.adjoint_identity() - &ComplexMatrix::identity(self.in_dims.total());
        operator_norm(&dev).map(|n| n <= tol).unwrap_or(false)
    }

    pub(crate) fn require_cptp(&self, tol: f64) -> Result<()> {
        if !self.is_cp(tol) {
            return Err(Error::NotCptp("Choi matrix is not positive semidefinite".into()));
        }
        if !self.is_tp(tol) {
            return Err(Error::NotCptp("adjoint at the identity differs from the identity".into()));
        }
        Ok(())
    }

    fn require_hp(&self) -> Result<()> {
        if hermiticity_defect(&self.choi) > tol::hermitian_tol(&self.choi) {
            return Err(Error::NotHp);
        }
        Ok(())
    }

    /// Canonical split into the positive and negative spectral parts of T(L).
    pub fn hp_split(&self) -> Result<MapSplit> {
        self.require_hp()?;
        let e = eig_hermitian(&self.choi, tol::hermitian_tol(&self.choi))?;
        let s = split_from_eigen(&e);
        Ok(MapSplit {
            plus: Self { choi: s.plus, ..*self },
            minus: Self { choi: s.minus, ..*self },
        })
    }

    /// Operator-sum form from the eigendecomposition of the Choi matrix.
    ///
    /// Eigenvalues are the coefficients and each unit eigenvector, indexed
    /// (j on H₁, k on H₂), becomes V with V_kj = v_{j·d₂+k}. Within a
    /// degenerate eigenspace the operators are only fixed up to a unitary
    /// remixing.
    pub fn kraus(&self) -> Result<KrausForm> {
        self.require_hp()?;
        let (d1, d2) = (self.in_dims.total(), self.out_dims.total());
        let e = eig_hermitian(&self.choi, tol::hermitian_tol(&self.choi))?;
        let cut = crate::linalg::zero_cut(&e);
        let mut kraus = KrausForm::default();
        // largest magnitude first, which makes printed forms easier to read
        let mut order: Vec<usize> = (0..e.values.len()).filter(|&k| e.values[k].abs() > cut).collect();
        order.sort_by(|&a, &b| e.values[b].abs().total_cmp(&e.values[a].abs()));
        for k in order {
            let v = e.vector(k);
            kraus.coefficients.push(e.values[k]);
            kraus.operators.push(ComplexMatrix::from_fn(d2, d1, |r, c| v[c * d2 + r]));
        }
        Ok(kraus)
    }

    /// L^Γ = Γ∘L∘Γ, i.e. transpose of the Choi matrix on H₁ᴬ and H₂ᴬ jointly.
    pub fn partial_transpose(&self) -> Self {
        let f = [self.in_dims.d_a(), self.in_dims.d_b(), self.out_dims.d_a(), self.out_dims.d_b()];
        let choi = partial_transpose_factors(&self.choi, &f, &[true, false, true, false])
            .expect("Choi side matches its factor dims");
        Self { choi, ..*self }
    }

    /// 𝓘_d ⊗ L. The result treats the ancilla as party A and the whole of the
    /// original input (output) space as party B.
    pub fn with_ancilla(&self, d: usize) -> Result<Self> {
        let (d1, d2) = (self.in_dims.total(), self.out_dims.total());
        let side_out = d * d2;
        let side = d * d1 * side_out;
        let mut choi = ComplexMatrix::zeros(side, side);
        for a in 0..d {
            for ap in 0..d {
                for i in 0..d1 {
                    for j in 0..d1 {
                        for k in 0..d2 {
                            for l in 0..d2 {
                                let r = (a * d1 + i) * side_out + a * d2 + k;
                                let c = (ap * d1 + j) * side_out + ap * d2 + l;
                                choi[(r, c)] = self.choi[(i * d2 + k, j * d2 + l)];
                            }
                        }
                    }
                }
            }
        }
        Self::from_choi(choi, BipartiteDims::new(d, d1)?, BipartiteDims::new(d, d2)?)
    }

    pub fn scale(&self, w: f64) -> Self {
        Self { choi: self.choi.scale_real(w), ..*self }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.require_same_dims(other)?;
        Ok(Self { choi: &self.choi - &other.choi, ..*self })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.require_same_dims(other)?;
        Ok(Self { choi: &self.choi + &other.choi, ..*self })
    }

    fn require_same_dims(&self, other: &Self) -> Result<()> {
        if self.in_dims != other.in_dims || self.out_dims != other.out_dims {
            return Err(Error::DimensionMismatch("channels act on different spaces".into()));
        }
        Ok(())
    }

    /// tr T(L); equals d₁ for trace-preserving maps.
    pub fn choi_trace(&self) -> f64 {
        self.choi.trace().re
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str::<ChannelJson>(s)?.try_into()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&ChannelJson::from(self.clone())).expect("channel serializes")
    }
}

fn linear_combination(channels: &[Channel], weights: &[f64]) -> Result<Channel> {
    let first = channels
        .first()
        .ok_or_else(|| Error::BadWeights("no channels given".into()))?;
    if channels.len() != weights.len() {
        return Err(Error::BadWeights(format!(
            "{} channels but {} weights",
            channels.len(),
            weights.len()
        )));
    }
    let mut acc = Channel::zero(first.in_dims, first.out_dims);
    for (ch, &w) in channels.iter().zip(weights) {
        acc = acc.add(&ch.scale(w))?;
    }
    Ok(acc)
}

/// Convex combination Σ_i w_i L_i.
pub fn mix(channels: &[Channel], weights: &[f64]) -> Result<Channel> {
    if weights.iter().any(|&w| !(w >= 0.0)) {
        return Err(Error::BadWeights("weights must be nonnegative".into()));
    }
    let total: f64 = weights.iter().sum();
    if (total - 1.0).abs() > 1e-12 {
        return Err(Error::BadWeights(format!("weights sum to {total}, not 1")));
    }
    linear_combination(channels, weights)
}

/// ch2 ∘ ch1
pub fn compose(ch2: &Channel, ch1: &Channel) -> Result<Channel> {
    if ch1.out_dims != ch2.in_dims {
        return Err(Error::DimensionMismatch("output of the first map does not feed the second".into()));
    }
    Channel::from_linear_map(ch1.in_dims, ch2.out_dims, |e| ch2.apply(&ch1.apply(e)?))
}
