//! Entangling-capacity bounds from the negative part of the partially
//! transposed operation.
//!
//! Write S^Γ = S^Γ₊ − S^Γ₋ for the spectral split of T(S^Γ) and
//! M = S^Γ₋†(I). For a deterministic operation on d_A⊗d_B,
//!
//! ```text
//! ‖M‖₁/(d_A d_B)              ≤ EC_N ≤ ‖M‖_∞ ‖ρ^Γ‖₁
//! log(1 + 2‖M‖₁/(d_A d_B))    ≤ EC_L ≤ log(1 + 2‖M‖_∞)
//! ```
//!
//! The lower bounds are attained by the normalized Choi state; the upper
//! bounds hold for every input. Any other CP split of S^Γ also gives a valid
//! upper bound, which is what [`ec_bounds_with_split`] is for.

use serde::Serialize;

use super::measures::{check_density, LogBase};
use crate::channel::{Channel, MapSplit};
use crate::error::{Error, Result};
use crate::linalg::{
    operator_norm, partial_transpose, schatten_norm, trace_norm, BipartiteDims, ComplexMatrix, Subsystem,
};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundOptions {
    pub base: LogBase,
    /// Schatten index applied to M in the upper bounds.
    pub p: f64,
    /// Hölder conjugate of `p`, applied to ρ^Γ.
    pub q: f64,
    /// Tolerance for the CP/TP preconditions.
    pub tol: f64,
}

impl Default for BoundOptions {
    fn default() -> Self {
        Self { base: LogBase::TWO, p: f64::INFINITY, q: 1.0, tol: 1e-9 }
    }
}

impl BoundOptions {
    pub fn with_base(base: LogBase) -> Self {
        Self { base, ..Self::default() }
    }

    fn check(&self) -> Result<()> {
        let inv = |x: f64| if x.is_infinite() { 0.0 } else { 1.0 / x };
        if !(self.p >= 1.0 && self.q >= 1.0) || (inv(self.p) + inv(self.q) - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidP(format!(
                "need Hölder conjugates p, q ≥ 1, got p = {}, q = {}",
                self.p, self.q
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EcBounds {
    pub lower_n: f64,
    /// Multiplies ‖ρ^Γ‖_q in the negativity upper bound.
    pub upper_n_coefficient: f64,
    /// Coefficient times the largest ‖ρ^Γ‖ over input states, min(d_A, d_B).
    pub upper_n_max: f64,
    pub lower_l: f64,
    pub upper_l: f64,
    pub log_base: f64,
}

impl EcBounds {
    /// The lower bound already reaches the dimensional ceiling log min(d_A, d_B).
    pub fn is_perfect_entangler(&self, dims: BipartiteDims, tol: f64) -> bool {
        let ceiling = LogBase::new(self.log_base).map(|b| b.log(dims.min() as f64)).unwrap_or(f64::NAN);
        dims.min() > 1 && self.lower_l >= ceiling - tol
    }

    fn assemble(lower_m: &ComplexMatrix, upper_m: &ComplexMatrix, dims: BipartiteDims, opts: &BoundOptions) -> Result<Self> {
        let d = dims.total() as f64;
        let n1 = trace_norm(lower_m)?;
        let np = schatten_norm(upper_m, opts.p)?;
        Ok(Self {
            lower_n: n1 / d,
            upper_n_coefficient: np,
            upper_n_max: np * dims.min() as f64,
            lower_l: opts.base.log(1.0 + 2.0 * n1 / d),
            upper_l: opts.base.log(1.0 + 2.0 * np),
            log_base: opts.base.value(),
        })
    }
}

/// M = S^Γ₋†(I) for the canonical spectral split.
pub fn negative_part_adjoint(ch: &Channel) -> Result<ComplexMatrix> {
    Ok(ch.partial_transpose().hp_split()?.minus.adjoint_identity().hermitian_part())
}

pub fn ec_bounds_deterministic(ch: &Channel, opts: &BoundOptions) -> Result<EcBounds> {
    opts.check()?;
    ch.require_cptp(opts.tol)?;
    let m = negative_part_adjoint(ch)?;
    EcBounds::assemble(&m, &m, ch.in_dims(), opts)
}

/// Bounds with the upper ones taken from a caller-supplied CP split of S^Γ.
/// Lower bounds always use the canonical split.
pub fn ec_bounds_with_split(ch: &Channel, split: &MapSplit, opts: &BoundOptions) -> Result<EcBounds> {
    opts.check()?;
    ch.require_cptp(opts.tol)?;
    let target = ch.partial_transpose();
    let diff = split.difference()?;
    if diff.choi().max_abs_diff(target.choi()) > opts.tol * target.choi().max_abs().max(1.0) {
        return Err(Error::InvalidParams("split does not reconstruct the partial transpose".into()));
    }
    if !split.plus.is_cp(opts.tol) || !split.minus.is_cp(opts.tol) {
        return Err(Error::InvalidParams("both parts of a split must be CP".into()));
    }
    let m = negative_part_adjoint(ch)?;
    let m_alt = split.minus.adjoint_identity().hermitian_part();
    EcBounds::assemble(&m, &m_alt, ch.in_dims(), opts)
}

/// Per-outcome data for a probabilistic operation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SubBound {
    /// p_i = tr T(S_i)/(d_A d_B), the outcome probability on the Choi state.
    pub probability: f64,
    /// ‖S_i^Γ₋†(I)‖₁ / tr T(S_i): lower bound on the capacity of the
    /// normalized sub-operation.
    pub lower_n: f64,
    /// log(‖T(S_i^Γ)‖₁ / tr T(S_i))
    pub lower_l: f64,
    pub plus_norm: f64,
    pub minus_norm: f64,
}

impl SubBound {
    /// Upper bound on p_i·E_N of the post-measurement state given the input
    /// negativity `e_n`.
    pub fn weighted_negativity_bound(&self, e_n: f64) -> f64 {
        e_n * (self.plus_norm + self.minus_norm) + self.minus_norm
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbabilisticBounds {
    pub bounds: EcBounds,
    pub per_sub: Vec<SubBound>,
}

pub fn ec_bounds_probabilistic(subs: &[Channel], opts: &BoundOptions) -> Result<ProbabilisticBounds> {
    opts.check()?;
    let first = subs.first().ok_or_else(|| Error::NotTpSum("no sub-operations given".into()))?;
    let dims = first.in_dims();
    let mut total = Channel::zero(dims, first.out_dims());
    for s in subs {
        if !s.is_cp(opts.tol) {
            return Err(Error::NotCptp("a sub-operation is not CP".into()));
        }
        total = total.add(s)?;
    }
    if !total.is_tp(opts.tol) {
        return Err(Error::NotTpSum("sum of sub-operations is not trace preserving".into()));
    }

    let d = dims.total() as f64;
    let mut m_sum = ComplexMatrix::zeros(dims.total(), dims.total());
    let (mut lower_n, mut lower_l) = (0.0, 0.0);
    let mut per_sub = Vec::with_capacity(subs.len());
    for s in subs {
        let pt = s.partial_transpose();
        let split = pt.hp_split()?;
        let m = split.minus.adjoint_identity().hermitian_part();
        let p_adj = split.plus.adjoint_identity().hermitian_part();
        let tr = s.choi_trace();
        let m1 = trace_norm(&m)?;
        let (sub_n, sub_l) = if tr > 0.0 {
            (m1 / tr, opts.base.log(trace_norm(pt.choi())? / tr))
        } else {
            (0.0, 0.0)
        };
        lower_n += m1 / d;
        lower_l += tr / d * sub_l;
        per_sub.push(SubBound {
            probability: tr / d,
            lower_n: sub_n,
            lower_l: sub_l,
            plus_norm: schatten_norm(&p_adj, opts.p)?,
            minus_norm: schatten_norm(&m, opts.p)?,
        });
        m_sum = &m_sum + &m;
    }
    let np = schatten_norm(&m_sum, opts.p)?;
    let bounds = EcBounds {
        lower_n,
        upper_n_coefficient: np,
        upper_n_max: np * dims.min() as f64,
        lower_l,
        upper_l: opts.base.log(1.0 + 2.0 * np),
        log_base: opts.base.value(),
    };
    Ok(ProbabilisticBounds { bounds, per_sub })
}

/// The three sides of the distance inequality
/// D(S₁(ρ), S₂(ρ)) ≤ 2‖L₋†(I)‖·‖ρ^Γ‖₁ ≤ ‖T(L)‖₁·‖ρ^Γ‖₁ with L = S₂^Γ − S₁^Γ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DistanceBounds {
    pub lhs: f64,
    pub mid: f64,
    pub rhs: f64,
    /// L₊†(I) and L₋†(I) coincide, as they must for TP S₁, S₂.
    pub parts_agree: bool,
}

pub fn distance_bounds(s1: &Channel, s2: &Channel, rho: &ComplexMatrix) -> Result<DistanceBounds> {
    let tol = 1e-9;
    if s1.in_dims() != s2.in_dims() || s1.out_dims() != s2.out_dims() {
        return Err(Error::DimensionMismatch("operations act on different spaces".into()));
    }
    s1.require_cptp(tol)?;
    s2.require_cptp(tol)?;
    check_density(rho, s1.in_dims())?;

    let l = s2.partial_transpose().sub(&s1.partial_transpose())?;
    let split = l.hp_split()?;
    let m_minus = split.minus.adjoint_identity();
    let m_plus = split.plus.adjoint_identity();
    let scale = operator_norm(&m_minus)?.max(1.0);
    let parts_agree = operator_norm(&(&m_plus - &m_minus))? <= tol * scale;

    let rho_pt = trace_norm(&partial_transpose(rho, s1.in_dims(), Subsystem::A)?)?;
    let out_diff = &s1.apply(rho)? - &s2.apply(rho)?;
    let lhs = trace_norm(&partial_transpose(&out_diff, s1.out_dims(), Subsystem::A)?)?;
    Ok(DistanceBounds {
        lhs,
        mid: 2.0 * operator_norm(&m_minus)? * rho_pt,
        rhs: trace_norm(l.choi())? * rho_pt,
        parts_agree,
    })
}

/// ‖S(ρ₁)^Γ − S(ρ₂)^Γ‖₁ and its bound (1 + 2‖M‖_∞)·‖ρ₁^Γ − ρ₂^Γ‖₁.
pub fn state_distance_bound(s: &Channel, rho1: &ComplexMatrix, rho2: &ComplexMatrix) -> Result<(f64, f64)> {
    s.require_cptp(1e-9)?;
    check_density(rho1, s.in_dims())?;
    check_density(rho2, s.in_dims())?;
    let pt_out = |o: &ComplexMatrix| partial_transpose(o, s.out_dims(), Subsystem::A);
    let pt_in = |o: &ComplexMatrix| partial_transpose(o, s.in_dims(), Subsystem::A);
    let lhs = trace_norm(&(&pt_out(&s.apply(rho1)?)? - &pt_out(&s.apply(rho2)?)?))?;
    let m = negative_part_adjoint(s)?;
    let rhs = (1.0 + 2.0 * operator_norm(&m)?) * trace_norm(&(&pt_in(rho1)? - &pt_in(rho2)?))?;
    Ok((lhs, rhs))
}

/// Convex split Σ_i w_i S_i^Γ± of a mixture of operations.
pub fn convex_split(channels: &[Channel], weights: &[f64]) -> Result<MapSplit> {
    let splits = channels
        .iter()
        .map(|c| c.partial_transpose().hp_split())
        .collect::<Result<Vec<_>>>()?;
    MapSplit::combine(&splits, weights)
}
