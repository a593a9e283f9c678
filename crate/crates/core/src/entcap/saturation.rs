//! When does an input state attain the upper bound log(1 + 2‖M‖_∞)?
//!
//! Two conditions together suffice:
//!
//! 1. the output ranges R₁ = ran[S₋(ρ^Γ₊) + S₊(ρ^Γ₋)] and
//!    R₂ = ran[S₊(ρ^Γ₊) + S₋(ρ^Γ₋)] are orthogonal, i.e.
//!    ⟨V_i^± ψ_j^∓ | V_k^+ ψ_l^+⟩ = 0 and ⟨V_i^± ψ_j^∓ | V_k^- ψ_l^-⟩ = 0,
//!    with V^± Kraus operators of S^Γ± and ψ^± ensembles of (ρ^Γ)±;
//! 2. ran ρ^Γ lies in the top eigenspace of M = S^Γ₋†(I), which is automatic
//!    when M ∝ I.
//!
//! Both are span conditions, so the choice of basis inside degenerate
//! eigenspaces does not matter.

use num_complex::Complex64;
use serde::Serialize;

use super::measures::check_density;
use crate::channel::{Channel, KrausForm};
use crate::error::Result;
use crate::linalg::{eig_hermitian, partial_transpose, tol, zero_cut, ComplexMatrix, Subsystem};

/// Inner products below this fraction of the product of norms count as zero.
pub const OVERLAP_TOL: f64 = 1e-8;
/// Image vectors shorter than this fraction of their a priori scale √(c·|λ|)
/// are treated as exactly zero.
const NULL_VECTOR_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SaturationReport {
    pub prop_identity: bool,
    pub orthogonality: bool,
    pub eigenspace_condition: bool,
    pub achieves_upper: bool,
    /// Largest normalized overlap between the two output ranges.
    pub max_overlap: f64,
}

struct Weighted {
    vector: Vec<Complex64>,
    scale: f64,
}

fn scaled_kraus(k: &KrausForm) -> Vec<(ComplexMatrix, f64)> {
    k.coefficients
        .iter()
        .zip(&k.operators)
        .map(|(c, v)| (v.scale_real(c.abs().sqrt()), c.abs().sqrt()))
        .collect()
}

fn images(ops: &[(ComplexMatrix, f64)], states: &[Weighted]) -> Vec<Weighted> {
    let mut out = Vec::new();
    for (v, vs) in ops {
        for s in states {
            let x = v.mat_vec(&s.vector);
            let norm = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            let scale = vs * s.scale;
            if norm > NULL_VECTOR_TOL * scale {
                out.push(Weighted { vector: x, scale: norm });
            }
        }
    }
    out
}

fn max_overlap(r1: &[Weighted], r2: &[Weighted]) -> f64 {
    let mut worst: f64 = 0.0;
    for x in r1 {
        for y in r2 {
            let ip: Complex64 = x.vector.iter().zip(&y.vector).map(|(a, b)| a.conj() * b).sum();
            worst = worst.max(ip.norm() / (x.scale * y.scale));
        }
    }
    worst
}

pub fn saturation_check(ch: &Channel, rho: &ComplexMatrix) -> Result<SaturationReport> {
    ch.require_cptp(tol::DEFAULT)?;
    let dims = ch.in_dims();
    check_density(rho, dims)?;

    let split = ch.partial_transpose().hp_split()?;
    let v_plus = scaled_kraus(&split.plus.kraus()?);
    let v_minus = scaled_kraus(&split.minus.kraus()?);
    let m = split.minus.adjoint_identity().hermitian_part();
    let me = eig_hermitian(&m, tol::hermitian_tol(&m))?;
    let (lo, hi) = (me.values[0], *me.values.last().expect("nonempty spectrum"));
    let prop_identity = hi - lo <= tol::DEFAULT * hi.abs().max(1.0);

    let rho_pt = partial_transpose(rho, dims, Subsystem::A)?;
    let re = eig_hermitian(&rho_pt, tol::DEFAULT)?;
    let cut = zero_cut(&re);
    let ensemble = |positive: bool| -> Vec<Weighted> {
        re.values
            .iter()
            .enumerate()
            .filter(|(_, &l)| if positive { l > cut } else { l < -cut })
            .map(|(k, &l)| {
                let s = l.abs().sqrt();
                Weighted { vector: re.vector(k).iter().map(|z| z * s).collect(), scale: s }
            })
            .collect()
    };
    let (psi_plus, psi_minus) = (ensemble(true), ensemble(false));

    let mut r1 = images(&v_minus, &psi_plus);
    r1.extend(images(&v_plus, &psi_minus));
    let mut r2 = images(&v_plus, &psi_plus);
    r2.extend(images(&v_minus, &psi_minus));
    let overlap = max_overlap(&r1, &r2);
    let orthogonality = overlap <= OVERLAP_TOL;

    // ran ρ^Γ ⊆ top eigenspace of M  ⇔  (I − Q)ρ^Γ = 0
    let gap = tol::DEFAULT * hi.abs().max(1.0);
    let n = dims.total();
    let mut q = ComplexMatrix::zeros(n, n);
    for (k, &l) in me.values.iter().enumerate() {
        if l >= hi - gap {
            let v = me.vector(k);
            q = &q + &ComplexMatrix::outer(&v, &v);
        }
    }
    let leak = &(&ComplexMatrix::identity(n) - &q) * &rho_pt;
    let eigenspace_condition = leak.frobenius_norm() <= OVERLAP_TOL * rho_pt.frobenius_norm();

    Ok(SaturationReport {
        prop_identity,
        orthogonality,
        eigenspace_condition,
        achieves_upper: orthogonality && (prop_identity || eigenspace_condition),
        max_overlap: overlap,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entcap::measures::{density_from_vector, negativity};
    use crate::linalg::BipartiteDims;

    fn cnot() -> Channel {
        let u = ComplexMatrix::from_real(4, 4, &[1., 0., 0., 0., 0., 1., 0., 0., 0., 0., 0., 1., 0., 0., 1., 0.])
            .unwrap();
        Channel::unitary(&u, BipartiteDims::new(2, 2).unwrap()).unwrap()
    }

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn plus_up_input_saturates_cnot() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let rho = density_from_vector(&[c(s), c(0.0), c(s), c(0.0)]);
        let r = saturation_check(&cnot(), &rho).unwrap();
        assert!(r.prop_identity && r.orthogonality && r.eigenspace_condition && r.achieves_upper, "{r:?}");
        let out = cnot().apply(&rho).unwrap();
        let en = negativity(&out, BipartiteDims::new(2, 2).unwrap()).unwrap();
        assert!((en - 0.5).abs() < 1e-12);
    }

    #[test]
    fn up_up_input_does_not() {
        let rho = density_from_vector(&[c(1.0), c(0.0), c(0.0), c(0.0)]);
        let r = saturation_check(&cnot(), &rho).unwrap();
        assert!(r.prop_identity && !r.orthogonality && !r.achieves_upper, "{r:?}");
    }

    #[test]
    fn ppt_channel_reports_zero_minus_part() {
        let id = Channel::identity(BipartiteDims::new(2, 2).unwrap());
        let rho = density_from_vector(&[c(1.0), c(0.0), c(0.0), c(0.0)]);
        let r = saturation_check(&id, &rho).unwrap();
        assert!(r.prop_identity);
    }
}
