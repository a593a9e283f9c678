use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::channel::Channel;
use crate::error::{Error, Result};
use crate::linalg::{
    eig_hermitian, partial_transpose, schatten_norm, tol, trace_norm, BipartiteDims, ComplexMatrix, Subsystem,
};

/// Logarithm base for the log-negativity family of quantities.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LogBase(f64);

impl LogBase {
    pub const TWO: LogBase = LogBase(2.0);
    pub const E: LogBase = LogBase(std::f64::consts::E);
    pub const TEN: LogBase = LogBase(10.0);

    pub fn new(base: f64) -> Result<Self> {
        if !(base > 0.0) || base == 1.0 || !base.is_finite() {
            return Err(Error::InvalidParams(format!("invalid logarithm base {base}")));
        }
        Ok(Self(base))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn log(self, x: f64) -> f64 {
        if self == Self::TWO {
            x.log2()
        } else if self == Self::E {
            x.ln()
        } else if self == Self::TEN {
            x.log10()
        } else {
            x.ln() / self.0.ln()
        }
    }
}

impl Default for LogBase {
    fn default() -> Self {
        Self::TWO
    }
}

impl FromStr for LogBase {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "2" => Ok(Self::TWO),
            "e" => Ok(Self::E),
            "10" => Ok(Self::TEN),
            other => Err(Error::Parse(format!("log base must be 2, e or 10, got {other:?}"))),
        }
    }
}

impl fmt::Display for LogBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if *self == Self::E {
            write!(f, "e")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

/// |ψ⟩⟨ψ|
pub fn density_from_vector(psi: &[Complex64]) -> ComplexMatrix {
    ComplexMatrix::outer(psi, psi)
}

pub(crate) fn check_density(rho: &ComplexMatrix, dims: BipartiteDims) -> Result<()> {
    dims.check_square(rho).map_err(|e| Error::NotDensityOperator(e.to_string()))?;
    let tr = rho.trace();
    if (tr.re - 1.0).abs() > tol::DEFAULT || tr.im.abs() > tol::DEFAULT {
        return Err(Error::NotDensityOperator(format!("trace is {tr}")));
    }
    let e = eig_hermitian(rho, tol::DEFAULT).map_err(|e| Error::NotDensityOperator(e.to_string()))?;
    if e.values[0] < -tol::DEFAULT {
        return Err(Error::NotDensityOperator(format!("eigenvalue {:.3e}", e.values[0])));
    }
    Ok(())
}

/// ‖ρ^Γ‖₁ for a density operator.
fn pt_trace_norm(rho: &ComplexMatrix, dims: BipartiteDims) -> Result<f64> {
    check_density(rho, dims)?;
    trace_norm(&partial_transpose(rho, dims, Subsystem::A)?)
}

/// E_N(ρ) = (‖ρ^Γ‖₁ − 1)/2
pub fn negativity(rho: &ComplexMatrix, dims: BipartiteDims) -> Result<f64> {
    Ok(((pt_trace_norm(rho, dims)? - 1.0) / 2.0).max(0.0))
}

/// E_L(ρ) = log ‖ρ^Γ‖₁
pub fn log_negativity(rho: &ComplexMatrix, dims: BipartiteDims, base: LogBase) -> Result<f64> {
    Ok(base.log(pt_trace_norm(rho, dims)?).max(0.0))
}

/// ‖O^Γ‖_p
pub fn gamma_norm_operator(o: &ComplexMatrix, dims: BipartiteDims, p: f64) -> Result<f64> {
    schatten_norm(&partial_transpose(o, dims, Subsystem::A)?, p)
}

/// ‖T(L^Γ)‖_p
pub fn gamma_norm_channel(ch: &Channel, p: f64) -> Result<f64> {
    schatten_norm(ch.partial_transpose().choi(), p)
}

/// Where ‖H‖₁,Γ/‖H‖₁ falls relative to the dimensional limits 1/m and m,
/// m = min(d_A, d_B).
#[derive(Debug, Clone, Copy, Serialize)]
pub struct NormEquivalence {
    pub ratio: f64,
    pub ratio_low: f64,
    pub ratio_high: f64,
}

impl NormEquivalence {
    pub fn holds(&self, tol: f64) -> bool {
        self.ratio >= self.ratio_low - tol && self.ratio <= self.ratio_high + tol
    }
}

pub fn norm_equivalence_check(h: &ComplexMatrix, dims: BipartiteDims) -> Result<NormEquivalence> {
    dims.check_square(h)?;
    let n1 = trace_norm(h)?;
    let ng = gamma_norm_operator(h, dims, 1.0)?;
    let m = dims.min() as f64;
    let ratio = if n1 == 0.0 { 1.0 } else { ng / n1 };
    Ok(NormEquivalence { ratio, ratio_low: 1.0 / m, ratio_high: m })
}
