//! Fully symmetric N-mode states and the entanglement between two blocks of
//! n₁ and n₂ of their modes.
//!
//! A symmetric state is fixed, up to local unitaries, by the standard form
//! (a, b, c): every single-mode block is diag(a, a) and every cross block is
//! diag(b, c). The global parameterization used for block entanglement is
//!
//! * r   = σ(X_N, X_N)/σ(u, u), the squeezing ratio of the collective mode,
//! * ν_D = √(σ(u,u) σ(Π,Π)), the (N−1)-fold degenerate symplectic eigenvalue,
//! * γ   = ν_N/ν_D with ν_N = √(σ(X_N,X_N) σ(P_N,P_N)) the remaining one,
//!
//! where X_N, P_N are the centre-of-mass quadratures (variances a + (N−1)b
//! and a + (N−1)c) and u, Π any relative ones (variances a − b, a − c).

use serde::{Deserialize, Serialize};

use super::covariance::{default_hbar, CovarianceMatrix};
use crate::entcap::LogBase;
use crate::error::{Error, Result};

/// Relative slack on the physical bounds ν ≥ ħ/2, so that boundary states
/// survive round trips through floating point.
const BOUND_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ParamsJson", into = "ParamsJson")]
pub struct SymmetricParams {
    n: usize,
    nu_d: f64,
    gamma: f64,
    r: f64,
    hbar: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ParamsJson {
    #[serde(rename = "N")]
    n: usize,
    #[serde(rename = "nu_D")]
    nu_d: f64,
    gamma: f64,
    r: f64,
    #[serde(default = "default_hbar")]
    hbar: f64,
}

impl TryFrom<ParamsJson> for SymmetricParams {
    type Error = Error;
    fn try_from(j: ParamsJson) -> Result<Self> {
        SymmetricParams::new(j.n, j.nu_d, j.gamma, j.r, j.hbar)
    }
}

impl From<SymmetricParams> for ParamsJson {
    fn from(p: SymmetricParams) -> Self {
        ParamsJson { n: p.n, nu_d: p.nu_d, gamma: p.gamma, r: p.r, hbar: p.hbar }
    }
}

impl SymmetricParams {
    /// Requires N ≥ 2, ν_D ≥ ħ/2, ν_D γ ≥ ħ/2 and r > 0.
    pub fn new(n: usize, nu_d: f64, gamma: f64, r: f64, hbar: f64) -> Result<Self> {
        let half = hbar / 2.0;
        let floor = half * (1.0 - BOUND_SLACK);
        if n < 2 {
            return Err(Error::InvalidParams(format!("need at least 2 modes, got {n}")));
        }
        if !(hbar > 0.0) || ![nu_d, gamma, r, hbar].iter().all(|v| v.is_finite()) {
            return Err(Error::InvalidParams("parameters must be finite with hbar > 0".into()));
        }
        if !(nu_d >= floor) {
            return Err(Error::InvalidParams(format!("nu_D = {nu_d} is below hbar/2 = {half}")));
        }
        if !(nu_d * gamma >= floor) {
            return Err(Error::InvalidParams(format!("nu_D*gamma = {} is below hbar/2 = {half}", nu_d * gamma)));
        }
        if !(r > 0.0) {
            return Err(Error::InvalidParams(format!("r must be positive, got {r}")));
        }
        Ok(Self { n, nu_d, gamma, r, hbar })
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn nu_d(&self) -> f64 {
        self.nu_d
    }
    pub fn nu_n(&self) -> f64 {
        self.nu_d * self.gamma
    }
    pub fn gamma(&self) -> f64 {
        self.gamma
    }
    pub fn r(&self) -> f64 {
        self.r
    }
    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn with_r(&self, r: f64) -> Result<Self> {
        Self::new(self.n, self.nu_d, self.gamma, r, self.hbar)
    }

    /// Variances (σ(X_N,X_N), σ(P_N,P_N), σ(u,u), σ(Π,Π)).
    fn collective_variances(&self) -> (f64, f64, f64, f64) {
        let (n, r) = (self.n as f64, self.r);
        let nu_n = self.nu_n();
        let uu = ((nu_n * nu_n + (n - 1.0) * r * self.nu_d * self.nu_d) / (r * (r + n - 1.0))).sqrt();
        (r * uu, nu_n * nu_n / (r * uu), uu, self.nu_d * self.nu_d / uu)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StandardForm {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(default = "default_hbar")]
    pub hbar: f64,
}

impl StandardForm {
    /// Checks that the assembled state is physical: all collective variances
    /// positive and both symplectic eigenvalues at least ħ/2.
    pub fn new(a: f64, b: f64, c: f64, n: usize, hbar: f64) -> Result<Self> {
        let sf = Self { a, b, c, n, hbar };
        sf.validate()?;
        Ok(sf)
    }

    fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::InvalidParams(format!("need at least 2 modes, got {}", self.n)));
        }
        let [xx, pp, uu, pipi] = self.collective();
        if !(xx > 0.0 && pp > 0.0 && uu > 0.0 && pipi > 0.0) {
            return Err(Error::InvalidParams("collective variances must be positive".into()));
        }
        let floor = self.hbar / 2.0 * (1.0 - BOUND_SLACK);
        let (nu_n, nu_d) = ((xx * pp).sqrt(), (uu * pipi).sqrt());
        if nu_n < floor || nu_d < floor {
            return Err(Error::InvalidParams(format!("symplectic eigenvalues {nu_n}, {nu_d} below hbar/2")));
        }
        Ok(())
    }

    fn collective(&self) -> [f64; 4] {
        let m = self.n as f64 - 1.0;
        [self.a + m * self.b, self.a + m * self.c, self.a - self.b, self.a - self.c]
    }

    /// The full 2N×2N covariance matrix.
    pub fn covariance(&self) -> Result<CovarianceMatrix> {
        let d = 2 * self.n;
        let mut sigma = vec![0.0; d * d];
        for i in 0..self.n {
            for j in 0..self.n {
                let (x, p) = if i == j { (self.a, self.a) } else { (self.b, self.c) };
                sigma[2 * i * d + 2 * j] = x;
                sigma[(2 * i + 1) * d + 2 * j + 1] = p;
            }
        }
        CovarianceMatrix::new(self.n, sigma, self.hbar)
    }
}

pub fn standard_to_params(sf: &StandardForm) -> Result<SymmetricParams> {
    sf.validate()?;
    let [xx, pp, uu, pipi] = sf.collective();
    let nu_d = (uu * pipi).sqrt();
    SymmetricParams::new(sf.n, nu_d, (xx * pp).sqrt() / nu_d, xx / uu, sf.hbar)
}

pub fn params_to_standard(p: &SymmetricParams) -> Result<StandardForm> {
    let (xx, pp, uu, pipi) = p.collective_variances();
    let n = p.n as f64;
    // p is already physical; at extreme r the differences a - b, a - c lose
    // digits to cancellation, so the rounded result is not revalidated.
    Ok(StandardForm {
        a: (xx + (n - 1.0) * uu) / n,
        b: (xx - uu) / n,
        c: (pp - pipi) / n,
        n: p.n,
        hbar: p.hbar,
    })
}

/// Two disjoint blocks of n₁ and n₂ modes out of N.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockSpec {
    #[serde(rename = "N")]
    n: usize,
    n1: usize,
    n2: usize,
}

impl BlockSpec {
    pub fn new(n: usize, n1: usize, n2: usize) -> Result<Self> {
        if n1 == 0 || n2 == 0 {
            return Err(Error::InvalidBlocks(format!("blocks must be nonempty, got {n1}|{n2}")));
        }
        if n1 + n2 > n {
            return Err(Error::InvalidBlocks(format!("{n1}+{n2} modes do not fit in {n}")));
        }
        Ok(Self { n, n1, n2 })
    }

    /// Blocks with the given total and difference; n_s − n_d must be even.
    pub fn from_sum_difference(n: usize, n_s: usize, n_d: usize) -> Result<Self> {
        if n_d >= n_s || (n_s - n_d) % 2 != 0 {
            return Err(Error::InvalidBlocks(format!("no blocks with n_s = {n_s}, n_d = {n_d}")));
        }
        Self::new(n, (n_s + n_d) / 2, (n_s - n_d) / 2)
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn n1(&self) -> usize {
        self.n1
    }
    pub fn n2(&self) -> usize {
        self.n2
    }
    pub fn n_s(&self) -> usize {
        self.n1 + self.n2
    }
    pub fn n_d(&self) -> usize {
        self.n1.abs_diff(self.n2)
    }

    fn check(&self, p: &SymmetricParams) -> Result<()> {
        if self.n != p.n {
            return Err(Error::InvalidBlocks(format!("blocks are for N = {}, state has N = {}", self.n, p.n)));
        }
        Ok(())
    }
}

/// Two-mode covariance after the local unitaries that gather all
/// correlations of each block into a single mode.
pub fn localize_blocks(p: &SymmetricParams, blocks: &BlockSpec) -> Result<CovarianceMatrix> {
    blocks.check(p)?;
    let (xx, pp, uu, pipi) = p.collective_variances();
    let n = p.n as f64;
    let alpha = |k: usize| {
        let k = k as f64;
        ((k * xx + (n - k) * uu) / n, (k * pp + (n - k) * pipi) / n)
    };
    let (x1, p1) = alpha(blocks.n1);
    let (x2, p2) = alpha(blocks.n2);
    let w = ((blocks.n1 * blocks.n2) as f64).sqrt() / n;
    let (bx, bp) = (w * (xx - uu), w * (pp - pipi));
    #[rustfmt::skip]
    let sigma = vec![
        x1, 0.0, bx, 0.0,
        0.0, p1, 0.0, bp,
        bx, 0.0, x2, 0.0,
        0.0, bp, 0.0, p2,
    ];
    CovarianceMatrix::new(2, sigma, p.hbar)
}

fn sum_diff(blocks: &BlockSpec) -> (f64, f64, f64) {
    (blocks.n as f64, blocks.n_s() as f64, blocks.n_d() as f64)
}

/// f = ν̃₋² of the localized pair, in closed form.
///
/// Written as 2ν_D² q/(p + √h), which equals ν_D²(p − √h)/(2N²r) because
/// p² − h = 4N²r·q. The rationalized form keeps full relative accuracy when
/// f → 0, as happens for n_s = N at small r.
pub fn f_block(p: &SymmetricParams, blocks: &BlockSpec) -> Result<f64> {
    blocks.check(p)?;
    let (n, ns, nd) = sum_diff(blocks);
    let (g2, r) = (p.gamma * p.gamma, p.r);
    let q = ns * (n - ns) * (g2 + r * r) + (n * n - 2.0 * n * ns + (1.0 + g2) * ns * ns) * r;
    let (lin, h) = f_terms(n, ns, nd, g2, r);
    Ok(2.0 * p.nu_d * p.nu_d * q / (lin + h.max(0.0).sqrt()))
}

/// The same f evaluated directly as ν_D²(p − √h)/(2N²r).
pub fn f_block_direct(p: &SymmetricParams, blocks: &BlockSpec) -> Result<f64> {
    blocks.check(p)?;
    let (n, ns, nd) = sum_diff(blocks);
    let (lin, h) = f_terms(n, ns, nd, p.gamma * p.gamma, p.r);
    Ok(p.nu_d * p.nu_d / (2.0 * n * n * p.r) * (lin - h.max(0.0).sqrt()))
}

/// (p, h) with f ∝ p − √h.
fn f_terms(n: f64, ns: f64, nd: f64, g2: f64, r: f64) -> (f64, f64) {
    let a = n * ns - nd * nd;
    let nd2 = nd * nd;
    let lin = a * r * r + (2.0 * n * n - 2.0 * n * ns + nd2 * (1.0 + g2)) * r + a * g2;
    let odd = 2.0 * nd2 * (2.0 * n * n + nd2 * (1.0 + g2) - n * ns * (3.0 + g2));
    let mid = n * n * (4.0 * nd2 * (1.0 + g2) - 2.0 * ns * ns * g2) + nd2 * nd2 * (g2 * g2 + 4.0 * g2 + 1.0)
        - 4.0 * n * ns * nd2 * (1.0 + 2.0 * g2);
    let h = a * a * r.powi(4) - odd * r.powi(3) + mid * r * r - odd * g2 * r + a * a * g2 * g2;
    (lin, h)
}

/// ½ log max(ħ²/(4f), 1). Ratios within rounding of 1 count as exactly 1,
/// so states on the separability boundary report exactly zero.
pub(crate) fn log_negativity_from_f(f: f64, hbar: f64, base: LogBase) -> f64 {
    let ratio = hbar * hbar / (4.0 * f);
    if ratio <= 1.0 + 4.0 * f64::EPSILON {
        0.0
    } else {
        0.5 * base.log(ratio)
    }
}

pub fn block_log_negativity(p: &SymmetricParams, blocks: &BlockSpec, base: LogBase) -> Result<f64> {
    Ok(log_negativity_from_f(f_block(p, blocks)?, p.hbar, base))
}

/// (ħ/(2ν̃₋) − 1)/2, clamped at zero.
pub fn block_negativity(p: &SymmetricParams, blocks: &BlockSpec) -> Result<f64> {
    let ratio = p.hbar / (2.0 * f_block(p, blocks)?.sqrt());
    Ok(if ratio <= 1.0 + 4.0 * f64::EPSILON { 0.0 } else { (ratio - 1.0) / 2.0 })
}

/// lim f as r → 0 or r → ∞: ν_D²(N n_s − n_s²)/(N n_s − n_d²), independent of γ.
pub fn boundary_limit(nu_d: f64, blocks: &BlockSpec) -> f64 {
    let (n, ns, nd) = sum_diff(blocks);
    nu_d * nu_d * (n * ns - ns * ns) / (n * ns - nd * nd)
}

/// f at its only critical point r = γ.
pub fn critical_value(nu_d: f64, gamma: f64, blocks: &BlockSpec) -> f64 {
    let (n, ns, nd) = sum_diff(blocks);
    let x = gamma - 1.0;
    let root = (4.0 * n * n + 4.0 * n * ns * x + nd * nd * x * x).max(0.0).sqrt();
    nu_d * nu_d / (2.0 * n * n) * (2.0 * n * n + 2.0 * n * ns * x + nd * nd * x * x - nd * x.abs() * root)
}

/// Block log-negativity for every n_d < n_s of the same parity as n_s,
/// in increasing n_d.
pub fn entanglement_vs_nd(p: &SymmetricParams, n_s: usize, base: LogBase) -> Result<Vec<(usize, f64)>> {
    if n_s < 2 || n_s > p.n {
        return Err(Error::InvalidParams(format!("n_s = {n_s} must lie in 2..={}", p.n)));
    }
    (n_s % 2..n_s)
        .step_by(2)
        .map(|nd| {
            let b = BlockSpec::from_sum_difference(p.n, n_s, nd)?;
            Ok((nd, block_log_negativity(p, &b, base)?))
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Purities {
    pub global: f64,
    /// Single mode.
    pub mu1: f64,
    /// Any two modes.
    pub mu2: f64,
}

/// μ = (ħ/2)^N/(ν_N ν_D^{N−1}), μ₁ = ħ/(2a), μ₂ = (ħ/2)²/√det σ₂.
pub fn purity(p: &SymmetricParams) -> Result<Purities> {
    let q = p.hbar / (2.0 * p.nu_d);
    let global = q.powi(p.n as i32 - 1) * (p.hbar / (2.0 * p.nu_n()));
    let sf = params_to_standard(p)?;
    let det2 = (sf.a * sf.a - sf.b * sf.b) * (sf.a * sf.a - sf.c * sf.c);
    Ok(Purities { global, mu1: p.hbar / (2.0 * sf.a), mu2: p.hbar * p.hbar / 4.0 / det2.sqrt() })
}
