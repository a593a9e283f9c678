use std::str::FromStr;

use serde::Serialize;

use super::symmetric::BlockSpec;
use crate::entcap::LogBase;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Measure {
    #[serde(rename = "logneg")]
    LogNegativity,
    #[serde(rename = "neg")]
    Negativity,
}

impl FromStr for Measure {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "logneg" => Ok(Measure::LogNegativity),
            "neg" => Ok(Measure::Negativity),
            other => Err(Error::Parse(format!("measure must be logneg or neg, got {other:?}"))),
        }
    }
}

/// Supremum over all symmetric states. Blocks covering every mode can be
/// made arbitrarily entangled, which is reported as its own variant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SupResult {
    Finite { value: f64 },
    Unbounded,
}

impl SupResult {
    pub fn value(&self) -> Option<f64> {
        match self {
            SupResult::Finite { value } => Some(*value),
            SupResult::Unbounded => None,
        }
    }
}

/// K = (n_s² − n_d²)/(n_s(N − n_s)).
pub fn sup_gap_ratio(blocks: &BlockSpec) -> Result<f64> {
    let (n, ns, nd) = (blocks.n() as f64, blocks.n_s() as f64, blocks.n_d() as f64);
    if blocks.n_s() == blocks.n() {
        return Err(Error::InvalidBlocks("K is unbounded when the blocks cover all modes".into()));
    }
    Ok((ns * ns - nd * nd) / (ns * (n - ns)))
}

/// Largest K over all block pairs with n_s < N, and the maximizing blocks.
pub fn max_gap_ratio(n: usize) -> Result<(f64, BlockSpec)> {
    let mut best: Option<(f64, BlockSpec)> = None;
    for n1 in 1..n {
        for n2 in 1..=n1.min(n - 1 - n1) {
            let b = BlockSpec::new(n, n1, n2)?;
            let k = sup_gap_ratio(&b)?;
            if best.map_or(true, |(v, _)| k > v) {
                best = Some((k, b));
            }
        }
    }
    best.ok_or_else(|| Error::InvalidBlocks(format!("no block pair with n_s < N for N = {n}")))
}

/// sup E_L = ½ log(1 + K), sup E_N = ½(√(1 + K) − 1). With ν_D fixed the
/// argument 1 + K gains a factor ħ²/(4ν_D²) and the result is clamped at 0.
pub fn sup_block_entanglement(
    blocks: &BlockSpec,
    measure: Measure,
    base: LogBase,
    nu_d: Option<f64>,
    hbar: f64,
) -> Result<SupResult> {
    if let Some(v) = nu_d {
        if !(v >= hbar / 2.0) {
            return Err(Error::InvalidParams(format!("nu_D = {v} is below hbar/2")));
        }
    }
    if blocks.n_s() == blocks.n() {
        return Ok(SupResult::Unbounded);
    }
    let scale = nu_d.map_or(1.0, |v| hbar * hbar / (4.0 * v * v));
    let arg = scale * (1.0 + sup_gap_ratio(blocks)?);
    let value = match measure {
        Measure::LogNegativity => 0.5 * base.log(arg),
        Measure::Negativity => 0.5 * (arg.sqrt() - 1.0),
    };
    Ok(SupResult::Finite { value: value.max(0.0) })
}
