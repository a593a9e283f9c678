use std::path::Path;

use negacap::gaussian::{
    block_log_negativity, block_negativity, boundary_limit, critical_value, f_block, is_valid_state,
    localize_blocks, log_negativity_gaussian, params_to_standard, purity, sup_block_entanglement, sup_gap_ratio,
    symplectic_eigenvalues, two_mode_invariants, BlockSpec, CovarianceMatrix, Measure, SupResult, SymmetricParams,
};
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use super::read_input;
use crate::error::{CliError, CliResult};
use crate::grid::Grid;
use crate::output::{Output, Table};
use crate::Ctx;

fn sup_value(s: SupResult) -> Value {
    match s {
        SupResult::Finite { value } => json!(value),
        SupResult::Unbounded => json!("unbounded"),
    }
}

pub fn sup(ctx: &Ctx, n: usize, n1: usize, n2: usize, nu_d: Option<f64>, measure: Measure) -> CliResult<Output> {
    let blocks = BlockSpec::new(n, n1, n2)?;
    let s = sup_block_entanglement(&blocks, measure, ctx.base, nu_d, ctx.hbar)?;
    let mut r = Map::new();
    r.insert("N".into(), json!(n));
    r.insert("n1".into(), json!(n1));
    r.insert("n2".into(), json!(n2));
    r.insert("n_s".into(), json!(blocks.n_s()));
    r.insert("n_d".into(), json!(blocks.n_d()));
    r.insert("measure".into(), serde_json::to_value(measure)?);
    r.insert("base".into(), json!(ctx.base.to_string()));
    r.insert("nu_D".into(), json!(nu_d));
    r.insert("gap_ratio".into(), sup_gap_ratio(&blocks).map(|k| json!(k)).unwrap_or(Value::Null));
    r.insert("sup".into(), sup_value(s));
    Ok(Output::report(r))
}

#[allow(clippy::too_many_arguments)]
pub fn sweep(
    ctx: &Ctx,
    n: usize,
    n1: usize,
    n2: usize,
    nu_d: Option<f64>,
    gamma: &Grid,
    r: &Grid,
    linear_r: bool,
) -> CliResult<Output> {
    let blocks = BlockSpec::new(n, n1, n2)?;
    let nu_d = nu_d.unwrap_or(ctx.hbar / 2.0);
    let rs = if linear_r { r.linear() } else { r.logarithmic().map_err(CliError::Validation)? };
    let points: Vec<(f64, f64)> = gamma.linear().into_iter().flat_map(|g| rs.iter().map(move |&r| (g, r))).collect();
    let rows = points
        .par_iter()
        .map(|&(g, r)| {
            let p = SymmetricParams::new(n, nu_d, g, r, ctx.hbar)?;
            Ok(vec![
                g,
                r,
                f_block(&p, &blocks)?,
                block_log_negativity(&p, &blocks, ctx.base)?,
                block_negativity(&p, &blocks)?,
            ])
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok(Output::Table(Table { headers: vec!["gamma", "r", "f", "e_l", "e_n"], rows }))
}

pub fn analyze(ctx: &Ctx, file: &Path, flip: Option<Vec<usize>>) -> CliResult<Output> {
    let cov: CovarianceMatrix = serde_json::from_str(&read_input(file)?)?;
    let n = cov.n_modes();
    let flip = flip.unwrap_or_else(|| vec![n - 1]);
    let nu = symplectic_eigenvalues(&cov)?;
    let valid = is_valid_state(&cov);
    let det = cov.determinant();
    let mut r = Map::new();
    r.insert("n_modes".into(), json!(n));
    r.insert("hbar".into(), json!(cov.hbar()));
    r.insert("symplectic_eigenvalues".into(), json!(nu));
    r.insert("valid_state".into(), json!(valid));
    r.insert("determinant".into(), json!(det));
    r.insert("purity".into(), json!((cov.hbar() / 2.0).powi(n as i32) / det.sqrt()));
    r.insert("flipped_modes".into(), json!(flip));
    let el = if valid { json!(log_negativity_gaussian(&cov, &flip, ctx.base)?) } else { Value::Null };
    r.insert("log_negativity".into(), el);
    if n == 2 {
        r.insert("two_mode".into(), serde_json::to_value(two_mode_invariants(&cov)?)?);
    }
    Ok(Output::report(r))
}

pub fn block(ctx: &Ctx, file: &Path, n1: usize, n2: usize) -> CliResult<Output> {
    let p: SymmetricParams = serde_json::from_str(&read_input(file)?)?;
    let blocks = BlockSpec::new(p.n(), n1, n2)?;
    let sf = params_to_standard(&p)?;
    let local = localize_blocks(&p, &blocks)?;
    let mut r = Map::new();
    r.insert("params".into(), serde_json::to_value(p)?);
    r.insert("standard_form".into(), serde_json::to_value(sf)?);
    r.insert("n_s".into(), json!(blocks.n_s()));
    r.insert("n_d".into(), json!(blocks.n_d()));
    r.insert("f".into(), json!(f_block(&p, &blocks)?));
    r.insert("f_boundary".into(), json!(boundary_limit(p.nu_d(), &blocks)));
    r.insert("f_critical".into(), json!(critical_value(p.nu_d(), p.gamma(), &blocks)));
    r.insert("log_negativity".into(), json!(block_log_negativity(&p, &blocks, ctx.base)?));
    r.insert("negativity".into(), json!(block_negativity(&p, &blocks)?));
    r.insert("localized_covariance".into(), serde_json::to_value(&local)?);
    r.insert("nu_tilde_minus".into(), json!(two_mode_invariants(&local)?.nu_tilde_minus));
    r.insert("purity".into(), serde_json::to_value(purity(&p)?)?);
    let s = sup_block_entanglement(&blocks, Measure::LogNegativity, ctx.base, None, p.hbar())?;
    r.insert("sup_log_negativity".into(), sup_value(s));
    Ok(Output::report(r))
}
