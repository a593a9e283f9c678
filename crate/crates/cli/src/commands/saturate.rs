use std::path::Path;

use negacap::entcap::{
    density_from_vector, ec_bounds_deterministic, log_negativity, negative_part_adjoint, negativity,
    saturation_check, BoundOptions,
};
use negacap::families::Family;
use negacap::linalg::ComplexMatrix;
use negacap::Channel;
use serde_json::{json, Map};

use super::{eigen_range, read_input};
use crate::error::{CliError, CliResult};
use crate::output::Output;
use crate::Ctx;

fn load_state(path: &Path) -> CliResult<ComplexMatrix> {
    let m: ComplexMatrix = serde_json::from_str(&read_input(path)?)?;
    Ok(if m.cols() == 1 { density_from_vector(&m.column(0)) } else { m })
}

pub fn run(
    ctx: &Ctx,
    channel: Option<&Path>,
    builtin: Option<Family>,
    alpha: f64,
    beta: f64,
    state: Option<&Path>,
) -> CliResult<Output> {
    let ch = match (channel, builtin) {
        (Some(p), _) => Channel::from_json(&read_input(p)?)?,
        (None, Some(f)) => f.channel(alpha, beta),
        (None, None) => return Err(CliError::Validation("give a channel file or --builtin".into())),
    };
    let opts = BoundOptions { tol: ctx.tol, ..BoundOptions::with_base(ctx.base) };
    let bounds = ec_bounds_deterministic(&ch, &opts)?;
    let (lo, hi) = eigen_range(&negative_part_adjoint(&ch)?)?;
    let mut r = Map::new();
    r.insert("upper_l".into(), json!(bounds.upper_l));
    r.insert("min_eig".into(), json!(lo));
    r.insert("max_eig".into(), json!(hi));
    match state {
        Some(path) => {
            let rho = load_state(path)?;
            let report = saturation_check(&ch, &rho)?;
            let out = ch.apply(&rho)?;
            r.insert("report".into(), serde_json::to_value(report)?);
            r.insert("output_negativity".into(), json!(negativity(&out, ch.out_dims())?));
            r.insert("output_log_negativity".into(), json!(log_negativity(&out, ch.out_dims(), ctx.base)?));
        }
        None => {
            r.insert("prop_identity".into(), json!(hi - lo <= ctx.tol * hi.abs().max(1.0)));
            r.insert("minus_part_zero".into(), json!(hi.abs() <= ctx.tol));
            if let Some(s) = builtin.and_then(Family::known_solutions) {
                r.insert("known_solutions".into(), json!(s));
            }
        }
    }
    Ok(Output::report(r))
}
