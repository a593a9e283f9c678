use negacap::entcap::{
    density_from_vector, ec_bounds_deterministic, log_negativity, negativity, BoundOptions,
};
use negacap::linalg::{partial_transpose, trace_norm, BipartiteDims, Subsystem};
use negacap::random;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Map};

use crate::error::CliResult;
use crate::output::Output;
use crate::Ctx;

/// Largest (gain − bound) for the negativity and log-negativity bounds, and
/// (lower − upper) for the capacity bounds themselves.
fn trial(ctx: &Ctx, seed: u64, index: u64) -> CliResult<[f64; 3]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let shapes = [(2, 2), (2, 3), (3, 2)];
    let (a, b) = shapes[rng.random_range(0..shapes.len())];
    let d = BipartiteDims::new(a, b)?;
    let ch = random::channel(d, d, rng.random_range(1..=3), &mut rng);
    let rho = if rng.random_bool(0.5) {
        random::density(d.total(), &mut rng)
    } else {
        density_from_vector(&random::pure_state(d.total(), &mut rng))
    };
    let bounds = ec_bounds_deterministic(&ch, &BoundOptions { tol: ctx.tol, ..BoundOptions::with_base(ctx.base) })?;
    let out = ch.apply(&rho)?;
    let rho_pt = trace_norm(&partial_transpose(&rho, d, Subsystem::A)?)?;
    let gain_n = negativity(&out, d)? - negativity(&rho, d)?;
    let gain_l = log_negativity(&out, d, ctx.base)? - log_negativity(&rho, d, ctx.base)?;
    Ok([
        gain_n - bounds.upper_n_coefficient * rho_pt,
        gain_l - bounds.upper_l,
        (bounds.lower_l - bounds.upper_l).max(bounds.lower_n - bounds.upper_n_max),
    ])
}

pub fn run(ctx: &Ctx, seed: u64, trials: u64) -> CliResult<Output> {
    let slack = (0..trials).into_par_iter().map(|i| trial(ctx, seed, i)).collect::<CliResult<Vec<_>>>()?;
    let worst = |k: usize| slack.iter().map(|s| s[k]).fold(f64::NEG_INFINITY, f64::max);
    let violations = slack.iter().filter(|s| s.iter().any(|&x| x > ctx.tol)).count();
    let mut r = Map::new();
    r.insert("seed".into(), json!(seed));
    r.insert("trials".into(), json!(trials));
    r.insert("violations".into(), json!(violations));
    r.insert("max_negativity_excess".into(), json!(worst(0)));
    r.insert("max_log_negativity_excess".into(), json!(worst(1)));
    r.insert("max_lower_minus_upper".into(), json!(worst(2)));
    Ok(Output::report(r))
}
