use std::path::Path;

use negacap::entcap::{
    convex_split, ec_bounds_deterministic, ec_bounds_with_split, negative_part_adjoint, BoundOptions, EcBounds,
};
use negacap::families::Family;
use negacap::linalg::{operator_norm, trace_norm};
use negacap::Channel;
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use super::{eigen_range, family_of, mixture, read_input};
use crate::error::CliResult;
use crate::grid::Grid;
use crate::output::{Output, Table};
use crate::{Ctx, SweepFamily};

fn options(ctx: &Ctx) -> BoundOptions {
    BoundOptions { tol: ctx.tol, ..BoundOptions::with_base(ctx.base) }
}

pub fn analyze(ctx: &Ctx, file: &Path) -> CliResult<Output> {
    let ch = Channel::from_json(&read_input(file)?)?;
    let (d_in, d_out) = (ch.in_dims(), ch.out_dims());
    let (hp, cp, tp) = (ch.is_hp(ctx.tol), ch.is_cp(ctx.tol), ch.is_tp(ctx.tol));
    let pt = ch.partial_transpose();
    let mut r = Map::new();
    r.insert("in_dims".into(), json!([d_in.d_a(), d_in.d_b()]));
    r.insert("out_dims".into(), json!([d_out.d_a(), d_out.d_b()]));
    r.insert("hermiticity_preserving".into(), json!(hp));
    r.insert("completely_positive".into(), json!(cp));
    r.insert("trace_preserving".into(), json!(tp));
    r.insert("ppt".into(), json!(hp && pt.is_cp(ctx.tol)));
    r.insert("gamma_norm".into(), json!(trace_norm(pt.choi())?));
    if hp {
        let m = negative_part_adjoint(&ch)?;
        let (lo, hi) = eigen_range(&m)?;
        r.insert(
            "negative_part_adjoint".into(),
            json!({"trace_norm": trace_norm(&m)?, "operator_norm": operator_norm(&m)?, "min_eigenvalue": lo, "max_eigenvalue": hi}),
        );
    }
    match ec_bounds_deterministic(&ch, &options(ctx)) {
        Ok(b) => {
            r.insert("perfect_entangler".into(), json!(d_in == d_out && b.is_perfect_entangler(d_in, ctx.tol)));
            r.insert("bounds".into(), serde_json::to_value(b)?);
        }
        Err(e) => {
            r.insert("perfect_entangler".into(), Value::Null);
            r.insert("bounds".into(), Value::Null);
            r.insert("error".into(), json!(e.to_string()));
        }
    }
    Ok(Output::report(r))
}

fn bound_columns(b: &EcBounds) -> [f64; 5] {
    [b.lower_n, b.upper_n_coefficient, b.upper_n_max, b.lower_l, b.upper_l]
}

fn rotation_row(ctx: &Ctx, family: Family, alpha: f64, beta: f64) -> CliResult<Vec<f64>> {
    let ch = family.channel(alpha, beta);
    let b = ec_bounds_deterministic(&ch, &options(ctx))?;
    let (lo, hi) = eigen_range(&negative_part_adjoint(&ch)?)?;
    let mut row = vec![alpha, beta];
    row.extend(bound_columns(&b));
    row.extend([lo, hi]);
    Ok(row)
}

fn mix_row(ctx: &Ctx, pair: Family, p: f64) -> CliResult<Vec<f64>> {
    let mixed = mixture(pair, p)?;
    let opts = options(ctx);
    let joint = ec_bounds_deterministic(&mixed, &opts)?;
    let (s1, s2) = negacap::families::mixture_pair(pair);
    let convex = ec_bounds_with_split(&mixed, &convex_split(&[s1, s2], &[p, 1.0 - p])?, &opts)?;
    let (lo, hi) = eigen_range(&negative_part_adjoint(&mixed)?)?;
    Ok(vec![
        p,
        joint.lower_n,
        joint.lower_l,
        joint.upper_n_coefficient,
        convex.upper_n_coefficient,
        joint.upper_l,
        convex.upper_l,
        lo,
        hi,
    ])
}

pub fn sweep(ctx: &Ctx, family: SweepFamily, alpha: &Grid, beta: &Grid, p: &Grid, pair: Family) -> CliResult<Output> {
    let table = match family_of(family) {
        Some(f) => {
            let points: Vec<(f64, f64)> =
                alpha.linear().into_iter().flat_map(|a| beta.linear().into_iter().map(move |b| (a, b))).collect();
            let rows = points.par_iter().map(|&(a, b)| rotation_row(ctx, f, a, b)).collect::<CliResult<Vec<_>>>()?;
            Table {
                headers: vec![
                    "alpha", "beta", "lower_n", "upper_n_coefficient", "upper_n_max", "lower_l", "upper_l", "min_eig",
                    "max_eig",
                ],
                rows,
            }
        }
        None => {
            let rows = p.linear().par_iter().map(|&w| mix_row(ctx, pair, w)).collect::<CliResult<Vec<_>>>()?;
            Table {
                headers: vec![
                    "p",
                    "lower_n",
                    "lower_l",
                    "joint_upper_n_coefficient",
                    "convex_upper_n_coefficient",
                    "joint_upper_l",
                    "convex_upper_l",
                    "min_eig",
                    "max_eig",
                ],
                rows,
            }
        }
    };
    Ok(Output::Table(table))
}

pub fn builtin(family: SweepFamily, alpha: f64, beta: f64, p: f64, pair: Family) -> CliResult<Output> {
    let ch = match family_of(family) {
        Some(f) => f.channel(alpha, beta),
        None => mixture(pair, p)?,
    };
    Ok(Output::Raw(ch.to_json()))
}
