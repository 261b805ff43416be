//! Checks (I1)–(I5) for each measure over the configured parameter grid.

use rand::Rng as _;

use super::instances;
use super::{TrialCtx, TrialFn, TrialOutcome};
use crate::channels::{apply_channel, selective_measurement};
use crate::error::{Error, Result};
use crate::measures::{MeasureId, MeasureParams, MeasureValue, ParameterGrid, PreparedState};
use crate::states::{direct_sum_mix, is_real_state, DensityMatrix, StateEnsemble};

const MAX_REDRAWS: usize = 64;
/// Outcome mass lost below the probability floor that forces a redraw.
const DROPPED_MASS_LIMIT: f64 = 1e-9;

pub(super) fn trial_fn(m: MeasureId, axiom: &str) -> Option<TrialFn> {
    let idx = MeasureId::ALL.iter().position(|&x| x == m)?;
    let table: [[TrialFn; 5]; 4] = [
        [i1::<0>, i2::<0>, i3::<0>, i4::<0>, i5::<0>],
        [i1::<1>, i2::<1>, i3::<1>, i4::<1>, i5::<1>],
        [i1::<2>, i2::<2>, i3::<2>, i4::<2>, i5::<2>],
        [i1::<3>, i2::<3>, i3::<3>, i4::<3>, i5::<3>],
    ];
    let a = ["I1", "I2", "I3", "I4", "I5"].iter().position(|&x| x == axiom)?;
    Some(table[idx][a])
}

fn values(m: MeasureId, rho: &DensityMatrix, grid: &ParameterGrid) -> Result<Vec<f64>> {
    let p = PreparedState::new(rho);
    grid.points(&[m])
        .into_iter()
        .map(|(m, params)| match p.evaluate(m, params)? {
            MeasureValue::Value(v) => Ok(v),
            MeasureValue::Undefined(r) => Err(Error::Domain(r)),
        })
        .collect()
}

fn params_label(p: MeasureParams) -> String {
    match p {
        MeasureParams::None => String::new(),
        MeasureParams::AlphaZ(az) => format!("alpha={} z={}", az.alpha(), az.z()),
        MeasureParams::Q(q) => format!("q={q}"),
        MeasureParams::Lambda(l) => format!("lambda={l}"),
    }
}

/// Minimum slack over the grid and the parameter where it occurs.
fn worst(m: MeasureId, grid: &ParameterGrid, slacks: impl IntoIterator<Item = f64>) -> (f64, String) {
    let points = grid.points(&[m]);
    let mut best = (f64::INFINITY, String::new());
    for (s, (_, p)) in slacks.into_iter().zip(points) {
        if s < best.0 || s.is_nan() {
            best = (s, params_label(p));
        }
    }
    best
}

fn draw(ctx: &mut TrialCtx<'_>, pd: bool) -> Result<DensityMatrix> {
    instances::state(&mut ctx.rng, ctx.dim, pd)
}

fn redraw_exhausted() -> Error {
    Error::Domain(format!("no admissible instance after {MAX_REDRAWS} draws"))
}

/// Faithfulness and range: zero on real states, positive otherwise, at most
/// one for the bounded measures.
fn i1<const M: usize>(ctx: &mut TrialCtx<'_>) -> Result<TrialOutcome> {
    let m = MeasureId::ALL[M];
    let pd = m == MeasureId::Operator;
    let rho = if ctx.index.is_multiple_of(2) {
        instances::real_state(&mut ctx.rng, ctx.dim, pd)?
    } else {
        draw(ctx, pd)?
    };
    let vals = values(m, &rho, &ctx.cfg.grid)?;
    let tol = ctx.cfg.tolerance;
    let real = is_real_state(&rho, 1e-9);
    let bounded = m != MeasureId::Umegaki;
    let slacks = vals.iter().map(|&v| {
        let zero = if real { -v.abs() } else { v - 2.0 * tol };
        if bounded {
            zero.min(1.0 - v)
        } else {
            zero
        }
    });
    let (margin, at) = worst(m, &ctx.cfg.grid, slacks);
    Ok(TrialOutcome::slack(margin, format!("real={real} {at}")))
}

/// Monotonicity under real operations.
fn i2<const M: usize>(ctx: &mut TrialCtx<'_>) -> Result<TrialOutcome> {
    let m = MeasureId::ALL[M];
    let pd = m == MeasureId::Operator;
    for _ in 0..MAX_REDRAWS {
        let rho = draw(ctx, pd)?;
        let op = instances::real_operation(&mut ctx.rng, ctx.dim)?;
        let out = apply_channel(&op, &rho)?;
        if pd && !out.is_positive_definite() {
            continue;
        }
        let before = values(m, &rho, &ctx.cfg.grid)?;
        let after = values(m, &out, &ctx.cfg.grid)?;
        let (margin, at) = worst(m, &ctx.cfg.grid, before.iter().zip(&after).map(|(b, a)| b - a));
        return Ok(TrialOutcome::slack(
            margin,
            format!("kraus={} {at}", op.operators().len()),
        ));
    }
    Err(redraw_exhausted())
}

/// Average monotonicity under selective real operations.
fn i3<const M: usize>(ctx: &mut TrialCtx<'_>) -> Result<TrialOutcome> {
    let m = MeasureId::ALL[M];
    let pd = m == MeasureId::Operator;
    for _ in 0..MAX_REDRAWS {
        let rho = draw(ctx, pd)?;
        let op = instances::real_operation(&mut ctx.rng, ctx.dim)?;
        let sel = selective_measurement(&op, &rho)?;
        if sel.dropped_mass > DROPPED_MASS_LIMIT {
            continue;
        }
        if pd && sel.outcomes.iter().any(|(_, s)| !s.is_positive_definite()) {
            continue;
        }
        let kept: f64 = sel.outcomes.iter().map(|(p, _)| p).sum();
        let before = values(m, &rho, &ctx.cfg.grid)?;
        let mut avg = vec![0.0; before.len()];
        for (p, s) in &sel.outcomes {
            for (acc, v) in avg.iter_mut().zip(values(m, s, &ctx.cfg.grid)?) {
                *acc += p / kept * v;
            }
        }
        let (margin, at) = worst(m, &ctx.cfg.grid, before.iter().zip(&avg).map(|(b, a)| b - a));
        return Ok(TrialOutcome::slack(
            margin,
            format!("kraus={} outcomes={} {at}", op.operators().len(), sel.outcomes.len()),
        ));
    }
    Err(redraw_exhausted())
}

/// Convexity.
fn i4<const M: usize>(ctx: &mut TrialCtx<'_>) -> Result<TrialOutcome> {
    let m = MeasureId::ALL[M];
    let pd = m == MeasureId::Operator;
    let k = ctx.rng.random_range(2..=4);
    let states = (0..k).map(|_| draw(ctx, pd)).collect::<Result<Vec<_>>>()?;
    let w = instances::weights(&mut ctx.rng, k);
    let ens = StateEnsemble::new(w.clone(), states)?;
    let mixed = values(m, &ens.average(), &ctx.cfg.grid)?;
    let mut avg = vec![0.0; mixed.len()];
    for (p, s) in w.iter().zip(ens.states()) {
        for (acc, v) in avg.iter_mut().zip(values(m, s, &ctx.cfg.grid)?) {
            *acc += p * v;
        }
    }
    let (margin, at) = worst(m, &ctx.cfg.grid, avg.iter().zip(&mixed).map(|(a, x)| a - x));
    Ok(TrialOutcome::slack(margin, format!("components={k} {at}")))
}

/// Block additivity `M(p₁ρ₁ ⊕ p₂ρ₂) = p₁M(ρ₁) + p₂M(ρ₂)`.
fn i5<const M: usize>(ctx: &mut TrialCtx<'_>) -> Result<TrialOutcome> {
    let m = MeasureId::ALL[M];
    let pd = m == MeasureId::Operator;
    let d2 = ctx.rng.random_range(1..=ctx.dim);
    let p1: f64 = ctx.rng.random_range(0.05..0.95);
    let r1 = draw(ctx, pd)?;
    let r2 = instances::state(&mut ctx.rng, d2, pd)?;
    let sum = direct_sum_mix(p1, &r1, 1.0 - p1, &r2)?;
    let v = values(m, &sum, &ctx.cfg.grid)?;
    let v1 = values(m, &r1, &ctx.cfg.grid)?;
    let v2 = values(m, &r2, &ctx.cfg.grid)?;
    let slacks = (0..v.len()).map(|k| -(v[k] - p1 * v1[k] - (1.0 - p1) * v2[k]).abs());
    let (margin, at) = worst(m, &ctx.cfg.grid, slacks);
    Ok(TrialOutcome::slack(margin, format!("dims={}+{d2} p1={p1:.6} {at}", ctx.dim)))
}
