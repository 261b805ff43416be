//! Theorem and lemma checks.

use rand::Rng as _;

use super::instances;
use super::{TrialCtx, TrialFn, TrialOutcome};
use crate::error::{Error, Result};
use crate::matrixfn::{
    deformed_log_scalar, geometric_path, loewner_slack, matrix_power, max_abs, trace_power, weighted_geometric_mean,
    HermitianMatrix,
};
use crate::measures::{f_alpha_z, tsallis_relative_operator_entropy, AZParams, PreparedState};
use crate::states::{random_real_orthogonal, random_unitary, tensor_product, to_complex, DensityMatrix};

const MAX_REDRAWS: usize = 64;

/// Check function and whether it is an equality (tight tolerance).
pub(super) fn trial_fn(id: &str) -> Option<(TrialFn, bool)> {
    let entry: (TrialFn, bool) = match id {
        "lemma-1-1" => (lemma_1_1, true),
        "lemma-1-2" => (lemma_1_2, true),
        "lemma-2-lower" => (lemma_2_lower, false),
        "lemma-2-upper" => (lemma_2_upper, false),
        "lemma-2-faithfulness" => (lemma_2_faithfulness, false),
        "lemma-3" => (lemma_3, false),
        "theorem-2-1" => (theorem_2_1, true),
        "theorem-2-1-divergence" => (theorem_2_1_divergence, true),
        "theorem-2-1-orthogonal" => (theorem_2_1_orthogonal, true),
        "theorem-2-2" => (theorem_2_2, false),
        "theorem-2-2-factorization" => (theorem_2_2_factorization, true),
        "theorem-3-1" => (theorem_3_1, true),
        "theorem-3-2" => (theorem_3_2, false),
        "theorem-3-3" => (theorem_3_3, false),
        "theorem-4-1" => (theorem_4_1, true),
        "theorem-4-2" => (theorem_4_2, false),
        "theorem-5-chain" => (theorem_5_chain, false),
        "theorem-5-collapse" => (theorem_5_collapse, true),
        "theorem-6" => (theorem_6, false),
        "theorem-8-chain" => (theorem_8_chain, false),
        "theorem-8-collapse" => (theorem_8_collapse, true),
        _ => return None,
    };
    Some(entry)
}

/// Running minimum with a label for the argmin.
struct Worst {
    margin: f64,
    at: String,
}

impl Worst {
    fn new() -> Self {
        Self {
            margin: f64::INFINITY,
            at: String::new(),
        }
    }

    fn see(&mut self, slack: f64, at: impl FnOnce() -> String) {
        if slack < self.margin || slack.is_nan() {
            self.margin = slack;
            self.at = at();
        }
    }

    fn outcome(self, prefix: String) -> TrialOutcome {
        TrialOutcome::slack(self.margin, format!("{prefix} {}", self.at).trim().to_string())
    }
}

fn grid_alphas(ctx: &TrialCtx<'_>) -> Vec<f64> {
    let mut a: Vec<f64> = ctx.cfg.grid.alpha_z.iter().map(|p| p.alpha()).collect();
    a.sort_by(f64::total_cmp);
    a.dedup();
    a
}

/// Grid alphas for which `z = α` lies in the parameter domain.
fn diagonal_alphas(ctx: &TrialCtx<'_>) -> Vec<AZParams> {
    grid_alphas(ctx).into_iter().filter_map(|a| AZParams::diagonal(a).ok()).collect()
}

fn sorted_q(ctx: &TrialCtx<'_>) -> Vec<f64> {
    let mut q = ctx.cfg.grid.q.clone();
    q.sort_by(f64::total_cmp);
    q.dedup();
    q
}

fn az_label(p: AZParams) -> String {
    format!("alpha={} z={}", p.alpha(), p.z())
}

// Trace inequalities on PSD pairs.

fn lemma_1_1(ctx: &mut TrialCtx<'_>) -> Result<TrialOutcome> {
    let a = instances::state(&mut ctx.rng, ctx.dim, false)?;
    let b = instances::state(&mut ctx.rng, ctx.dim, false)?;
    let t: f64 = ctx.rng.random_range(0.05..0.95);
    let s = (1.0 - t) / (2.0 * t);
    let a_s = matrix_power(a.hermitian(), s)?;
    let lhs = trace_power(&b.hermitian().congruence(a_s.matrix()), t)?;
    let rhs = (1.0 - t) * a.hermitian().trace() + t * b.hermitian().trace();
    Ok(TrialOutcome::slack(rhs - lhs, format!("t={t:.6}")))
}

fn lemma_1_2(ctx: &mut TrialCtx<'_>) -> Result<TrialOutcome> {
    let ca: f64 = ctx.rng.random_range(0.5..2.0);
    let cb: f64 = ctx.rng.random_range(0.5..2.0);
    let a = instances::state(&mut ctx.rng, ctx.dim, false)?.hermitian().scale(ca);
    let b = instances::state(&mut ctx.rng, ctx.dim, false)?.hermitian().scale(cb);
    let r: f64 = ctx.rng.random_range(1.0..3.0);
    let q: f64 = ctx.rng.random_range(0.25..2.0);
    let ar = matrix_power(&a, r)?;
    let br = matrix_power(&b, r)?;
    let lhs = trace_power(&br.congruence(ar.matrix()), q)?;
    let rhs = trace_power(&b.congruence(a.matrix()), r * q)?;
    Ok(TrialOutcome::slack(lhs - rhs, format!("r={r:.6} q={q:.6}")))
}

// Operator bounds for T_λ.

const LEMMA_2_A: [f64; 3] = [0.5, 1.0, 2.0];

struct Lemma2Instance {
    delta: DensityMatrix,
    eta: DensityMatrix,
    lam: f64,
    t: HermitianMatrix,
    mean: HermitianMatrix,
}

fn lemma_2_instance(ctx: &mut TrialCtx<'_>) -> Result<Lemma2Instance> {
    let delta = instances::state(&mut ctx.rng, ctx.dim, true)?;
    let eta = instances::state(&mut ctx.rng, ctx.dim, true)?;
    let lam: f64 = ctx.rng.random_range(0.05..=1.0);
    let t = tsallis_relative_operator_entropy(&delta, &eta, lam)?;
    let mean = geometric_path(delta.hermitian(), eta.hermitian(), lam)?;
    Ok(Lemma2Instance {
        delta,
        eta,
        lam,
        t,
        mean,
    })
}

fn lemma_2_lower(ctx: &mut TrialCtx<'_>) -> Result<TrialOutcome> {
    let inst = lemma_2_instance(ctx)?;
    let prev = geometric_path(inst.delta.hermitian(), inst.eta.hermitian(), inst.lam - 1.0)?;
    let mut w = Worst::new();
    for a in LEMMA_2_A {
        let l = deformed_log_scalar(1.0 / a, inst.lam);
        let bound = inst
            .mean
            .sub(&prev.scale(1.0 / a))
            .add(&inst.delta.hermitian().scale(l));
        w.see(loewner_slack(&bound, &inst.t)?, || format!("a={a}"));
    }
    Ok(w.outcome(format!("lambda={:.6}", inst.lam)))
}

fn lemma_2_upper(ctx: &mut TrialCtx<'_>) -> Result<TrialOutcome> {
    let inst = lemma_2_instance(ctx)?;
    let mut w = Worst::new();
    for a in LEMMA_2_A {
        let l = deformed_log_scalar(1.0 / a, inst.lam);
        let bound = inst
            .eta
            .hermitian()
            .scale(1.0 / a)
            .sub(inst.delta.hermitian())
            .sub(&inst.mean.scale(l));
        w.see(loewner_slack(&inst.t, &bound)?, || format!("a={a}"));
    }
    Ok(w.outcome(format!("lambda={:.6}", inst.lam)))
}

/// `T_λ(δ‖δ) = 0`, and `T_λ(δ‖η) ≠ 0` for an independent `η`.
fn lemma_2_faithfulness(ctx: &mut TrialCtx<'_>) -> Result<TrialOutcome> {
    let inst = lemma_2_instance(ctx)?;
    let tol = ctx.cfg.tolerance;
    let same = max_abs(tsallis_relative_operator_entropy(&inst.delta, &inst.delta, inst.lam)?.matrix());
    let other = max_abs(inst.t.matrix());
    Ok(TrialOutcome::slack(
        (-same).min(other - 2.0 * tol),
        format!("lambda={:.6} |T(d||d)|={same:.3e} |T(d||e)|={other:.3e}", inst.lam),
    ))
}

/// `Φ(A ♯_λ B) ≤ Φ(A) ♯_λ Φ(B)` for CPTP `Φ`.
fn lemma_3(ctx: &mut TrialCtx<'_>) -> Result<TrialOutcome> {
    for _ in 0..MAX_REDRAWS {
        let phi = instances::cptp(&mut ctx.rng, ctx.dim)?;
        let ca: f64 = ctx.rng.random_range(0.5..2.0);
        let cb: f64 = ctx.rng.random_range(0.5..2.0);
        let a = instances::state(&mut ctx.rng, ctx.dim, true)?.hermitian().scale(ca);
        let b = instances::state(&mut ctx.rng, ctx.dim, true)?.hermitian().scale(cb);
        let lam: f64 = ctx.rng.random_range(0.05..0.95);
        let pa = phi.apply_hermitian(&a)?;
        let pb = phi.apply_hermitian(&b)?;
        if !(pa.decompose().is_positive_definite() && pb.decompose().is_positive_definite()) {
            continue;
        }
        let lhs = phi.apply_hermitian(&weighted_geometric_mean(&a, &b, lam)?)?;
        let rhs = weighted_geometric_mean(&pa, &pb, lam)?;
        return Ok(TrialOutcome::slack(
            loewner_slack(&lhs, &rhs)?,
            format!("kraus={} lambda={lam:.6}", phi.operators().len()),
        ));
    }
    Err(Error::Domain(format!("no admissible instance after {MAX_REDRAWS} draws")))
}

// α-z-Rényi measure.

/// `M^R(UρU†) = M^R(ρ)` for Haar-random unitary `U`.
fn theorem_2_1(ctx: &mut TrialCtx<'_>) -> Result<TrialOutcome> {
    let rho = instances::state(&mut ctx.rng, ctx.dim, false)?;
    let u = random_unitary(ctx.dim, ctx.rng.random());
    let rotated = rho.unitary_conjugate(&u)?;
    let (p0, p1) = (PreparedState::new(&rho), PreparedState::new(&rotated));
    let mut w = Worst::new();
    for &p in &ctx.cfg.grid.alpha_z {
        w.see(-(p1.renyi(p) - p0.renyi(p)).abs(), || az_label(p));
    }
    Ok(w.outcome(String::new()))
}

/// `f(UρU†, Uρ*U†) = f(ρ, ρ*)`: the divergence is unitarily invariant when
/// both arguments are rotated by the same `U`.
fn theorem_2_1_divergence(ctx: &mut TrialCtx<'_>) -> Result<TrialOutcome> {
    let rho = instances::state(&mut ctx.rng, ctx.dim, false)?;
    let u = random_unitary(ctx.dim, ctx.rng.random());
    let conj = rho.conjugate();
    let (ur, uc) = (rho.unitary_conjugate(&u)?, conj.unitary_conjugate(&u)?);
    let mut w = Worst::new();
    for &p in &ctx.cfg.grid.alpha_z {
        let d = f_alpha_z(&ur, &uc, p)? - f_alpha_z(&rho, &conj, p)?;
        w.see(-d.abs(), || az_label(p));
    }
    Ok(w.outcome(String::new()))
}

/// `M^R(OρOᵀ) = M^R(ρ)` for Haar-random real orthogonal `O`.
fn theorem_2_1_orthogonal(ctx: &mut TrialCtx<'_>) -> Result<TrialOutcome> {
    let rho = instances::state(&mut ctx.rng, ctx.dim, false)?;
    let o = to_complex(&random_real_orthogonal(ctx.dim, ctx.rng.random()));
    let rotated = rho.unitary_conjugate(&o)?;
    let (p0, p1) = (PreparedState::new(&rho), PreparedState::new(&rotated));
    let mut w = Worst::new();
    for &p in &ctx.cfg.grid.alpha_z {
        w.see(-(p1.renyi(p) - p0.renyi(p)).abs(), || az_label(p));
    }
    Ok(w.outcome(String::new()))
}

fn tensor_pair(ctx: &mut TrialCtx<'_>) -> Result<(DensityMatrix, DensityMatrix, usize)> {
    let rho = instances::state(&mut ctx.rng, ctx.dim, false)?;
    let dt = 2 + ctx.index % 2;
    let tau = instances::state(&mut ctx.rng, dt, false)?;
    Ok((rho, tau, dt))
}

fn theorem_2_2(ctx: &mut TrialCtx<'_>) -> Result<TrialOutcome> {
    let (rho, tau, dt) = tensor_pair(ctx)?;
    let joint = tensor_product(&rho, &tau);
    let (pr, pt, pj) = (PreparedState::new(&rho), PreparedState::new(&tau), PreparedState::new(&joint));
    let mut w = Worst::new();
    for &p in &ctx.cfg.grid.alpha_z {
        w.see(pj.renyi(p) - pr.renyi(p) * pt.renyi(p), || az_label(p));
    }
    Ok(w.outcome(format!("tau_dim={dt}")))
}

fn theorem_2_2_factorization(ctx: &mut TrialCtx<'_>) -> Result<TrialOutcome> {
    let (rho, tau, dt) = tensor_pair(ctx)?;
    let joint = tensor_product(&rho, &tau);
    let (pr, pt, pj) = (PreparedState::new(&rho), PreparedState::new(&tau), PreparedState::new(&joint));
    let mut w = Worst::new();
    for &p in &ctx.cfg.grid.alpha_z {
        let d = pj.f_conjugate(p) - pr.f_conjugate(p) * pt.f_conjugate(p);
        w.see(-d.abs(), || az_label(p));
    }
    Ok(w.outcome(format!("tau_dim={dt}")))
}

fn theorem_3_1(ctx: &mut TrialCtx<'_>) -> Result<TrialOutcome> {
    let rho = instances::state(&mut ctx.rng, ctx.dim, false)?;
    let pr = PreparedState::new(&rho);
    let mut w = Worst::new();
    for &p in &ctx.cfg.grid.alpha_z {
        w.see(-(pr.renyi(p) - pr.renyi(p.mirrored())).abs(), || az_label(p));
    }
    Ok(w.outcome(String::new()))
}

/// `M^R_{α₁} ≤ M^R_{α₂}` for `α₁ ≤ α₂` with `z = α`.
fn theorem_3_2(ctx: &mut TrialCtx<'_>) -> Result<TrialOutcome> {
    let rho = instances::state(&mut ctx.rng, ctx.dim, false)?;
    let pr = PreparedState::new(&rho);
    let diag = diagonal_alphas(ctx);
    let vals: Vec<f64> = diag.iter().map(|&p| pr.renyi(p)).collect();
    let mut w = Worst::new();
    for i in 0..diag.len() {
        for j in i + 1..diag.len() {
            w.see(vals[j] - vals[i], || {
                format!("alpha1={} alpha2={}", diag[i].alpha(), diag[j].alpha())
            });
        }
    }
    Ok(w.outcome(String::new()))
}

/// `M^R_{α,z₁} ≤ M^R_{α,z₂}` for `z₁ ≤ z₂`.
fn theorem_3_3(ctx: &mut TrialCtx<'_>) -> Result<TrialOutcome> {
    let rho = instances::state(&mut ctx.rng, ctx.dim, false)?;
    let pr = PreparedState::new(&rho);
    let mut w = Worst::new();
    for alpha in grid_alphas(ctx) {
        let mut pts: Vec<AZParams> = ctx.cfg.grid.alpha_z.iter().copied().filter(|p| p.alpha() == alpha).collect();
        pts.sort_by(|a, b| a.z().total_cmp(&b.z()));
        let vals: Vec<f64> = pts.iter().map(|&p| pr.renyi(p)).collect();
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                w.see(vals[j] - vals[i], || {
                    format!("alpha={alpha} z1={} z2={}", pts[i].z(), pts[j].z())
                });
            }
        }
    }
    Ok(w.outcome(String::new()))
}

// Tsallis measure.

fn theorem_4_1(ctx: &mut TrialCtx<'_>) -> Result<TrialOutcome> {
    let rho = instances::state(&mut ctx.rng, ctx.dim, false)?;
    let pr = PreparedState::new(&rho);
    let mut w = Worst::new();
    for q in sorted_q(ctx) {
        let d = pr.tsallis(q)? - pr.tsallis(1.0 - q)?;
        w.see(-d.abs(), || format!("q={q}"));
    }
    Ok(w.outcome(String::new()))
}

fn theorem_4_2(ctx: &mut TrialCtx<'_>) -> Result<TrialOutcome> {
    let rho = instances::state(&mut ctx.rng, ctx.dim, false)?;
    let pr = PreparedState::new(&rho);
    let qs: Vec<f64> = sorted_q(ctx).into_iter().filter(|&q| q <= 0.5).collect();
    let vals = qs.iter().map(|&q| pr.tsallis(q)).collect::<Result<Vec<_>>>()?;
    let mut w = Worst::new();
    for i in 0..qs.len() {
        for j in i + 1..qs.len() {
            w.see(vals[j] - vals[i], || format!("q1={} q2={}", qs[i], qs[j]));
        }
    }
    Ok(w.outcome(String::new()))
}

// Chains between measures.

/// Links of `M^R_α ≤ M^R_{α,z} ≤ M^T_α (≤ M^O_α)` at every grid point. The
/// leftmost link exists only where `z = α` is admissible.
fn chain(ctx: &TrialCtx<'_>, rho: &DensityMatrix, with_operator: bool) -> Result<Worst> {
    let pr = PreparedState::new(rho);
    let mut w = Worst::new();
    for &p in &ctx.cfg.grid.alpha_z {
        let a = p.alpha();
        let r = pr.renyi(p);
        let t = pr.tsallis(a)?;
        w.see(t - r, || format!("{} R<=T", az_label(p)));
        if let Ok(d) = AZParams::diagonal(a) {
            if d != p {
                w.see(r - pr.renyi(d), || format!("{} R_alpha<=R", az_label(p)));
            }
        }
        if with_operator {
            w.see(pr.operator(a)? - t, || format!("{} T<=O", az_label(p)));
        }
    }
    Ok(w)
}

fn theorem_5_chain(ctx: &mut TrialCtx<'_>) -> Result<TrialOutcome> {
    let rho = instances::state(&mut ctx.rng, ctx.dim, false)?;
    Ok(chain(ctx, &rho, false)?.outcome(String::new()))
}

fn theorem_8_chain(ctx: &mut TrialCtx<'_>) -> Result<TrialOutcome> {
    let delta = instances::state(&mut ctx.rng, ctx.dim, true)?;
    Ok(chain(ctx, &delta, true)?.outcome(String::new()))
}

/// On states commuting with their conjugate the chain is an equality at `z = α`.
fn collapse(ctx: &mut TrialCtx<'_>, with_operator: bool) -> Result<TrialOutcome> {
    let rho = instances::commuting_conjugate_state(&mut ctx.rng, ctx.dim, with_operator)?;
    let pr = PreparedState::new(&rho);
    let mut w = Worst::new();
    for a in grid_alphas(ctx) {
        let t = pr.tsallis(a)?;
        if let Ok(d) = AZParams::diagonal(a) {
            w.see(-(pr.renyi(d) - t).abs(), || format!("alpha={a} R=T"));
        }
        if with_operator {
            w.see(-(pr.operator(a)? - t).abs(), || format!("alpha={a} O=T"));
        }
    }
    Ok(w.outcome(String::new()))
}

fn theorem_5_collapse(ctx: &mut TrialCtx<'_>) -> Result<TrialOutcome> {
    collapse(ctx, false)
}

fn theorem_8_collapse(ctx: &mut TrialCtx<'_>) -> Result<TrialOutcome> {
    collapse(ctx, true)
}

/// If `M^R_{α,z} ≤ M^T_q` holds for `ρ` and for `τ`, it holds for `ρ ⊗ τ`.
fn theorem_6(ctx: &mut TrialCtx<'_>) -> Result<TrialOutcome> {
    let rho = instances::state(&mut ctx.rng, ctx.dim, false)?;
    let tau = instances::state(&mut ctx.rng, 2, false)?;
    let joint = tensor_product(&rho, &tau);
    let (pr, pt, pj) = (PreparedState::new(&rho), PreparedState::new(&tau), PreparedState::new(&joint));
    let qs = sorted_q(ctx);
    let tq = |p: &PreparedState<'_>| qs.iter().map(|&q| p.tsallis(q)).collect::<Result<Vec<_>>>();
    let (tr, tt, tj) = (tq(&pr)?, tq(&pt)?, tq(&pj)?);
    let mut w = Worst::new();
    let (mut hits, mut evals) = (0, 0);
    for &p in &ctx.cfg.grid.alpha_z {
        let (rr, rt) = (pr.renyi(p), pt.renyi(p));
        let mut rj = None;
        for (k, &q) in qs.iter().enumerate() {
            evals += 1;
            if rr <= tr[k] && rt <= tt[k] {
                hits += 1;
                let r = *rj.get_or_insert_with(|| pj.renyi(p));
                w.see(tj[k] - r, || format!("{} q={q}", az_label(p)));
            }
        }
    }
    let mut out = w.outcome(String::new());
    if hits == 0 {
        out.margin = None;
    }
    out.hypothesis = Some((hits, evals));
    Ok(out)
}
