//! Randomized verification harness.
//!
//! Every axiom, theorem and lemma of the measure family is bound to a check
//! id. A check runs `trials` seeded trials per configured dimension; each
//! trial produces a slack (`RHS − LHS` for an inequality `LHS ≤ RHS`,
//! `−|LHS − RHS|` for an equality, the minimum over conjunctions). A trial
//! fails when its slack is below `−tolerance`.
//!
//! Trial `i` of check `id` draws everything from
//! `derive_seed(cfg.seed, stream_id(id), i)`, so reports are bit-identical
//! whether trials run serially or in parallel, and a failing trial can be
//! replayed from the seed in its report with [`replay_trial`].

mod axioms;
pub mod instances;
mod theorems;
pub mod worked;

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::measures::{MeasureId, ParameterGrid};
use crate::rng;

pub use worked::{example_delta0, example_rho0, reproduce_examples, ExamplesReport};

/// Suite configuration.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PropertyConfig {
    pub dims: Vec<usize>,
    /// Trials per dimension.
    pub trials: usize,
    pub seed: u64,
    /// Slack tolerance for inequalities.
    pub tolerance: f64,
    /// Tolerance for equalities and scalar trace inequalities.
    pub equality_tolerance: f64,
    pub grid: ParameterGrid,
}

impl Default for PropertyConfig {
    fn default() -> Self {
        Self {
            dims: vec![2, 3, 4],
            trials: 200,
            seed: 1,
            tolerance: 1e-8,
            equality_tolerance: 1e-9,
            grid: ParameterGrid::default(),
        }
    }
}

impl PropertyConfig {
    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::Domain("trials must be >= 1".into()));
        }
        if self.dims.is_empty() || self.dims.contains(&0) {
            return Err(Error::Domain("dims must be a non-empty list of positive integers".into()));
        }
        if !(self.tolerance > 0.0 && self.equality_tolerance > 0.0) {
            return Err(Error::Domain("tolerances must be positive".into()));
        }
        Ok(())
    }
}

fn serialize_margin<S: Serializer>(v: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    if v.is_finite() {
        s.serialize_f64(*v)
    } else if *v > 0.0 {
        s.serialize_str("inf")
    } else {
        s.serialize_str("-inf")
    }
}

/// Outcome of one check.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PropertyReport {
    pub check_id: String,
    pub trials: usize,
    pub failures: usize,
    /// Trials whose hypothesis never held (conditional checks only).
    pub vacuous: usize,
    pub tolerance: f64,
    /// Most negative slack over non-vacuous trials; `inf` when there were none.
    #[serde(serialize_with = "serialize_margin")]
    pub worst_margin: f64,
    #[serde(serialize_with = "serialize_margin")]
    pub median_margin: f64,
    /// Seed and description of the worst failing trial.
    pub failing_seed: Option<u64>,
    pub failing_instance: Option<String>,
    /// `(hits, evaluations)` of the hypothesis for conditional checks.
    pub hypothesis_hits: Option<(usize, usize)>,
}

impl PropertyReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Result of a single trial.
#[derive(Clone, Debug)]
pub(crate) struct TrialOutcome {
    /// `None` when a conditional check's hypothesis never held.
    pub margin: Option<f64>,
    pub note: String,
    pub hypothesis: Option<(usize, usize)>,
}

impl TrialOutcome {
    pub fn slack(margin: f64, note: impl Into<String>) -> Self {
        Self {
            margin: Some(margin),
            note: note.into(),
            hypothesis: None,
        }
    }
}

/// Per-trial context handed to each check.
pub(crate) struct TrialCtx<'a> {
    pub dim: usize,
    pub index: usize,
    pub rng: rng::Rng,
    pub cfg: &'a PropertyConfig,
}

pub(crate) type TrialFn = fn(&mut TrialCtx<'_>) -> Result<TrialOutcome>;

pub(crate) struct Check {
    pub id: String,
    pub tolerance: f64,
    pub run: TrialFn,
}

fn run_one(check: &Check, cfg: &PropertyConfig, dim: usize, index: usize, seed: u64) -> (u64, TrialOutcome) {
    let mut ctx = TrialCtx {
        dim,
        index,
        rng: rng::from_seed(seed),
        cfg,
    };
    let outcome = (check.run)(&mut ctx).unwrap_or_else(|e| TrialOutcome {
        margin: Some(f64::NEG_INFINITY),
        note: format!("error: {e}"),
        hypothesis: None,
    });
    (seed, outcome)
}

fn execute(check: &Check, cfg: &PropertyConfig) -> PropertyReport {
    let stream = rng::stream_id(&check.id);
    let jobs: Vec<(usize, usize)> = cfg
        .dims
        .iter()
        .flat_map(|&d| std::iter::repeat_n(d, cfg.trials))
        .enumerate()
        .collect();
    let results: Vec<(usize, u64, TrialOutcome)> = jobs
        .par_iter()
        .map(|&(index, dim)| {
            let seed = rng::derive_seed(cfg.seed, stream, index as u64);
            let (seed, outcome) = run_one(check, cfg, dim, index, seed);
            (dim, seed, outcome)
        })
        .collect();

    let mut failures = 0;
    let mut vacuous = 0;
    let mut worst = f64::INFINITY;
    let mut worst_failure: Option<(f64, u64, String)> = None;
    let mut margins = Vec::with_capacity(results.len());
    let mut hyp: Option<(usize, usize)> = None;
    for (dim, seed, outcome) in &results {
        if let Some((h, e)) = outcome.hypothesis {
            let acc = hyp.get_or_insert((0, 0));
            acc.0 += h;
            acc.1 += e;
        }
        let Some(m) = outcome.margin else {
            vacuous += 1;
            continue;
        };
        margins.push(m);
        worst = worst.min(m);
        if m.is_nan() || m < -check.tolerance {
            failures += 1;
            if worst_failure.as_ref().is_none_or(|(w, _, _)| m < *w) {
                worst_failure = Some((m, *seed, format!("dim={dim}; {}", outcome.note)));
            }
        }
    }
    margins.sort_by(f64::total_cmp);
    let median = if margins.is_empty() {
        f64::INFINITY
    } else {
        margins[margins.len() / 2]
    };
    PropertyReport {
        check_id: check.id.clone(),
        trials: results.len(),
        failures,
        vacuous,
        tolerance: check.tolerance,
        worst_margin: worst,
        median_margin: median,
        failing_seed: worst_failure.as_ref().map(|w| w.1),
        failing_instance: worst_failure.map(|w| w.2),
        hypothesis_hits: hyp,
    }
}

const AXIOM_IDS: [&str; 5] = ["I1", "I2", "I3", "I4", "I5"];

/// Theorem and lemma check ids, in catalog order.
pub const THEOREM_CHECKS: [&str; 21] = [
    "lemma-1-1",
    "lemma-1-2",
    "lemma-2-lower",
    "lemma-2-upper",
    "lemma-2-faithfulness",
    "lemma-3",
    "theorem-2-1",
    "theorem-2-1-divergence",
    "theorem-2-1-orthogonal",
    "theorem-2-2",
    "theorem-2-2-factorization",
    "theorem-3-1",
    "theorem-3-2",
    "theorem-3-3",
    "theorem-4-1",
    "theorem-4-2",
    "theorem-5-chain",
    "theorem-5-collapse",
    "theorem-6",
    "theorem-8-chain",
    "theorem-8-collapse",
];

/// Every check id: the axiom checks for all four measures, then the
/// theorem and lemma checks.
pub fn catalog() -> Vec<String> {
    let mut ids: Vec<String> = MeasureId::ALL
        .iter()
        .flat_map(|m| AXIOM_IDS.iter().map(move |a| format!("axioms:{m}:{a}")))
        .collect();
    ids.extend(THEOREM_CHECKS.iter().map(|s| s.to_string()));
    ids
}

/// Expands a suite selector into check ids.
///
/// Accepted selectors: `all`, `axioms`, `axioms:<measure>`,
/// `axioms:<measure>:<I1..I5>`, `theorems`, any exact theorem/lemma id, and
/// the groups `lemma-1`, `lemma-2`, `theorem-2` … `theorem-8`.
pub fn expand_suite(selector: &str) -> Result<Vec<String>> {
    let all = catalog();
    let unknown = || Error::Domain(format!("unknown suite id '{selector}'"));
    let ids: Vec<String> = match selector {
        "all" => all,
        "axioms" => all.into_iter().filter(|i| i.starts_with("axioms:")).collect(),
        "theorems" => THEOREM_CHECKS.iter().map(|s| s.to_string()).collect(),
        s if s.starts_with("axioms:") => {
            let rest = &s["axioms:".len()..];
            let (measure, axiom) = match rest.split_once(':') {
                Some((m, a)) => (m, Some(a)),
                None => (rest, None),
            };
            let m: MeasureId = measure.parse().map_err(|_| unknown())?;
            match axiom {
                None => AXIOM_IDS.iter().map(|a| format!("axioms:{m}:{a}")).collect(),
                Some(a) if AXIOM_IDS.contains(&a) => vec![format!("axioms:{m}:{a}")],
                Some(_) => return Err(unknown()),
            }
        }
        s => {
            if THEOREM_CHECKS.contains(&s) {
                vec![s.to_string()]
            } else {
                let prefix = format!("{s}-");
                let group: Vec<String> = THEOREM_CHECKS
                    .iter()
                    .filter(|c| c.starts_with(&prefix))
                    .map(|c| c.to_string())
                    .collect();
                if group.is_empty() {
                    return Err(unknown());
                }
                group
            }
        }
    };
    Ok(ids)
}

fn lookup(id: &str, cfg: &PropertyConfig) -> Result<Check> {
    if let Some(rest) = id.strip_prefix("axioms:") {
        let (m, a) = rest
            .split_once(':')
            .ok_or_else(|| Error::Domain(format!("unknown check id '{id}'")))?;
        let measure: MeasureId = m.parse()?;
        let run = axioms::trial_fn(measure, a).ok_or_else(|| Error::Domain(format!("unknown check id '{id}'")))?;
        let tolerance = cfg.tolerance;
        return Ok(Check {
            id: format!("axioms:{measure}:{a}"),
            tolerance,
            run,
        });
    }
    let (run, equality) = theorems::trial_fn(id).ok_or_else(|| Error::Domain(format!("unknown check id '{id}'")))?;
    Ok(Check {
        id: id.to_string(),
        tolerance: if equality { cfg.equality_tolerance } else { cfg.tolerance },
        run,
    })
}

/// Runs one check by exact id.
pub fn run_check(id: &str, cfg: &PropertyConfig) -> Result<PropertyReport> {
    cfg.validate()?;
    Ok(execute(&lookup(id, cfg)?, cfg))
}

/// The five axiom checks (I1)–(I5) for one measure. The operator measure
/// draws positive definite states only.
pub fn run_axiom_suite(measure: MeasureId, cfg: &PropertyConfig) -> Result<Vec<PropertyReport>> {
    AXIOM_IDS
        .iter()
        .map(|a| run_check(&format!("axioms:{measure}:{a}"), cfg))
        .collect()
}

/// One theorem or lemma check by exact id.
pub fn run_theorem_suite(theorem_id: &str, cfg: &PropertyConfig) -> Result<PropertyReport> {
    if !THEOREM_CHECKS.contains(&theorem_id) {
        return Err(Error::Domain(format!("unknown theorem id '{theorem_id}'")));
    }
    run_check(theorem_id, cfg)
}

/// Re-runs a single trial, e.g. from a report's `failing_seed`.
pub fn replay_trial(id: &str, cfg: &PropertyConfig, dim: usize, seed: u64) -> Result<(Option<f64>, String)> {
    let check = lookup(id, cfg)?;
    let (_, outcome) = run_one(&check, cfg, dim, 0, seed);
    Ok((outcome.margin, outcome.note))
}

/// Reports for a list of suite selectors, deduplicated in first-seen order.
#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub config: PropertyConfig,
    pub checks: Vec<PropertyReport>,
    pub examples: Option<ExamplesReport>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(PropertyReport::passed) && self.examples.as_ref().is_none_or(|e| e.passed())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    /// Fixed-width summary, one line per check.
    pub fn summary_table(&self) -> String {
        let mut out = String::new();
        let width = self.checks.iter().map(|c| c.check_id.len()).max().unwrap_or(8).max(8);
        if !self.checks.is_empty() {
            let _ = writeln!(
                out,
                "{:<width$}  {:>6}  {:>8}  {:>7}  {:>12}  {:>12}  status",
                "check", "trials", "failures", "vacuous", "worst", "median"
            );
            for c in &self.checks {
                let status = if c.passed() { "PASS" } else { "FAIL" };
                let _ = write!(
                    out,
                    "{:<width$}  {:>6}  {:>8}  {:>7}  {:>12.4e}  {:>12.4e}  {}",
                    c.check_id, c.trials, c.failures, c.vacuous, c.worst_margin, c.median_margin, status
                );
                if let Some((h, e)) = c.hypothesis_hits {
                    let _ = write!(out, "  (hypothesis held {h}/{e})");
                }
                if let Some(seed) = c.failing_seed {
                    let _ = write!(out, "  [seed {seed}]");
                }
                out.push('\n');
            }
        }
        if let Some(e) = &self.examples {
            if !out.is_empty() {
                out.push('\n');
            }
            out.push_str(&e.summary_table());
        }
        out
    }
}

/// Runs every check named by the selectors. `examples` selects the worked
/// example reproduction.
pub fn verify(selectors: &[String], cfg: &PropertyConfig) -> Result<VerificationReport> {
    cfg.validate()?;
    let mut ids: Vec<String> = Vec::new();
    let mut examples = false;
    for sel in selectors {
        if sel == "examples" {
            examples = true;
            continue;
        }
        for id in expand_suite(sel)? {
            if !ids.contains(&id) {
                ids.push(id);
            }
        }
        if sel == "all" {
            examples = true;
        }
    }
    let checks = ids.iter().map(|id| run_check(id, cfg)).collect::<Result<Vec<_>>>()?;
    let examples = if examples { Some(reproduce_examples()?) } else { None };
    Ok(VerificationReport {
        config: cfg.clone(),
        checks,
        examples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_covers_every_statement() {
        let ids = catalog();
        assert_eq!(ids.len(), 20 + THEOREM_CHECKS.len());
        for id in &ids {
            assert!(lookup(id, &PropertyConfig::default()).is_ok(), "{id}");
        }
    }

    #[test]
    fn suite_expansion() {
        assert_eq!(expand_suite("axioms:renyi-az").unwrap().len(), 5);
        assert_eq!(expand_suite("axioms").unwrap().len(), 20);
        assert_eq!(
            expand_suite("theorem-2").unwrap(),
            vec![
                "theorem-2-1",
                "theorem-2-1-divergence",
                "theorem-2-1-orthogonal",
                "theorem-2-2",
                "theorem-2-2-factorization"
            ]
        );
        assert_eq!(expand_suite("theorem-8").unwrap().len(), 2);
        assert_eq!(expand_suite("lemma-3").unwrap(), vec!["lemma-3"]);
        assert!(expand_suite("theorem-9").is_err());
        assert!(expand_suite("axioms:nope").is_err());
        assert!(expand_suite("axioms:tsallis:I9").is_err());
    }

    #[test]
    fn dimension_one_passes_trivially() {
        let cfg = PropertyConfig {
            dims: vec![1],
            trials: 1,
            ..PropertyConfig::default()
        };
        for m in MeasureId::ALL {
            for r in run_axiom_suite(m, &cfg).unwrap() {
                assert!(r.passed(), "{r:?}");
                assert_eq!(r.trials, 1);
            }
        }
    }

    #[test]
    fn reports_are_reproducible() {
        let cfg = PropertyConfig {
            dims: vec![2, 3],
            trials: 5,
            ..PropertyConfig::default()
        };
        let a = run_check("theorem-3-3", &cfg).unwrap();
        let b = run_check("theorem-3-3", &cfg).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.worst_margin.to_bits(), b.worst_margin.to_bits());
    }

    #[test]
    fn invalid_config_rejected() {
        let cfg = PropertyConfig {
            trials: 0,
            ..PropertyConfig::default()
        };
        assert!(run_check("lemma-3", &cfg).is_err());
        assert!(run_theorem_suite("axioms:tsallis:I1", &PropertyConfig::default()).is_err());
    }
}
