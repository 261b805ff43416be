//! Command-line front end.
//!
//! Exit codes: 0 success, 1 verification failures, 2 unreadable or
//! malformed input (including bad flags), 3 invalid state or channel,
//! 4 parameter out of domain or unknown suite.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::channels::{random_cptp, random_real_operation};
use crate::error::{Error, Result};
use crate::io::{format_sig, kraus_to_string, read_state, state_to_string};
use crate::measures::{default_z_values, AZParams, MeasureId, MeasureParams, MeasureValue, ParameterGrid, PreparedState};
use crate::properties::{verify, PropertyConfig, VerificationReport};
use crate::states::{random_density, random_real_density, DensityMatrix};

/// Default directory for written reports when `--out` is absent.
pub const OUT_DIR_ENV: &str = "IMAGINARITY_OUT_DIR";

#[derive(Debug, Parser)]
#[command(name = "imaginarity", version, about = "Imaginarity measures for density matrices")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate measures on a state file.
    Measure(MeasureArgs),
    /// Evaluate measures over a parameter grid and emit one CSV row per point.
    Scan(ScanArgs),
    /// Run verification suites.
    Verify(VerifyArgs),
    /// Reproduce the two worked examples (same as `verify --suite examples`).
    Examples(ExamplesArgs),
    /// Write a random state or operation.
    Random(RandomArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Debug, Default, Args)]
pub struct MeasureSelection {
    /// All four measures.
    #[arg(long)]
    pub all: bool,
    #[arg(long)]
    pub renyi: bool,
    #[arg(long)]
    pub tsallis: bool,
    #[arg(long)]
    pub umegaki: bool,
    #[arg(long)]
    pub operator: bool,
    /// Measure ids (umegaki, tsallis, renyi-az, operator, all), comma separated.
    #[arg(long, value_delimiter = ',')]
    pub measure: Vec<String>,
}

#[derive(Debug, Default, Args)]
pub struct ParamArgs {
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub alpha: Vec<f64>,
    /// z values paired with every --alpha; defaults to {max(α,1−α), midpoint, 0.95}.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub z: Vec<f64>,
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub q: Vec<f64>,
    #[arg(long = "lambda", value_delimiter = ',', allow_negative_numbers = true)]
    pub lambda: Vec<f64>,
    /// `default`, or N for N evenly spaced interior points per parameter.
    #[arg(long)]
    pub grid: Option<String>,
}

#[derive(Debug, Args)]
pub struct MeasureArgs {
    pub state: PathBuf,
    #[command(flatten)]
    pub select: MeasureSelection,
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, value_enum, default_value = "table")]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    pub state: PathBuf,
    #[command(flatten)]
    pub select: MeasureSelection,
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Suite selectors: all, axioms, axioms:<measure>[:<I1..I5>], theorems,
    /// theorem-N, lemma-N, exact check ids, examples.
    #[arg(long, value_delimiter = ',', default_value = "all")]
    pub suite: Vec<String>,
    #[arg(long, value_delimiter = ',')]
    pub dims: Vec<usize>,
    /// Trials per dimension.
    #[arg(long)]
    pub trials: Option<usize>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long)]
    pub grid: Option<String>,
    #[arg(long, value_enum, default_value = "table")]
    pub format: Format,
    /// JSON report destination.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ExamplesArgs {
    #[arg(long, value_enum, default_value = "table")]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RandomKind {
    State,
    RealState,
    RealOp,
    Cptp,
}

#[derive(Debug, Args)]
pub struct RandomArgs {
    #[arg(value_enum)]
    pub kind: RandomKind,
    #[arg(long)]
    pub dim: usize,
    /// Rank for states (default: full rank).
    #[arg(long)]
    pub rank: Option<usize>,
    /// Number of Kraus operators for operations (default 2).
    #[arg(long)]
    pub kraus: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Maps an error to the process exit code.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::Io(_) => 2,
        Error::Domain(_) => 4,
        e if e.is_validation() => 3,
        _ => 1,
    }
}

/// Parses arguments, runs, and returns the exit code. Messages go to stderr.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

pub fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Measure(a) => cmd_measure(a),
        Command::Scan(a) => cmd_scan(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Examples(a) => cmd_verify(VerifyArgs {
            suite: vec!["examples".into()],
            dims: Vec::new(),
            trials: None,
            seed: 1,
            grid: None,
            format: a.format,
            out: a.out,
        }),
        Command::Random(a) => cmd_random(a),
    }
}

/// Parses a `--grid` spec.
pub fn parse_grid(spec: Option<&str>) -> Result<ParameterGrid> {
    let Some(spec) = spec else {
        return Ok(ParameterGrid::default());
    };
    if spec == "default" {
        return Ok(ParameterGrid::default());
    }
    let n: usize = spec
        .parse()
        .map_err(|_| Error::Domain(format!("grid must be 'default' or a point count, got '{spec}'")))?;
    if n == 0 {
        return Err(Error::Domain("grid point count must be >= 1".into()));
    }
    let levels: Vec<f64> = (1..=n).map(|k| k as f64 / (n + 1) as f64).collect();
    let alpha_z = levels
        .iter()
        .flat_map(|&a| default_z_values(a).into_iter().map(move |z| AZParams::new(a, z)))
        .collect::<Result<Vec<_>>>()?;
    Ok(ParameterGrid {
        alpha_z,
        q: levels.clone(),
        lambda: levels,
    })
}

fn check_unit(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v < 1.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name} must lie in (0, 1), got {v}")))
    }
}

/// Evaluation plan: the points, and which measures were asked for by name.
#[derive(Debug)]
struct Plan {
    points: Vec<(MeasureId, MeasureParams)>,
    explicit: Vec<MeasureId>,
}

fn plan(select: &MeasureSelection, params: &ParamArgs) -> Result<Plan> {
    let grid = parse_grid(params.grid.as_deref())?;
    let mut explicit = Vec::new();
    let mut all = select.all;
    for (flag, m) in [
        (select.umegaki, MeasureId::Umegaki),
        (select.tsallis, MeasureId::Tsallis),
        (select.renyi, MeasureId::RenyiAz),
        (select.operator, MeasureId::Operator),
    ] {
        if flag {
            explicit.push(m);
        }
    }
    for name in &select.measure {
        if name == "all" {
            all = true;
        } else {
            explicit.push(name.parse()?);
        }
    }
    if !params.z.is_empty() && params.alpha.is_empty() {
        return Err(Error::Domain("--z requires --alpha".into()));
    }
    let mut measures: Vec<MeasureId> = if all {
        MeasureId::ALL.to_vec()
    } else if !explicit.is_empty() {
        explicit.clone()
    } else {
        let implied: Vec<MeasureId> = [
            (!params.q.is_empty(), MeasureId::Tsallis),
            (!params.alpha.is_empty(), MeasureId::RenyiAz),
            (!params.lambda.is_empty(), MeasureId::Operator),
        ]
        .into_iter()
        .filter_map(|(given, m)| given.then_some(m))
        .collect();
        if implied.is_empty() {
            MeasureId::ALL.to_vec()
        } else {
            explicit.extend(implied.iter().copied());
            implied
        }
    };
    measures.sort();
    measures.dedup();

    let alpha_z = if params.alpha.is_empty() {
        grid.alpha_z.clone()
    } else {
        let mut pts = Vec::new();
        for &a in &params.alpha {
            check_unit("alpha", a)?;
            let zs = if params.z.is_empty() { default_z_values(a) } else { params.z.clone() };
            for z in zs {
                pts.push(AZParams::new(a, z)?);
            }
        }
        pts
    };
    let q = if params.q.is_empty() { grid.q.clone() } else { params.q.clone() };
    let lambda = if params.lambda.is_empty() { grid.lambda.clone() } else { params.lambda.clone() };
    for &v in &q {
        check_unit("q", v)?;
    }
    for &v in &lambda {
        check_unit("lambda", v)?;
    }
    let points = ParameterGrid { alpha_z, q, lambda }.points(&measures);
    Ok(Plan { points, explicit })
}

#[derive(Debug, Serialize)]
struct Row {
    measure: MeasureId,
    alpha: Option<f64>,
    z: Option<f64>,
    q: Option<f64>,
    lambda: Option<f64>,
    value: MeasureValue,
}

const UNDEFINED_PD: &str = "undefined (not positive definite)";

fn evaluate(rho: &DensityMatrix, plan: &Plan) -> Result<Vec<Row>> {
    let prepared = PreparedState::new(rho);
    if plan.explicit.contains(&MeasureId::Operator) && !prepared.is_positive_definite() {
        rho.check_positive_definite()?;
    }
    plan.points
        .iter()
        .map(|&(measure, params)| {
            let value = match prepared.evaluate(measure, params)? {
                MeasureValue::Undefined(_) => MeasureValue::Undefined(UNDEFINED_PD.into()),
                v => v,
            };
            Ok(Row {
                measure,
                alpha: params.alpha(),
                z: params.z(),
                q: params.q(),
                lambda: params.lambda(),
                value,
            })
        })
        .collect()
}

fn opt(v: Option<f64>) -> String {
    v.map(format_sig).unwrap_or_default()
}

fn value_text(v: &MeasureValue) -> String {
    match v {
        MeasureValue::Value(x) => format_sig(*x),
        MeasureValue::Undefined(r) => r.clone(),
    }
}

fn rows_csv(rows: &[Row]) -> String {
    let mut out = String::from("measure-id,alpha,z,q,lambda,value\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            r.measure,
            opt(r.alpha),
            opt(r.z),
            opt(r.q),
            opt(r.lambda),
            value_text(&r.value)
        );
    }
    out
}

fn rows_table(rows: &[Row]) -> String {
    let cells: Vec<[String; 6]> = rows
        .iter()
        .map(|r| {
            [
                r.measure.to_string(),
                opt(r.alpha),
                opt(r.z),
                opt(r.q),
                opt(r.lambda),
                value_text(&r.value),
            ]
        })
        .collect();
    let header = ["measure", "alpha", "z", "q", "lambda", "value"];
    let mut widths = header.map(str::len);
    for c in &cells {
        for (w, s) in widths.iter_mut().zip(c) {
            *w = (*w).max(s.len());
        }
    }
    let mut out = String::new();
    let line = |out: &mut String, c: [&str; 6]| {
        let _ = writeln!(
            out,
            "{:<w0$}  {:>w1$}  {:>w2$}  {:>w3$}  {:>w4$}  {}",
            c[0],
            c[1],
            c[2],
            c[3],
            c[4],
            c[5],
            w0 = widths[0],
            w1 = widths[1],
            w2 = widths[2],
            w3 = widths[3],
            w4 = widths[4]
        );
    };
    line(&mut out, header);
    for c in &cells {
        line(&mut out, [&c[0], &c[1], &c[2], &c[3], &c[4], &c[5]]);
    }
    out
}

fn rows_json(rows: &[Row]) -> String {
    serde_json::to_string_pretty(rows).expect("rows serialize") + "\n"
}

fn render_rows(rows: &[Row], format: Format) -> String {
    match format {
        Format::Table => rows_table(rows),
        Format::Csv => rows_csv(rows),
        Format::Json => rows_json(rows),
    }
}

fn output_path(out: Option<PathBuf>, default_name: &str) -> Option<PathBuf> {
    out.or_else(|| std::env::var_os(OUT_DIR_ENV).map(|d| Path::new(&d).join(default_name)))
}

fn emit(text: &str, path: Option<PathBuf>) -> Result<()> {
    match path {
        Some(p) => {
            if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(dir)?;
            }
            fs::write(&p, text)?;
            eprintln!("wrote {}", p.display());
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn cmd_measure(a: MeasureArgs) -> Result<i32> {
    let plan = plan(&a.select, &a.params)?;
    let rho = read_state(&a.state)?;
    let rows = evaluate(&rho, &plan)?;
    let ext = match a.format {
        Format::Table => "txt",
        Format::Csv => "csv",
        Format::Json => "json",
    };
    emit(&render_rows(&rows, a.format), output_path(a.out, &format!("measure.{ext}")))?;
    Ok(0)
}

fn cmp_opt(a: Option<f64>, b: Option<f64>) -> std::cmp::Ordering {
    match (a, b) {
        (Some(x), Some(y)) => x.total_cmp(&y),
        (a, b) => a.is_some().cmp(&b.is_some()),
    }
}

fn cmd_scan(a: ScanArgs) -> Result<i32> {
    let plan = plan(&a.select, &a.params)?;
    let rho = read_state(&a.state)?;
    let mut rows = evaluate(&rho, &plan)?;
    rows.sort_by(|x, y| {
        x.measure
            .as_str()
            .cmp(y.measure.as_str())
            .then(cmp_opt(x.alpha, y.alpha))
            .then(cmp_opt(x.z, y.z))
            .then(cmp_opt(x.q, y.q))
            .then(cmp_opt(x.lambda, y.lambda))
    });
    let ext = match a.format {
        Format::Table => "txt",
        Format::Csv => "csv",
        Format::Json => "json",
    };
    emit(&render_rows(&rows, a.format), output_path(a.out, &format!("scan.{ext}")))?;
    Ok(0)
}

fn checks_csv(report: &VerificationReport) -> String {
    let mut out = String::from("check-id,trials,failures,vacuous,tolerance,worst-margin,median-margin,failing-seed\n");
    for c in &report.checks {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            c.check_id,
            c.trials,
            c.failures,
            c.vacuous,
            format_sig(c.tolerance),
            format_sig(c.worst_margin),
            format_sig(c.median_margin),
            c.failing_seed.map(|s| s.to_string()).unwrap_or_default()
        );
    }
    out
}

fn cmd_verify(a: VerifyArgs) -> Result<i32> {
    let defaults = PropertyConfig::default();
    let cfg = PropertyConfig {
        dims: if a.dims.is_empty() { defaults.dims } else { a.dims },
        trials: a.trials.unwrap_or(defaults.trials),
        seed: a.seed,
        grid: parse_grid(a.grid.as_deref())?,
        ..defaults
    };
    let report = verify(&a.suite, &cfg)?;
    match a.format {
        Format::Table => print!("{}", report.summary_table()),
        Format::Csv => print!("{}", checks_csv(&report)),
        Format::Json => print!("{}", report.to_json()),
    }
    if let Some(p) = output_path(a.out, "verify-report.json") {
        emit(&report.to_json(), Some(p))?;
    }
    let failing = report.checks.iter().filter(|c| !c.passed()).count();
    if report.passed() {
        Ok(0)
    } else {
        eprintln!("verification failed: {failing} failing check(s)");
        Ok(1)
    }
}

fn cmd_random(a: RandomArgs) -> Result<i32> {
    if a.dim == 0 {
        return Err(Error::Domain("--dim must be >= 1".into()));
    }
    let text = match a.kind {
        RandomKind::State | RandomKind::RealState => {
            let rank = a.rank.unwrap_or(a.dim);
            if rank == 0 || rank > a.dim {
                return Err(Error::Domain(format!("--rank must lie in 1..={}, got {rank}", a.dim)));
            }
            let rho = if a.kind == RandomKind::State {
                random_density(a.dim, rank, a.seed)?
            } else {
                random_real_density(a.dim, rank, a.seed)?
            };
            state_to_string(&rho)
        }
        RandomKind::RealOp | RandomKind::Cptp => {
            let n = a.kraus.unwrap_or(2);
            let set = if a.kind == RandomKind::RealOp {
                random_real_operation(a.dim, n, a.seed)?
            } else {
                random_cptp(a.dim, n, a.seed)?
            };
            kraus_to_string(&set)
        }
    };
    let kind = a.kind.to_possible_value().expect("named variant").get_name().to_string();
    let name = format!("random-{kind}-d{}-s{}.json", a.dim, a.seed);
    emit(&text, output_path(a.out, &name))?;
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params() -> ParamArgs {
        ParamArgs::default()
    }

    #[test]
    fn default_plan_covers_grid() {
        let p = plan(&MeasureSelection::default(), &params()).unwrap();
        assert_eq!(p.points.len(), 1 + 5 + 15 + 5);
        assert!(p.explicit.is_empty());
    }

    #[test]
    fn params_imply_measures() {
        let pa = ParamArgs {
            alpha: vec![0.3, 0.5],
            ..params()
        };
        let p = plan(&MeasureSelection::default(), &pa).unwrap();
        assert!(p.points.iter().all(|(m, _)| *m == MeasureId::RenyiAz));
        assert_eq!(p.points.len(), 6);
    }

    #[test]
    fn domain_checked_before_work() {
        let bad_z = ParamArgs {
            alpha: vec![0.3],
            z: vec![0.5],
            ..params()
        };
        assert!(matches!(plan(&MeasureSelection::default(), &bad_z), Err(Error::Domain(_))));
        let bad_q = ParamArgs {
            q: vec![1.0],
            ..params()
        };
        assert!(matches!(plan(&MeasureSelection::default(), &bad_q), Err(Error::Domain(_))));
        let lone_z = ParamArgs {
            z: vec![0.9],
            ..params()
        };
        assert!(plan(&MeasureSelection::default(), &lone_z).is_err());
        assert!(parse_grid(Some("coarse")).is_err());
        assert_eq!(parse_grid(Some("3")).unwrap().q, vec![0.25, 0.5, 0.75]);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&Error::Parse("x".into())), 2);
        assert_eq!(
            exit_code(&Error::NotPositiveDefinite {
                eigenvalue: 0.0,
                threshold: 1e-10
            }),
            3
        );
        assert_eq!(exit_code(&Error::Domain("x".into())), 4);
    }
}
