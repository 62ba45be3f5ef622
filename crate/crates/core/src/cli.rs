//! Command-line front end behind the `tfim-gyro` binary.
//!
//! Exit codes: 0 success, 1 output failure, 2 invalid input, 3 insufficient
//! data, 4 verification failure.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::analysis::{collapse_check, fit_eta, half_width, scan_curve, uniform_grid, CollapseCase, HalfWidthConvention};
use crate::chain::{characteristic_time, ChainSpec};
use crate::echo::{log_echo_at, ModeGrid};
use crate::error::Error;
use crate::io::{csv_string, format_real, write_atomic, RunConfig};
use crate::oracle::{frame_convergence_study, frame_equivalence_check, EdEchoKernel, Units, MAX_SITES};
use crate::protocol::run_trials;

#[derive(Debug, Parser)]
#[command(name = "tfim-gyro", version, about = "Loschmidt-echo gyroscope on a transverse-field Ising chain")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Echo as a function of rotation velocity (CSV).
    Curve(CurveArgs),
    /// Valley half-widths for a list of probe couplings (JSON).
    Halfwidth(WidthArgs),
    /// Half-widths plus the origin-constrained sqrt(eta) fit (JSON).
    Fit(FitArgs),
    /// Width collapse across chains with equal delta*sqrt(N) (JSON).
    Collapse(CollapseArgs),
    /// Monte Carlo run of the sensing protocol from a config file.
    Protocol(ProtocolArgs),
    /// Product formula against the dense oracle, plus the frame check (JSON).
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, Args)]
pub struct UnitArgs {
    #[arg(long, default_value_t = 1.0)]
    pub coupling: f64,
    #[arg(long, default_value_t = 1.0)]
    pub hbar: f64,
    #[arg(long, default_value_t = 1.0)]
    pub lattice_spacing: f64,
}

impl UnitArgs {
    fn spec(&self, n: usize) -> Result<ChainSpec, Failure> {
        Ok(ChainSpec::with_units(n, self.lattice_spacing, self.coupling, self.hbar)?)
    }
}

#[derive(Debug, Args)]
pub struct CurveArgs {
    #[arg(long, default_value_t = 2000)]
    pub n: usize,
    #[arg(long, default_value_t = 0.01)]
    pub delta: f64,
    #[arg(long, default_value_t = 2.0)]
    pub lambda: f64,
    /// Defaults to t0 = hbar/(2J).
    #[arg(long)]
    pub time: Option<f64>,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub omega_min: f64,
    #[arg(long, default_value_t = 4.0, allow_negative_numbers = true)]
    pub omega_max: f64,
    #[arg(long, default_value_t = 2001)]
    pub points: usize,
    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub units: UnitArgs,
}

#[derive(Debug, Args)]
pub struct WidthArgs {
    #[arg(long, default_value_t = 20000)]
    pub n: usize,
    #[arg(long, value_delimiter = ',', required = true)]
    pub deltas: Vec<f64>,
    #[arg(long)]
    pub time: Option<f64>,
    #[arg(long, default_value_t = 2.0)]
    pub lambda: f64,
    /// Search half-range in the detuning.
    #[arg(long, default_value_t = 1.0)]
    pub window: f64,
    #[arg(long, value_enum, default_value_t = ConventionArg::OneSided)]
    pub convention: ConventionArg,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub units: UnitArgs,
}

#[derive(Debug, Args)]
pub struct FitArgs {
    #[command(flatten)]
    pub width: WidthArgs,
    /// Use these half-widths (field units, one per delta) instead of computing them.
    #[arg(long, value_delimiter = ',')]
    pub epsilon0s: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum ConventionArg {
    OneSided,
    FullChord,
}

impl From<ConventionArg> for HalfWidthConvention {
    fn from(c: ConventionArg) -> Self {
        match c {
            ConventionArg::OneSided => Self::OneSided,
            ConventionArg::FullChord => Self::FullChord,
        }
    }
}

#[derive(Debug, Args)]
pub struct CollapseArgs {
    /// Comma list of N:delta pairs.
    #[arg(long, value_delimiter = ',', default_value = "200:0.1,500:0.063,2000:0.032,20000:0.01")]
    pub cases: Vec<String>,
    #[arg(long)]
    pub time: Option<f64>,
    #[arg(long, default_value_t = 2.0)]
    pub lambda: f64,
    #[arg(long, default_value_t = 1.0)]
    pub window: f64,
    #[arg(long, value_enum, default_value_t = ConventionArg::OneSided)]
    pub convention: ConventionArg,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ProtocolArgs {
    pub config: PathBuf,
    #[arg(long, default_value = ".")]
    pub out_dir: PathBuf,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 8)]
    pub max_n: usize,
    /// Largest allowed |L_product - L_dense|.
    #[arg(long, default_value_t = 0.05)]
    pub bound: f64,
    /// Largest allowed frame-check infidelity.
    #[arg(long, default_value_t = 1e-6)]
    pub frame_bound: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug)]
enum Failure {
    Output(String),
    Invalid(String),
    Insufficient(String),
    Verification(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Self::Output(_) => 1,
            Self::Invalid(_) => 2,
            Self::Insufficient(_) => 3,
            Self::Verification(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Self::Output(m) | Self::Invalid(m) | Self::Insufficient(m) | Self::Verification(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::ValleyTooShallow { .. }
            | Error::CrossingNotBracketed { .. }
            | Error::TooFewPoints(_)
            | Error::NoSuccessfulTrials => Self::Insufficient(e.to_string()),
            _ => Self::Invalid(e.to_string()),
        }
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => write_atomic(path, text.as_bytes())
            .map_err(|e| Failure::Output(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serialisable report");
    s.push('\n');
    s
}

/// `ECHO_THREADS` sets the worker count; 0 or unset leaves rayon's default.
fn configure_threads() {
    if let Some(n) = std::env::var("ECHO_THREADS").ok().and_then(|v| v.trim().parse::<usize>().ok()) {
        if n > 0 {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
}

fn cmd_curve(args: &CurveArgs) -> Result<(), Failure> {
    let spec = args.units.spec(args.n)?;
    let time = args.time.unwrap_or_else(|| characteristic_time(&spec));
    let grid = uniform_grid(args.omega_min, args.omega_max, args.points)?;
    let curve = scan_curve(&spec, args.delta, args.lambda, time, &grid)?;
    let rows = curve
        .samples
        .iter()
        .map(|s| vec![format_real(s.omega), format_real(s.lambda_tilde), format_real(s.echo)]);
    emit(args.out.as_deref(), &csv_string(&["omega", "lambda_tilde", "loschmidt_echo"], rows))
}

/// `(δ, width)` with the error for valleys that have no half-width.
type WidthEntry = (f64, Result<f64, Error>);

/// Per-δ widths under the chosen convention.
fn widths(args: &WidthArgs, spec: &ChainSpec, time: f64) -> Result<Vec<WidthEntry>, Failure> {
    let convention = HalfWidthConvention::from(args.convention);
    args.deltas
        .iter()
        .map(|&delta| match half_width(spec, delta, args.lambda, time, args.window) {
            Ok(r) => Ok((delta, Ok(r.width(convention)))),
            Err(e @ (Error::ValleyTooShallow { .. } | Error::CrossingNotBracketed { .. })) => Ok((delta, Err(e))),
            Err(e) => Err(e.into()),
        })
        .collect()
}

fn width_report(args: &WidthArgs, epsilon0s: Option<&[f64]>) -> Result<(Value, usize), Failure> {
    let spec = args.units.spec(args.n)?;
    let time = args.time.unwrap_or_else(|| characteristic_time(&spec));
    if let Some(t) = args.time {
        if !(t.is_finite() && t >= 0.0) {
            return Err(Error::NegativeTime(t).into());
        }
    }
    let entries = match epsilon0s {
        Some(values) => {
            if values.len() != args.deltas.len() {
                return Err(Failure::Invalid(format!(
                    "{} epsilon0 values for {} deltas",
                    values.len(),
                    args.deltas.len()
                )));
            }
            args.deltas.iter().zip(values).map(|(&d, &e)| (d, Ok(e))).collect()
        }
        None => widths(args, &spec, time)?,
    };

    let usable: Vec<(f64, f64)> = entries
        .iter()
        .filter_map(|(d, r)| r.as_ref().ok().map(|&e| (*d, e)))
        .collect();
    let fit = if usable.len() >= 3 { Some(fit_eta(&usable, args.n)?) } else { None };
    let points: Vec<Value> = entries
        .iter()
        .map(|(delta, r)| match r {
            Ok(e) => json!({
                "delta": delta,
                "epsilon0": e,
                "delta_omega": spec.field_to_omega(*e),
                "status": "ok",
            }),
            Err(err) => json!({
                "delta": delta,
                "epsilon0": null,
                "delta_omega": null,
                "status": err.to_string(),
            }),
        })
        .collect();
    let report = json!({
        "n": args.n,
        "time": time,
        "convention": HalfWidthConvention::from(args.convention).as_str(),
        "points": points,
        "sqrt_eta": fit.as_ref().map(|f| f.sqrt_eta),
        "r_squared": fit.as_ref().map(|f| f.r_squared),
    });
    Ok((report, usable.len()))
}

fn cmd_halfwidth(args: &WidthArgs) -> Result<(), Failure> {
    let (report, _) = width_report(args, None)?;
    emit(args.out.as_deref(), &to_json(&report))
}

fn cmd_fit(args: &FitArgs) -> Result<(), Failure> {
    let (report, usable) = width_report(&args.width, args.epsilon0s.as_deref())?;
    emit(args.width.out.as_deref(), &to_json(&report))?;
    if usable < 3 {
        return Err(Failure::Insufficient(format!("only {usable} usable half-widths, the fit needs 3")));
    }
    Ok(())
}

fn parse_case(text: &str) -> Result<CollapseCase, Failure> {
    let bad = || Failure::Invalid(format!("case '{text}' is not N:delta"));
    let (n, d) = text.split_once(':').ok_or_else(bad)?;
    let n = n.trim().parse().map_err(|_| bad())?;
    let d = d.trim().parse().map_err(|_| bad())?;
    Ok(CollapseCase::new(n, d)?)
}

fn cmd_collapse(args: &CollapseArgs) -> Result<(), Failure> {
    let cases = args.cases.iter().map(|c| parse_case(c)).collect::<Result<Vec<_>, _>>()?;
    let time = args
        .time
        .or_else(|| cases.first().map(|c| characteristic_time(&c.spec)))
        .unwrap_or(0.0);
    let report = collapse_check(&cases, args.lambda, time, args.window, args.convention.into())?;
    let mut value = serde_json::to_value(&report).expect("serialisable report");
    value["time"] = json!(time);
    emit(args.out.as_deref(), &to_json(&value))?;
    if !report.passed {
        return Err(Failure::Verification(format!(
            "widths spread by {:.4}, above the collapse tolerance",
            report.max_relative_deviation
        )));
    }
    Ok(())
}

fn cmd_protocol(args: &ProtocolArgs) -> Result<(), Failure> {
    let config = RunConfig::load(&args.config)?;
    let protocol = config
        .protocol_config()
        .ok_or_else(|| Failure::Invalid(format!("{} has no protocol section", args.config.display())))?;
    std::fs::create_dir_all(&args.out_dir)
        .map_err(|e| Failure::Output(format!("cannot create {}: {e}", args.out_dir.display())))?;

    let (summary, records) = match run_trials(&protocol) {
        Ok(run) => {
            let s = run.summary;
            let summary = json!({
                "trials": s.trials,
                "succeeded": s.succeeded,
                "mean_abs_error": s.uncorrected.mean_abs_error,
                "p95_abs_error": s.uncorrected.p95_abs_error,
                "success_rate": s.uncorrected.success_rate,
                "mean_signed_error": s.uncorrected.mean_signed_error,
                "resolution_delta_omega": s.resolution_delta_omega,
                "feasible": s.feasible,
                "bias_corrected": s.corrected,
            });
            (Some(summary), run.records)
        }
        Err(Error::NoSuccessfulTrials) => (None, Vec::new()),
        Err(e) => return Err(e.into()),
    };

    let rows: Vec<Vec<String>> = if records.is_empty() {
        // every trial failed; rerun the draws to record why
        (0..protocol.trials)
            .map(|i| {
                let mut rng = crate::protocol::trial_rng(protocol.seed, i);
                let omega0 = crate::protocol::pmg_sample(protocol.true_omega, protocol.sigma, protocol.noise_model, &mut rng);
                let status = crate::protocol::scan_and_estimate(&protocol, omega0)
                    .err()
                    .map_or_else(|| "ok".to_string(), |e| status_of(&e));
                failed_row(i, omega0, &status)
            })
            .collect()
    } else {
        records
            .iter()
            .map(|r| match &r.outcome {
                Ok(t) => vec![
                    r.index.to_string(),
                    format_real(t.omega0),
                    format_real(t.lambda0),
                    format_real(t.omega1),
                    format_real(t.omega1_corrected),
                    format_real(t.abs_error),
                    "ok".into(),
                ],
                Err(e) => failed_row(r.index, r.omega0, &status_of(e)),
            })
            .collect()
    };
    let header = ["trial", "omega0", "lambda0", "omega1", "omega1_corrected", "abs_error", "status"];
    emit(Some(&args.out_dir.join("trials.csv")), &csv_string(&header, rows))?;
    match summary {
        Some(summary) => emit(Some(&args.out_dir.join("summary.json")), &to_json(&summary)),
        None => Err(Error::NoSuccessfulTrials.into()),
    }
}

fn status_of(e: &Error) -> String {
    match e {
        Error::FlatScan { .. } => "flat_scan".into(),
        other => other.to_string().replace(',', ";"),
    }
}

fn failed_row(index: usize, omega0: f64, status: &str) -> Vec<String> {
    vec![
        index.to_string(),
        format_real(omega0),
        String::new(),
        String::new(),
        String::new(),
        String::new(),
        status.to_string(),
    ]
}

const VERIFY_FIELDS: [f64; 2] = [1.5, 2.0];
const VERIFY_DELTA: f64 = 0.1;
const VERIFY_TIMES: usize = 20;

/// Largest `|L_product − L_dense|` for an `n`-site chain on `grid`.
fn oracle_deviation(n: usize, grid: ModeGrid) -> Result<f64, Error> {
    let spec = ChainSpec::new(n)?;
    let t_max = 2.0 * characteristic_time(&spec);
    let mut worst = 0.0f64;
    for &field in &VERIFY_FIELDS {
        let kernel = EdEchoKernel::new(n, field, VERIFY_DELTA, Units::default())?;
        for i in 0..VERIFY_TIMES {
            let t = t_max * i as f64 / (VERIFY_TIMES - 1) as f64;
            let product = log_echo_at(&spec, field, VERIFY_DELTA, t, grid)?.exp();
            worst = worst.max((product - kernel.echo(t)?.value).abs());
        }
    }
    Ok(worst)
}

fn cmd_verify(args: &VerifyArgs) -> Result<(), Failure> {
    if !(4..=MAX_SITES).contains(&args.max_n) {
        return Err(Failure::Invalid(format!("--max-n {} outside [4, {MAX_SITES}]", args.max_n)));
    }
    let mut oracle = Vec::new();
    let mut deviations = Vec::new();
    for n in (4..=args.max_n).step_by(2) {
        let periodic = oracle_deviation(n, ModeGrid::Periodic)?;
        let antiperiodic = oracle_deviation(n, ModeGrid::AntiPeriodic)?;
        deviations.push(periodic);
        oracle.push(json!({
            "n": n,
            "max_deviation": periodic,
            "max_deviation_antiperiodic": antiperiodic,
        }));
    }
    let decreasing = deviations.windows(2).all(|w| w[1] < w[0]);

    let units = Units::default();
    let mut frame = Vec::new();
    let mut frame_worst = 0.0f64;
    for n in 1..=3 {
        let study = frame_convergence_study(n, 2.0, 2.0, 10.0, 1000, 2, units)?;
        let last = study.last().expect("non-empty study");
        frame_worst = frame_worst.max(last.max_infidelity);
        frame.push(json!({
            "n": n,
            "steps": study.iter().map(|c| c.steps).collect::<Vec<_>>(),
            "max_infidelity": study.iter().map(|c| c.max_infidelity).collect::<Vec<_>>(),
            "max_norm_drift": last.max_norm_drift,
        }));
    }
    let control = frame_equivalence_check(3, 2.0, 0.0, 10.0, 1000, units)?.max_infidelity;

    let oracle_ok = deviations.iter().all(|&d| d < args.bound);
    let frame_ok = frame_worst < args.frame_bound && control < 1e-10;
    let report = json!({
        "max_n": args.max_n,
        "delta": VERIFY_DELTA,
        "fields": VERIFY_FIELDS,
        "bound": args.bound,
        "oracle": oracle,
        "decreasing_in_n": decreasing,
        "frame_bound": args.frame_bound,
        "frame": frame,
        "frame_control_max_infidelity": control,
        "passed": oracle_ok && frame_ok,
    });
    emit(args.out.as_deref(), &to_json(&report))?;
    if !oracle_ok {
        return Err(Failure::Verification(format!("oracle deviation above {}", args.bound)));
    }
    if !frame_ok {
        return Err(Failure::Verification(format!("frame infidelity {frame_worst:e} above {}", args.frame_bound)));
    }
    Ok(())
}

fn dispatch(cli: &Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Curve(a) => cmd_curve(a),
        Command::Halfwidth(a) => cmd_halfwidth(a),
        Command::Fit(a) => cmd_fit(a),
        Command::Collapse(a) => cmd_collapse(a),
        Command::Protocol(a) => cmd_protocol(a),
        Command::Verify(a) => cmd_verify(a),
    }
}

/// Parses `std::env::args`, runs the command and maps the outcome to an
/// exit code.
pub fn run() -> ExitCode {
    let cli = Cli::parse();
    configure_threads();
    match dispatch(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("tfim-gyro: {}", f.message().replace('\n', " "));
            ExitCode::from(f.code())
        }
    }
}
