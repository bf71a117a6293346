//! Command-line front end for the `fdde` crate.
//!
//! Four subcommands: `simulate` (trajectory CSV), `curves` (critical curve
//! CSV), `classify` (JSON verdict) and `equilibria` (JSON list).
//! Exit codes are 0 on success, 1 on usage or configuration errors and 2
//! when a simulated trajectory blew up (the partial CSV is still written).

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use fdde::models::{ikeda_rhs, ucar_rhs, IkedaParams, UcarParams};
use fdde::solver::{build_grid, phase_columns, simulate};
use fdde::stability::{
    classify, critical_curve, find_equilibria, linearize, stable_at_zero_delay, DEFAULT_MAX_BRANCH,
    DEFAULT_SAMPLES,
};
use fdde::{
    CriticalCurvePoint, CurveSearch, DelayPair, Equilibrium, FractionalOrder, HistorySpec,
    LinearCoefficients, LinearRhs, PhaseRow, SystemRhs,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_TRUNCATED: i32 = 2;

/// Ikeda equilibrium used when `--x-star` is not given.
pub const IKEDA_DEFAULT_X_STAR: f64 = 2.7859;

#[derive(Debug, Parser)]
#[command(
    name = "fdde",
    version,
    about = "Fractional delay differential equations with two delays"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Integrate the system and write `t,x,x_tau1,x_tau2` as CSV.
    Simulate(SimulateArgs),
    /// Sample the critical curves of the linearization and write them as CSV.
    Curves(CurvesArgs),
    /// Classify a delay pair and print the verdict as JSON.
    Classify(ClassifyArgs),
    /// List the equilibria of a model as JSON.
    Equilibria(EquilibriaArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelName {
    Ucar,
    Ikeda,
}

#[derive(Debug, Clone, Args)]
pub struct ModelParams {
    /// Uçar δ.
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub delta: f64,
    /// Uçar ε.
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub epsilon: f64,
    /// Ikeda coefficient of x(t − τ1).
    #[arg(long, default_value_t = -3.0, allow_hyphen_values = true)]
    pub c1: f64,
    /// Ikeda coefficient of sin x(t − τ2).
    #[arg(long, default_value_t = 24.0, allow_hyphen_values = true)]
    pub c2: f64,
}

/// Either a named model or `--linear --a A --b B`.
#[derive(Debug, Clone, Args)]
#[command(group = clap::ArgGroup::new("system").required(true).args(["model", "linear"]))]
pub struct SystemArgs {
    #[arg(long, value_enum)]
    pub model: Option<ModelName>,
    /// Use g(x1, x2) = a·x1 + b·x2.
    #[arg(long, requires_all = ["a", "b"])]
    pub linear: bool,
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<f64>,
    #[command(flatten)]
    pub params: ModelParams,
}

#[derive(Debug, Clone, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    #[arg(long)]
    pub alpha: f64,
    #[arg(long)]
    pub tau1: f64,
    #[arg(long)]
    pub tau2: f64,
    /// Final time.
    #[arg(long = "T", default_value_t = 100.0)]
    pub horizon: f64,
    /// Requested step; the actual step divides both delays.
    #[arg(long, default_value_t = 0.01)]
    pub h: f64,
    /// Constant initial function. Defaults: ucar 0.8, ikeda 2.5, linear 1.
    #[arg(long, allow_hyphen_values = true)]
    pub history: Option<f64>,
    /// Relative tolerance for τ1/h, τ2/h and T/h being integers.
    #[arg(long, default_value_t = 1e-9)]
    pub tolerance: f64,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct SearchArgs {
    #[arg(long, default_value_t = 1e-6)]
    pub v_min: f64,
    /// Defaults to 4·(|a| + |b|)^(1/α).
    #[arg(long)]
    pub v_max: Option<f64>,
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    pub samples: usize,
    #[arg(long, default_value_t = DEFAULT_MAX_BRANCH)]
    pub max_branch: u32,
}

#[derive(Debug, Clone, Args)]
pub struct CurvesArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    /// Linearize at the equilibrium nearest this point.
    /// Defaults: ucar +√(δ/ε), ikeda 2.7859.
    #[arg(long, allow_hyphen_values = true)]
    pub x_star: Option<f64>,
    #[arg(long)]
    pub alpha: f64,
    #[command(flatten)]
    pub search: SearchArgs,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct ClassifyArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    #[arg(long, allow_hyphen_values = true)]
    pub x_star: Option<f64>,
    #[arg(long)]
    pub alpha: f64,
    #[arg(long)]
    pub tau1: f64,
    #[arg(long)]
    pub tau2: f64,
    /// Half-width of the OnBoundary band in τ2.
    #[arg(long, default_value_t = 1e-6)]
    pub tolerance: f64,
    #[command(flatten)]
    pub search: SearchArgs,
}

#[derive(Debug, Clone, Args)]
pub struct EquilibriaArgs {
    #[arg(long, value_enum)]
    pub model: ModelName,
    #[command(flatten)]
    pub params: ModelParams,
    #[arg(long, default_value_t = -10.0, allow_hyphen_values = true)]
    pub lo: f64,
    #[arg(long, default_value_t = 10.0, allow_hyphen_values = true)]
    pub hi: f64,
    /// Number of scan points in [lo, hi].
    #[arg(long, default_value_t = 2001)]
    pub resolution: usize,
}

/// A resolved right-hand side.
enum System {
    Ucar(fdde::models::Ucar),
    Ikeda(fdde::models::Ikeda),
    Linear(LinearRhs),
}

impl System {
    fn rhs(&self) -> &dyn SystemRhs {
        match self {
            System::Ucar(g) => g,
            System::Ikeda(g) => g,
            System::Linear(g) => g,
        }
    }
}

fn build_model(model: ModelName, p: &ModelParams) -> anyhow::Result<System> {
    Ok(match model {
        ModelName::Ucar => System::Ucar(ucar_rhs(UcarParams::new(p.delta, p.epsilon)?)),
        ModelName::Ikeda => System::Ikeda(ikeda_rhs(IkedaParams::new(p.c1, p.c2)?)),
    })
}

impl SystemArgs {
    fn build(&self) -> anyhow::Result<System> {
        match (self.model, self.linear, self.a, self.b) {
            (Some(model), false, None, None) => build_model(model, &self.params),
            (None, true, Some(a), Some(b)) => {
                if !a.is_finite() || !b.is_finite() {
                    bail!("--a and --b must be finite");
                }
                Ok(System::Linear(LinearRhs::new(a, b)))
            }
            (Some(_), _, _, _) => bail!("--a/--b only apply with --linear"),
            _ => bail!("pass either --model or --linear --a A --b B"),
        }
    }

    /// Coefficients of the linearization, at the equilibrium nearest `x_star`
    /// for named models.
    fn coefficients(&self, x_star: Option<f64>) -> anyhow::Result<LinearCoefficients> {
        let system = self.build()?;
        if let System::Linear(g) = &system {
            if x_star.is_some() {
                bail!("--x-star does not apply with --linear");
            }
            return Ok(LinearCoefficients::new(g.a, g.b)?);
        }
        let eq = nearest_equilibrium(&system, x_star)?;
        Ok(linearize(system.rhs(), eq)?)
    }
}

fn nearest_equilibrium(system: &System, x_star: Option<f64>) -> anyhow::Result<Equilibrium> {
    let candidates: Vec<Equilibrium> = match system {
        System::Ucar(g) => g.equilibria().to_vec(),
        System::Ikeda(g) => {
            let x = x_star.unwrap_or(IKEDA_DEFAULT_X_STAR);
            if !x.is_finite() {
                bail!("--x-star must be finite");
            }
            find_equilibria(g, x - 1.0, x + 1.0, 2001)
        }
        System::Linear(_) => unreachable!("linear systems carry their coefficients"),
    };
    let target = match (system, x_star) {
        (_, Some(x)) => x,
        (System::Ucar(g), None) => g.equilibria()[2].x_star,
        (_, None) => IKEDA_DEFAULT_X_STAR,
    };
    candidates
        .into_iter()
        .min_by(|p, q| {
            (p.x_star - target)
                .abs()
                .total_cmp(&(q.x_star - target).abs())
        })
        .with_context(|| format!("no equilibrium within 1 of x* = {target}"))
}

fn search_for(alpha: FractionalOrder, coef: LinearCoefficients, args: &SearchArgs) -> CurveSearch {
    let default = CurveSearch::default_for(alpha, coef);
    CurveSearch {
        v_min: args.v_min,
        v_max: args.v_max.unwrap_or(default.v_max),
        samples: args.samples,
        max_branch: args.max_branch,
    }
}

/// Formats a value with 17 significant digits, enough to round-trip any `f64`.
pub fn format_value(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn write_trajectory_csv<W: Write>(w: &mut W, rows: &[PhaseRow]) -> io::Result<()> {
    w.write_all(b"t,x,x_tau1,x_tau2\n")?;
    for r in rows {
        writeln!(
            w,
            "{},{},{},{}",
            format_value(r.t),
            format_value(r.x),
            format_value(r.x_tau1),
            format_value(r.x_tau2)
        )?;
    }
    Ok(())
}

pub fn write_curve_csv<W: Write>(w: &mut W, points: &[CriticalCurvePoint]) -> io::Result<()> {
    w.write_all(b"v,tau1,tau2,sign1,m1,sign2,m2,residual\n")?;
    for p in points {
        writeln!(
            w,
            "{},{},{},{},{},{},{},{}",
            format_value(p.v),
            format_value(p.tau1),
            format_value(p.tau2),
            p.branch.sign1,
            p.branch.m1,
            p.branch.sign2,
            p.branch.m2,
            format_value(p.residual)
        )?;
    }
    Ok(())
}

fn create(path: &Path) -> anyhow::Result<BufWriter<File>> {
    let file = File::create(path).with_context(|| format!("cannot create {}", path.display()))?;
    Ok(BufWriter::new(file))
}

/// Result of a successful command.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Done,
    /// The trajectory hit a non-finite value at this step.
    Truncated(usize),
}

#[derive(Debug, Serialize)]
struct ClassifyReport {
    verdict: &'static str,
    critical_tau2: Option<f64>,
    a: f64,
    b: f64,
    alpha: f64,
    tau1: f64,
    tau2: f64,
}

#[derive(Debug, Serialize)]
struct EquilibriumReport {
    x_star: f64,
    a: f64,
    b: f64,
    stable_at_zero: bool,
}

pub fn cmd_simulate(args: &SimulateArgs) -> anyhow::Result<Outcome> {
    let system = args.system.build()?;
    let alpha = FractionalOrder::new(args.alpha)?;
    let delays = DelayPair::new(args.tau1, args.tau2)?;
    if !(args.horizon > 0.0 && args.horizon.is_finite()) {
        bail!("--T must be positive and finite, got {}", args.horizon);
    }
    if !(args.h > 0.0 && args.h.is_finite()) {
        bail!("--h must be positive and finite, got {}", args.h);
    }
    if args.tolerance.is_nan() || args.tolerance < 0.0 {
        bail!("--tolerance must be non-negative, got {}", args.tolerance);
    }
    let phi = args.history.unwrap_or(match system {
        System::Ucar(_) => 0.8,
        System::Ikeda(_) => 2.5,
        System::Linear(_) => 1.0,
    });
    let grid = build_grid(delays, args.horizon, args.h, args.tolerance)?;
    let traj = simulate(system.rhs(), alpha, &grid, &HistorySpec::Constant(phi))?;

    let mut w = create(&args.out)?;
    write_trajectory_csv(&mut w, &phase_columns(&traj, &grid))?;
    w.flush()?;
    Ok(match traj.truncated_at() {
        Some(n) => Outcome::Truncated(n),
        None => Outcome::Done,
    })
}

pub fn cmd_curves(args: &CurvesArgs) -> anyhow::Result<Outcome> {
    let alpha = FractionalOrder::new(args.alpha)?;
    let coef = args.system.coefficients(args.x_star)?;
    let search = search_for(alpha, coef, &args.search);
    let points = critical_curve(alpha, coef, &search)?;
    let mut w = create(&args.out)?;
    write_curve_csv(&mut w, &points)?;
    w.flush()?;
    Ok(Outcome::Done)
}

pub fn cmd_classify<W: Write>(args: &ClassifyArgs, out: &mut W) -> anyhow::Result<Outcome> {
    let alpha = FractionalOrder::new(args.alpha)?;
    let delays = DelayPair::new(args.tau1, args.tau2)?;
    if args.tolerance.is_nan() || args.tolerance < 0.0 {
        bail!("--tolerance must be non-negative, got {}", args.tolerance);
    }
    let coef = args.system.coefficients(args.x_star)?;
    coef.require_two_delays()?;
    let search = search_for(alpha, coef, &args.search);
    let c = classify(alpha, coef, delays, args.tolerance, &search)?;
    let report = ClassifyReport {
        verdict: c.verdict.as_str(),
        critical_tau2: c.critical_tau2,
        a: coef.a,
        b: coef.b,
        alpha: args.alpha,
        tau1: args.tau1,
        tau2: args.tau2,
    };
    serde_json::to_writer_pretty(&mut *out, &report)?;
    writeln!(out)?;
    Ok(Outcome::Done)
}

pub fn cmd_equilibria<W: Write>(args: &EquilibriaArgs, out: &mut W) -> anyhow::Result<Outcome> {
    if !(args.lo.is_finite() && args.hi.is_finite() && args.lo < args.hi) {
        bail!("need finite --lo < --hi, got [{}, {}]", args.lo, args.hi);
    }
    if args.resolution < 2 {
        bail!("--resolution must be at least 2");
    }
    let system = build_model(args.model, &args.params)?;
    let mut reports = Vec::new();
    for eq in find_equilibria(system.rhs(), args.lo, args.hi, args.resolution) {
        let coef = linearize(system.rhs(), eq)?;
        reports.push(EquilibriumReport {
            x_star: eq.x_star,
            a: coef.a,
            b: coef.b,
            stable_at_zero: stable_at_zero_delay(coef).is_stable(),
        });
    }
    serde_json::to_writer_pretty(&mut *out, &reports)?;
    writeln!(out)?;
    Ok(Outcome::Done)
}

pub fn execute<W: Write>(cli: &Cli, out: &mut W) -> anyhow::Result<Outcome> {
    match &cli.command {
        Command::Simulate(a) => cmd_simulate(a),
        Command::Curves(a) => cmd_curves(a),
        Command::Classify(a) => cmd_classify(a, out),
        Command::Equilibria(a) => cmd_equilibria(a, out),
    }
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match execute(&cli, &mut out) {
        Ok(Outcome::Done) => EXIT_OK,
        Ok(Outcome::Truncated(n)) => {
            eprintln!("fdde: trajectory became non-finite at step {n}; partial output written");
            EXIT_TRUNCATED
        }
        Err(e) => {
            eprintln!("fdde: {e:#}");
            EXIT_USAGE
        }
    }
}
