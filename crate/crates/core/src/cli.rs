//! Command-line front end. Exit codes: 0 ok, 1 runtime failure, 2 usage error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::density::DensityModel;
use crate::empirical::{fit_returns, fit_spectrum, load_returns_csv, load_spectrum_csv, synthetic_spectrum, write_spectrum_csv, FitFamily};
use crate::ensembles::{EnsembleConfig, Family, SamplingMethod};
use crate::error::Error;
use crate::harness::{run_density_experiment, run_spacing_experiment, DEFAULT_BINS};
use crate::selfcheck::{format_table, run_selfcheck, Fault};
use crate::spacing::SpacingModel;

pub const EXIT_OK: i32 = 0;
pub const EXIT_RUNTIME: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "superwl", version, about = "Superstatistical Wishart-Laguerre ensembles: sampling, densities, spacings and fits")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Monte Carlo eigenvalue density report (JSON).
    Sample(SampleArgs),
    /// Analytic density curve (CSV).
    Density(DensityArgs),
    /// Analytic spacing curve (CSV).
    Spacing(SpacingArgs),
    /// Monte Carlo spacing report at one location (JSON).
    SpacingMc(SpacingMcArgs),
    /// Fit γ to a returns matrix or a spectrum (JSON).
    Fit(FitArgs),
    /// Write a pooled synthetic spectrum (CSV).
    Synth(SynthArgs),
    /// Run the invariant suite.
    Selfcheck(SelfcheckArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FamilyArg {
    Wl,
    Invchi2,
    Chi2,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Wl => Family::Wl,
            FamilyArg::Invchi2 => Family::InvChi2,
            FamilyArg::Chi2 => Family::Chi2,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MethodArg {
    Auto,
    Dense,
    Tridiagonal,
}

impl From<MethodArg> for SamplingMethod {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Auto => SamplingMethod::Auto,
            MethodArg::Dense => SamplingMethod::Dense,
            MethodArg::Tridiagonal => SamplingMethod::Tridiagonal,
        }
    }
}

#[derive(Debug, Args)]
struct EnsembleArgs {
    #[arg(long)]
    beta: u32,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    m: usize,
    #[arg(long)]
    gamma: Option<f64>,
    #[arg(long, value_enum)]
    family: FamilyArg,
    #[arg(long, value_enum, default_value = "auto")]
    method: MethodArg,
    #[arg(long)]
    samples: usize,
    #[arg(long)]
    seed: u64,
}

impl EnsembleArgs {
    fn config(&self) -> Result<EnsembleConfig, CliError> {
        EnsembleConfig::new(self.beta, self.n, self.m, self.gamma, self.family.into())
            .and_then(|c| c.with_method(self.method.into()))
            .map_err(usage)
    }
}

#[derive(Debug, Args)]
struct SampleArgs {
    #[command(flatten)]
    ensemble: EnsembleArgs,
    #[arg(long, default_value_t = DEFAULT_BINS)]
    bins: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Grid {
    min: f64,
    max: f64,
    points: usize,
}

impl Grid {
    fn values(&self) -> impl Iterator<Item = f64> + '_ {
        let step = (self.max - self.min) / (self.points - 1) as f64;
        (0..self.points).map(move |i| if i + 1 == self.points { self.max } else { self.min + step * i as f64 })
    }
}

fn parse_grid(text: &str) -> Result<Grid, String> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 3 {
        return Err(format!("expected MIN:MAX:POINTS, got {text:?}"));
    }
    let min: f64 = parts[0].trim().parse().map_err(|_| format!("bad grid minimum {:?}", parts[0]))?;
    let max: f64 = parts[1].trim().parse().map_err(|_| format!("bad grid maximum {:?}", parts[1]))?;
    let points: usize = parts[2].trim().parse().map_err(|_| format!("bad grid point count {:?}", parts[2]))?;
    if !min.is_finite() || !max.is_finite() || !(max > min) {
        return Err(format!("grid needs finite MIN < MAX, got {min}:{max}"));
    }
    if points < 2 {
        return Err("grid needs at least two points".into());
    }
    Ok(Grid { min, max, points })
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModelArg {
    Mp,
    Gen,
}

#[derive(Debug, Args)]
struct DensityArgs {
    #[arg(long, value_enum)]
    model: ModelArg,
    #[arg(long)]
    gamma: Option<f64>,
    #[arg(long)]
    c: f64,
    #[arg(long, value_parser = parse_grid)]
    grid: Grid,
    /// Emit `y, |y|·ρ(y²)` instead of `x, ρ(x)`.
    #[arg(long)]
    theta: bool,
    /// Add the small- or large-x asymptotic form as a third column.
    #[arg(long)]
    asymptotic: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum LawArg {
    Wd,
    Wl2,
    Gen,
}

#[derive(Debug, Args)]
struct SpacingArgs {
    #[arg(long, value_enum)]
    law: LawArg,
    #[arg(long)]
    beta: u32,
    #[arg(long)]
    gamma: Option<f64>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long, default_value_t = 0.5)]
    n_scale: f64,
    #[arg(long, value_parser = parse_grid, default_value = "0:8:801")]
    grid: Grid,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SpacingMcArgs {
    #[command(flatten)]
    ensemble: EnsembleArgs,
    #[arg(long)]
    k: usize,
    #[arg(long, default_value_t = DEFAULT_BINS)]
    bins: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FitFamilyArg {
    Mp,
    Invchi2,
    Chi2mc,
}

impl From<FitFamilyArg> for FitFamily {
    fn from(f: FitFamilyArg) -> Self {
        match f {
            FitFamilyArg::Mp => FitFamily::Mp,
            FitFamilyArg::Invchi2 => FitFamily::InvChi2,
            FitFamilyArg::Chi2mc => FitFamily::Chi2Mc,
        }
    }
}

#[derive(Debug, Args)]
struct FitArgs {
    /// Returns CSV: header of asset labels, one row per observation.
    #[arg(long, conflicts_with = "spectrum", required_unless_present = "spectrum")]
    input: Option<PathBuf>,
    /// Eigenvalue CSV as written by `synth`; needs `--c`.
    #[arg(long, requires = "c")]
    spectrum: Option<PathBuf>,
    #[arg(long)]
    c: Option<f64>,
    #[arg(long, value_enum)]
    family: FitFamilyArg,
    #[arg(long, default_value_t = 1)]
    trim: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SynthArgs {
    #[command(flatten)]
    ensemble: EnsembleArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FaultArg {
    WdB1,
}

#[derive(Debug, Args)]
struct SelfcheckArgs {
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Corrupt one constant to confirm the suite fails.
    #[arg(long, value_enum, hide = true)]
    inject_fault: Option<FaultArg>,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Runtime(Error),
}

fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Runtime(e)
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::Runtime(Error::Io { path: path.to_path_buf(), source: e })),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::Runtime(Error::Io { path: PathBuf::from("<stdout>"), source: e }))
        }
    }
}

fn json_line<T: serde::Serialize>(value: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| CliError::Runtime(Error::Invalid(e.to_string())))?;
    s.push('\n');
    Ok(s)
}

fn check_bins(bins: usize) -> Result<(), CliError> {
    if bins == 0 {
        return Err(usage("--bins must be positive"));
    }
    Ok(())
}

fn cmd_sample(a: &SampleArgs) -> Result<(), CliError> {
    let config = a.ensemble.config()?;
    check_bins(a.bins)?;
    if a.ensemble.samples < 100 {
        return Err(usage("--samples must be at least 100"));
    }
    let report = run_density_experiment(&config, a.ensemble.samples, a.bins, a.ensemble.seed)?;
    emit(a.out.as_deref(), &json_line(&report)?)
}

fn fmt(v: f64) -> String {
    format!("{v:e}")
}

fn cmd_density(a: &DensityArgs) -> Result<(), CliError> {
    let model = match (a.model, a.gamma) {
        (ModelArg::Mp, Some(_)) => return Err(usage("--gamma is meaningless for --model mp")),
        (ModelArg::Mp, None) => DensityModel::mp(a.c).map_err(usage)?,
        (ModelArg::Gen, None) => return Err(usage("--model gen needs --gamma")),
        (ModelArg::Gen, Some(g)) => DensityModel::gen(g, a.c).map_err(usage)?,
    };
    if a.asymptotic && matches!(a.model, ModelArg::Mp) {
        return Err(usage("--asymptotic is available for --model gen only"));
    }
    let mut out = String::from(if a.theta { "y,theta" } else { "x,rho" });
    if a.asymptotic {
        out.push_str(",asymptotic");
    }
    out.push('\n');
    for x in a.grid.values() {
        let value = if a.theta { model.theta(x)? } else { model.pdf(x)? };
        out.push_str(&format!("{},{}", fmt(x), fmt(value)));
        if a.asymptotic {
            let asym = if a.theta {
                if x == 0.0 { f64::NAN } else { x.abs() * model.asymptotic(x * x)?.value }
            } else if x > 0.0 {
                model.asymptotic(x)?.value
            } else {
                f64::NAN
            };
            out.push_str(&format!(",{}", fmt(asym)));
        }
        out.push('\n');
    }
    emit(a.out.as_deref(), &out)
}

fn cmd_spacing(a: &SpacingArgs) -> Result<(), CliError> {
    let model = match a.law {
        LawArg::Wd => {
            if a.gamma.is_some() || a.m.is_some() {
                return Err(usage("--law wd takes neither --gamma nor --m"));
            }
            SpacingModel::wd(a.beta).map_err(usage)?
        }
        LawArg::Wl2 => {
            if a.gamma.is_some() {
                return Err(usage("--law wl2 takes no --gamma"));
            }
            let m = a.m.ok_or_else(|| usage("--law wl2 needs --m"))?;
            SpacingModel::wl2(a.beta, m, a.n_scale).map_err(usage)?
        }
        LawArg::Gen => {
            let g = a.gamma.ok_or_else(|| usage("--law gen needs --gamma"))?;
            if a.m.is_some() {
                return Err(usage("--law gen takes no --m"));
            }
            SpacingModel::gen(a.beta, g).map_err(usage)?
        }
    };
    if a.grid.min < 0.0 {
        return Err(usage("spacing grid must start at s >= 0"));
    }
    let mut out = String::from("s,p\n");
    for s in a.grid.values() {
        out.push_str(&format!("{},{}\n", fmt(s), fmt(model.pdf(s)?)));
    }
    emit(a.out.as_deref(), &out)
}

fn cmd_spacing_mc(a: &SpacingMcArgs) -> Result<(), CliError> {
    let config = a.ensemble.config()?;
    check_bins(a.bins)?;
    if a.k < 2 || a.k > config.n {
        return Err(usage(format!("--k must satisfy 2 <= k <= n = {}", config.n)));
    }
    if a.ensemble.samples < 10_000 {
        return Err(usage("--samples must be at least 10000 for spacing experiments"));
    }
    let report = run_spacing_experiment(&config, a.k, a.ensemble.samples, a.bins, a.ensemble.seed, None)?;
    emit(a.out.as_deref(), &json_line(&report)?)
}

fn cmd_fit(a: &FitArgs) -> Result<(), CliError> {
    let family = a.family.into();
    let result = match (&a.input, &a.spectrum) {
        (Some(path), None) => {
            if a.c.is_some() {
                return Err(usage("--c is taken from the data with --input"));
            }
            let data = load_returns_csv(path)?;
            if data.is_wide() {
                eprintln!("warning: {} has more assets ({}) than observations ({})", path.display(), data.n_cols, data.t_rows);
            }
            fit_returns(&data, family, a.trim, a.seed)?
        }
        (None, Some(path)) => {
            let c = a.c.ok_or_else(|| usage("--spectrum needs --c"))?;
            if !(c > 0.0 && c < 1.0) {
                return Err(usage(format!("--c must lie in (0, 1), got {c}")));
            }
            let ev = load_spectrum_csv(path)?;
            fit_spectrum(&ev, c, family, a.trim, a.seed)?
        }
        _ => return Err(usage("give exactly one of --input or --spectrum")),
    };
    emit(a.out.as_deref(), &json_line(&result)?)
}

fn cmd_synth(a: &SynthArgs) -> Result<(), CliError> {
    let config = a.ensemble.config()?;
    if a.ensemble.samples == 0 {
        return Err(usage("--samples must be positive"));
    }
    let ev = synthetic_spectrum(&config, a.ensemble.samples, a.ensemble.seed)?;
    match &a.out {
        Some(path) => write_spectrum_csv(path, &ev)?,
        None => {
            let mut text = String::from("eigenvalue\n");
            for v in &ev {
                text.push_str(&fmt(*v));
                text.push('\n');
            }
            emit(None, &text)?;
        }
    }
    Ok(())
}

fn cmd_selfcheck(a: &SelfcheckArgs) -> Result<bool, CliError> {
    let fault = a.inject_fault.map(|f| match f {
        FaultArg::WdB1 => Fault::WdB1,
    });
    let outcomes = run_selfcheck(a.seed, fault);
    emit(None, &format_table(&outcomes))?;
    Ok(outcomes.iter().all(|o| o.passed))
}

/// Parses `args` (program name first), runs the command and returns the exit code.
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
    let result = match &cli.command {
        Command::Sample(a) => cmd_sample(a),
        Command::Density(a) => cmd_density(a),
        Command::Spacing(a) => cmd_spacing(a),
        Command::SpacingMc(a) => cmd_spacing_mc(a),
        Command::Fit(a) => cmd_fit(a),
        Command::Synth(a) => cmd_synth(a),
        Command::Selfcheck(a) => match cmd_selfcheck(a) {
            Ok(true) => Ok(()),
            Ok(false) => return EXIT_RUNTIME,
            Err(e) => Err(e),
        },
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
        Err(CliError::Runtime(e)) => {
            eprintln!("error: {e}");
            EXIT_RUNTIME
        }
    }
}
