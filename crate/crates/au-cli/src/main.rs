//! `au` — command-line front end for the alpha-unit toolkit.
//!
//! Subcommands: `fit` (model comparison on a CSV column), `sample` (seeded
//! random generation), `eval` (distribution quantities), `simulate` (the
//! estimator Monte Carlo study), and `spc` (control-chart limits and series
//! screening).
//!
//! Exit codes: 0 success, 1 usage error, 2 data error, 3 numerical
//! non-convergence.

mod csv_io;
mod report;

use alpha_unit::au::AlphaUnit;
use alpha_unit::competitors::{compare_models, UnitFamily};
use alpha_unit::data::{minmax_transform, squeeze_unit_data, UnitSample};
use alpha_unit::estimation::{fit_alpha_unit, mle_alpha, EstimatorMethod};
use alpha_unit::numeric::Tolerance;
use alpha_unit::sampling::{sample_au, RandomStream};
use alpha_unit::simulation::{run_full_study, SimConfig};
use alpha_unit::spc::{control_limits, evaluate_series, ChartSpec, LimitMethod};
use clap::error::ErrorKind;
use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use report::{write_output, Report};
use serde_json::json;
use std::fmt;
use std::path::PathBuf;

/// Environment variable consulted for the default seed.
const SEED_ENV: &str = "AU_SEED";

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Data(String),
    Numeric(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Data(_) => 2,
            CliError::Numeric(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Data(m) | CliError::Numeric(m) => f.write_str(m),
        }
    }
}

impl From<alpha_unit::Error> for CliError {
    fn from(err: alpha_unit::Error) -> Self {
        use alpha_unit::Error as E;
        match err {
            E::Domain(_) => CliError::Usage(err.to_string()),
            E::NoSignChange { .. } | E::NoConvergence { .. } => CliError::Numeric(err.to_string()),
            E::EmptySample
            | E::OutOfUnitRange { .. }
            | E::DegenerateSample
            | E::BoundaryValue { .. }
            | E::DegenerateRange => CliError::Data(err.to_string()),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "au",
    version,
    about = "Alpha-Unit distribution toolkit: fitting, sampling, simulation, and control charts"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fit unit distributions to a CSV column and rank them by AIC
    Fit(FitArgs),
    /// Draw a seeded random sample and emit it as CSV
    Sample(SampleArgs),
    /// Evaluate distribution quantities at a given parameter
    Eval(EvalArgs),
    /// Run the estimator Monte Carlo study over an (alpha, n) grid
    Simulate(SimulateArgs),
    /// Compute control-chart limits and screen a series
    Spc(SpcArgs),
}

#[derive(Args)]
struct DataArgs {
    /// CSV file with the observations
    #[arg(long)]
    data: PathBuf,
    /// Column name or zero-based index
    #[arg(long, default_value = "0")]
    column: String,
    /// Min-max standardize the column onto the unit interval first
    #[arg(long)]
    minmax: bool,
    /// Squeeze raw unit data away from the 0/1 boundaries
    #[arg(long, conflicts_with = "no_squeeze")]
    squeeze: bool,
    /// Keep exact 0/1 values after --minmax (likelihood commands will refuse)
    #[arg(long)]
    no_squeeze: bool,
}

impl DataArgs {
    fn load(&self) -> Result<UnitSample, CliError> {
        let values = csv_io::ingest_csv(&self.data, &self.column)?;
        let source = self.data.display().to_string();
        if self.minmax {
            // min-max necessarily creates one 0 and one 1, so the squeeze is
            // on unless explicitly suppressed
            Ok(minmax_transform(&values, !self.no_squeeze)?)
        } else if self.squeeze {
            Ok(squeeze_unit_data(&values, source)?)
        } else {
            Ok(UnitSample::new(values, source)?)
        }
    }

    fn describe(&self) -> serde_json::Value {
        json!({
            "data": self.data.display().to_string(),
            "column": self.column,
            "minmax": self.minmax,
            "squeeze": self.squeeze,
            "no_squeeze": self.no_squeeze,
        })
    }
}

#[derive(Args)]
struct FitArgs {
    #[command(flatten)]
    data: DataArgs,
    /// Comma-separated families: au,be,kum,logitno,simplex,uhn,ulindley
    #[arg(long, value_delimiter = ',', default_value = "au,be,kum,logitno,simplex,uhn,ulindley")]
    models: Vec<String>,
    /// Confidence level for the AU intervals
    #[arg(long, default_value_t = 0.95)]
    conf: f64,
    /// Write the JSON report here ("-" for stdout)
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct SampleArgs {
    /// AU scale parameter
    #[arg(long)]
    alpha: f64,
    /// Number of draws
    #[arg(long)]
    n: usize,
    /// Seed (default: the AU_SEED environment variable, then 0)
    #[arg(long)]
    seed: Option<u64>,
    /// Stream id, for carving independent substreams out of one seed
    #[arg(long, default_value_t = 0)]
    stream: u64,
    /// CSV destination ("-" for stdout)
    #[arg(long, default_value = "-")]
    out: PathBuf,
    /// Write the JSON report here ("-" for stdout)
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
#[command(group(
    ArgGroup::new("quantity")
        .required(true)
        .args(["pdf", "cdf", "quantile", "mean", "variance", "mode", "moment", "mgf"]),
))]
struct EvalArgs {
    /// AU scale parameter
    #[arg(long)]
    alpha: f64,
    /// Density at --at X
    #[arg(long)]
    pdf: bool,
    /// Distribution function at --at X
    #[arg(long)]
    cdf: bool,
    /// Quantile at probability --at P
    #[arg(long)]
    quantile: bool,
    /// Mean of the distribution
    #[arg(long)]
    mean: bool,
    /// Variance of the distribution
    #[arg(long)]
    variance: bool,
    /// Mode of the density
    #[arg(long)]
    mode: bool,
    /// r-th raw moment E[X^r]
    #[arg(long, value_name = "R")]
    moment: Option<f64>,
    /// Moment-generating function at T
    #[arg(long, value_name = "T")]
    mgf: Option<f64>,
    /// Evaluation point for --pdf/--cdf/--quantile
    #[arg(long, value_name = "X")]
    at: Option<f64>,
    /// Write the JSON report here ("-" for stdout)
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct SimulateArgs {
    /// Comma-separated alpha grid
    #[arg(long, value_delimiter = ',', default_values_t = [0.1, 0.3, 0.5, 0.7, 1.1, 1.5])]
    alphas: Vec<f64>,
    /// Comma-separated sample sizes
    #[arg(long, value_delimiter = ',', default_values_t = [100usize, 200, 500])]
    ns: Vec<usize>,
    /// Monte Carlo repetitions per cell
    #[arg(long, default_value_t = 1000)]
    reps: usize,
    /// Confidence level for the delta-method intervals
    #[arg(long, default_value_t = 0.95)]
    conf: f64,
    /// Master seed (default: the AU_SEED environment variable, then 0)
    #[arg(long)]
    seed: Option<u64>,
    /// Cell table CSV destination ("-" for stdout)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write the JSON report here ("-" for stdout)
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    /// Highest-density interval limits
    Hdi,
    /// Equal-tailed quantile limits
    Tails,
}

#[derive(Args)]
#[command(group(ArgGroup::new("incontrol").required(true).args(["alpha", "fit"])))]
struct SpcArgs {
    /// CSV file with the monitored series (omit to only print limits)
    #[arg(long)]
    data: Option<PathBuf>,
    /// Column name or zero-based index
    #[arg(long, default_value = "0")]
    column: String,
    /// Min-max standardize the series first
    #[arg(long)]
    minmax: bool,
    /// Squeeze raw unit data away from the 0/1 boundaries
    #[arg(long, conflicts_with = "no_squeeze")]
    squeeze: bool,
    /// Keep exact 0/1 values after --minmax
    #[arg(long)]
    no_squeeze: bool,
    /// In-control parameter
    #[arg(long)]
    alpha: Option<f64>,
    /// Estimate the in-control parameter from the series (requires --data)
    #[arg(long, requires = "data")]
    fit: bool,
    /// False-alarm rate
    #[arg(long, default_value_t = 0.01)]
    pi: f64,
    /// Limit construction
    #[arg(long, value_enum, default_value_t = MethodArg::Hdi)]
    method: MethodArg,
    /// Chart CSV destination ("-" for stdout)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write the JSON report here ("-" for stdout)
    #[arg(long)]
    json: Option<PathBuf>,
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            if matches!(err.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{err}");
                std::process::exit(0);
            }
            eprintln!("{err}");
            std::process::exit(1);
        }
    };
    let result = match cli.command {
        Command::Fit(args) => run_fit(args),
        Command::Sample(args) => run_sample(args),
        Command::Eval(args) => run_eval(args),
        Command::Simulate(args) => run_simulate(args),
        Command::Spc(args) => run_spc(args),
    };
    if let Err(err) = result {
        eprintln!("error: {err}");
        std::process::exit(err.code());
    }
}

fn resolve_seed(flag: Option<u64>) -> u64 {
    flag.or_else(|| std::env::var(SEED_ENV).ok().and_then(|s| s.parse().ok()))
        .unwrap_or(0)
}

fn parse_families(models: &[String]) -> Result<Vec<UnitFamily>, CliError> {
    models
        .iter()
        .map(|m| {
            UnitFamily::parse(m).ok_or_else(|| {
                CliError::Usage(format!(
                    "unknown model '{m}'; choose from au, be, kum, logitno, simplex, uhn, ulindley"
                ))
            })
        })
        .collect()
}

fn run_fit(args: FitArgs) -> Result<(), CliError> {
    let families = parse_families(&args.models)?;
    if !(args.conf > 0.0 && args.conf < 1.0) {
        return Err(CliError::Usage(format!("--conf must lie in (0,1), got {}", args.conf)));
    }
    let sample = args.data.load()?;
    let ranking = compare_models(&sample, &families)?;
    let au_fit = fit_alpha_unit(&sample, EstimatorMethod::Mle, args.conf)?;

    println!("model ranking by AIC ({} observations):", sample.len());
    println!("{:<4}{:<10}{:>14}{:>12}{:>12}  parameters", "#", "model", "loglik", "AIC", "BIC");
    for (rank, fit) in ranking.iter().enumerate() {
        let params: Vec<String> = fit
            .family
            .param_names()
            .iter()
            .zip(&fit.params)
            .enumerate()
            .map(|(i, (name, value))| {
                match &fit.se {
                    Some(se) => format!("{name}={value:.6} ({:.3e})", se[i]),
                    None => format!("{name}={value:.6}"),
                }
            })
            .collect();
        let mut flags = String::new();
        if !fit.converged {
            flags.push_str(" [not converged]");
        }
        if fit.boundary {
            flags.push_str(" [boundary]");
        }
        println!(
            "{:<4}{:<10}{:>14.4}{:>12.4}{:>12.4}  {}{}",
            rank + 1,
            fit.family.name(),
            fit.loglik,
            fit.aic,
            fit.bic,
            params.join(", "),
            flags
        );
    }
    println!();
    println!("AU fit: alpha = {:.6} (se {:.6})", au_fit.alpha_hat, au_fit.se);
    println!(
        "  {:.0}% Wald interval:  [{:.6}, {:.6}]",
        100.0 * au_fit.conf_level,
        au_fit.ci_wald.0,
        au_fit.ci_wald.1
    );
    println!(
        "  {:.0}% delta interval: [{:.6}, {:.6}]",
        100.0 * au_fit.conf_level,
        au_fit.ci_delta.0,
        au_fit.ci_delta.1
    );

    if let Some(path) = &args.json {
        let mut inputs = args.data.describe();
        inputs["models"] = json!(args.models);
        inputs["conf"] = json!(args.conf);
        inputs["n"] = json!(sample.len());
        inputs["squeezed"] = json!(sample.squeezed());
        let report = Report::new(
            "fit",
            inputs,
            json!({ "ranking": ranking, "alpha_unit_fit": au_fit }),
            None,
        );
        write_output(path, &report.render()?)?;
    }
    Ok(())
}

fn run_sample(args: SampleArgs) -> Result<(), CliError> {
    if args.n == 0 {
        return Err(CliError::Usage("--n must be at least 1".into()));
    }
    let params = AlphaUnit::new(args.alpha)?;
    let seed = resolve_seed(args.seed);
    let mut stream = RandomStream::new(seed, args.stream);
    let batch = sample_au(params, &mut stream, args.n)?;
    write_output(&args.out, &csv_io::values_csv(&batch.values))?;
    if let Some(path) = &args.json {
        let report = Report::new(
            "sample",
            json!({ "alpha": args.alpha, "n": args.n, "stream": args.stream }),
            json!({ "values": batch.values }),
            Some(seed),
        );
        write_output(path, &report.render()?)?;
    }
    Ok(())
}

fn run_eval(args: EvalArgs) -> Result<(), CliError> {
    let au = AlphaUnit::new(args.alpha)?;
    let need_at = |what: &str| {
        args.at
            .ok_or_else(|| CliError::Usage(format!("--{what} needs an evaluation point: --at X")))
    };
    let (name, value) = if args.pdf {
        ("pdf", au.pdf(need_at("pdf")?)?)
    } else if args.cdf {
        ("cdf", au.cdf(need_at("cdf")?)?)
    } else if args.quantile {
        ("quantile", au.quantile(need_at("quantile")?)?)
    } else if args.mean {
        ("mean", au.mean())
    } else if args.variance {
        ("variance", au.variance())
    } else if args.mode {
        ("mode", au.mode())
    } else if let Some(r) = args.moment {
        ("moment", au.moment(r)?)
    } else if let Some(t) = args.mgf {
        ("mgf", au.mgf(t, &Tolerance::default()))
    } else {
        unreachable!("clap enforces the quantity group");
    };
    println!("{name} = {value}");
    if let Some(path) = &args.json {
        let report = Report::new(
            "eval",
            json!({
                "alpha": args.alpha,
                "quantity": name,
                "at": args.at,
                "moment_order": args.moment,
                "mgf_t": args.mgf,
            }),
            json!({ name: value }),
            None,
        );
        write_output(path, &report.render()?)?;
    }
    Ok(())
}

fn run_simulate(args: SimulateArgs) -> Result<(), CliError> {
    let seed = resolve_seed(args.seed);
    let config = SimConfig {
        alphas: args.alphas.clone(),
        ns: args.ns.clone(),
        repetitions: args.reps,
        conf_level: args.conf,
        master_seed: seed,
    };
    let report = run_full_study(&config)?;

    println!(
        "{:>7}{:>6}{:>8}{:>14}{:>14}{:>14}{:>12}",
        "alpha", "n", "method", "estimate", "bias", "mse", "ci_length"
    );
    for cell in &report.cells {
        let method = match cell.method {
            EstimatorMethod::Mle => "MLE",
            EstimatorMethod::Umvue => "UMVUE",
        };
        let ci = cell.ci_length.map_or(String::new(), |l| format!("{l:.4}"));
        println!(
            "{:>7}{:>6}{:>8}{:>14.6}{:>14.4e}{:>14.4e}{:>12}",
            cell.alpha, cell.n, method, cell.avg_estimate, cell.bias, cell.mse, ci
        );
    }
    for (n, iqr) in &report.iqr_by_n {
        println!("IQR of (MLE - UMVUE) at n={n}: {iqr:.5}");
    }

    if let Some(path) = &args.out {
        write_output(path, &csv_io::study_csv(&report.cells))?;
    }
    if let Some(path) = &args.json {
        let json_report = Report::new(
            "simulate",
            json!({
                "alphas": args.alphas,
                "ns": args.ns,
                "reps": args.reps,
                "conf": args.conf,
            }),
            json!({ "cells": report.cells, "iqr_by_n": report.iqr_by_n }),
            Some(seed),
        );
        write_output(path, &json_report.render()?)?;
    }
    Ok(())
}

fn run_spc(args: SpcArgs) -> Result<(), CliError> {
    if !(args.pi > 0.0 && args.pi < 1.0) {
        return Err(CliError::Usage(format!("--pi must lie in (0,1), got {}", args.pi)));
    }
    let sample = match &args.data {
        Some(path) => {
            let data_args = DataArgs {
                data: path.clone(),
                column: args.column.clone(),
                minmax: args.minmax,
                squeeze: args.squeeze,
                no_squeeze: args.no_squeeze,
            };
            Some(data_args.load()?)
        }
        None => None,
    };
    let alpha = match (args.alpha, args.fit) {
        (Some(a), _) => a,
        (None, true) => {
            let sample = sample.as_ref().expect("clap: --fit requires --data");
            mle_alpha(sample)?
        }
        (None, false) => unreachable!("clap enforces the in-control group"),
    };
    let method = match args.method {
        MethodArg::Hdi => LimitMethod::Hdi,
        MethodArg::Tails => LimitMethod::EqualTailed,
    };
    let spec = ChartSpec::new(alpha, args.pi, method)?;
    let limits = control_limits(&spec)?;

    println!("alpha = {alpha}");
    println!("LCL = {}", limits.lcl);
    println!("CL  = {}", limits.cl);
    println!("UCL = {}", limits.ucl);

    let evaluation = match &sample {
        Some(s) => {
            let eval = evaluate_series(s.values(), &limits)?;
            println!(
                "alarms: {} of {} observations ({:.2}%)",
                eval.alarm_count,
                eval.n,
                100.0 * eval.alarm_rate
            );
            if let Some(path) = &args.out {
                write_output(path, &csv_io::chart_csv(s.values(), &eval.alarm_indices))?;
            }
            Some(eval)
        }
        None => None,
    };

    if let Some(path) = &args.json {
        let report = Report::new(
            "spc",
            json!({
                "data": args.data.as_ref().map(|p| p.display().to_string()),
                "column": args.column,
                "minmax": args.minmax,
                "alpha": args.alpha,
                "fit": args.fit,
                "pi": args.pi,
                "method": match method {
                    LimitMethod::Hdi => "hdi",
                    LimitMethod::EqualTailed => "tails",
                },
            }),
            json!({ "alpha": alpha, "limits": limits, "evaluation": evaluation }),
            None,
        );
        write_output(path, &report.render()?)?;
    }
    Ok(())
}
