//! The `ivw-agreement` command line.
//!
//! Exit codes: 0 on success, 2 for usage and validation errors, 3 for
//! numerical degeneracy (constant axis, rank-deficient draw).

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::agreement::{
    analyze, predicted_covariance, AgreementResult, AxisSpec, Direction, Method, WeightPair,
    WithinSubjectVariance,
};
use crate::error::Error;
use crate::io::{self, PlotOptions, TableRow};
use crate::synthesis::{self, CasePreset, SyntheticConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "ivw-agreement",
    version,
    about = "Bland-Altman analysis against the mean or the inverse-variance weighted average"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Analyze paired measurements from a `subject,a,b` CSV file.
    Analyze(AnalyzeArgs),
    /// Generate one synthetic case and analyze it with both axes.
    Simulate(SimulateArgs),
    /// Print r, p and k for the four synthetic cases with both axes.
    Table1,
    /// Covariance between the difference and a weighted average when the
    /// methods differ only in measurement error.
    PredictCov(PredictArgs),
    /// Pooled within-subject variance per method from a replicate CSV file.
    ReplicateVariance(ReplicateArgs),
}

#[derive(Debug, Args)]
struct AnalyzeArgs {
    /// Paired measurements (`subject,a,b`).
    #[arg(long)]
    input: PathBuf,
    /// Replicate measurements (`subject,method,replicate,value`) for the weights.
    #[arg(long, conflicts_with_all = ["swa", "swb"])]
    replicates: Option<PathBuf>,
    /// Within-subject variance of method A.
    #[arg(long, requires = "swb")]
    swa: Option<f64>,
    /// Within-subject variance of method B.
    #[arg(long, requires = "swa")]
    swb: Option<f64>,
    /// Plot against the arithmetic mean instead of the weighted average.
    #[arg(long)]
    classic: bool,
    #[arg(long, default_value = "b-a", value_parser = parse_direction)]
    direction: Direction,
    #[arg(long, default_value_t = 0.95)]
    confidence: f64,
    /// Write an SVG plot here.
    #[arg(long)]
    plot: Option<PathBuf>,
    /// Write a JSON report here.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SimulateArgs {
    #[arg(long, value_parser = parse_case)]
    case: CasePreset,
    #[arg(long, default_value_t = 100)]
    n: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long = "sigma-c", default_value_t = 10.0)]
    sigma_c: f64,
    #[arg(long = "exact-moments", default_value_t = true, action = clap::ArgAction::Set)]
    exact_moments: bool,
    #[arg(long, default_value = "b-a", value_parser = parse_direction)]
    direction: Direction,
    #[arg(long, default_value_t = 0.95)]
    confidence: f64,
    /// Output directory; created if missing.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct PredictArgs {
    #[arg(long)]
    alpha: f64,
    #[arg(long)]
    beta: f64,
    #[arg(long)]
    swa: f64,
    #[arg(long)]
    swb: f64,
}

#[derive(Debug, Args)]
struct ReplicateArgs {
    #[arg(long)]
    input: PathBuf,
}

fn parse_direction(s: &str) -> Result<Direction, String> {
    s.parse()
}

fn parse_case(s: &str) -> Result<CasePreset, String> {
    CasePreset::from_label(s).ok_or_else(|| format!("unknown case {s:?}, expected a, b, c or d"))
}

struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: if e.is_numerical() {
                EXIT_NUMERICAL
            } else {
                EXIT_USAGE
            },
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

type Outcome = std::result::Result<(), Failure>;

/// Entry point for the binary.
pub fn main() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

/// Parses `args` (including the program name) and runs the subcommand.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    let outcome = match cli.command {
        Command::Analyze(a) => run_analyze(a, out, err),
        Command::Simulate(a) => run_simulate(a, out),
        Command::Table1 => run_table1(out),
        Command::PredictCov(a) => run_predict(a, out),
        Command::ReplicateVariance(a) => run_replicate_variance(a, out),
    };
    match outcome {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn run_analyze(args: AnalyzeArgs, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let sample = io::read_paired(&args.input)?;
    let has_variance_flags = args.replicates.is_some() || args.swa.is_some();
    let axis = if args.classic {
        if has_variance_flags {
            let _ = writeln!(
                err,
                "warning: --classic plots against the mean; ignoring --replicates/--swa/--swb"
            );
        }
        AxisSpec::ArithmeticMean
    } else {
        let variances = match (&args.replicates, args.swa, args.swb) {
            (Some(path), _, _) => io::read_replicated(path)?.within_subject_variances(),
            (None, Some(swa), Some(swb)) => WithinSubjectVariance::new(swa, swb),
            _ => {
                return Err(usage(
                    "the weighted axis needs within-subject variances: pass --replicates FILE or --swa V --swb V (or --classic)",
                ))
            }
        }
        .map_err(|e| usage(format!("--swa/--swb/--replicates: {e}")))?;
        AxisSpec::inverse_variance(&variances)
    };
    if !(args.confidence > 0.0 && args.confidence < 1.0) {
        return Err(usage(format!(
            "--confidence must lie in (0, 1), got {}",
            args.confidence
        )));
    }
    let result = analyze(&sample, axis, args.direction, args.confidence)?;
    write_summary(out, &result);
    if let Some(path) = &args.report {
        io::write_text(path, &io::emit_report(&result))?;
    }
    if let Some(path) = &args.plot {
        io::write_svg(&result, path, PlotOptions::default())?;
    }
    Ok(())
}

fn write_summary(out: &mut dyn Write, res: &AgreementResult) {
    let axis = match res.axis {
        AxisSpec::ArithmeticMean => "mean".to_string(),
        AxisSpec::WeightedAverage(w) => {
            format!("weighted average (alpha = {}, beta = {})", w.alpha, w.beta)
        }
    };
    let f = &res.fit;
    let _ = writeln!(out, "n          {}", res.n());
    let _ = writeln!(out, "axis       {axis}");
    let _ = writeln!(out, "direction  {}", res.direction);
    let _ = writeln!(out, "bias       {:.4}", res.bias);
    let _ = writeln!(out, "loa        {:.4} {:.4}", res.loa_low, res.loa_high);
    let _ = writeln!(out, "r          {:.4}", f.r);
    let _ = writeln!(out, "p          {:.4}", f.p_value);
    let _ = writeln!(
        out,
        "k          {:.4} ({:.0}% CI {:.4} {:.4})",
        f.slope,
        100.0 * f.confidence,
        f.ci_low,
        f.ci_high
    );
}

/// Classic and inverse-variance weighted analyses of one synthetic configuration.
pub fn simulate_case(
    config: &SyntheticConfig,
    direction: Direction,
    confidence: f64,
) -> crate::Result<(crate::PairedSample, AgreementResult, AgreementResult)> {
    let sample = synthesis::generate(config)?;
    let (va, vb) = config.error_variances();
    let weighted_axis = AxisSpec::inverse_variance(&WithinSubjectVariance::new(va, vb)?);
    let classic = analyze(&sample, AxisSpec::ArithmeticMean, direction, confidence)?;
    let weighted = analyze(&sample, weighted_axis, direction, confidence)?;
    Ok((sample, classic, weighted))
}

fn run_simulate(args: SimulateArgs, out: &mut dyn Write) -> Outcome {
    let config = SyntheticConfig {
        n: args.n,
        sigma_c: args.sigma_c,
        seed: args.seed,
        exact_moments: args.exact_moments,
        ..args.case.config()
    };
    config.validate().map_err(|e| usage(e.to_string()))?;
    let (sample, classic, weighted) = simulate_case(&config, args.direction, args.confidence)?;

    std::fs::create_dir_all(&args.out).map_err(|e| Error::io(&args.out, e))?;
    let dir: &Path = &args.out;
    io::write_text(dir.join("pairs.csv"), &io::format_paired(&sample))?;
    for (name, res) in [("classic", &classic), ("weighted", &weighted)] {
        io::write_text(dir.join(format!("{name}.json")), &io::emit_report(res))?;
        io::write_svg(res, dir.join(format!("{name}.svg")), PlotOptions::default())?;
    }
    let rows = [TableRow {
        label: args.case.label().to_string(),
        classic: &classic,
        weighted: &weighted,
    }];
    let _ = write!(out, "{}", io::format_table(&rows));
    let _ = writeln!(out, "wrote pairs.csv, classic.json, weighted.json, classic.svg, weighted.svg to {}", dir.display());
    Ok(())
}

/// The four synthetic cases at their defaults (n = 100, σ_c = 10, exact moments, B − A).
pub fn table1_results() -> crate::Result<Vec<(CasePreset, AgreementResult, AgreementResult)>> {
    CasePreset::ALL
        .into_iter()
        .map(|case| {
            let (_, classic, weighted) = simulate_case(&case.config(), Direction::BMinusA, 0.95)?;
            Ok((case, classic, weighted))
        })
        .collect()
}

fn run_table1(out: &mut dyn Write) -> Outcome {
    let results = table1_results()?;
    let rows: Vec<TableRow<'_>> = results
        .iter()
        .map(|(case, classic, weighted)| TableRow {
            label: case.label().to_string(),
            classic,
            weighted,
        })
        .collect();
    let _ = write!(out, "{}", io::format_table(&rows));
    Ok(())
}

fn run_predict(args: PredictArgs, out: &mut dyn Write) -> Outcome {
    let w = WeightPair::new(args.alpha, args.beta).map_err(|e| usage(format!("--alpha/--beta: {e}")))?;
    let v = WithinSubjectVariance::new(args.swa, args.swb)
        .map_err(|e| usage(format!("--swa/--swb: {e}")))?;
    let cov = predicted_covariance(w, &v);
    let _ = writeln!(out, "cov(A - B, axis) = {}", cov + 0.0);
    let _ = writeln!(out, "cov(B - A, axis) = {}", -cov + 0.0);
    Ok(())
}

fn run_replicate_variance(args: ReplicateArgs, out: &mut dyn Write) -> Outcome {
    let reps = io::read_replicated(&args.input)?;
    let _ = writeln!(out, "subjects {}", reps.subjects().len());
    for method in [Method::A, Method::B] {
        let _ = writeln!(out, "s_w^2({method}) = {}", reps.within_subject_variance(method)?);
    }
    Ok(())
}
