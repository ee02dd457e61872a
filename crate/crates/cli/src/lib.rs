//! Command-line interface: every library operation behind a verb-noun
//! grammar (`test z`, `bf binomial`, `sim stopping`, …) plus `reproduce`
//! commands that regenerate the figure and table datasets as CSV files.
//!
//! Output is a JSON envelope by default (`--format csv` for a flat
//! projection). Exit codes: 0 success, 1 runtime/numeric failure, 2 usage
//! error. Seeds come from `--seed`, then the `INFERLAB_SEED` environment
//! variable, then a fixed default.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

pub mod commands;
pub mod envelope;
pub mod reproduce;

pub use envelope::OutputEnvelope;

/// Seed used when neither `--seed` nor `INFERLAB_SEED` is given.
pub const DEFAULT_SEED: u64 = 1;

#[derive(Debug)]
pub enum CliError {
    /// Bad arguments or domain errors: exit 2.
    Usage(String),
    /// Numeric or I/O failure at runtime: exit 1.
    Runtime(String),
}

impl From<inferlab::Error> for CliError {
    fn from(e: inferlab::Error) -> Self {
        match e {
            inferlab::Error::QuadratureNonConvergence { .. }
            | inferlab::Error::NonFiniteIntegrand { .. } => CliError::Runtime(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Runtime(e.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(
    name = "inferlab",
    version,
    about = "Severity assessments, Bayes factors, and Monte Carlo studies of p-value behavior"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format for the result envelope
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,

    /// Output file (or output directory for `reproduce`, default ./out)
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Post-data severity of a directional claim about a normal mean
    Severity(SeverityArgs),
    /// Long-run power calculations
    Power(PowerArgs),
    /// Frequentist tests on summary statistics
    Test(TestArgs),
    /// Bayes factors
    Bf(BfArgs),
    /// Seeded Monte Carlo simulations
    Sim(SimArgs),
    /// Regenerate figure/table datasets as CSV plus a manifest
    Reproduce(ReproduceArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum DirectionArg {
    /// Claim μ > μ0 + γ
    Exceeds,
    /// Claim μ < μ0 + γ
    Below,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum TailArg {
    Greater,
    Less,
    TwoSided,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ReportArg {
    /// Report bf10 (evidence for the alternative)
    H1,
    /// Report bf01 (evidence for the null)
    H0,
}

#[derive(Debug, Args)]
#[command(subcommand_negates_reqs = true, args_conflicts_with_subcommands = true)]
pub struct SeverityArgs {
    #[command(subcommand)]
    pub sub: Option<SeveritySub>,

    /// Observed sample mean
    #[arg(long, required = true, allow_negative_numbers = true)]
    pub xbar: Option<f64>,
    /// Null value of the mean
    #[arg(long, required = true, allow_negative_numbers = true)]
    pub mu0: Option<f64>,
    /// Known population SD
    #[arg(long, required = true, allow_negative_numbers = true)]
    pub sigma: Option<f64>,
    /// Sample size
    #[arg(long, required = true)]
    pub n: Option<u64>,
    /// Claimed discrepancy from mu0
    #[arg(long, required = true, allow_negative_numbers = true)]
    pub gamma: Option<f64>,
    /// Claim direction
    #[arg(long, value_enum, default_value = "exceeds")]
    pub direction: DirectionArg,
}

#[derive(Debug, Subcommand)]
pub enum SeveritySub {
    /// Severity over a grid of claimed discrepancies
    Curve(SeverityCurveArgs),
    /// Largest α whose just-significant observation meets a severity target
    Calibrate(CalibrateArgs),
}

#[derive(Debug, Args)]
pub struct SeverityCurveArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub xbar: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub mu0: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub sigma: f64,
    #[arg(long)]
    pub n: u64,
    #[arg(long, value_enum, default_value = "exceeds")]
    pub direction: DirectionArg,
    /// Smallest claimed discrepancy (default: spans xbar ± 6 SE)
    #[arg(long, allow_negative_numbers = true)]
    pub gamma_min: Option<f64>,
    /// Largest claimed discrepancy
    #[arg(long, allow_negative_numbers = true)]
    pub gamma_max: Option<f64>,
    /// Number of grid points
    #[arg(long, default_value_t = 201)]
    pub points: usize,
}

#[derive(Debug, Args)]
pub struct CalibrateArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub mu0: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub sigma: f64,
    #[arg(long)]
    pub n: u64,
    /// Effect of scientific interest (discrepancy from mu0)
    #[arg(long, allow_negative_numbers = true)]
    pub gamma: f64,
    /// Required severity for the claim μ > μ0 + γ
    #[arg(long, allow_negative_numbers = true)]
    pub target: f64,
}

#[derive(Debug, Args)]
pub struct PowerArgs {
    #[command(subcommand)]
    pub sub: PowerSub,
}

#[derive(Debug, Subcommand)]
pub enum PowerSub {
    /// Power of the one-sided z-test at a specified true mean
    Z(PowerZArgs),
}

#[derive(Debug, Args)]
pub struct PowerZArgs {
    /// True mean under which power is evaluated
    #[arg(long, allow_negative_numbers = true)]
    pub mu1: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub mu0: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub sigma: f64,
    #[arg(long)]
    pub n: u64,
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: f64,
}

#[derive(Debug, Args)]
pub struct TestArgs {
    #[command(subcommand)]
    pub sub: TestSub,
}

#[derive(Debug, Subcommand)]
pub enum TestSub {
    /// One-sample z-test with known σ
    Z(TestZArgs),
    /// t-test from an effect summary
    T(TestTArgs),
    /// Two one-sided tests for practical equivalence
    Tost(TostArgs),
}

#[derive(Debug, Args)]
pub struct TestZArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub xbar: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub mu0: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub sigma: f64,
    #[arg(long)]
    pub n: u64,
    #[arg(long, value_enum, default_value = "two-sided")]
    pub tail: TailArg,
}

#[derive(Debug, Args)]
pub struct TestTArgs {
    /// Observed effect (mean difference)
    #[arg(long, allow_negative_numbers = true)]
    pub effect: f64,
    /// Standard error of the effect
    #[arg(long, allow_negative_numbers = true)]
    pub se: f64,
    /// Degrees of freedom
    #[arg(long, allow_negative_numbers = true)]
    pub df: f64,
    /// Null value for the effect
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub null: f64,
    #[arg(long, value_enum, default_value = "two-sided")]
    pub tail: TailArg,
}

#[derive(Debug, Args)]
pub struct TostArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub effect: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub se: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub df: f64,
    /// Lower equivalence bound
    #[arg(long, allow_negative_numbers = true)]
    pub lower: f64,
    /// Upper equivalence bound
    #[arg(long, allow_negative_numbers = true)]
    pub upper: f64,
}

#[derive(Debug, Args)]
pub struct BfArgs {
    #[command(subcommand)]
    pub sub: BfSub,
}

#[derive(Debug, Subcommand)]
pub enum BfSub {
    /// Binomial data: point null against a point, grid, beta, or uniform prior
    Binomial(BfBinomialArgs),
    /// Default t-test with a Cauchy effect-size prior
    Jzs(BfJzsArgs),
    /// Observed effect against an informed prior
    Informed(BfInformedArgs),
    /// JZS Bayes factor as a function of prior width
    WidthCurve(BfWidthCurveArgs),
}

#[derive(Debug, Args)]
pub struct BfBinomialArgs {
    /// Number of heads (successes)
    #[arg(long)]
    pub heads: u64,
    /// Number of flips (trials)
    #[arg(long)]
    pub flips: u64,
    /// Null success probability
    #[arg(long, allow_negative_numbers = true)]
    pub null: f64,
    /// Alternative model: point:θ | grid:FILE | beta:a,b | uniform
    /// (grid FILE is CSV rows `theta,weight`; weights are normalized)
    #[arg(long)]
    pub alt: String,
    #[arg(long, value_enum, default_value = "h1")]
    pub report: ReportArg,
}

#[derive(Debug, Args)]
pub struct BfJzsArgs {
    /// Observed t statistic
    #[arg(long, allow_negative_numbers = true)]
    pub t: f64,
    /// First (or only) group size
    #[arg(long)]
    pub n1: u64,
    /// Second group size for two-sample designs
    #[arg(long)]
    pub n2: Option<u64>,
    /// Cauchy prior scale (default √2/2)
    #[arg(long, allow_negative_numbers = true)]
    pub scale: Option<f64>,
    #[arg(long, value_enum, default_value = "h1")]
    pub report: ReportArg,
}

#[derive(Debug, Args)]
pub struct BfInformedArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub effect: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub se: f64,
    /// Alternative model: halfnormal:s | normal:m,s | uniform:lo,hi
    #[arg(long)]
    pub alt: String,
    #[arg(long, value_enum, default_value = "h1")]
    pub report: ReportArg,
}

#[derive(Debug, Args)]
pub struct BfWidthCurveArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub t: f64,
    #[arg(long)]
    pub n1: u64,
    #[arg(long)]
    pub n2: Option<u64>,
    #[arg(long, allow_negative_numbers = true)]
    pub scale_min: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub scale_max: f64,
    #[arg(long, default_value_t = 100)]
    pub points: usize,
}

#[derive(Debug, Args)]
pub struct SimArgs {
    #[command(subcommand)]
    pub sub: SimSub,
}

#[derive(Debug, Subcommand)]
pub enum SimSub {
    /// Sampling distribution of p at a fixed effect size
    Pcurve(SimPcurveArgs),
    /// Optional stopping under the true null
    Stopping(SimStoppingArgs),
    /// Familywise error across k independent tests
    Family(SimFamilyArgs),
}

#[derive(Debug, Args)]
pub struct SimPcurveArgs {
    /// Standardized effect size of the data-generating process
    #[arg(long, allow_negative_numbers = true)]
    pub delta: f64,
    /// Sample size per replication
    #[arg(long)]
    pub n: u64,
    #[arg(long, default_value_t = 10_000)]
    pub reps: u64,
    #[arg(long, default_value_t = 0.05, allow_negative_numbers = true)]
    pub alpha: f64,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct SimStoppingArgs {
    /// First sample size at which a test is run
    #[arg(long)]
    pub start: u64,
    /// Observations added between successive tests
    #[arg(long, default_value_t = 1)]
    pub step: u64,
    /// Sample-size budget
    #[arg(long)]
    pub max: u64,
    #[arg(long, default_value_t = 10_000)]
    pub reps: u64,
    #[arg(long, default_value_t = 0.05, allow_negative_numbers = true)]
    pub alpha: f64,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("family_size").required(true).args(["k", "factors"])))]
pub struct SimFamilyArgs {
    /// Number of independent tests in the family
    #[arg(long)]
    pub k: Option<u64>,
    /// Derive k from a balanced factorial ANOVA with this many factors
    #[arg(long)]
    pub factors: Option<u32>,
    /// Count only effects involving this factor (1-based index)
    #[arg(long, requires = "factors")]
    pub involving: Option<u32>,
    #[arg(long, default_value_t = 10_000)]
    pub reps: u64,
    #[arg(long, default_value_t = 0.05, allow_negative_numbers = true)]
    pub alpha: f64,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FigureArg {
    /// p-value histograms across effect sizes
    Fig1,
    /// Severity curves for significant observations
    Fig2a,
    /// Severity curves for barely significant observations across n
    Fig2b,
    /// Severity curves for non-significant observations
    Fig2c,
    /// JZS Bayes factor against prior width
    Fig3,
    /// Every anchored value recomputed beside its expected value
    #[value(alias = "examples_table")]
    ExamplesTable,
}

#[derive(Debug, Args)]
pub struct ReproduceArgs {
    /// Which dataset to regenerate
    #[arg(value_enum)]
    pub figure: FigureArg,
    #[arg(long)]
    pub seed: Option<u64>,
}

/// Resolve the seed: explicit flag, then INFERLAB_SEED, then the default.
pub fn resolve_seed(explicit: Option<u64>) -> Result<u64, CliError> {
    if let Some(seed) = explicit {
        return Ok(seed);
    }
    match std::env::var("INFERLAB_SEED") {
        Ok(raw) => raw.trim().parse().map_err(|_| {
            CliError::Usage(format!(
                "INFERLAB_SEED must be an unsigned 64-bit integer, got {raw:?}"
            ))
        }),
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_SEED),
        Err(e) => Err(CliError::Usage(format!("INFERLAB_SEED: {e}"))),
    }
}

/// Parse argv, dispatch, and write the envelope. Returns the process exit
/// code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return 0;
            }
            let rendered = e.render().to_string();
            let first_line = rendered
                .lines()
                .find(|l| !l.trim().is_empty())
                .unwrap_or("invalid arguments")
                .trim()
                .to_string();
            eprintln!("{}", serde_json::json!({ "error": first_line }));
            return 2;
        }
    };

    let format = cli.format;
    let out = cli.out.clone();
    let is_reproduce = matches!(cli.command, Command::Reproduce(_));

    match commands::dispatch(cli) {
        Ok(outcome) => {
            let text = match format {
                Format::Json => outcome.envelope.to_json(),
                Format::Csv => outcome.envelope.to_csv(),
            };
            // `reproduce` interprets --out as its dataset directory, so its
            // envelope always goes to stdout.
            if let (Some(path), false) = (out, is_reproduce) {
                if let Err(e) = std::fs::write(&path, &text) {
                    eprintln!(
                        "{}",
                        serde_json::json!({ "error": format!("{}: {e}", path.display()) })
                    );
                    return 1;
                }
            } else {
                print!("{text}");
            }
            outcome.exit_code
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("{}", serde_json::json!({ "error": msg }));
            2
        }
        Err(CliError::Runtime(msg)) => {
            eprintln!("{}", serde_json::json!({ "error": msg }));
            1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::CliError;

    #[test]
    fn library_errors_map_to_exit_classes() {
        // domain-style errors are usage (exit 2), numeric failures runtime
        let usage: CliError = inferlab::Error::Domain("bad".into()).into();
        assert!(matches!(usage, CliError::Usage(_)));
        let usage: CliError = inferlab::Error::BoundOrder.into();
        assert!(matches!(usage, CliError::Usage(_)));
        let runtime: CliError = inferlab::Error::QuadratureNonConvergence {
            estimate: 1.0,
            tol: 0.5,
            panels: 7,
        }
        .into();
        assert!(matches!(runtime, CliError::Runtime(_)));
        let runtime: CliError = inferlab::Error::NonFiniteIntegrand { at: 0.5 }.into();
        assert!(matches!(runtime, CliError::Runtime(_)));
    }
}
