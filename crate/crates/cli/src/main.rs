use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use optiproj::commands::{self, MatrixSource, VerifyArgs};
use optiproj::AppError;
use optiproj_core::SamplerKind;

/// Statistically optimal random projections: minimum-variance and
/// minimum-MSE JL transforms, exact error laws, tail-bound tables, and a
/// deterministic certification suite.
#[derive(Parser)]
#[command(name = "optiproj", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample a projection matrix and write it as CSV
    Sample(SampleCmd),
    /// Project CSV data rows through a matrix
    Project(ProjectCmd),
    /// Print closed-form accuracy statistics for given dimensions
    Analyze(AnalyzeCmd),
    /// Emit a tail-bound comparison table over an epsilon grid
    Compare(CompareCmd),
    /// Run the statistical certification suite (exit 0 iff all checks pass)
    Verify(VerifyCmd),
}

#[derive(Args)]
struct SampleCmd {
    /// Sampler kind: best-variance | best-mse | gaussian
    #[arg(long, default_value = "best-variance")]
    kind: String,
    /// Data dimension
    #[arg(long)]
    m: usize,
    /// Embedding dimension (n <= m)
    #[arg(long)]
    n: usize,
    /// Random seed (defaults to OPTIPROJ_SEED when set)
    #[arg(long, env = "OPTIPROJ_SEED", default_value_t = 0)]
    seed: u64,
    /// Stream (shard) index of the random source
    #[arg(long, default_value_t = 0)]
    stream: u64,
    /// Output file; stdout when omitted
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ProjectCmd {
    /// Matrix CSV file (as written by `sample`)
    #[arg(long, conflicts_with_all = ["kind", "m", "n"])]
    matrix: Option<PathBuf>,
    /// Sampler kind, when sampling the matrix in place
    #[arg(long, requires = "m", requires = "n")]
    kind: Option<String>,
    /// Data dimension, when sampling the matrix in place
    #[arg(long)]
    m: Option<usize>,
    /// Embedding dimension, when sampling the matrix in place
    #[arg(long)]
    n: Option<usize>,
    /// Random seed (defaults to OPTIPROJ_SEED when set)
    #[arg(long, env = "OPTIPROJ_SEED", default_value_t = 0)]
    seed: u64,
    /// Stream (shard) index of the random source
    #[arg(long, default_value_t = 0)]
    stream: u64,
    /// Input CSV of data rows, one vector of length m per line
    #[arg(long)]
    input: PathBuf,
    /// Output file; stdout when omitted
    #[arg(long)]
    output: Option<PathBuf>,
    /// Append a squared-norm distortion column (empty for zero rows)
    #[arg(long)]
    report_distortion: bool,
}

#[derive(Args)]
struct AnalyzeCmd {
    /// Data dimension
    #[arg(long)]
    m: usize,
    /// Embedding dimension (n <= m)
    #[arg(long)]
    n: usize,
    /// Bernstein-bound constant multiplier
    #[arg(long, default_value_t = 1.0)]
    kappa: f64,
}

#[derive(Args)]
struct CompareCmd {
    /// Data dimension
    #[arg(long)]
    m: usize,
    /// Embedding dimension (n <= m)
    #[arg(long)]
    n: usize,
    /// Smallest epsilon of the log-spaced grid
    #[arg(long, default_value_t = 0.01)]
    eps_min: f64,
    /// Largest epsilon of the log-spaced grid
    #[arg(long, default_value_t = 1.0)]
    eps_max: f64,
    /// Number of grid points
    #[arg(long, default_value_t = 100)]
    eps_steps: usize,
    /// Bernstein-bound constant multiplier
    #[arg(long, default_value_t = 1.0)]
    kappa: f64,
    /// Output file; stdout when omitted
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyCmd {
    /// Data dimension of the moment experiments
    #[arg(long, default_value_t = 100)]
    m: usize,
    /// Embedding dimension of the moment experiments
    #[arg(long, default_value_t = 20)]
    n: usize,
    /// Random seed (defaults to OPTIPROJ_SEED when set)
    #[arg(long, env = "OPTIPROJ_SEED", default_value_t = 0)]
    seed: u64,
    /// Worker shards; never changes results, only the schedule
    #[arg(long, default_value_t = 1)]
    shards: usize,
    /// Monte Carlo samples of the moment experiments
    #[arg(long, default_value_t = 200_000)]
    samples: usize,
    /// Multiply every sampler scale by this factor (negative control;
    /// values other than 1 must fail the error-law checks)
    #[arg(long, default_value_t = 1.0)]
    corrupt_scale: f64,
    /// Largest m of the positive-semidefiniteness grid
    #[arg(long, default_value_t = 200)]
    psd_max_m: usize,
}

fn dispatch(cli: Cli) -> Result<(), AppError> {
    match cli.command {
        Command::Sample(cmd) => {
            let kind = SamplerKind::parse(&cmd.kind)?;
            commands::cmd_sample(kind, cmd.m, cmd.n, cmd.seed, cmd.stream, cmd.output.as_deref())
        }
        Command::Project(cmd) => {
            let source = match (cmd.matrix, cmd.kind) {
                (Some(path), None) => MatrixSource::File(path),
                (None, Some(kind)) => MatrixSource::Sampled {
                    kind: SamplerKind::parse(&kind)?,
                    m: cmd.m.expect("clap enforces --m with --kind"),
                    n: cmd.n.expect("clap enforces --n with --kind"),
                    seed: cmd.seed,
                    stream: cmd.stream,
                },
                _ => {
                    return Err(AppError::Input(
                        "provide either --matrix FILE or --kind with --m and --n".into(),
                    ))
                }
            };
            commands::cmd_project(source, &cmd.input, cmd.output.as_deref(), cmd.report_distortion)
        }
        Command::Analyze(cmd) => commands::cmd_analyze(cmd.m, cmd.n, cmd.kappa),
        Command::Compare(cmd) => commands::cmd_compare(
            cmd.m,
            cmd.n,
            cmd.eps_min,
            cmd.eps_max,
            cmd.eps_steps,
            cmd.kappa,
            cmd.output.as_deref(),
        ),
        Command::Verify(cmd) => commands::cmd_verify(VerifyArgs {
            m: cmd.m,
            n: cmd.n,
            seed: cmd.seed,
            shards: cmd.shards,
            samples: cmd.samples,
            corrupt_scale: cmd.corrupt_scale,
            psd_max_m: cmd.psd_max_m,
        }),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(AppError::VerificationFailed) => ExitCode::from(1),
        Err(AppError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
