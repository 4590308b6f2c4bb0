//! The five subcommands: `sample`, `project`, `analyze`, `compare`, `verify`.

use std::io::Write;
use std::path::{Path, PathBuf};

use optiproj_core::analytics::{
    error_distribution, log_grid, min_mse, min_variance, mse_argmin, mse_objective, tail_curve,
    SubGammaParams,
};
use optiproj_core::linalg::{dot, Matrix};
use optiproj_core::projector::{build_sampler, sample_matrix, Dims, SamplerKind};
use optiproj_core::verify::{run_certification_suite, SuiteConfig};
use optiproj_core::RngState;

use crate::csvio;
use crate::{fmt17, AppError};

/// `sample`: realize a projection matrix and write it as CSV.
///
/// Construction info (kind, dims, scale) goes to stdout when the matrix is
/// written to a file, to stderr when the CSV itself occupies stdout.
pub fn cmd_sample(
    kind: SamplerKind,
    m: usize,
    n: usize,
    seed: u64,
    stream: u64,
    output: Option<&Path>,
) -> Result<(), AppError> {
    let dims = Dims::new(m, n)?;
    let spec = build_sampler(kind, dims);
    let info = format!(
        "kind = {}\nm = {}\nn = {}\n{} = {}\n",
        kind.as_str(),
        m,
        n,
        if kind.is_orthogonal() { "lambda" } else { "sigma" },
        fmt17(spec.scale()),
    );
    {
        // Open the destination before sampling so a bad path fails fast.
        let mut out = csvio::open_output(output)?;
        let matrix = sample_matrix(&spec, RngState::with_stream(seed, stream))?;
        csvio::write_matrix(&mut out, &matrix, seed, stream)?;
        out.flush()?;
    }
    match output {
        Some(path) => {
            print!("{info}");
            println!("wrote {n}x{m} matrix to {}", path.display());
        }
        None => eprint!("{info}"),
    }
    Ok(())
}

/// Matrix source for `project`: an explicit file or a sampled construction.
pub enum MatrixSource {
    File(PathBuf),
    Sampled {
        kind: SamplerKind,
        m: usize,
        n: usize,
        seed: u64,
        stream: u64,
    },
}

/// `project`: push data rows of length `m` through the matrix, emitting
/// `n`-column CSV, optionally with a trailing squared-norm distortion column.
pub fn cmd_project(
    source: MatrixSource,
    input: &Path,
    output: Option<&Path>,
    report_distortion: bool,
) -> Result<(), AppError> {
    let matrix: Matrix = match source {
        MatrixSource::File(path) => {
            let file = std::fs::File::open(&path).map_err(|e| {
                AppError::Input(format!("cannot open {}: {e}", path.display()))
            })?;
            csvio::read_matrix(file)?.0
        }
        MatrixSource::Sampled {
            kind,
            m,
            n,
            seed,
            stream,
        } => {
            let spec = build_sampler(kind, Dims::new(m, n)?);
            sample_matrix(&spec, RngState::with_stream(seed, stream))?
                .entries()
                .clone()
        }
    };

    let file = std::fs::File::open(input)
        .map_err(|e| AppError::Input(format!("cannot open {}: {e}", input.display())))?;
    let rows = csvio::read_data_rows(file)?;

    let mut out = csvio::open_output(output)?;
    let mut zero_rows = 0usize;
    for (ordinal, row) in &rows {
        if row.len() != matrix.cols() {
            return Err(AppError::Input(format!(
                "row {ordinal}: expected {} values, found {}",
                matrix.cols(),
                row.len()
            )));
        }
        let projected = matrix.matvec(row)?;
        let mut line = String::new();
        for (c, v) in projected.iter().enumerate() {
            if c > 0 {
                line.push(',');
            }
            line.push_str(&fmt17(*v));
        }
        if report_distortion {
            line.push(',');
            let norm_sq = dot(row, row);
            if norm_sq > 0.0 {
                line.push_str(&fmt17(dot(&projected, &projected) / norm_sq - 1.0));
            } else {
                zero_rows += 1;
                eprintln!("warning: input row {ordinal} has zero norm; distortion left empty");
            }
        }
        writeln!(out, "{line}")?;
    }
    out.flush()?;
    if output.is_some() {
        println!(
            "projected {} rows to {} columns{}",
            rows.len(),
            matrix.rows(),
            if zero_rows > 0 {
                format!(" ({zero_rows} zero rows without distortion)")
            } else {
                String::new()
            }
        );
    }
    Ok(())
}

/// `analyze`: closed-form accuracy statistics for the given dimensions.
pub fn cmd_analyze(m: usize, n: usize, kappa: f64) -> Result<(), AppError> {
    let dims = Dims::new(m, n)?;
    let mut out = String::new();
    out.push_str(&format!("m = {m}\nn = {n}\n"));
    out.push_str(&format!("min_variance = {}\n", fmt17(min_variance(dims))));
    out.push_str(&format!("min_mse = {}\n", fmt17(min_mse(dims))));

    for kind in [SamplerKind::BestVariance, SamplerKind::BestMse] {
        let prefix = kind.as_str().replace('-', "_");
        let spec = build_sampler(kind, dims);
        out.push_str(&format!("{prefix}_lambda_sq = {}\n", fmt17(spec.scale_sq())));
        let law = error_distribution(kind, dims)?;
        if law.is_point_mass() {
            out.push_str(&format!(
                "{prefix}_law_point_mass_at = {}\n",
                fmt17(law.mean())
            ));
        } else {
            out.push_str(&format!("{prefix}_law_alpha = {}\n", fmt17(law.alpha())));
            out.push_str(&format!("{prefix}_law_beta = {}\n", fmt17(law.beta())));
            out.push_str(&format!("{prefix}_law_scale = {}\n", fmt17(law.scale())));
            out.push_str(&format!("{prefix}_law_shift = {}\n", fmt17(law.shift())));
        }
        if kind == SamplerKind::BestMse {
            out.push_str(&format!("{prefix}_bias = {}\n", fmt17(law.mean())));
        }
    }

    let params = SubGammaParams::for_best_variance(dims, kappa)?;
    out.push_str(&format!("subgamma_v2 = {}\n", fmt17(params.v2())));
    out.push_str(&format!("subgamma_c = {}\n", fmt17(params.c())));

    // The mse-optimal squared scale is the argmin of the objective g; the
    // alternative scaling (m+2)n/(2m+n^2) that sometimes circulates does not
    // attain the minimum, so flag the gap whenever the two differ.
    let (u_star, g_star) = mse_argmin(dims);
    let alt = (m as f64 + 2.0) * n as f64 / (2.0 * m as f64 + (n * n) as f64);
    if (alt - u_star).abs() > 1e-12 {
        out.push_str(&format!(
            "note: best_mse_lambda_sq = (m+2)/(n+2) = {} minimizes the mse objective (g = {}); \
             the alternative scaling (m+2)n/(2m+n^2) = {} yields g = {}\n",
            fmt17(u_star),
            fmt17(g_star),
            fmt17(alt),
            fmt17(mse_objective(alt, dims)),
        ));
    }
    print!("{out}");
    Ok(())
}

/// `compare`: tail-bound comparison table over a log-spaced `eps` grid.
pub fn cmd_compare(
    m: usize,
    n: usize,
    eps_min: f64,
    eps_max: f64,
    eps_steps: usize,
    kappa: f64,
    output: Option<&Path>,
) -> Result<(), AppError> {
    let dims = Dims::new(m, n)?;
    if !(eps_min > 0.0) || eps_min >= eps_max || eps_steps == 0 {
        return Err(AppError::Input(
            "eps grid requires 0 < eps-min < eps-max and at least one step".into(),
        ));
    }
    let grid = log_grid(eps_min, eps_max, eps_steps)?;
    let mut out = csvio::open_output(output)?;
    let curve = tail_curve(dims, &grid, kappa)?;
    csvio::write_tail_curve(&mut out, &curve)?;
    out.flush()?;
    if let Some(path) = output {
        println!("wrote {} grid points to {}", grid.len(), path.display());
    }
    Ok(())
}

/// Knobs of the `verify` subcommand.
pub struct VerifyArgs {
    pub m: usize,
    pub n: usize,
    pub seed: u64,
    pub shards: usize,
    pub samples: usize,
    pub corrupt_scale: f64,
    pub psd_max_m: usize,
}

/// `verify`: run the certification suite; the rendered report body depends
/// only on (seed, dims, sample counts, corruption), never on shards.
pub fn cmd_verify(args: VerifyArgs) -> Result<(), AppError> {
    if args.shards == 0 {
        return Err(AppError::Input("shards must be positive".into()));
    }
    if !(args.corrupt_scale > 0.0) {
        return Err(AppError::Input("corrupt-scale must be positive".into()));
    }
    let cfg = SuiteConfig {
        seed: args.seed,
        shards: args.shards,
        primary: Dims::new(args.m, args.n)?,
        psd_max_m: args.psd_max_m,
        scale_corruption: args.corrupt_scale,
        ..SuiteConfig::default().with_samples(args.samples)
    };
    eprintln!("running certification suite on {} shard(s)...", args.shards);
    let report = run_certification_suite(&cfg)?;
    print!("{}", report.render());
    if report.all_pass() {
        Ok(())
    } else {
        Err(AppError::VerificationFailed)
    }
}
