//! Black-box tests of the binary: flag handling, exit codes, file formats,
//! and the documented determinism guarantees.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use optiproj::csvio;
use optiproj_core::analytics::min_variance;
use optiproj_core::Dims;

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_optiproj"));
    // Keep the ambient environment from leaking seeds into the tests.
    cmd.env_remove("OPTIPROJ_SEED");
    cmd
}

fn tempdir(tag: &str) -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join(format!("cli_io_{tag}"));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn run(cmd: &mut Command) -> Output {
    cmd.output().expect("failed to launch optiproj")
}

#[test]
fn sample_rejects_invalid_dims_with_exit_2() {
    let out = run(bin().args(["sample", "--m", "20", "--n", "100"]));
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("1 <= n <= m"), "stderr: {stderr}");
}

#[test]
fn sample_square_matrix_is_orthogonal() {
    let dir = tempdir("square");
    let path = dir.join("sq.csv");
    let out = run(bin()
        .args(["sample", "--kind", "best-variance", "--m", "5", "--n", "5", "--seed", "3", "--output"])
        .arg(&path));
    assert!(out.status.success());
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("lambda = 1.0000000000000000e0"), "stdout: {stdout}");
    let (matrix, meta) = csvio::read_matrix(std::fs::File::open(&path).unwrap()).unwrap();
    assert_eq!(meta.kind.as_deref(), Some("best-variance"));
    assert!(matrix.row_gram_defect() < 1e-10);
}

#[test]
fn sample_to_stdout_emits_parseable_csv() {
    let out = run(bin().args(["sample", "--kind", "gaussian", "--m", "6", "--n", "2"]));
    assert!(out.status.success());
    let (matrix, meta) = csvio::read_matrix(out.stdout.as_slice()).unwrap();
    assert_eq!((matrix.rows(), matrix.cols()), (2, 6));
    assert_eq!(meta.kind.as_deref(), Some("gaussian"));
}

#[test]
fn seed_env_var_supplies_the_default_and_the_flag_overrides_it() {
    let dir = tempdir("seed");
    let explicit = dir.join("explicit.csv");
    let from_env = dir.join("env.csv");
    let overridden = dir.join("override.csv");
    let args = ["sample", "--kind", "best-mse", "--m", "12", "--n", "3", "--output"];

    assert!(run(bin().args(args).arg(&explicit).args(["--seed", "9"])).status.success());
    assert!(run(bin().args(args).arg(&from_env).env("OPTIPROJ_SEED", "9")).status.success());
    assert!(run(bin()
        .args(args)
        .arg(&overridden)
        .env("OPTIPROJ_SEED", "9")
        .args(["--seed", "10"]))
    .status
    .success());

    let explicit = std::fs::read(&explicit).unwrap();
    assert_eq!(explicit, std::fs::read(&from_env).unwrap());
    assert_ne!(explicit, std::fs::read(&overridden).unwrap());
}

#[test]
fn project_through_identity_returns_the_input() {
    let dir = tempdir("identity");
    let matrix = dir.join("eye.csv");
    std::fs::write(
        &matrix,
        "# optiproj matrix\n# kind = best-variance\n# m = 3\n# n = 3\n# lambda = 1.0000000000000000e0\n\
         1.0,0.0,0.0\n0.0,1.0,0.0\n0.0,0.0,1.0\n",
    )
    .unwrap();
    let input = dir.join("x.csv");
    std::fs::write(&input, "0.25,-1.5,3.0\n7.0,0.125,-2.0\n").unwrap();
    let output = dir.join("y.csv");
    let out = run(bin()
        .args(["project", "--matrix"])
        .arg(&matrix)
        .args(["--input"])
        .arg(&input)
        .args(["--output"])
        .arg(&output));
    assert!(out.status.success());
    let rows = csvio::read_data_rows(std::fs::File::open(&output).unwrap()).unwrap();
    assert_eq!(rows[0].1, vec![0.25, -1.5, 3.0]);
    assert_eq!(rows[1].1, vec![7.0, 0.125, -2.0]);
}

#[test]
fn project_reports_zero_distortion_for_square_orthogonal_sampling() {
    let dir = tempdir("zero_distortion");
    let input = dir.join("x.csv");
    std::fs::write(&input, "1.0,0.0,0.0,0.0\n0.5,0.5,-0.5,0.5\n").unwrap();
    let out = run(bin()
        .args(["project", "--kind", "best-variance", "--m", "4", "--n", "4", "--seed", "2"])
        .args(["--input"])
        .arg(&input)
        .arg("--report-distortion"));
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    for line in text.lines() {
        let distortion: f64 = line.rsplit(',').next().unwrap().parse().unwrap();
        assert!(distortion.abs() < 1e-12, "line: {line}");
    }
}

#[test]
fn project_zero_row_leaves_distortion_empty_and_warns() {
    let dir = tempdir("zero_row");
    let input = dir.join("x.csv");
    std::fs::write(&input, "1.0,2.0\n0.0,0.0\n").unwrap();
    let out = run(bin()
        .args(["project", "--kind", "gaussian", "--m", "2", "--n", "2"])
        .args(["--input"])
        .arg(&input)
        .arg("--report-distortion"));
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert!(!lines[0].ends_with(','));
    assert!(lines[1].ends_with(','), "line: {}", lines[1]);
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("row 2"), "stderr: {stderr}");
}

#[test]
fn project_row_length_mismatch_exits_2_with_row_number() {
    let dir = tempdir("mismatch");
    let input = dir.join("x.csv");
    std::fs::write(&input, "1.0,2.0,3.0\n1.0,2.0\n").unwrap();
    let out = run(bin()
        .args(["project", "--kind", "gaussian", "--m", "3", "--n", "2"])
        .args(["--input"])
        .arg(&input));
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("row 2"), "stderr: {stderr}");
}

#[test]
fn project_distortion_variance_tracks_the_law_with_one_matrix() {
    // 1000 uniform-sphere rows through one sampled frame: by rotation
    // invariance the distortion law is the same as with fresh frames, so the
    // sample variance lands within 25% of the optimum at this sample size.
    let dir = tempdir("mc");
    let input = dir.join("sphere_rows.csv");
    let mut text = String::new();
    for i in 0..1000u64 {
        let x = optiproj_core::randsrc::uniform_sphere(
            100,
            optiproj_core::RngState::new(77).substream(i),
        )
        .unwrap();
        let row: Vec<String> = x.iter().map(|v| format!("{v:.17e}")).collect();
        text.push_str(&row.join(","));
        text.push('\n');
    }
    std::fs::write(&input, text).unwrap();
    let out = run(bin()
        .args(["project", "--kind", "best-variance", "--m", "100", "--n", "20", "--seed", "5"])
        .args(["--input"])
        .arg(&input)
        .arg("--report-distortion"));
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    let distortions: Vec<f64> = stdout
        .lines()
        .map(|l| l.rsplit(',').next().unwrap().parse().unwrap())
        .collect();
    assert_eq!(distortions.len(), 1000);
    let mean = distortions.iter().sum::<f64>() / 1000.0;
    let var = distortions.iter().map(|d| (d - mean) * (d - mean)).sum::<f64>() / 999.0;
    let target = min_variance(Dims::new(100, 20).unwrap());
    assert!(
        (var - target).abs() <= 0.25 * target,
        "variance {var} vs target {target}"
    );
}

#[test]
fn compare_default_grid_shape_and_limits() {
    let out = run(bin().args(["compare", "--m", "100", "--n", "20"]));
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "epsilon,delta_exact,delta_subgamma,delta_dg,delta_achlioptas"
    );
    let rows: Vec<Vec<f64>> = lines
        .map(|l| l.split(',').map(|f| f.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 100);
    // Default grid spans [0.01, 1.0].
    assert!((rows[0][0] - 0.01).abs() < 1e-12);
    assert!((rows[99][0] - 1.0).abs() < 1e-9);
    // Exact two-sided tail is non-increasing in eps; near zero the
    // comparator bounds are vacuous (about 2) while the exact tail is <= 1.
    for w in rows.windows(2) {
        assert!(w[1][1] <= w[0][1] + 1e-12);
    }
    assert!(rows[0][1] > 0.9 && rows[0][1] <= 1.0);
    assert!(rows[0][3] > 1.99 && rows[0][4] > 1.99);
    // Every delta stays in [0, 2].
    for row in &rows {
        for &delta in &row[1..] {
            assert!((0.0..=2.0).contains(&delta));
        }
    }
}

#[test]
fn compare_rejects_bad_grid_with_exit_2() {
    let out = run(bin().args(["compare", "--m", "10", "--n", "2", "--eps-min", "0.5", "--eps-max", "0.1"]));
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_corrupted_scale_fails_with_exit_1() {
    let out = run(bin().args([
        "verify",
        "--samples",
        "1500",
        "--psd-max-m",
        "40",
        "--corrupt-scale",
        "1.05",
    ]));
    assert_eq!(out.status.code(), Some(1));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("FAIL"), "stdout: {stdout}");
    assert!(stdout.contains("error_law_ks"), "stdout: {stdout}");
}

#[test]
fn analyze_square_dims_report_zero_error() {
    let out = run(bin().args(["analyze", "--m", "7", "--n", "7"]));
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("min_variance = 0.0000000000000000e0"));
    assert!(text.contains("min_mse = 0.0000000000000000e0"));
    assert!(text.contains("best_variance_law_point_mass_at = 0.0000000000000000e0"));
    assert!(!text.contains("note:"));
}

#[test]
fn analyze_reports_reference_values() {
    let out = run(bin().args(["analyze", "--m", "10000", "--n", "100"]));
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("min_variance = 1.9796040791841631e-2"), "{text}");
    assert!(text.contains("best_variance_law_alpha = 5.0000000000000000e1"));
    assert!(text.contains("best_variance_law_beta = 4.9500000000000000e3"));
    let out = run(bin().args(["analyze", "--m", "2", "--n", "1"]));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("min_mse = 3.3333333333333331e-1"), "{text}");
    assert!(text.contains("best_mse_lambda_sq = 1.3333333333333333e0"));
    assert!(text.contains("note:"), "alternative-scaling note missing: {text}");
}
