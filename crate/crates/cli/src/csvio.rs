//! CSV file formats: projection matrices with `#` metadata headers, plain
//! data-row files, and tail-curve tables.

use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;

use optiproj_core::analytics::TailCurve;
use optiproj_core::linalg::Matrix;
use optiproj_core::projector::ProjectionMatrix;

use crate::{fmt17, AppError};

/// Metadata recovered from `#` header lines of a matrix file.
#[derive(Debug, Default, Clone)]
pub struct MatrixMeta {
    pub kind: Option<String>,
    pub scale: Option<f64>,
    pub seed: Option<u64>,
    pub stream: Option<u64>,
}

/// Writes a realized projection matrix with its construction metadata.
pub fn write_matrix<W: Write>(
    out: &mut W,
    matrix: &ProjectionMatrix,
    seed: u64,
    stream: u64,
) -> std::io::Result<()> {
    let spec = matrix.spec();
    let scale_key = if spec.kind().is_orthogonal() {
        "lambda"
    } else {
        "sigma"
    };
    writeln!(out, "# optiproj matrix")?;
    writeln!(out, "# kind = {}", spec.kind().as_str())?;
    writeln!(out, "# m = {}", spec.dims().m())?;
    writeln!(out, "# n = {}", spec.dims().n())?;
    writeln!(out, "# {scale_key} = {}", fmt17(spec.scale()))?;
    writeln!(out, "# seed = {seed}")?;
    writeln!(out, "# stream = {stream}")?;
    write_rows(out, matrix.entries())
}

fn write_rows<W: Write>(out: &mut W, matrix: &Matrix) -> std::io::Result<()> {
    let mut line = String::new();
    for r in 0..matrix.rows() {
        line.clear();
        for (c, v) in matrix.row(r).iter().enumerate() {
            if c > 0 {
                line.push(',');
            }
            line.push_str(&fmt17(*v));
        }
        writeln!(out, "{line}")?;
    }
    Ok(())
}

/// Reads a matrix file: `#` lines are parsed as metadata, everything else as
/// comma-separated rows of equal length.
pub fn read_matrix<R: Read>(reader: R) -> Result<(Matrix, MatrixMeta), AppError> {
    let mut meta = MatrixMeta::default();
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (lineno, line) in BufReader::new(reader).lines().enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(comment) = trimmed.strip_prefix('#') {
            if let Some((key, value)) = comment.split_once('=') {
                let (key, value) = (key.trim(), value.trim());
                match key {
                    "kind" => meta.kind = Some(value.to_string()),
                    "lambda" | "sigma" => meta.scale = value.parse().ok(),
                    "seed" => meta.seed = value.parse().ok(),
                    "stream" => meta.stream = value.parse().ok(),
                    _ => {}
                }
            }
            continue;
        }
        let row = parse_row(trimmed, lineno + 1)?;
        if let Some(first) = rows.first() {
            if row.len() != first.len() {
                return Err(AppError::Input(format!(
                    "line {}: expected {} columns, found {}",
                    lineno + 1,
                    first.len(),
                    row.len()
                )));
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(AppError::Input("matrix file contains no data rows".into()));
    }
    let cols = rows[0].len();
    let data: Vec<f64> = rows.into_iter().flatten().collect();
    let matrix = Matrix::from_vec(data.len() / cols, cols, data)
        .map_err(|e| AppError::Input(e.to_string()))?;
    Ok((matrix, meta))
}

/// Reads data rows (possibly ragged; validated by the caller), skipping `#`
/// comments and blank lines. Returns each row with its 1-based data ordinal.
pub fn read_data_rows<R: Read>(reader: R) -> Result<Vec<(usize, Vec<f64>)>, AppError> {
    let mut rows = Vec::new();
    let mut ordinal = 0usize;
    for (lineno, line) in BufReader::new(reader).lines().enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        ordinal += 1;
        rows.push((ordinal, parse_row(trimmed, lineno + 1)?));
    }
    Ok(rows)
}

fn parse_row(line: &str, lineno: usize) -> Result<Vec<f64>, AppError> {
    line.split(',')
        .map(|field| {
            field.trim().parse::<f64>().map_err(|_| {
                AppError::Input(format!("line {lineno}: cannot parse `{field}` as a number"))
            })
        })
        .collect()
}

/// Writes the tail-curve table. The header line is the format contract:
/// `epsilon,delta_exact,delta_subgamma,delta_dg,delta_achlioptas`, extended
/// with `delta_rojo` only when that column is populated.
pub fn write_tail_curve<W: Write>(out: &mut W, curve: &TailCurve) -> std::io::Result<()> {
    let mut header =
        String::from("epsilon,delta_exact,delta_subgamma,delta_dg,delta_achlioptas");
    if curve.rojo.is_some() {
        header.push_str(",delta_rojo");
    }
    writeln!(out, "{header}")?;
    for i in 0..curve.eps.len() {
        let mut line = format!(
            "{},{},{},{},{}",
            fmt17(curve.eps[i]),
            fmt17(curve.exact_two_sided[i]),
            fmt17(curve.subgamma[i]),
            fmt17(curve.dasgupta_gupta[i]),
            fmt17(curve.achlioptas[i]),
        );
        if let Some(rojo) = &curve.rojo {
            line.push(',');
            line.push_str(&fmt17(rojo[i]));
        }
        writeln!(out, "{line}")?;
    }
    Ok(())
}

/// Opens `path` for buffered writing, or stdout when absent.
pub fn open_output(path: Option<&Path>) -> Result<Box<dyn Write>, AppError> {
    match path {
        Some(p) => {
            let file = std::fs::File::create(p).map_err(|e| {
                AppError::Input(format!("cannot create {}: {e}", p.display()))
            })?;
            Ok(Box::new(std::io::BufWriter::new(file)))
        }
        None => Ok(Box::new(std::io::BufWriter::new(std::io::stdout()))),
    }
}
