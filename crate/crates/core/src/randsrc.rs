//! Geometric sampling primitives: Gaussian matrices, uniform unit-sphere
//! vectors, Dirichlet(1/2) simplex points, and uniformly distributed
//! orthonormal row frames.
//!
//! Every operation is a pure function of its arguments and an [`RngState`]:
//! the same inputs always produce the same output, and callers wanting
//! independent draws use distinct streams.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::{orthonormalize_rows, Matrix};
use crate::rng::RngState;

/// An `n x m` matrix with orthonormal rows (`1 <= n <= m`), distributed as
/// the leading `n` rows of a uniformly random `m x m` orthogonal matrix when
/// produced by [`haar_rows`].
#[derive(Debug, Clone, PartialEq)]
pub struct OrthonormalRows {
    entries: Matrix,
}

impl OrthonormalRows {
    /// Tolerance on `max |<row_i, row_j> - delta_ij|` accepted by [`Self::new`].
    pub const ORTHONORMALITY_TOL: f64 = 1e-10;

    /// Validating constructor for externally supplied frames.
    pub fn new(entries: Matrix) -> Result<Self> {
        if entries.rows() == 0 || entries.rows() > entries.cols() {
            return Err(Error::invalid(format!(
                "frame shape {}x{} violates 1 <= n <= m",
                entries.rows(),
                entries.cols()
            )));
        }
        let defect = entries.row_gram_defect();
        if defect > Self::ORTHONORMALITY_TOL {
            return Err(Error::invalid(format!(
                "rows are not orthonormal (defect {defect:e})"
            )));
        }
        Ok(OrthonormalRows { entries })
    }

    fn new_unchecked(entries: Matrix) -> Self {
        debug_assert!(entries.row_gram_defect() <= Self::ORTHONORMALITY_TOL);
        OrthonormalRows { entries }
    }

    pub fn n(&self) -> usize {
        self.entries.rows()
    }

    pub fn m(&self) -> usize {
        self.entries.cols()
    }

    pub fn entries(&self) -> &Matrix {
        &self.entries
    }

    pub fn into_matrix(self) -> Matrix {
        self.entries
    }
}

/// `rows x cols` matrix of i.i.d. standard normals.
pub fn gaussian_matrix(rows: usize, cols: usize, rng: RngState) -> Result<Matrix> {
    if rows == 0 || cols == 0 {
        return Err(Error::invalid("matrix dimensions must be positive"));
    }
    let mut stream = rng.stream();
    let mut m = Matrix::zeros(rows, cols);
    for r in 0..rows {
        for v in m.row_mut(r) {
            *v = stream.next_gaussian();
        }
    }
    Ok(m)
}

/// Uniformly distributed orthonormal `n`-frame in dimension `m`.
///
/// An `n x m` Gaussian matrix is drawn and its rows are orthonormalized in
/// order with positive pivot norms. That sign convention matters: it selects
/// the unique triangular-orthogonal factorization, and the resulting frame is
/// then exactly uniform (rotation invariant) rather than merely orthonormal.
/// Only the `n` needed rows are ever formed, costing `O(m n^2)`.
pub fn haar_rows(n: usize, m: usize, rng: RngState) -> Result<OrthonormalRows> {
    if n == 0 || n > m {
        return Err(Error::invalid(format!(
            "frame shape {n}x{m} violates 1 <= n <= m"
        )));
    }
    let mut g = gaussian_matrix(n, m, rng)?;
    orthonormalize_rows(&mut g)?;
    Ok(OrthonormalRows::new_unchecked(g))
}

/// Uniform point on the unit sphere in dimension `m`: a Gaussian vector
/// scaled to unit Euclidean length.
pub fn uniform_sphere(m: usize, rng: RngState) -> Result<Vec<f64>> {
    if m == 0 {
        return Err(Error::invalid("sphere dimension must be positive"));
    }
    let mut stream = rng.stream();
    let mut x: Vec<f64> = (0..m).map(|_| stream.next_gaussian()).collect();
    loop {
        let norm = crate::linalg::norm2(&x);
        if norm > 1e-150 {
            let inv = 1.0 / norm;
            for v in &mut x {
                *v *= inv;
            }
            return Ok(x);
        }
        // Vanishing draw; redraw from the same stream (still deterministic).
        for v in &mut x {
            *v = stream.next_gaussian();
        }
    }
}

/// Dirichlet(1/2 * 1_m) sample: the componentwise squares of a uniform
/// sphere point. Nonnegative entries summing to one.
pub fn dirichlet_half(m: usize, rng: RngState) -> Result<Vec<f64>> {
    let mut x = uniform_sphere(m, rng)?;
    for v in &mut x {
        *v *= *v;
    }
    Ok(x)
}
