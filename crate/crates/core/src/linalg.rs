//! Dense row-major matrices and the small set of factorizations the crate
//! needs: Gram-Schmidt row orthonormalization, one-sided Jacobi SVD,
//! symmetric Jacobi eigenvalues, and a Cholesky positive-semidefiniteness
//! certificate.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math;

/// Dense `rows x cols` matrix of `f64`, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    /// Builds from a row-major buffer; `data.len()` must equal `rows * cols`.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::invalid(format!(
                "buffer of length {} cannot hold a {}x{} matrix",
                data.len(),
                rows,
                cols
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: f64) {
        self.data[r * self.cols + c] = value;
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[f64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    #[inline]
    pub fn row_mut(&mut self, r: usize) -> &mut [f64] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    /// Two disjoint row views; `a != b`.
    fn row_pair_mut(&mut self, a: usize, b: usize) -> (&mut [f64], &mut [f64]) {
        debug_assert!(a != b);
        let cols = self.cols;
        if a < b {
            let (lo, hi) = self.data.split_at_mut(b * cols);
            (&mut lo[a * cols..(a + 1) * cols], &mut hi[..cols])
        } else {
            let (lo, hi) = self.data.split_at_mut(a * cols);
            let (bb, aa) = (&mut lo[b * cols..(b + 1) * cols], &mut hi[..cols]);
            (aa, bb)
        }
    }

    /// `A x` for `x` of length `cols`.
    pub fn matvec(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.cols {
            return Err(Error::invalid(format!(
                "matvec: vector length {} does not match {} columns",
                x.len(),
                self.cols
            )));
        }
        Ok((0..self.rows).map(|r| dot(self.row(r), x)).collect())
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.data[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        out
    }

    pub fn scale_in_place(&mut self, factor: f64) {
        for v in &mut self.data {
            *v *= factor;
        }
    }

    /// Largest deviation of the row Gram matrix from the identity,
    /// `max_ij |<row_i, row_j> - delta_ij|`.
    pub fn row_gram_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.rows {
            for j in i..self.rows {
                let g = dot(self.row(i), self.row(j));
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max(math::abs(g - target));
            }
        }
        worst
    }
}

/// Dot product with four accumulators so the reduction vectorizes.
#[inline]
pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = [0.0f64; 4];
    let chunks = a.len() / 4;
    for k in 0..chunks {
        let i = 4 * k;
        acc[0] += a[i] * b[i];
        acc[1] += a[i + 1] * b[i + 1];
        acc[2] += a[i + 2] * b[i + 2];
        acc[3] += a[i + 3] * b[i + 3];
    }
    let mut tail = 0.0;
    for i in 4 * chunks..a.len() {
        tail += a[i] * b[i];
    }
    (acc[0] + acc[1]) + (acc[2] + acc[3]) + tail
}

/// `y += alpha * x`.
#[inline]
pub fn axpy(y: &mut [f64], alpha: f64, x: &[f64]) {
    debug_assert_eq!(y.len(), x.len());
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

pub fn norm2(x: &[f64]) -> f64 {
    math::sqrt(dot(x, x))
}

/// Orthonormalizes the rows of `a` in place by modified Gram-Schmidt with one
/// re-orthogonalization pass. Row order is preserved and each pivot norm is
/// positive, which pins down the unique factorization with positive
/// lower-triangular diagonal.
pub fn orthonormalize_rows(a: &mut Matrix) -> Result<()> {
    if a.rows > a.cols {
        return Err(Error::invalid(format!(
            "cannot orthonormalize {} rows in dimension {}",
            a.rows, a.cols
        )));
    }
    for i in 0..a.rows {
        for _pass in 0..2 {
            for j in 0..i {
                let (ri, rj) = a.row_pair_mut(i, j);
                let r = dot(ri, rj);
                axpy(ri, -r, rj);
            }
        }
        let row = a.row_mut(i);
        let norm = norm2(row);
        if norm < 1e-300 {
            return Err(Error::numeric(format!(
                "row {i} is numerically dependent on earlier rows"
            )));
        }
        let inv = 1.0 / norm;
        for v in row {
            *v *= inv;
        }
    }
    Ok(())
}

/// Singular value decomposition of a wide matrix `A` (`rows <= cols`):
/// `A = U diag(sigma) V^T` with `U` square `rows x rows` and `v_rows`
/// holding the leading right singular vectors as rows.
#[derive(Debug, Clone)]
pub struct Svd {
    pub u: Matrix,
    pub singular_values: Vec<f64>,
    pub v_rows: Matrix,
}

/// One-sided Jacobi SVD. Plane rotations are applied to the rows of a working
/// copy until they are pairwise orthogonal; row norms are the singular
/// values. Requires `rows <= cols`.
pub fn jacobi_svd(a: &Matrix) -> Result<Svd> {
    if a.rows > a.cols {
        return Err(Error::invalid(format!(
            "jacobi_svd expects rows <= cols, got {}x{}",
            a.rows, a.cols
        )));
    }
    let n = a.rows;
    let mut work = a.clone();
    // Accumulates the product of rotations G so that G * A = work.
    let mut g = Matrix::identity(n);
    let tol = 1e-14;
    let max_sweeps = 64;

    let mut converged = false;
    for _sweep in 0..max_sweeps {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let app = dot(work.row(p), work.row(p));
                let aqq = dot(work.row(q), work.row(q));
                let apq = dot(work.row(p), work.row(q));
                if math::abs(apq) <= tol * math::sqrt(app * aqq) || apq == 0.0 {
                    continue;
                }
                rotated = true;
                let zeta = (aqq - app) / (2.0 * apq);
                let t = if zeta >= 0.0 {
                    1.0 / (zeta + math::sqrt(1.0 + zeta * zeta))
                } else {
                    -1.0 / (-zeta + math::sqrt(1.0 + zeta * zeta))
                };
                let c = 1.0 / math::sqrt(1.0 + t * t);
                let s = c * t;
                rotate_rows(&mut work, p, q, c, s);
                rotate_rows(&mut g, p, q, c, s);
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::numeric("jacobi svd did not converge"));
    }

    // Norms of the worked rows are the singular values; rows of G index the
    // corresponding left singular vectors (A = G^T * work).
    let mut order: Vec<usize> = (0..n).collect();
    let sigmas: Vec<f64> = (0..n).map(|r| norm2(work.row(r))).collect();
    order.sort_by(|&i, &j| sigmas[j].partial_cmp(&sigmas[i]).unwrap());

    let mut u = Matrix::zeros(n, n);
    let mut v_rows = Matrix::zeros(n, a.cols);
    let mut singular_values = Vec::with_capacity(n);
    let sigma_max = order.first().map(|&i| sigmas[i]).unwrap_or(0.0);
    for (k, &src) in order.iter().enumerate() {
        let sigma = sigmas[src];
        singular_values.push(sigma);
        for i in 0..n {
            u.set(i, k, g.get(src, i));
        }
        if sigma > sigma_max * 1e-300 && sigma > 0.0 {
            let inv = 1.0 / sigma;
            for c in 0..a.cols {
                v_rows.set(k, c, work.get(src, c) * inv);
            }
        }
    }
    Ok(Svd {
        u,
        singular_values,
        v_rows,
    })
}

fn rotate_rows(m: &mut Matrix, p: usize, q: usize, c: f64, s: f64) {
    let (rp, rq) = m.row_pair_mut(p, q);
    for (vp, vq) in rp.iter_mut().zip(rq.iter_mut()) {
        let new_p = c * *vp - s * *vq;
        let new_q = s * *vp + c * *vq;
        *vp = new_p;
        *vq = new_q;
    }
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi, ascending.
pub fn symmetric_eigenvalues(a: &Matrix) -> Result<Vec<f64>> {
    if a.rows != a.cols {
        return Err(Error::invalid("symmetric_eigenvalues expects a square matrix"));
    }
    let n = a.rows;
    let mut m = a.clone();
    let max_sweeps = 64;
    let mut converged = false;
    for _sweep in 0..max_sweeps {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off = off.max(math::abs(m.get(p, q)));
            }
        }
        let scale = (0..n).fold(0.0f64, |acc, i| acc.max(math::abs(m.get(i, i))));
        if off <= 1e-15 * scale.max(1e-300) {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m.get(p, q);
                if apq == 0.0 {
                    continue;
                }
                let theta = (m.get(q, q) - m.get(p, p)) / (2.0 * apq);
                let t = if theta >= 0.0 {
                    1.0 / (theta + math::sqrt(1.0 + theta * theta))
                } else {
                    -1.0 / (-theta + math::sqrt(1.0 + theta * theta))
                };
                let c = 1.0 / math::sqrt(1.0 + t * t);
                let s = c * t;
                // B = J^T M J on rows/columns p and q.
                for k in 0..n {
                    let mkp = m.get(k, p);
                    let mkq = m.get(k, q);
                    m.set(k, p, c * mkp - s * mkq);
                    m.set(k, q, s * mkp + c * mkq);
                }
                for k in 0..n {
                    let mpk = m.get(p, k);
                    let mqk = m.get(q, k);
                    m.set(p, k, c * mpk - s * mqk);
                    m.set(q, k, s * mpk + c * mqk);
                }
            }
        }
    }
    if !converged {
        return Err(Error::numeric("jacobi eigenvalue iteration did not converge"));
    }
    let mut eigs: Vec<f64> = (0..n).map(|i| m.get(i, i)).collect();
    eigs.sort_by(|x, y| x.partial_cmp(y).unwrap());
    Ok(eigs)
}

/// Cholesky certificate: true iff `a + shift * I` admits an `L L^T`
/// factorization with strictly positive pivots, i.e. the minimum eigenvalue
/// of `a` exceeds `-shift` up to roundoff.
pub fn is_positive_semidefinite(a: &Matrix, shift: f64) -> Result<bool> {
    if a.rows != a.cols {
        return Err(Error::invalid("is_positive_semidefinite expects a square matrix"));
    }
    let n = a.rows;
    let mut l = vec![0.0f64; n * n];
    for j in 0..n {
        let mut d = a.get(j, j) + shift;
        for k in 0..j {
            d -= l[j * n + k] * l[j * n + k];
        }
        if d <= 0.0 || !d.is_finite() {
            return Ok(false);
        }
        let pivot = math::sqrt(d);
        l[j * n + j] = pivot;
        let inv = 1.0 / pivot;
        for i in (j + 1)..n {
            let mut v = a.get(i, j);
            for k in 0..j {
                v -= l[i * n + k] * l[j * n + k];
            }
            l[i * n + j] = v * inv;
        }
    }
    Ok(true)
}
