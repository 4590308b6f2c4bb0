//! Distributional JL samplers and realized projection matrices.
//!
//! The two optimal constructions scale a uniformly random orthonormal row
//! frame: `A = lambda * V_n` with `lambda^2 = m/n` (minimum variance,
//! unbiased) or `lambda^2 = (m+2)/(n+2)` (minimum mean squared error). A
//! Gaussian i.i.d. sampler with entry variance `1/n` is included as the
//! unbiased baseline that the optimality checks dominate.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::{dot, Matrix};
use crate::math;
use crate::randsrc::{gaussian_matrix, haar_rows};
use crate::rng::RngState;

/// Data dimension `m` and embedding dimension `n`, with `1 <= n <= m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Dims {
    m: usize,
    n: usize,
}

impl Dims {
    pub fn new(m: usize, n: usize) -> Result<Self> {
        if n == 0 || n > m {
            return Err(Error::invalid(format!(
                "dimensions m={m}, n={n} violate 1 <= n <= m"
            )));
        }
        Ok(Dims { m, n })
    }

    /// Data dimension.
    pub const fn m(&self) -> usize {
        self.m
    }

    /// Embedding dimension.
    pub const fn n(&self) -> usize {
        self.n
    }

    pub const fn is_square(&self) -> bool {
        self.m == self.n
    }
}

/// The projection matrix laws the crate knows how to sample.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SamplerKind {
    /// Scaled orthonormal frame with `lambda^2 = m/n`: unbiased, and of
    /// minimal distortion variance among unbiased samplers.
    BestVariance,
    /// Scaled orthonormal frame with `lambda^2 = (m+2)/(n+2)`: minimal mean
    /// squared distortion over all samplers (slightly biased low).
    BestMse,
    /// Dense i.i.d. `N(0, 1/n)` entries: the classical unbiased baseline.
    GaussianIid,
}

impl SamplerKind {
    /// Stable textual name, as used by the CLI and file headers.
    pub const fn as_str(&self) -> &'static str {
        match self {
            SamplerKind::BestVariance => "best-variance",
            SamplerKind::BestMse => "best-mse",
            SamplerKind::GaussianIid => "gaussian",
        }
    }

    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "best-variance" => Ok(SamplerKind::BestVariance),
            "best-mse" => Ok(SamplerKind::BestMse),
            "gaussian" => Ok(SamplerKind::GaussianIid),
            other => Err(Error::invalid(format!("unknown sampler kind `{other}`"))),
        }
    }

    /// True for the constructions built on orthonormal frames.
    pub const fn is_orthogonal(&self) -> bool {
        matches!(self, SamplerKind::BestVariance | SamplerKind::BestMse)
    }
}

/// A sampler kind bound to dimensions, with its scale resolved.
///
/// For the orthogonal kinds `scale` is the row scaling `lambda`; for the
/// Gaussian kind it is the entry standard deviation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SamplerSpec {
    kind: SamplerKind,
    dims: Dims,
    scale: f64,
}

/// Resolves the scale a sampler kind mandates at the given dimensions.
pub fn build_sampler(kind: SamplerKind, dims: Dims) -> SamplerSpec {
    let scale = math::sqrt(scale_sq_for(kind, dims));
    SamplerSpec { kind, dims, scale }
}

fn scale_sq_for(kind: SamplerKind, dims: Dims) -> f64 {
    let (m, n) = (dims.m() as f64, dims.n() as f64);
    match kind {
        SamplerKind::BestVariance => m / n,
        SamplerKind::BestMse => (m + 2.0) / (n + 2.0),
        SamplerKind::GaussianIid => 1.0 / n,
    }
}

impl SamplerSpec {
    /// A spec with an explicitly overridden scale. Intended for negative
    /// controls (a corrupted scale must make the error-law checks fail).
    pub fn with_scale(kind: SamplerKind, dims: Dims, scale: f64) -> Result<Self> {
        if !(scale > 0.0) || !scale.is_finite() {
            return Err(Error::invalid("scale must be positive and finite"));
        }
        Ok(SamplerSpec { kind, dims, scale })
    }

    pub const fn kind(&self) -> SamplerKind {
        self.kind
    }

    pub const fn dims(&self) -> Dims {
        self.dims
    }

    pub const fn scale(&self) -> f64 {
        self.scale
    }

    /// `scale^2`, recomputed from the defining ratio when the sampler spec
    /// is unmodified so closed-form identities hold to the last bit.
    pub fn scale_sq(&self) -> f64 {
        let nominal = scale_sq_for(self.kind, self.dims);
        if self.scale == math::sqrt(nominal) {
            nominal
        } else {
            self.scale * self.scale
        }
    }
}

/// A realized projection matrix together with the sampler spec that
/// produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectionMatrix {
    spec: SamplerSpec,
    entries: Matrix,
}

impl ProjectionMatrix {
    /// Rebuilds a projection matrix from stored entries, revalidating the
    /// orthogonal-kind row structure (`A A^T = lambda^2 I` within 1e-10).
    pub fn from_parts(spec: SamplerSpec, entries: Matrix) -> Result<Self> {
        if entries.rows() != spec.dims.n() || entries.cols() != spec.dims.m() {
            return Err(Error::invalid(format!(
                "entry shape {}x{} does not match dims n={}, m={}",
                entries.rows(),
                entries.cols(),
                spec.dims.n(),
                spec.dims.m()
            )));
        }
        if spec.kind.is_orthogonal() {
            let defect = scaled_gram_defect(&entries, spec.scale_sq());
            if defect > 1e-10 {
                return Err(Error::invalid(format!(
                    "rows are not lambda-scaled orthonormal (defect {defect:e})"
                )));
            }
        }
        Ok(ProjectionMatrix { spec, entries })
    }

    pub const fn spec(&self) -> &SamplerSpec {
        &self.spec
    }

    pub fn entries(&self) -> &Matrix {
        &self.entries
    }

    /// `max |A A^T - lambda^2 I|`, the structural invariant of the
    /// orthogonal kinds.
    pub fn scaled_orthonormality_defect(&self) -> f64 {
        scaled_gram_defect(&self.entries, self.spec.scale_sq())
    }
}

fn scaled_gram_defect(entries: &Matrix, scale_sq: f64) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..entries.rows() {
        for j in i..entries.rows() {
            let g = dot(entries.row(i), entries.row(j));
            let target = if i == j { scale_sq } else { 0.0 };
            worst = worst.max(math::abs(g - target));
        }
    }
    worst
}

/// Draws a matrix from the sampler's law: `lambda` times a uniform
/// orthonormal frame for the orthogonal kinds, i.i.d. scaled Gaussians
/// otherwise. Deterministic in `(spec, rng)`.
pub fn sample_matrix(spec: &SamplerSpec, rng: RngState) -> Result<ProjectionMatrix> {
    let n = spec.dims.n();
    let m = spec.dims.m();
    let mut entries = if spec.kind.is_orthogonal() {
        haar_rows(n, m, rng)?.into_matrix()
    } else {
        gaussian_matrix(n, m, rng)?
    };
    entries.scale_in_place(spec.scale);
    Ok(ProjectionMatrix { spec: *spec, entries })
}

/// `A x` for a data vector of length `m`.
pub fn project(a: &ProjectionMatrix, x: &[f64]) -> Result<Vec<f64>> {
    a.entries.matvec(x)
}

/// Relative squared-norm embedding error.
///
/// The value is `|Ax|^2 / |x|^2 - 1`, always at least -1, scale invariant in
/// `x`, and identically 0 for square orthogonal realizations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Distortion {
    value: f64,
}

impl Distortion {
    pub const fn value(&self) -> f64 {
        self.value
    }

    /// The same error expressed on norms rather than squared norms,
    /// `|Ax| / |x| - 1 = sqrt(1 + value) - 1`.
    pub fn norm_error(&self) -> f64 {
        math::sqrt(1.0 + self.value) - 1.0
    }
}

/// Distortion of a nonzero vector under a realized matrix.
pub fn distortion(a: &ProjectionMatrix, x: &[f64]) -> Result<Distortion> {
    let projected = project(a, x)?;
    let x_sq = dot(x, x);
    if x_sq <= 0.0 {
        return Err(Error::invalid("distortion is undefined for the zero vector"));
    }
    let value = dot(&projected, &projected) / x_sq - 1.0;
    Ok(Distortion { value })
}
