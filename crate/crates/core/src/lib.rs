//! Statistically optimal random projections.
//!
//! Constructions of distributional Johnson-Lindenstrauss transforms built on
//! uniformly random orthonormal frames, scaled for either minimal distortion
//! variance (`lambda^2 = m/n`, unbiased) or minimal mean squared distortion
//! (`lambda^2 = (m+2)/(n+2)`). The squared-norm distortion of either
//! construction follows an exact scaled Beta law, which this crate exposes in
//! closed form together with tail bounds and a deterministic Monte Carlo
//! harness that certifies the optimality claims.
//!
//! The crate is `no_std`-compatible (with `alloc`); disable default features
//! and enable `libm` for builds without the standard library.

#![cfg_attr(not(feature = "std"), no_std)]
// Positivity guards are written `!(x > 0.0)` so that NaN fails them.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

mod math;

pub mod analytics;
pub mod error;
pub mod linalg;
pub mod projector;
pub mod randsrc;
pub mod rng;
pub mod special;
pub mod verify;

pub use error::{Error, Result};
pub use projector::{Dims, SamplerKind, SamplerSpec};
pub use rng::RngState;
