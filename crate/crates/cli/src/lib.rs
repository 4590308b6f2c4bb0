//! Command implementations and file formats behind the `optiproj` binary.
//!
//! All numeric output uses 17 significant decimal digits, enough for exact
//! `f64` round trips, and every command is deterministic given its flags.

// Positivity guards are written `!(x > 0.0)` so that NaN fails them.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod csvio;

/// Formats an `f64` with 17 significant digits in scientific notation;
/// parsing the result recovers the value bit for bit.
pub fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

/// Process-level failure modes, mapped onto exit codes in `main`.
#[derive(Debug)]
pub enum AppError {
    /// Bad usage or unreadable/unwritable inputs: exit code 2.
    Input(String),
    /// The verification suite ran and found failing checks: exit code 1.
    VerificationFailed,
}

impl From<optiproj_core::Error> for AppError {
    fn from(err: optiproj_core::Error) -> Self {
        AppError::Input(err.to_string())
    }
}

impl From<std::io::Error> for AppError {
    fn from(err: std::io::Error) -> Self {
        AppError::Input(err.to_string())
    }
}
