//! The `ema` command-line workflow: simulate runs, analyse them into FRF
//! bundles, tabulate modes, export deflection shapes and compare runs.
//!
//! Exit codes are a stable contract: 0 success, 1 comparison mismatch,
//! 2 usage or validation error, 3 filesystem error.

// Negated comparisons (`!(x > 0.0)`) are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod args;
pub mod bundle;
pub mod commands;
pub mod error;
pub mod frf_bundle;
pub mod io;

pub use error::{CliError, CliResult};
