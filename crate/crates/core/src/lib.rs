//! Experimental modal analysis toolkit.
//!
//! The crate is organised along the measurement chain of an impact-hammer
//! test:
//!
//! * [`signal`]: unit-tagged time series and one-sided spectra, windows,
//!   frequency-domain integration.
//! * [`rig`]: a lumped mass-spring-damper structure with exact modal
//!   parameters, used to synthesise hammer and swept-sine runs.
//! * [`capture`]: trigger detection and per-hit quality screening.
//! * [`frf`]: averaged H1 frequency response functions, coherence and
//!   summed spectra.
//! * [`modal`]: peak picking, half-power damping, tone screening and run
//!   comparison.
//! * [`pipeline`]: one-call analysis of a recorded run.
//! * [`ods`]: test geometry, operating deflection shapes, seam checks and
//!   animation export.

// Negated comparisons (`!(x > 0.0)`) are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod capture;
pub mod demo;
mod error;
pub mod frf;
pub mod modal;
pub mod ods;
pub mod pipeline;
pub mod rig;
pub mod signal;
pub mod units;

pub use error::{Error, Result};
pub use rig::{Axis, PointAxis};
