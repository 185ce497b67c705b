//! Averaged H1 frequency response functions and summed spectra.

mod h1;
mod summed;

pub use h1::{estimate_h1, estimate_h1_all, FrfSpectrum, WindowMeta};
pub use summed::{contiguous_ranges, quiet_ranges, summed_autospectrum, summed_spectrum};
