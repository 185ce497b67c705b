//! Unit-safe time-series and spectrum primitives.

mod cross;
mod integrate;
mod series;
mod spectrum;
mod window;

pub use cross::{auto_cross_spectra, CrossSpectra};
pub use integrate::{differentiate_freq, integrate_freq, DEFAULT_HIGHPASS_HZ};
pub use series::TimeSeries;
pub use spectrum::{
    dft_forward, dft_forward_padded, dft_inverse, one_sided_power, Band, RealSpectrum, Spectrum, SpectrumUnit,
};
pub use window::{apply_window, Window};
