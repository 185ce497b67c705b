use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::TimeSeries;
use crate::{Error, Result};

/// Time windows used to condition impact records. Times are measured from
/// the first sample of the series.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Window {
    Rectangular,
    Hann,
    /// Unity over `[start_s, end_s]`, then a half-cosine fade to zero over
    /// `taper_s`, zero elsewhere.
    Force {
        start_s: f64,
        end_s: f64,
        taper_s: f64,
    },
    /// `exp(-t/tau_s)`.
    Exponential {
        tau_s: f64,
    },
}

impl Window {
    fn validate(&self, duration_s: f64) -> Result<()> {
        match *self {
            Window::Exponential { tau_s } if !(tau_s > 0.0) => {
                Err(Error::invalid(format!("exponential decay constant must be positive, got {tau_s}")))
            }
            Window::Force { start_s, end_s, taper_s } => {
                if !(start_s >= 0.0 && end_s >= start_s && taper_s >= 0.0) {
                    return Err(Error::invalid(format!(
                        "force window span {start_s}..{end_s} (taper {taper_s}) is malformed"
                    )));
                }
                if start_s > duration_s {
                    return Err(Error::invalid("force window starts after the record ends"));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    /// Window weights for `n` samples at `fs_hz`.
    pub fn weights(&self, n: usize, fs_hz: f64) -> Result<Vec<f64>> {
        self.validate(n as f64 / fs_hz)?;
        // Tolerance for span edges that fall exactly on a sample instant.
        let tol = 1e-9 / fs_hz;
        let w = (0..n).map(|i| {
            let t = i as f64 / fs_hz;
            match *self {
                Window::Rectangular => 1.0,
                Window::Hann => {
                    if n < 2 {
                        1.0
                    } else {
                        0.5 - 0.5 * (2.0 * PI * i as f64 / (n - 1) as f64).cos()
                    }
                }
                Window::Exponential { tau_s } => (-(i as f64) / (fs_hz * tau_s)).exp(),
                Window::Force { start_s, end_s, taper_s } => {
                    if t < start_s - tol {
                        0.0
                    } else if t <= end_s + tol {
                        1.0
                    } else if taper_s > 0.0 && t < end_s + taper_s {
                        0.5 + 0.5 * (PI * (t - end_s) / taper_s).cos()
                    } else {
                        0.0
                    }
                }
            }
        });
        Ok(w.collect())
    }
}

/// Windowed copy of `ts`.
pub fn apply_window(ts: &TimeSeries, window: &Window) -> Result<TimeSeries> {
    if matches!(window, Window::Rectangular) {
        return Ok(ts.clone());
    }
    let w = window.weights(ts.len(), ts.sample_rate_hz())?;
    ts.with_samples(ts.samples().iter().zip(w).map(|(x, w)| x * w).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::units::Quantity;
    use proptest::prelude::*;

    fn ones(n: usize, fs: f64) -> TimeSeries {
        TimeSeries::new(vec![1.0; n], fs, Quantity::Force, "f").unwrap()
    }

    #[test]
    fn rectangular_is_identity() {
        let ts = TimeSeries::new(vec![3.0, -1.0, 0.5], 10.0, Quantity::Force, "f").unwrap();
        assert_eq!(apply_window(&ts, &Window::Rectangular).unwrap(), ts);
    }

    #[test]
    fn exponential_over_record_length_ends_at_inverse_e() {
        let fs = 1000.0;
        let n = 2048;
        let tau = (n - 1) as f64 / fs;
        let out = apply_window(&ones(n, fs), &Window::Exponential { tau_s: tau }).unwrap();
        assert!((out.samples()[n - 1] - (-1.0f64).exp()).abs() < 1e-12);
        assert_eq!(out.samples()[0], 1.0);
    }

    #[test]
    fn force_window_span_without_taper() {
        let out =
            apply_window(&ones(100, 1000.0), &Window::Force { start_s: 0.0, end_s: 0.010, taper_s: 0.0 }).unwrap();
        for (i, v) in out.samples().iter().enumerate() {
            assert_eq!(*v, if i <= 10 { 1.0 } else { 0.0 }, "sample {i}");
        }
    }

    #[test]
    fn force_window_taper_fades() {
        let w = Window::Force { start_s: 0.0, end_s: 0.010, taper_s: 0.004 }.weights(20, 1000.0).unwrap();
        assert_eq!(w[10], 1.0);
        assert!(w[11] < 1.0 && w[11] > w[12] && w[13] > 0.0);
        assert_eq!(w[14], 0.0);
    }

    #[test]
    fn non_positive_tau_is_an_error() {
        assert!(apply_window(&ones(4, 10.0), &Window::Exponential { tau_s: 0.0 }).is_err());
        assert!(apply_window(&ones(4, 10.0), &Window::Exponential { tau_s: -1.0 }).is_err());
    }

    proptest! {
        #[test]
        fn windows_never_increase_magnitude(
            x in proptest::collection::vec(-1e3f64..1e3, 2..200),
            tau in 0.001f64..10.0,
            end in 0.0f64..0.2,
            taper in 0.0f64..0.05,
        ) {
            let ts = TimeSeries::new(x, 100.0, Quantity::Force, "f").unwrap();
            for w in [
                Window::Hann,
                Window::Exponential { tau_s: tau },
                Window::Force { start_s: 0.0, end_s: end, taper_s: taper },
            ] {
                let out = apply_window(&ts, &w).unwrap();
                for (a, b) in ts.samples().iter().zip(out.samples()) {
                    prop_assert!(b.abs() <= a.abs());
                }
            }
        }
    }
}
