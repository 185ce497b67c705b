use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use super::TimeSeries;
use crate::units::Quantity;
use crate::{Error, Result};

/// What the bins of a spectrum measure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpectrumUnit {
    /// Transform of a signal: quantity·s.
    Amplitude(Quantity),
    /// Response quantity per newton of excitation (an FRF).
    PerForce(Quantity),
    /// Product of two transforms (auto or cross spectrum).
    Power(Quantity, Quantity),
}

impl fmt::Display for SpectrumUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpectrumUnit::Amplitude(q) => write!(f, "{q}"),
            SpectrumUnit::PerForce(q) => write!(f, "{q}_per_N"),
            SpectrumUnit::Power(a, b) => write!(f, "{a}*{b}"),
        }
    }
}

/// Closed frequency interval in Hz.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Band {
    pub lo_hz: f64,
    pub hi_hz: f64,
}

impl Band {
    pub fn new(lo_hz: f64, hi_hz: f64) -> Result<Band> {
        if !(lo_hz >= 0.0 && hi_hz > lo_hz && hi_hz.is_finite()) {
            return Err(Error::invalid(format!("invalid band {lo_hz}:{hi_hz}")));
        }
        Ok(Band { lo_hz, hi_hz })
    }

    pub fn contains(&self, f_hz: f64) -> bool {
        f_hz >= self.lo_hz && f_hz <= self.hi_hz
    }
}

impl fmt::Display for Band {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.lo_hz, self.hi_hz)
    }
}

impl FromStr for Band {
    type Err = Error;

    fn from_str(s: &str) -> Result<Band> {
        let (lo, hi) = s.split_once(':').ok_or_else(|| Error::Parse(format!("band must be LO:HI, got {s:?}")))?;
        let lo: f64 = lo.trim().parse().map_err(|_| Error::Parse(format!("bad band start {lo:?}")))?;
        let hi: f64 = hi.trim().parse().map_err(|_| Error::Parse(format!("bad band end {hi:?}")))?;
        Band::new(lo, hi)
    }
}

/// One-sided complex spectrum.
///
/// Bin `i` sits at `(first_bin + i)·df_hz`. A transform of an `n_fft`-point
/// record starts at DC and holds `n_fft/2 + 1` bins; band-restricted copies
/// keep `n_fft` and advance `first_bin`.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub bins: Vec<Complex64>,
    pub df_hz: f64,
    pub first_bin: usize,
    pub n_fft: usize,
    pub unit: SpectrumUnit,
    pub n_averages: usize,
}

impl Spectrum {
    pub fn len(&self) -> usize {
        self.bins.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bins.is_empty()
    }

    pub fn frequency(&self, i: usize) -> f64 {
        (self.first_bin + i) as f64 * self.df_hz
    }

    pub fn frequencies(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.bins.len()).map(|i| self.frequency(i))
    }

    /// Local index of the bin closest to `f_hz`, if it lies inside the spectrum.
    pub fn nearest_bin(&self, f_hz: f64) -> Option<usize> {
        nearest_bin(f_hz, self.df_hz, self.first_bin, self.bins.len())
    }

    pub fn magnitude(&self) -> RealSpectrum {
        RealSpectrum {
            values: self.bins.iter().map(|c| c.norm()).collect(),
            df_hz: self.df_hz,
            first_bin: self.first_bin,
            unit: self.unit,
        }
    }

    /// Copy holding only bins whose frequency lies inside `band`.
    pub fn restrict(&self, band: Band) -> Result<Spectrum> {
        let (start, end) = band_range(band, self.df_hz, self.first_bin, self.bins.len())?;
        Ok(Spectrum {
            bins: self.bins[start..end].to_vec(),
            df_hz: self.df_hz,
            first_bin: self.first_bin + start,
            n_fft: self.n_fft,
            unit: self.unit,
            n_averages: self.n_averages,
        })
    }

    pub fn scaled(&self, factor: f64) -> Spectrum {
        Spectrum { bins: self.bins.iter().map(|c| c * factor).collect(), ..self.clone() }
    }
}

/// Real-valued spectrum (magnitudes, summed magnitudes, power sums).
#[derive(Debug, Clone, PartialEq)]
pub struct RealSpectrum {
    pub values: Vec<f64>,
    pub df_hz: f64,
    pub first_bin: usize,
    pub unit: SpectrumUnit,
}

impl RealSpectrum {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn frequency(&self, i: usize) -> f64 {
        (self.first_bin + i) as f64 * self.df_hz
    }

    pub fn nearest_bin(&self, f_hz: f64) -> Option<usize> {
        nearest_bin(f_hz, self.df_hz, self.first_bin, self.values.len())
    }

    /// Local index range `start..end` of the bins inside `band`.
    pub fn band_range(&self, band: Band) -> Result<(usize, usize)> {
        band_range(band, self.df_hz, self.first_bin, self.values.len())
    }

    pub fn restrict(&self, band: Band) -> Result<RealSpectrum> {
        let (start, end) = self.band_range(band)?;
        Ok(RealSpectrum {
            values: self.values[start..end].to_vec(),
            df_hz: self.df_hz,
            first_bin: self.first_bin + start,
            unit: self.unit,
        })
    }

    pub fn scaled(&self, factor: f64) -> RealSpectrum {
        RealSpectrum { values: self.values.iter().map(|v| v * factor).collect(), ..self.clone() }
    }
}

fn nearest_bin(f_hz: f64, df_hz: f64, first_bin: usize, len: usize) -> Option<usize> {
    if !f_hz.is_finite() {
        return None;
    }
    let global = (f_hz / df_hz).round();
    if global < first_bin as f64 {
        return None;
    }
    let local = global as usize - first_bin;
    (local < len).then_some(local)
}

fn band_range(band: Band, df_hz: f64, first_bin: usize, len: usize) -> Result<(usize, usize)> {
    // A relative slack keeps band edges that sit exactly on a bin inside the band.
    let eps = 1e-9;
    let lo = ((band.lo_hz / df_hz) - eps).ceil().max(first_bin as f64) as usize;
    let hi = ((band.hi_hz / df_hz) + eps).floor();
    if hi < first_bin as f64 {
        return Err(Error::invalid(format!("band {band} lies below the spectrum")));
    }
    let hi = (hi as usize).min(first_bin + len.saturating_sub(1));
    if len == 0 || lo > hi {
        return Err(Error::invalid(format!("band {band} holds no bins")));
    }
    Ok((lo - first_bin, hi - first_bin + 1))
}

/// One-sided transform scaled by the sample interval, so bin values
/// approximate the continuous Fourier transform (DC equals the signal area).
pub fn dft_forward(ts: &TimeSeries) -> Result<Spectrum> {
    dft_forward_padded(ts, ts.len())
}

/// As [`dft_forward`], zero-padding the record to `n_fft` points.
pub fn dft_forward_padded(ts: &TimeSeries, n_fft: usize) -> Result<Spectrum> {
    if ts.is_empty() {
        return Err(Error::EmptySeries);
    }
    if ts.len() < 2 {
        return Err(Error::invalid("transform needs at least two samples"));
    }
    if n_fft < ts.len() {
        return Err(Error::invalid(format!("transform length {n_fft} shorter than record {}", ts.len())));
    }
    let dt = ts.dt();
    let mut buf: Vec<Complex64> = ts
        .samples()
        .iter()
        .map(|&x| Complex64::new(x, 0.0))
        .chain(std::iter::repeat(Complex64::new(0.0, 0.0)))
        .take(n_fft)
        .collect();
    FftPlanner::new().plan_fft_forward(n_fft).process(&mut buf);
    let half = n_fft / 2 + 1;
    buf.truncate(half);
    for c in &mut buf {
        *c *= dt;
    }
    Ok(Spectrum {
        bins: buf,
        df_hz: ts.sample_rate_hz() / n_fft as f64,
        first_bin: 0,
        n_fft,
        unit: SpectrumUnit::Amplitude(ts.quantity()),
        n_averages: 1,
    })
}

/// Inverse of [`dft_forward`] for a full one-sided spectrum.
pub fn dft_inverse(spec: &Spectrum) -> Result<Vec<f64>> {
    let n = spec.n_fft;
    if spec.first_bin != 0 || spec.bins.len() != n / 2 + 1 || n < 2 {
        return Err(Error::invalid("inverse transform needs a full one-sided spectrum"));
    }
    let fs = spec.df_hz * n as f64;
    let dt = 1.0 / fs;
    let mut full = vec![Complex64::new(0.0, 0.0); n];
    for (k, c) in spec.bins.iter().enumerate() {
        full[k] = c / dt;
    }
    for k in (n / 2 + 1)..n {
        full[k] = full[n - k].conj();
    }
    FftPlanner::new().plan_fft_inverse(n).process(&mut full);
    Ok(full.iter().map(|c| c.re / n as f64).collect())
}

/// Mean-square value of the source record implied by a full one-sided
/// spectrum from [`dft_forward`].
pub fn one_sided_power(spec: &Spectrum) -> Result<f64> {
    let n = spec.n_fft;
    if spec.first_bin != 0 || spec.bins.len() != n / 2 + 1 {
        return Err(Error::invalid("power sum needs a full one-sided spectrum"));
    }
    let mut sum = 0.0;
    for (k, c) in spec.bins.iter().enumerate() {
        let mirrored = k != 0 && !(n.is_multiple_of(2) && k == n / 2);
        sum += if mirrored { 2.0 } else { 1.0 } * c.norm_sqr();
    }
    Ok(sum * spec.df_hz * spec.df_hz)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn series(samples: Vec<f64>, fs: f64) -> TimeSeries {
        TimeSeries::new(samples, fs, Quantity::Acceleration, "a").unwrap()
    }

    #[test]
    fn zero_series_gives_zero_bins() {
        let spec = dft_forward(&series(vec![0.0; 1024], 1024.0)).unwrap();
        assert_eq!(spec.len(), 513);
        assert!(spec.bins.iter().all(|c| c.norm() == 0.0));
    }

    #[test]
    fn on_bin_tone_lands_in_one_bin() {
        let fs = 1024.0;
        let x = (0..1024).map(|n| (2.0 * PI * 50.0 * n as f64 / fs).cos()).collect();
        let spec = dft_forward(&series(x, fs)).unwrap();
        assert_eq!(spec.df_hz, 1.0);
        let mag = spec.magnitude().values;
        let peak = mag[50];
        for (k, m) in mag.iter().enumerate() {
            if k != 50 {
                assert!(*m < 1e-9 * peak, "bin {k}: {m}");
            }
        }
    }

    #[test]
    fn half_sine_dc_equals_pulse_area() {
        let fs = 8192.0;
        let t_pulse = 1e-3;
        let x: Vec<f64> = (0..8192)
            .map(|n| {
                let t = n as f64 / fs;
                if t <= t_pulse {
                    (PI * t / t_pulse).sin()
                } else {
                    0.0
                }
            })
            .collect();
        // Direct summation oracle: area = Σ x·dt.
        let area: f64 = x.iter().sum::<f64>() / fs;
        let spec = dft_forward(&series(x, fs)).unwrap();
        assert!((spec.bins[0].norm() - area).abs() < 1e-6);
    }

    #[test]
    fn empty_series_is_rejected() {
        let ts = series(vec![], 100.0);
        assert!(matches!(dft_forward(&ts), Err(Error::EmptySeries)));
        assert_eq!(dft_forward(&ts).unwrap_err().to_string(), "empty series");
    }

    #[test]
    fn odd_length_round_trip() {
        let x: Vec<f64> = (0..1001).map(|n| ((n * 37 % 101) as f64).sin()).collect();
        let spec = dft_forward(&series(x.clone(), 500.0)).unwrap();
        assert_eq!(spec.len(), 501);
        let back = dft_inverse(&spec).unwrap();
        for (a, b) in x.iter().zip(&back) {
            assert!((a - b).abs() < 1e-9 * (1.0 + a.abs()));
        }
    }

    #[test]
    fn padding_changes_resolution_only() {
        let x = vec![1.0, 2.0, 3.0];
        let spec = dft_forward_padded(&series(x, 8.0), 8).unwrap();
        assert_eq!(spec.df_hz, 1.0);
        assert!((spec.bins[0].re - 6.0 / 8.0).abs() < 1e-15);
    }

    #[test]
    fn band_restriction_keeps_edges() {
        let spec = dft_forward(&series(vec![1.0; 16], 16.0)).unwrap();
        let r = spec.restrict(Band::new(2.0, 5.0).unwrap()).unwrap();
        assert_eq!(r.first_bin, 2);
        assert_eq!(r.len(), 4);
        assert_eq!(r.frequency(3), 5.0);
        assert_eq!(r.nearest_bin(4.2), Some(2));
        assert_eq!(r.nearest_bin(0.0), None);
    }

    #[test]
    fn band_parsing() {
        let b: Band = "0:200".parse().unwrap();
        assert_eq!((b.lo_hz, b.hi_hz), (0.0, 200.0));
        assert!("200:10".parse::<Band>().is_err());
        assert!("abc".parse::<Band>().is_err());
    }
}
