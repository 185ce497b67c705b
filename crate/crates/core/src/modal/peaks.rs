use serde::{Deserialize, Serialize};

use crate::signal::{Band, RealSpectrum};
use crate::{Error, Result};

/// Default minimum prominence, as a multiple of the band median, for peaks
/// of a summed FRF magnitude spectrum.
pub const DEFAULT_PROMINENCE_RATIO: f64 = 2.0;

/// A refined spectral peak.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Peak {
    pub frequency_hz: f64,
    pub amplitude: f64,
    /// Prominence relative to the band median.
    pub prominence_ratio: f64,
}

fn median(values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

/// Topographic prominence of the local maximum at `i`: height above the
/// higher of the two lowest points separating it from taller terrain (or
/// the band edge) on either side.
fn prominence(v: &[f64], i: usize) -> f64 {
    let peak = v[i];
    let mut left_min = peak;
    for &x in v[..i].iter().rev() {
        if x > peak {
            break;
        }
        left_min = left_min.min(x);
    }
    let mut right_min = peak;
    for &x in &v[i + 1..] {
        if x > peak {
            break;
        }
        right_min = right_min.min(x);
    }
    peak - left_min.max(right_min)
}

/// Three-point parabolic refinement around bin `i`: `(offset_bins, height)`.
fn parabolic(v: &[f64], i: usize) -> (f64, f64) {
    let (a, b, c) = (v[i - 1], v[i], v[i + 1]);
    let denom = a - 2.0 * b + c;
    if denom >= 0.0 {
        return (0.0, b);
    }
    let delta = (0.5 * (a - c) / denom).clamp(-0.5, 0.5);
    (delta, b - 0.25 * (a - c) * delta)
}

/// Local maxima inside `band` whose prominence exceeds
/// `min_prominence_ratio` times the band median, sorted by frequency.
///
/// Plateaus count once, at their first bin; band-edge bins are never peaks.
pub fn pick_peaks(summed: &RealSpectrum, band: Band, min_prominence_ratio: f64) -> Result<Vec<Peak>> {
    if !(min_prominence_ratio > 1.0) {
        return Err(Error::invalid(format!("prominence ratio must exceed 1, got {min_prominence_ratio}")));
    }
    let s = summed.restrict(band)?;
    let v = &s.values;
    let floor = median(v);
    let mut peaks = Vec::new();
    for i in 1..v.len().saturating_sub(1) {
        if !(v[i] > v[i - 1] && v[i] >= v[i + 1]) {
            continue;
        }
        let p = prominence(v, i);
        if p > min_prominence_ratio * floor && p > 0.0 {
            let (delta, amplitude) = parabolic(v, i);
            peaks.push(Peak {
                frequency_hz: (s.first_bin as f64 + i as f64 + delta) * s.df_hz,
                amplitude,
                prominence_ratio: if floor > 0.0 { p / floor } else { f64::INFINITY },
            });
        }
    }
    Ok(peaks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signal::SpectrumUnit;
    use crate::units::Quantity;

    fn spectrum(values: Vec<f64>, df: f64) -> RealSpectrum {
        RealSpectrum { values, df_hz: df, first_bin: 0, unit: SpectrumUnit::PerForce(Quantity::Acceleration) }
    }

    fn sdof_accelerance(f: f64, fn_hz: f64, zeta: f64) -> f64 {
        let r = f / fn_hz;
        r * r / ((1.0 - r * r).powi(2) + (2.0 * zeta * r).powi(2)).sqrt()
    }

    #[test]
    fn flat_spectrum_has_no_peaks() {
        let s = spectrum(vec![1.0; 100], 0.5);
        assert!(pick_peaks(&s, Band::new(0.0, 49.5).unwrap(), 2.0).unwrap().is_empty());
    }

    #[test]
    fn single_sdof_peak() {
        let df = 0.1;
        let s = spectrum((0..300).map(|k| sdof_accelerance(k as f64 * df, 10.0, 0.05)).collect(), df);
        let peaks = pick_peaks(&s, Band::new(0.0, 29.9).unwrap(), 2.0).unwrap();
        assert_eq!(peaks.len(), 1);
        assert!((peaks[0].frequency_hz - 10.0).abs() < df);
    }

    #[test]
    fn parabola_recovers_vertex_exactly() {
        // Parabola with vertex at 10.3 bins, clipped to zero away from the peak.
        let s = spectrum((0..21).map(|k| (100.0 - 4.0 * (k as f64 - 10.3).powi(2)).max(0.0)).collect(), 1.0);
        let peaks = pick_peaks(&s, Band::new(0.0, 20.0).unwrap(), 1.5).unwrap();
        assert_eq!(peaks.len(), 1);
        assert!((peaks[0].frequency_hz - 10.3).abs() < 1e-12);
        assert!((peaks[0].amplitude - 100.0).abs() < 1e-12);
    }

    #[test]
    fn prominence_uses_higher_saddle() {
        // Small bump on the flank of a large peak is not prominent.
        let v = vec![0.0, 1.0, 2.0, 3.0, 2.9, 3.05, 10.0, 1.0, 0.0, 0.0, 0.0];
        assert!((prominence(&v, 3) - 0.1).abs() < 1e-12);
        assert!((prominence(&v, 6) - 10.0).abs() < 1e-12);
    }

    #[test]
    fn ratio_must_exceed_one() {
        let s = spectrum(vec![1.0; 10], 1.0);
        assert!(pick_peaks(&s, Band::new(0.0, 9.0).unwrap(), 1.0).is_err());
    }

    #[test]
    fn empty_band_is_error() {
        let s = spectrum(vec![1.0; 10], 1.0);
        assert!(pick_peaks(&s, Band::new(20.0, 30.0).unwrap(), 2.0).is_err());
    }
}
