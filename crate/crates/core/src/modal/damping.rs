use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_1_SQRT_2, PI};

use crate::frf::WindowMeta;
use crate::signal::RealSpectrum;

/// Outcome of a half-power damping estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum HalfPower {
    Resolved {
        /// Fraction of critical, corrected for any exponential window.
        zeta: f64,
        /// Refined peak frequency.
        f_n_hz: f64,
        f1_hz: f64,
        f2_hz: f64,
    },
    /// The −3 dB level is not reached on one side before the curve rises
    /// again or the spectrum ends (overlapping modes, band edge).
    Unresolved,
}

impl HalfPower {
    pub fn zeta(&self) -> Option<f64> {
        match self {
            HalfPower::Resolved { zeta, .. } => Some(*zeta),
            HalfPower::Unresolved => None,
        }
    }
}

/// Walks from the peak bin towards `step` until the magnitude drops below
/// `level`, returning the fractional bin of the crossing.
fn crossing(v: &[f64], peak: usize, level: f64, step: isize) -> Option<f64> {
    let mut j = peak;
    loop {
        let next = j as isize + step;
        if next < 0 || next as usize >= v.len() {
            return None;
        }
        let next = next as usize;
        if v[next] > v[j] {
            return None;
        }
        if v[next] <= level {
            let frac = (v[j] - level) / (v[j] - v[next]);
            return Some(j as f64 + step as f64 * frac);
        }
        j = next;
    }
}

/// Half-power (−3 dB) bandwidth damping of the peak nearest `peak_f_hz`.
///
/// The search starts at the bin nearest `peak_f_hz` and climbs to the local
/// maximum. The peak height and frequency are refined with a three-point
/// parabola; the crossings are interpolated linearly between bins. When the
/// FRFs were exponentially windowed the artificial damping
/// `1/(2π f_n τ)` is subtracted, flooring the result at zero.
pub fn half_power_damping(spec: &RealSpectrum, peak_f_hz: f64, window: &WindowMeta) -> HalfPower {
    let v = &spec.values;
    let Some(mut i) = spec.nearest_bin(peak_f_hz) else {
        return HalfPower::Unresolved;
    };
    loop {
        if i + 1 < v.len() && v[i + 1] > v[i] {
            i += 1;
        } else if i > 0 && v[i - 1] > v[i] {
            i -= 1;
        } else {
            break;
        }
    }
    if i == 0 || i + 1 >= v.len() || v[i] <= 0.0 {
        return HalfPower::Unresolved;
    }
    let (a, b, c) = (v[i - 1], v[i], v[i + 1]);
    let denom = a - 2.0 * b + c;
    let (delta, height) = if denom < 0.0 {
        let d = (0.5 * (a - c) / denom).clamp(-0.5, 0.5);
        (d, b - 0.25 * (a - c) * d)
    } else {
        (0.0, b)
    };
    let level = height * FRAC_1_SQRT_2;
    let (Some(lo), Some(hi)) = (crossing(v, i, level, -1), crossing(v, i, level, 1)) else {
        return HalfPower::Unresolved;
    };
    let freq = |bin: f64| (spec.first_bin as f64 + bin) * spec.df_hz;
    let (f1_hz, f2_hz, f_n_hz) = (freq(lo), freq(hi), freq(i as f64 + delta));
    let mut zeta = (f2_hz - f1_hz) / (2.0 * f_n_hz);
    if let Some(tau) = window.exponential_tau_s {
        zeta = (zeta - 1.0 / (2.0 * PI * f_n_hz * tau)).max(0.0);
    }
    HalfPower::Resolved { zeta, f_n_hz, f1_hz, f2_hz }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signal::SpectrumUnit;
    use crate::units::Quantity;

    fn curve(df: f64, n: usize, h: impl Fn(f64) -> f64) -> RealSpectrum {
        RealSpectrum {
            values: (0..n).map(|k| h(k as f64 * df)).collect(),
            df_hz: df,
            first_bin: 0,
            unit: SpectrumUnit::PerForce(Quantity::Acceleration),
        }
    }

    fn accelerance(f: f64, fn_hz: f64, zeta: f64) -> f64 {
        let r = f / fn_hz;
        r * r / ((1.0 - r * r).powi(2) + (2.0 * zeta * r).powi(2)).sqrt()
    }

    fn mobility(f: f64, fn_hz: f64, zeta: f64) -> f64 {
        let r = f / fn_hz;
        r / ((1.0 - r * r).powi(2) + (2.0 * zeta * r).powi(2)).sqrt()
    }

    #[test]
    fn sdof_bandwidth_gives_zeta() {
        let s = curve(0.05, 600, |f| accelerance(f, 10.0, 0.05));
        let HalfPower::Resolved { zeta, f1_hz, f2_hz, .. } = half_power_damping(&s, 10.0, &WindowMeta::default())
        else {
            panic!("unresolved");
        };
        assert!(((f2_hz - f1_hz) - 1.0).abs() < 0.05);
        assert!((zeta - 0.05).abs() < 0.05 * 0.05);
        assert!(f1_hz < 10.0 && 10.0 < f2_hz);
    }

    #[test]
    fn error_shrinks_as_resolution_improves() {
        let errors: Vec<f64> = [0.4, 0.2, 0.1]
            .iter()
            .map(|&df| {
                let s = curve(df, (30.0 / df) as usize, |f| mobility(f, 10.0, 0.05));
                let z = half_power_damping(&s, 10.0, &WindowMeta::default()).zeta().unwrap();
                (z - 0.05).abs()
            })
            .collect();
        assert!(errors[0] > errors[1] && errors[1] > errors[2], "{errors:?}");
    }

    #[test]
    fn exponential_window_correction() {
        // Window adds 1/(2π f τ) = 0.01 of apparent damping to a ζ = 0.02 mode.
        let tau = 1.0 / (2.0 * PI * 10.0 * 0.01);
        let s = curve(0.02, 1500, |f| mobility(f, 10.0, 0.03));
        let z = half_power_damping(&s, 10.0, &WindowMeta::exponential(tau)).zeta().unwrap();
        assert!((z - 0.02).abs() < 0.02 * 0.05, "{z}");
    }

    #[test]
    fn correction_floors_at_zero() {
        let s = curve(0.02, 1500, |f| mobility(f, 10.0, 0.03));
        let z = half_power_damping(&s, 10.0, &WindowMeta::exponential(0.1)).zeta().unwrap();
        assert_eq!(z, 0.0);
    }

    #[test]
    fn overlapping_modes_unresolved() {
        let s = curve(0.01, 1200, |f| mobility(f, 5.0, 0.1) + mobility(f, 6.0, 0.1));
        let peak = (0..s.len()).max_by(|a, b| s.values[*a].total_cmp(&s.values[*b])).unwrap();
        assert_eq!(half_power_damping(&s, s.frequency(peak), &WindowMeta::default()), HalfPower::Unresolved);
    }

    #[test]
    fn band_edge_unresolved() {
        // Spectrum stops before the upper half-power point.
        let s = curve(0.05, 205, |f| mobility(f, 10.0, 0.05));
        assert_eq!(half_power_damping(&s, 10.0, &WindowMeta::default()), HalfPower::Unresolved);
    }
}
