use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::signal::{RealSpectrum, Spectrum, TimeSeries};
use crate::units::{Quantity, NEWTONS_PER_LBF};
use crate::{Error, Result};

/// Nominal hammer peak force: 1000 lbf.
pub const NOMINAL_PEAK_FORCE_N: f64 = 1000.0 * NEWTONS_PER_LBF;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Tip {
    Soft,
    Medium,
    MediumHard,
    Hard,
}

impl std::str::FromStr for Tip {
    type Err = Error;

    fn from_str(s: &str) -> Result<Tip> {
        match s {
            "soft" => Ok(Tip::Soft),
            "medium" => Ok(Tip::Medium),
            "medium_hard" => Ok(Tip::MediumHard),
            "hard" => Ok(Tip::Hard),
            _ => Err(Error::Parse(format!("unknown tip {s:?} (soft, medium, medium_hard, hard)"))),
        }
    }
}

/// Half-sine contact duration per tip, seconds.
///
/// Defaults are calibrated so the medium-hard tip keeps its force spectrum
/// within 10 dB of DC up to about 900 Hz.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TipDurations {
    pub soft: f64,
    pub medium: f64,
    pub medium_hard: f64,
    pub hard: f64,
}

impl Default for TipDurations {
    fn default() -> Self {
        TipDurations { soft: 4.0e-3, medium: 1.5e-3, medium_hard: 1.13e-3, hard: 0.5e-3 }
    }
}

impl TipDurations {
    pub fn duration(&self, tip: Tip) -> f64 {
        match tip {
            Tip::Soft => self.soft,
            Tip::Medium => self.medium,
            Tip::MediumHard => self.medium_hard,
            Tip::Hard => self.hard,
        }
    }

    /// Softer tips must have strictly longer contact.
    pub fn validate(&self) -> Result<()> {
        let d = [self.soft, self.medium, self.medium_hard, self.hard];
        if d.iter().any(|v| !(*v > 0.0)) || d.windows(2).any(|w| w[0] <= w[1]) {
            return Err(Error::invalid("tip durations must be positive and strictly decreasing from soft to hard"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HammerSpec {
    pub tip: Tip,
    pub peak_force_n: f64,
    pub pulse_duration_s: f64,
}

impl HammerSpec {
    /// Nominal 1000 lbf hammer with the default duration for `tip`.
    pub fn new(tip: Tip) -> HammerSpec {
        Self::with_table(tip, &TipDurations::default())
    }

    pub fn with_table(tip: Tip, table: &TipDurations) -> HammerSpec {
        HammerSpec { tip, peak_force_n: NOMINAL_PEAK_FORCE_N, pulse_duration_s: table.duration(tip) }
    }

    pub fn with_peak_force(mut self, peak_force_n: f64) -> HammerSpec {
        self.peak_force_n = peak_force_n;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.peak_force_n >= 0.0 && self.peak_force_n.is_finite()) {
            return Err(Error::invalid("hammer peak force must be non-negative"));
        }
        if !(self.pulse_duration_s > 0.0) {
            return Err(Error::invalid("hammer pulse duration must be positive"));
        }
        Ok(())
    }

    /// Force of a pulse that starts at `t0`, evaluated at `t`.
    pub fn force_at(&self, t: f64, t0: f64) -> f64 {
        let tau = t - t0;
        if (0.0..=self.pulse_duration_s).contains(&tau) {
            self.peak_force_n * (PI * tau / self.pulse_duration_s).sin()
        } else {
            0.0
        }
    }

    /// A single pulse starting at t = 0 in an `n`-sample record.
    pub fn pulse_series(&self, fs_hz: f64, n: usize) -> Result<TimeSeries> {
        self.validate()?;
        let x = (0..n).map(|i| self.force_at(i as f64 / fs_hz, 0.0)).collect();
        TimeSeries::new(x, fs_hz, Quantity::Force, "force")
    }
}

/// Highest frequency up to which the force spectrum stays within `drop_db`
/// of its DC level. The crossing is interpolated linearly in dB between bins.
pub fn usable_bandwidth(force_spectrum: &Spectrum, drop_db: f64) -> Result<f64> {
    if !(drop_db > 0.0) {
        return Err(Error::invalid("drop must be positive dB"));
    }
    let mag: RealSpectrum = force_spectrum.magnitude();
    let dc = mag.values.first().copied().unwrap_or(0.0);
    if !(dc > 0.0) {
        return Err(Error::invalid("force spectrum has no DC content"));
    }
    let db = |v: f64| 20.0 * (v / dc).log10();
    for i in 1..mag.len() {
        let here = db(mag.values[i]);
        if here < -drop_db {
            let prev = db(mag.values[i - 1]);
            let frac = if prev.is_finite() && here.is_finite() { (prev + drop_db) / (prev - here) } else { 0.0 };
            return Ok(mag.frequency(i - 1) + frac * mag.df_hz);
        }
    }
    Ok(mag.frequency(mag.len() - 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signal::dft_forward;

    fn bandwidth_at(spec: &HammerSpec, fs: f64) -> f64 {
        let pulse = spec.pulse_series(fs, fs as usize).unwrap();
        usable_bandwidth(&dft_forward(&pulse).unwrap(), 10.0).unwrap()
    }

    fn bandwidth(spec: &HammerSpec) -> f64 {
        let pulse = spec.pulse_series(8192.0, 8192).unwrap();
        usable_bandwidth(&dft_forward(&pulse).unwrap(), 10.0).unwrap()
    }

    /// Dense evaluation of the continuous half-sine transform, scanned for the
    /// first 10 dB drop.
    fn brute_force_bandwidth(t: f64, drop_db: f64) -> f64 {
        let n = 4000;
        let dtau = t / n as f64;
        let ft = |f: f64| {
            let (mut re, mut im) = (0.0, 0.0);
            for i in 0..n {
                let tau = (i as f64 + 0.5) * dtau;
                let x = (PI * tau / t).sin();
                re += x * (2.0 * PI * f * tau).cos() * dtau;
                im -= x * (2.0 * PI * f * tau).sin() * dtau;
            }
            (re * re + im * im).sqrt()
        };
        let dc = ft(0.0);
        let mut f = 0.0;
        while 20.0 * (ft(f) / dc).log10() >= -drop_db {
            f += 0.5;
        }
        f
    }

    #[test]
    fn one_millisecond_pulse_against_dense_scan() {
        let spec = HammerSpec { tip: Tip::Medium, peak_force_n: 1.0, pulse_duration_s: 1e-3 };
        let oracle = brute_force_bandwidth(1e-3, 10.0);
        // Finely sampled so the discrete pulse tracks the continuous one.
        let got = bandwidth_at(&spec, 65536.0);
        assert!((got - oracle).abs() < 2.0, "{got} vs {oracle}");
    }

    #[test]
    fn medium_hard_reaches_about_900_hz() {
        let f = bandwidth(&HammerSpec::new(Tip::MediumHard));
        assert!((800.0..=1000.0).contains(&f), "{f}");
    }

    #[test]
    fn softer_tips_excite_narrower_bands() {
        let f: Vec<f64> = [Tip::Soft, Tip::Medium, Tip::MediumHard, Tip::Hard]
            .iter()
            .map(|t| bandwidth(&HammerSpec::new(*t)))
            .collect();
        assert!(f.windows(2).all(|w| w[0] < w[1]), "{f:?}");
    }

    #[test]
    fn zero_spectrum_is_an_error() {
        let spec = HammerSpec::new(Tip::Hard).with_peak_force(0.0);
        let pulse = spec.pulse_series(1000.0, 100).unwrap();
        assert!(usable_bandwidth(&dft_forward(&pulse).unwrap(), 10.0).is_err());
    }

    #[test]
    fn tip_table_validation() {
        assert!(TipDurations::default().validate().is_ok());
        let bad = TipDurations { medium: 5e-3, ..TipDurations::default() };
        assert!(bad.validate().is_err());
    }
}
