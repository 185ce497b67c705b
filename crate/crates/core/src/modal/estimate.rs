use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::damping::{half_power_damping, HalfPower};
use super::peaks::{pick_peaks, DEFAULT_PROMINENCE_RATIO};
use super::tone::{classify_tone, ToneScreen};
use crate::frf::FrfSpectrum;
use crate::signal::{Band, RealSpectrum};
use crate::{Error, Result};

/// What a spectral peak is judged to be.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    Structural,
    ExternalTone,
    Unresolved,
}

impl Classification {
    pub fn as_str(self) -> &'static str {
        match self {
            Classification::Structural => "structural",
            Classification::ExternalTone => "external_tone",
            Classification::Unresolved => "unresolved",
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Classification {
    type Err = Error;

    fn from_str(s: &str) -> Result<Classification> {
        match s {
            "structural" => Ok(Classification::Structural),
            "external_tone" => Ok(Classification::ExternalTone),
            "unresolved" => Ok(Classification::Unresolved),
            other => Err(Error::Parse(format!("unknown classification {other:?}"))),
        }
    }
}

/// One identified peak.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModeEstimate {
    pub f_hz: f64,
    /// Half-power damping, when the peak is resolved.
    pub zeta: Option<f64>,
    /// Summed |H| at the peak.
    pub amplitude: f64,
    /// Half-power frequencies `(f1, f2)`, when resolved.
    pub half_power: Option<(f64, f64)>,
    pub classification: Classification,
    pub run_id: String,
}

/// Knobs for [`identify_modes`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IdentifyParams {
    pub band: Band,
    pub prominence_ratio: f64,
    pub tone_screen: ToneScreen,
}

impl IdentifyParams {
    pub fn new(band: Band) -> IdentifyParams {
        IdentifyParams { band, prominence_ratio: DEFAULT_PROMINENCE_RATIO, tone_screen: ToneScreen::default() }
    }
}

/// Peaks of the summed spectrum, each with half-power damping (taken from
/// the summed curve, corrected for the FRFs' exponential window) and a
/// structural/tone classification.
pub fn identify_modes(
    summed: &RealSpectrum,
    frfs: &[FrfSpectrum],
    ambient: Option<&RealSpectrum>,
    params: &IdentifyParams,
    run_id: &str,
) -> Result<Vec<ModeEstimate>> {
    let window = frfs.first().map(|f| f.window_meta).unwrap_or_default();
    let peaks = pick_peaks(summed, params.band, params.prominence_ratio)?;
    Ok(peaks
        .into_iter()
        .map(|p| {
            let (zeta, half_power) = match half_power_damping(summed, p.frequency_hz, &window) {
                HalfPower::Resolved { zeta, f1_hz, f2_hz, .. } => (Some(zeta), Some((f1_hz, f2_hz))),
                HalfPower::Unresolved => (None, None),
            };
            ModeEstimate {
                f_hz: p.frequency_hz,
                zeta,
                amplitude: p.amplitude,
                half_power,
                classification: classify_tone(p.frequency_hz, frfs, ambient, &params.tone_screen),
                run_id: run_id.to_string(),
            }
        })
        .collect())
}

/// Single-DOF prediction of the natural frequency after adding
/// `delta_mass_kg` to an effective mass: `f·sqrt(m / (m + Δm))`.
pub fn mass_shift_estimate(f_n_hz: f64, effective_mass_kg: f64, delta_mass_kg: f64) -> Result<f64> {
    let m_new = effective_mass_kg + delta_mass_kg;
    if !(effective_mass_kg > 0.0) || !(m_new > 0.0) {
        return Err(Error::invalid(format!(
            "resulting mass must be positive, got {effective_mass_kg} + {delta_mass_kg}"
        )));
    }
    Ok(f_n_hz * (effective_mass_kg / m_new).sqrt())
}
