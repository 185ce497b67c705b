use serde::{Deserialize, Serialize};

use super::estimate::Classification;
use super::peaks::pick_peaks;
use crate::frf::FrfSpectrum;
use crate::signal::{Band, RealSpectrum};

/// Thresholds separating structural resonances from external tones.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ToneScreen {
    /// Mean coherence at or above which a peak is structural.
    pub coherence_threshold: f64,
    /// Minimum prominence, as a multiple of the median, for a peak of the
    /// ambient (unexcited) autospectrum to count as persistent.
    pub ambient_prominence_ratio: f64,
}

impl Default for ToneScreen {
    fn default() -> ToneScreen {
        ToneScreen { coherence_threshold: 0.5, ambient_prominence_ratio: 10.0 }
    }
}

/// Mean coherence over the FRFs at the bin nearest `f_hz`; `None` when no
/// FRF covers the frequency.
fn mean_coherence(f_hz: f64, frfs: &[FrfSpectrum]) -> Option<f64> {
    let values: Vec<f64> = frfs.iter().filter_map(|frf| frf.h.nearest_bin(f_hz).map(|k| frf.coherence[k])).collect();
    (!values.is_empty()).then(|| values.iter().sum::<f64>() / values.len() as f64)
}

/// True when the ambient spectrum holds a prominent peak within one of its
/// bins of `f_hz`.
fn persists(f_hz: f64, ambient: &RealSpectrum, ratio: f64) -> bool {
    if ambient.len() < 3 {
        return false;
    }
    let band = Band { lo_hz: ambient.frequency(0), hi_hz: ambient.frequency(ambient.len() - 1) };
    match pick_peaks(ambient, band, ratio) {
        Ok(peaks) => peaks.iter().any(|p| (p.frequency_hz - f_hz).abs() <= ambient.df_hz),
        Err(_) => false,
    }
}

/// Structural when the mean coherence at the peak reaches the threshold;
/// external tone when coherence is low and the peak persists in the ambient
/// autospectrum; unresolved otherwise.
pub fn classify_tone(
    f_hz: f64,
    frfs: &[FrfSpectrum],
    ambient: Option<&RealSpectrum>,
    screen: &ToneScreen,
) -> Classification {
    let Some(coherence) = mean_coherence(f_hz, frfs) else {
        return Classification::Unresolved;
    };
    if coherence >= screen.coherence_threshold {
        return Classification::Structural;
    }
    match ambient {
        Some(a) if persists(f_hz, a, screen.ambient_prominence_ratio) => Classification::ExternalTone,
        _ => Classification::Unresolved,
    }
}
