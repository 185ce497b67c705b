use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::capture::ImpactRecord;
use crate::signal::{apply_window, dft_forward, Band, Spectrum, SpectrumUnit, TimeSeries, Window};
use crate::units::Quantity;
use crate::{Error, PointAxis, Result};

/// Windows applied before transforming each record.
///
/// The force window (if any) conditions the force channel only; the
/// exponential window is applied to force and response alike, and its extra
/// decay is what damping estimates later remove.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct WindowMeta {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub force_window: Option<Window>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exponential_tau_s: Option<f64>,
}

impl WindowMeta {
    pub fn exponential(tau_s: f64) -> WindowMeta {
        WindowMeta { force_window: None, exponential_tau_s: Some(tau_s) }
    }

    fn condition(&self, ts: &TimeSeries, is_force: bool) -> Result<TimeSeries> {
        let mut out = ts.clone();
        if is_force {
            if let Some(w) = &self.force_window {
                out = apply_window(&out, w)?;
            }
        }
        if let Some(tau_s) = self.exponential_tau_s {
            out = apply_window(&out, &Window::Exponential { tau_s })?;
        }
        Ok(out)
    }
}

/// H1 estimate for one excitation/response pair.
#[derive(Debug, Clone, PartialEq)]
pub struct FrfSpectrum {
    /// Accelerance, (m/s²)/N.
    pub h: Spectrum,
    /// Ordinary coherence per bin, in [0, 1].
    pub coherence: Vec<f64>,
    pub excitation: PointAxis,
    pub response: PointAxis,
    pub n_averages: usize,
    pub window_meta: WindowMeta,
}

impl FrfSpectrum {
    pub fn restrict(&self, band: Band) -> Result<FrfSpectrum> {
        let h = self.h.restrict(band)?;
        let offset = h.first_bin - self.h.first_bin;
        let coherence = self.coherence[offset..offset + h.len()].to_vec();
        Ok(FrfSpectrum { h, coherence, ..self.clone() })
    }

    pub fn df_hz(&self) -> f64 {
        self.h.df_hz
    }
}

struct Accumulator {
    sff: Vec<f64>,
    sxx: Vec<f64>,
    sfx: Vec<Complex64>,
}

/// `H1 = mean(S_fx) / mean(S_ff)`, coherence `|mean S_fx|² / (mean S_ff · mean S_xx)`.
pub fn estimate_h1(
    records: &[ImpactRecord],
    excitation: PointAxis,
    response: PointAxis,
    windows: &WindowMeta,
) -> Result<FrfSpectrum> {
    let first = records.first().ok_or(Error::NoAcceptedHits)?;
    let (n, fs) = (first.force.len(), first.force.sample_rate_hz());
    let mut acc: Option<Accumulator> = None;
    let mut template: Option<Spectrum> = None;
    for rec in records {
        if rec.force.len() != n || rec.force.sample_rate_hz() != fs {
            return Err(Error::mismatch("records differ in length or sample rate"));
        }
        let resp = rec.response(response).ok_or_else(|| Error::UnknownPoint(response.to_string()))?;
        let f = dft_forward(&windows.condition(&rec.force, true)?)?;
        let x = dft_forward(&windows.condition(resp, false)?)?;
        let a = acc.get_or_insert_with(|| Accumulator {
            sff: vec![0.0; f.len()],
            sxx: vec![0.0; f.len()],
            sfx: vec![Complex64::new(0.0, 0.0); f.len()],
        });
        for k in 0..f.len() {
            a.sff[k] += f.bins[k].norm_sqr();
            a.sxx[k] += x.bins[k].norm_sqr();
            a.sfx[k] += f.bins[k].conj() * x.bins[k];
        }
        template.get_or_insert(f);
    }
    let (acc, template) = (acc.expect("at least one record"), template.expect("at least one record"));
    let n_averages = records.len();
    let m = n_averages as f64;
    let mut bins = Vec::with_capacity(acc.sff.len());
    let mut coherence = Vec::with_capacity(acc.sff.len());
    for k in 0..acc.sff.len() {
        let (sff, sxx, sfx) = (acc.sff[k] / m, acc.sxx[k] / m, acc.sfx[k] / m);
        bins.push(if sff > 0.0 { sfx / sff } else { Complex64::new(0.0, 0.0) });
        let denom = sff * sxx;
        let c = if denom > 0.0 {
            if n_averages == 1 {
                1.0
            } else {
                (sfx.norm_sqr() / denom).clamp(0.0, 1.0)
            }
        } else {
            0.0
        };
        coherence.push(c);
    }
    let h = Spectrum { bins, unit: SpectrumUnit::PerForce(Quantity::Acceleration), n_averages, ..template };
    Ok(FrfSpectrum { h, coherence, excitation, response, n_averages, window_meta: *windows })
}

/// H1 for every response channel of the records, in channel order.
pub fn estimate_h1_all(
    records: &[ImpactRecord],
    excitation: PointAxis,
    windows: &WindowMeta,
) -> Result<Vec<FrfSpectrum>> {
    let first = records.first().ok_or(Error::NoAcceptedHits)?;
    first.responses.iter().map(|r| estimate_h1(records, excitation, r.point, windows)).collect()
}
