//! FRF bundles: a directory holding `frf.json` with every excitation/response
//! pair (complex bins as `[re, im]`, coherence, metadata), the ambient
//! spectrum used for tone screening, and the per-run hit quality report.

use std::collections::BTreeMap;
use std::path::Path;

use ema_core::frf::{FrfSpectrum, WindowMeta};
use ema_core::pipeline::HitReport;
use ema_core::signal::{Band, RealSpectrum, Spectrum, SpectrumUnit};
use ema_core::PointAxis;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};
use crate::io::{read_text, write_json};

pub const FRF_FILE: &str = "frf.json";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrfRecord {
    pub excitation: PointAxis,
    pub response: PointAxis,
    pub unit: SpectrumUnit,
    pub df_hz: f64,
    pub first_bin: usize,
    pub n_fft: usize,
    pub n_averages: usize,
    pub window_meta: WindowMeta,
    /// `[re, im]` per bin.
    pub bins: Vec<[f64; 2]>,
    pub coherence: Vec<f64>,
}

impl FrfRecord {
    pub fn from_frf(f: &FrfSpectrum) -> FrfRecord {
        FrfRecord {
            excitation: f.excitation,
            response: f.response,
            unit: f.h.unit,
            df_hz: f.h.df_hz,
            first_bin: f.h.first_bin,
            n_fft: f.h.n_fft,
            n_averages: f.n_averages,
            window_meta: f.window_meta,
            bins: f.h.bins.iter().map(|c| [c.re, c.im]).collect(),
            coherence: f.coherence.clone(),
        }
    }

    pub fn to_frf(&self) -> CliResult<FrfSpectrum> {
        if self.coherence.len() != self.bins.len() {
            return Err(CliError::usage(format!(
                "FRF {} -> {}: {} bins but {} coherence values",
                self.excitation,
                self.response,
                self.bins.len(),
                self.coherence.len()
            )));
        }
        Ok(FrfSpectrum {
            h: Spectrum {
                bins: self.bins.iter().map(|&[re, im]| Complex64::new(re, im)).collect(),
                df_hz: self.df_hz,
                first_bin: self.first_bin,
                n_fft: self.n_fft,
                unit: self.unit,
                n_averages: self.n_averages,
            },
            coherence: self.coherence.clone(),
            excitation: self.excitation,
            response: self.response,
            n_averages: self.n_averages,
            window_meta: self.window_meta,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AmbientRecord {
    pub unit: SpectrumUnit,
    pub df_hz: f64,
    pub first_bin: usize,
    pub values: Vec<f64>,
}

impl AmbientRecord {
    pub fn from_spectrum(s: &RealSpectrum) -> AmbientRecord {
        AmbientRecord { unit: s.unit, df_hz: s.df_hz, first_bin: s.first_bin, values: s.values.clone() }
    }

    pub fn to_spectrum(&self) -> RealSpectrum {
        RealSpectrum { values: self.values.clone(), df_hz: self.df_hz, first_bin: self.first_bin, unit: self.unit }
    }
}

/// Quality report of one analysed run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub source: String,
    /// `POINT:AXIS`, or `"none"`.
    pub excitation: String,
    pub accepted: usize,
    pub rejected: usize,
    pub rejected_by_flag: BTreeMap<String, usize>,
    pub hits: Vec<HitReport>,
}

/// Contents of `frf.json`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrfBundle {
    pub band: Band,
    pub window_meta: WindowMeta,
    pub runs: Vec<RunReport>,
    #[serde(default)]
    pub ambient: Option<AmbientRecord>,
    pub frfs: Vec<FrfRecord>,
}

impl FrfBundle {
    pub fn frf_spectra(&self) -> CliResult<Vec<FrfSpectrum>> {
        self.frfs.iter().map(FrfRecord::to_frf).collect()
    }

    pub fn ambient_spectrum(&self) -> Option<RealSpectrum> {
        self.ambient.as_ref().map(AmbientRecord::to_spectrum)
    }

    pub fn write(&self, dir: &Path) -> CliResult<()> {
        write_json(&dir.join(FRF_FILE), self)
    }

    pub fn read(dir: &Path) -> CliResult<FrfBundle> {
        let path = dir.join(FRF_FILE);
        serde_json::from_str(&read_text(&path)?).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
    }
}
