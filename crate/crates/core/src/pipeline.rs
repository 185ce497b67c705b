//! One-call analysis of a recorded run: trigger, screen, estimate FRFs and
//! the ambient autospectrum.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::capture::{
    assemble_records, detect_triggers, HitFlag, HitFlags, ImpactRecord, QualityRules, TriggerSettings,
};
use crate::frf::{contiguous_ranges, estimate_h1_all, quiet_ranges, summed_autospectrum, FrfSpectrum, WindowMeta};
use crate::rig::{Excitation, RawRun};
use crate::signal::{Band, RealSpectrum, TimeSeries};
use crate::{Error, PointAxis, Result};

/// Default analysis band, Hz.
pub const DEFAULT_BAND: Band = Band { lo_hz: 0.0, hi_hz: 200.0 };
/// Length of the quiet segments used for the ambient autospectrum, seconds.
pub const DEFAULT_AMBIENT_SEGMENT_S: f64 = 0.5;
/// Record length for runs without hit timing (sweeps), seconds.
const DEFAULT_RECORD_S: f64 = 4.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnalysisSettings {
    pub band: Band,
    pub window: WindowMeta,
    /// Overrides the underload limit derived from the hammer's nominal force.
    pub min_force_n: Option<f64>,
    /// Overrides the run's suggested per-hit capture window.
    pub capture_window_s: Option<f64>,
    pub ambient_segment_s: f64,
}

impl Default for AnalysisSettings {
    fn default() -> AnalysisSettings {
        AnalysisSettings {
            band: DEFAULT_BAND,
            window: WindowMeta::default(),
            min_force_n: None,
            capture_window_s: None,
            ambient_segment_s: DEFAULT_AMBIENT_SEGMENT_S,
        }
    }
}

/// Screening outcome of one detected hit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HitReport {
    pub trigger_time_s: f64,
    pub peak_force_n: f64,
    pub flags: HitFlags,
}

/// Everything derived from one run, restricted to the analysis band.
#[derive(Debug, Clone, PartialEq)]
pub struct RunAnalysis {
    pub excitation: Option<PointAxis>,
    pub frfs: Vec<FrfSpectrum>,
    /// Summed autospectrum of the unexcited stretches of the run.
    pub ambient: Option<RealSpectrum>,
    pub hits: Vec<HitReport>,
}

impl RunAnalysis {
    pub fn accepted(&self) -> usize {
        self.hits.iter().filter(|h| h.flags.is_ok()).count()
    }

    pub fn rejected(&self) -> usize {
        self.hits.len() - self.accepted()
    }

    /// Rejected hits per defect flag (a hit with two defects counts twice).
    pub fn rejected_by_flag(&self) -> BTreeMap<HitFlag, usize> {
        let mut out = BTreeMap::new();
        for h in self.hits.iter().filter(|h| !h.flags.is_ok()) {
            for f in h.flags.iter() {
                *out.entry(f).or_insert(0) += 1;
            }
        }
        out
    }
}

fn report(r: &ImpactRecord) -> HitReport {
    HitReport { trigger_time_s: r.trigger_time_s, peak_force_n: r.peak_force_n, flags: r.flags.clone() }
}

fn response_series(run: &RawRun) -> Vec<TimeSeries> {
    run.responses.iter().map(|c| c.series.clone()).collect()
}

fn ambient_from(run: &RawRun, ranges: &[std::ops::Range<usize>], band: Band) -> Result<Option<RealSpectrum>> {
    if ranges.is_empty() || run.responses.is_empty() {
        return Ok(None);
    }
    summed_autospectrum(&response_series(run), ranges, band).map(Some)
}

/// Analyses one run.
///
/// Hammer runs are triggered on the force channel, each hit is screened,
/// and H1 is averaged over the accepted hits; the stretches between capture
/// windows give the ambient autospectrum. Sweep runs are cut into
/// back-to-back records without screening. Runs without excitation yield
/// only the ambient autospectrum of the whole record.
pub fn analyze_run(run: &RawRun, settings: &AnalysisSettings) -> Result<RunAnalysis> {
    let nyquist = run.sample_rate_hz / 2.0;
    if settings.band.hi_hz > nyquist {
        return Err(Error::invalid(format!("band {} exceeds the Nyquist frequency {nyquist} Hz", settings.band)));
    }
    let fs = run.sample_rate_hz;
    let ambient_len = (settings.ambient_segment_s * fs).round() as usize;
    let n = run.n_samples();
    match (&run.excitation, &run.force, run.excitation_point) {
        (Excitation::Impact { hammer, .. }, Some(force), Some(excitation)) => {
            let window_s = settings
                .capture_window_s
                .or(run.capture_window_s)
                .ok_or_else(|| Error::invalid("run has no capture window; set one explicitly"))?;
            let trigger = TriggerSettings::for_window(window_s, hammer.peak_force_n);
            let spans = detect_triggers(force, &trigger)?;
            let mut rules = QualityRules::for_nominal(hammer.peak_force_n);
            if let Some(min) = settings.min_force_n {
                rules.min_force_n = min;
            }
            let (accepted, rejected) = assemble_records(run, &spans, &run.sensors, &rules)?;
            let mut hits: Vec<HitReport> = accepted.iter().chain(&rejected).map(report).collect();
            hits.sort_by(|a, b| a.trigger_time_s.total_cmp(&b.trigger_time_s));
            let frfs = if accepted.is_empty() {
                Vec::new()
            } else {
                estimate_h1_all(&accepted, excitation, &settings.window)?
                    .into_iter()
                    .map(|f| f.restrict(settings.band))
                    .collect::<Result<_>>()?
            };
            let ambient = ambient_from(run, &quiet_ranges(n, &spans, ambient_len), settings.band)?;
            Ok(RunAnalysis { excitation: Some(excitation), frfs, ambient, hits })
        }
        (Excitation::Sweep(_), Some(force), Some(excitation)) => {
            let len = ((settings.capture_window_s.unwrap_or(DEFAULT_RECORD_S) * fs).round() as usize).min(n);
            let records = contiguous_ranges(n, len)
                .into_iter()
                .map(|r| {
                    let responses = run
                        .responses
                        .iter()
                        .map(|c| {
                            Ok(crate::rig::ResponseChannel {
                                point: c.point,
                                series: c.series.segment(r.start, r.end)?,
                            })
                        })
                        .collect::<Result<Vec<_>>>()?;
                    ImpactRecord::new(force.segment(r.start, r.end)?, responses, r.start as f64 / fs, 0)
                })
                .collect::<Result<Vec<_>>>()?;
            let frfs = estimate_h1_all(&records, excitation, &settings.window)?
                .into_iter()
                .map(|f| f.restrict(settings.band))
                .collect::<Result<_>>()?;
            Ok(RunAnalysis { excitation: Some(excitation), frfs, ambient: None, hits: Vec::new() })
        }
        _ => {
            let ambient = ambient_from(run, &contiguous_ranges(n, ambient_len.min(n)), settings.band)?;
            Ok(RunAnalysis { excitation: None, frfs: Vec::new(), ambient, hits: Vec::new() })
        }
    }
}

/// Bin-wise sum of ambient spectra sharing a frequency grid; spectra on a
/// different grid than the first are ignored.
pub fn merge_ambient<'a>(spectra: impl IntoIterator<Item = &'a RealSpectrum>) -> Option<RealSpectrum> {
    let mut iter = spectra.into_iter();
    let mut total = iter.next()?.clone();
    for s in iter {
        if s.first_bin == total.first_bin && s.len() == total.len() && s.df_hz == total.df_hz {
            for (t, v) in total.values.iter_mut().zip(&s.values) {
                *t += v;
            }
        }
    }
    Some(total)
}
