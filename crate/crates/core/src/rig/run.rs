use super::{HammerSpec, HitEvent, PointAxis, SensorSpec, SweepSpec};
use crate::signal::TimeSeries;

/// One acceleration channel of a run.
#[derive(Debug, Clone, PartialEq)]
pub struct ResponseChannel {
    pub point: PointAxis,
    pub series: TimeSeries,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClipEvent {
    pub point: PointAxis,
    pub samples_clipped: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Excitation {
    Impact {
        hammer: HammerSpec,
        hits: Vec<HitEvent>,
    },
    Sweep(SweepSpec),
    /// Operating data with no excitation reference.
    None,
}

/// Continuous multi-channel recording of one test session.
#[derive(Debug, Clone, PartialEq)]
pub struct RawRun {
    pub sample_rate_hz: f64,
    /// Force channel; absent for operating (unexcited) runs.
    pub force: Option<TimeSeries>,
    pub excitation_point: Option<PointAxis>,
    pub excitation: Excitation,
    pub responses: Vec<ResponseChannel>,
    pub sensors: SensorSpec,
    pub clip_events: Vec<ClipEvent>,
    /// Suggested per-hit capture window, seconds.
    pub capture_window_s: Option<f64>,
}

impl RawRun {
    pub fn n_samples(&self) -> usize {
        self.responses.first().map(|c| c.series.len()).or_else(|| self.force.as_ref().map(TimeSeries::len)).unwrap_or(0)
    }

    pub fn response(&self, point: PointAxis) -> Option<&TimeSeries> {
        self.responses.iter().find(|c| c.point == point).map(|c| &c.series)
    }

    pub fn clipped(&self, point: PointAxis) -> bool {
        self.clip_events.iter().any(|c| c.point == point && c.samples_clipped > 0)
    }
}
