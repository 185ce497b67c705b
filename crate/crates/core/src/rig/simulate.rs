use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::response::{modal_impact_response, modal_sweep_response, DofResponse};
use super::{ClipEvent, Excitation, HammerSpec, PointAxis, RawRun, ResponseChannel, RigModel, SensorSpec};
use crate::signal::TimeSeries;
use crate::units::Quantity;
use crate::{Error, Result};

/// Capture window as a fraction of the nominal spacing between hits.
pub const CAPTURE_FRACTION: f64 = 0.8;
/// Hit times are jittered by up to this fraction of the spacing.
const JITTER_FRACTION: f64 = 0.05;
/// Nominal offset of a hit inside its slot, as a fraction of the spacing.
const LEAD_FRACTION: f64 = 0.1;
/// Pretrigger share of a capture window.
const PRETRIGGER_FRACTION: f64 = 0.05;

/// A second, smaller contact after the main pulse (a double hit).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Echo {
    pub delay_s: f64,
    pub ratio: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HitEvent {
    pub time_s: f64,
    /// Multiplier on the hammer's peak force for this swing.
    pub force_scale: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub echo: Option<Echo>,
}

impl HitEvent {
    pub fn clean(time_s: f64) -> HitEvent {
        HitEvent { time_s, force_scale: 1.0, echo: None }
    }
}

/// `n_hits` evenly spaced hits over `duration_s`, each jittered by a seeded
/// random offset (operators never swing at exactly regular intervals).
pub fn hit_schedule(n_hits: usize, duration_s: f64, seed: u64) -> Result<Vec<HitEvent>> {
    if n_hits == 0 {
        return Err(Error::invalid("hits must be ≥ 1"));
    }
    if !(duration_s > 0.0) {
        return Err(Error::invalid("duration must be positive"));
    }
    let spacing = duration_s / n_hits as f64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..n_hits)
        .map(|k| {
            let jitter = rng.random_range(-JITTER_FRACTION..=JITTER_FRACTION) * spacing;
            HitEvent::clean((k as f64 + LEAD_FRACTION) * spacing + jitter)
        })
        .collect())
}

fn capture_window(hits: &[HitEvent], duration_s: f64) -> Option<f64> {
    let mut times: Vec<f64> = hits.iter().map(|h| h.time_s).collect();
    times.sort_by(f64::total_cmp);
    let last = *times.last()?;
    let tail = (duration_s - last) / (1.0 - PRETRIGGER_FRACTION);
    let window = if times.len() > 1 {
        let nominal = duration_s / times.len() as f64;
        (CAPTURE_FRACTION * nominal).min(tail)
    } else {
        tail
    };
    (window > 0.0).then_some(window)
}

fn force_history(hammer: &HammerSpec, hits: &[HitEvent], fs_hz: f64, n: usize) -> Vec<f64> {
    let mut force = vec![0.0; n];
    for hit in hits {
        let pulse = HammerSpec { peak_force_n: hammer.peak_force_n * hit.force_scale, ..*hammer };
        let mut add = |t0: f64, scale: f64| {
            let first = (t0 * fs_hz).ceil().max(0.0) as usize;
            let last = (((t0 + pulse.pulse_duration_s) * fs_hz).floor() as usize).min(n - 1);
            for (i, f) in force.iter_mut().enumerate().take(last + 1).skip(first) {
                *f += scale * pulse.force_at(i as f64 / fs_hz, t0);
            }
        };
        add(hit.time_s, 1.0);
        if let Some(echo) = hit.echo {
            add(hit.time_s + echo.delay_s, echo.ratio);
        }
    }
    force
}

fn sensor_channels(
    rig: &RigModel,
    resp: &DofResponse,
    sensors: &SensorSpec,
    fs_hz: f64,
) -> Result<(Vec<ResponseChannel>, Vec<ClipEvent>)> {
    let mut channels = Vec::with_capacity(rig.node_map().len());
    let mut clips = Vec::new();
    for m in rig.node_map() {
        let point = m.point_axis();
        let mut clipped = 0;
        let samples = resp.acceleration[m.dof]
            .iter()
            .map(|&a| {
                let (v, c) = sensors.measure(a);
                clipped += usize::from(c);
                v
            })
            .collect();
        if clipped > 0 {
            clips.push(ClipEvent { point, samples_clipped: clipped });
        }
        let series = TimeSeries::new(samples, fs_hz, Quantity::Acceleration, format!("acc:{point}"))?;
        channels.push(ResponseChannel { point, series });
    }
    Ok((channels, clips))
}

fn sample_count(fs_hz: f64, duration_s: f64) -> Result<usize> {
    if !(fs_hz > 0.0 && fs_hz.is_finite()) {
        return Err(Error::invalid("sample rate must be positive"));
    }
    if !(duration_s > 0.0 && duration_s.is_finite()) {
        return Err(Error::invalid("duration must be positive"));
    }
    let n = (duration_s * fs_hz).round() as usize;
    if n < 2 {
        return Err(Error::invalid("run is shorter than two samples"));
    }
    Ok(n)
}

/// Hammer run with an explicit list of hits.
///
/// Responses are exact modal superposition of the sampled force; each
/// acceleration channel passes through the sensor model (sensitivity, then
/// clipping at range) and clipping is recorded per channel.
#[allow(clippy::too_many_arguments)]
pub fn simulate_impacts(
    rig: &RigModel,
    hammer: &HammerSpec,
    drive_point: PointAxis,
    sensors: &SensorSpec,
    fs_hz: f64,
    duration_s: f64,
    hits: &[HitEvent],
) -> Result<RawRun> {
    hammer.validate()?;
    sensors.validate()?;
    let drive_dof = rig.dof_of(drive_point)?;
    let n = sample_count(fs_hz, duration_s)?;
    if hammer.pulse_duration_s >= duration_s {
        return Err(Error::invalid(format!(
            "pulse of {} s does not fit in a {duration_s} s run",
            hammer.pulse_duration_s
        )));
    }
    for hit in hits {
        let end = hit.time_s + hammer.pulse_duration_s + hit.echo.map_or(0.0, |e| e.delay_s.max(0.0));
        if hit.time_s < 0.0 || end > duration_s {
            return Err(Error::invalid(format!("hit at {} s falls outside the run", hit.time_s)));
        }
        if !(hit.force_scale >= 0.0) {
            return Err(Error::invalid("hit force scale must be non-negative"));
        }
    }
    let force = force_history(hammer, hits, fs_hz, n);
    let resp = modal_impact_response(rig, drive_dof, &force, fs_hz)?;
    let (responses, clip_events) = sensor_channels(rig, &resp, sensors, fs_hz)?;
    Ok(RawRun {
        sample_rate_hz: fs_hz,
        force: Some(TimeSeries::new(force, fs_hz, Quantity::Force, format!("force:{drive_point}"))?),
        excitation_point: Some(drive_point),
        excitation: Excitation::Impact { hammer: *hammer, hits: hits.to_vec() },
        responses,
        sensors: *sensors,
        clip_events,
        capture_window_s: capture_window(hits, duration_s),
    })
}

/// Single hammer hit at a seeded time in the first tenth of the run.
#[allow(clippy::too_many_arguments)]
pub fn simulate_impact(
    rig: &RigModel,
    hammer: &HammerSpec,
    drive_point: PointAxis,
    sensors: &SensorSpec,
    fs_hz: f64,
    duration_s: f64,
    seed: u64,
) -> Result<RawRun> {
    let hits = hit_schedule(1, duration_s, seed)?;
    simulate_impacts(rig, hammer, drive_point, sensors, fs_hz, duration_s, &hits)
}

/// Linear swept sine `A·sin(2π(f0·t + rate·t²/2))` from `f_start_hz` to `f_end_hz`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub f_start_hz: f64,
    pub f_end_hz: f64,
    pub rate_hz_per_s: f64,
    pub amplitude_n: f64,
}

impl SweepSpec {
    pub fn duration_s(&self) -> f64 {
        (self.f_end_hz - self.f_start_hz) / self.rate_hz_per_s
    }

    pub fn validate(&self, fs_hz: f64) -> Result<()> {
        if !(self.f_start_hz >= 0.0 && self.f_start_hz < self.f_end_hz) {
            return Err(Error::invalid("sweep needs 0 ≤ f_start < f_end"));
        }
        if !(self.f_end_hz < fs_hz / 2.0) {
            return Err(Error::invalid(format!(
                "sweep end {} Hz is not below Nyquist ({} Hz)",
                self.f_end_hz,
                fs_hz / 2.0
            )));
        }
        if !(self.rate_hz_per_s > 0.0) {
            return Err(Error::invalid("sweep rate must be positive"));
        }
        if !(self.amplitude_n >= 0.0 && self.amplitude_n.is_finite()) {
            return Err(Error::invalid("sweep amplitude must be non-negative"));
        }
        Ok(())
    }

    pub fn force_samples(&self, fs_hz: f64) -> Result<Vec<f64>> {
        self.validate(fs_hz)?;
        let n = sample_count(fs_hz, self.duration_s())? + 1;
        Ok((0..n)
            .map(|i| {
                let t = i as f64 / fs_hz;
                let phase = 2.0 * PI * (self.f_start_hz * t + 0.5 * self.rate_hz_per_s * t * t);
                self.amplitude_n * phase.sin()
            })
            .collect())
    }
}

/// Shaker run with a linear swept sine, integrated with Newmark
/// average-acceleration stepping.
pub fn simulate_sweep(
    rig: &RigModel,
    drive_point: PointAxis,
    sweep: &SweepSpec,
    sensors: &SensorSpec,
    fs_hz: f64,
) -> Result<RawRun> {
    sensors.validate()?;
    let drive_dof = rig.dof_of(drive_point)?;
    let force = sweep.force_samples(fs_hz)?;
    let resp = modal_sweep_response(rig, drive_dof, &force, fs_hz)?;
    let (responses, clip_events) = sensor_channels(rig, &resp, sensors, fs_hz)?;
    Ok(RawRun {
        sample_rate_hz: fs_hz,
        force: Some(TimeSeries::new(force, fs_hz, Quantity::Force, format!("force:{drive_point}"))?),
        excitation_point: Some(drive_point),
        excitation: Excitation::Sweep(*sweep),
        responses,
        sensors: *sensors,
        clip_events,
        capture_window_s: None,
    })
}
