//! Run bundles: `run.json` metadata plus one `time_s,value` CSV per channel.

use std::path::Path;

use ema_core::rig::{
    ClipEvent, Excitation, HammerSpec, HitEvent, NoiseSpec, RawRun, ResponseChannel, SensorSpec, SweepSpec,
};
use ema_core::signal::TimeSeries;
use ema_core::units::Quantity;
use ema_core::PointAxis;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};
use crate::io::{read_text, write_atomic, write_json};

pub const RUN_FILE: &str = "run.json";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ExcitationMeta {
    Impact { hammer: HammerSpec, hits: Vec<HitEvent> },
    Sweep { sweep: SweepSpec },
    None,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChannelMeta {
    pub file: String,
    /// `POINT:AXIS` of the channel.
    pub point: PointAxis,
    pub quantity: Quantity,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClipMeta {
    pub point: PointAxis,
    pub samples_clipped: usize,
}

/// Contents of `run.json`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunMeta {
    pub sample_rate_hz: f64,
    pub n_samples: usize,
    /// `POINT:AXIS`, or `"none"` for runs without excitation.
    pub excitation_point: String,
    pub excitation: ExcitationMeta,
    pub sensors: SensorSpec,
    #[serde(default)]
    pub noise: Option<NoiseSpec>,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub capture_window_s: Option<f64>,
    #[serde(default)]
    pub clip_events: Vec<ClipMeta>,
    /// Force channel first when present, then responses in rig order.
    pub channels: Vec<ChannelMeta>,
}

fn channel_file(prefix: &str, p: PointAxis) -> String {
    format!("{prefix}_{}_{}.csv", p.point, p.axis.as_str())
}

/// Shortest round-trip decimal text, so files are byte-stable and reread
/// exactly.
fn channel_csv(ts: &TimeSeries) -> CliResult<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let fail = |e: csv::Error| CliError::Io(e.to_string());
    w.write_record(["time_s", "value"]).map_err(fail)?;
    let fs = ts.sample_rate_hz();
    for (i, v) in ts.samples().iter().enumerate() {
        w.write_record([(i as f64 / fs).to_string(), v.to_string()]).map_err(fail)?;
    }
    w.into_inner().map_err(|e| CliError::Io(e.to_string()))
}

fn read_channel(path: &Path) -> CliResult<Vec<f64>> {
    let text = read_text(path)?;
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let header = r.headers().map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
    if header.iter().ne(["time_s", "value"]) {
        return Err(CliError::usage(format!("{}: header must be time_s,value", path.display())));
    }
    r.records()
        .map(|row| {
            let row = row.map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
            row.get(1)
                .and_then(|v| v.trim().parse::<f64>().ok())
                .ok_or_else(|| CliError::usage(format!("{}: bad value in row {:?}", path.display(), row)))
        })
        .collect()
}

/// Writes the bundle; channel files first, `run.json` last.
pub fn write_run_bundle(dir: &Path, run: &RawRun, noise: Option<&NoiseSpec>, seed: Option<u64>) -> CliResult<RunMeta> {
    let mut channels = Vec::new();
    if let (Some(force), Some(p)) = (&run.force, run.excitation_point) {
        let file = channel_file("force", p);
        write_atomic(&dir.join(&file), &channel_csv(force)?)?;
        channels.push(ChannelMeta { file, point: p, quantity: Quantity::Force });
    }
    for c in &run.responses {
        let file = channel_file("acc", c.point);
        write_atomic(&dir.join(&file), &channel_csv(&c.series)?)?;
        channels.push(ChannelMeta { file, point: c.point, quantity: c.series.quantity() });
    }
    let excitation = match &run.excitation {
        Excitation::Impact { hammer, hits } => ExcitationMeta::Impact { hammer: *hammer, hits: hits.clone() },
        Excitation::Sweep(s) => ExcitationMeta::Sweep { sweep: *s },
        Excitation::None => ExcitationMeta::None,
    };
    let meta = RunMeta {
        sample_rate_hz: run.sample_rate_hz,
        n_samples: run.n_samples(),
        excitation_point: run.excitation_point.map_or_else(|| "none".to_string(), |p| p.to_string()),
        excitation,
        sensors: run.sensors,
        noise: noise.cloned(),
        seed,
        capture_window_s: run.capture_window_s,
        clip_events: run
            .clip_events
            .iter()
            .map(|c| ClipMeta { point: c.point, samples_clipped: c.samples_clipped })
            .collect(),
        channels,
    };
    write_json(&dir.join(RUN_FILE), &meta)?;
    Ok(meta)
}

pub fn read_run_meta(dir: &Path) -> CliResult<RunMeta> {
    let path = dir.join(RUN_FILE);
    serde_json::from_str(&read_text(&path)?).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
}

/// Reads a bundle back into a run, checking that every channel file exists
/// and all channels have the same length.
pub fn read_run_bundle(dir: &Path) -> CliResult<(RawRun, RunMeta)> {
    let meta = read_run_meta(dir)?;
    let excitation_point = match meta.excitation_point.as_str() {
        "none" => None,
        s => Some(s.parse::<PointAxis>().map_err(|e| CliError::usage(format!("run.json: {e}")))?),
    };
    let mut force = None;
    let mut responses = Vec::new();
    for ch in &meta.channels {
        let samples = read_channel(&dir.join(&ch.file))?;
        if samples.len() != meta.n_samples {
            return Err(CliError::usage(format!(
                "{}: {} samples, run.json says {}",
                ch.file,
                samples.len(),
                meta.n_samples
            )));
        }
        let prefix = if ch.quantity == Quantity::Force { "force" } else { "acc" };
        let series = TimeSeries::new(samples, meta.sample_rate_hz, ch.quantity, format!("{prefix}:{}", ch.point))?;
        if ch.quantity == Quantity::Force {
            force = Some(series);
        } else {
            responses.push(ResponseChannel { point: ch.point, series });
        }
    }
    let excitation = match &meta.excitation {
        ExcitationMeta::Impact { hammer, hits } => Excitation::Impact { hammer: *hammer, hits: hits.clone() },
        ExcitationMeta::Sweep { sweep } => Excitation::Sweep(*sweep),
        ExcitationMeta::None => Excitation::None,
    };
    let run = RawRun {
        sample_rate_hz: meta.sample_rate_hz,
        force,
        excitation_point,
        excitation,
        responses,
        sensors: meta.sensors,
        clip_events: meta
            .clip_events
            .iter()
            .map(|c| ClipEvent { point: c.point, samples_clipped: c.samples_clipped })
            .collect(),
        capture_window_s: meta.capture_window_s,
    };
    Ok((run, meta))
}
