use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::Span;
use crate::rig::{RawRun, ResponseChannel, SensorSpec, NOMINAL_PEAK_FORCE_N};
use crate::signal::TimeSeries;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HitFlag {
    Ok,
    DoubleHit,
    Overload,
    Underload,
}

impl HitFlag {
    pub fn as_str(self) -> &'static str {
        match self {
            HitFlag::Ok => "ok",
            HitFlag::DoubleHit => "double_hit",
            HitFlag::Overload => "overload",
            HitFlag::Underload => "underload",
        }
    }
}

impl fmt::Display for HitFlag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Flag set of a hit: either exactly `{ok}` or a non-empty set of defects.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "Vec<HitFlag>", from = "Vec<HitFlag>")]
pub struct HitFlags(BTreeSet<HitFlag>);

impl From<Vec<HitFlag>> for HitFlags {
    fn from(v: Vec<HitFlag>) -> HitFlags {
        HitFlags::from_defects(v)
    }
}

impl From<HitFlags> for Vec<HitFlag> {
    fn from(f: HitFlags) -> Vec<HitFlag> {
        f.0.into_iter().collect()
    }
}

impl HitFlags {
    pub fn from_defects(defects: impl IntoIterator<Item = HitFlag>) -> HitFlags {
        let set: BTreeSet<HitFlag> = defects.into_iter().filter(|f| *f != HitFlag::Ok).collect();
        if set.is_empty() {
            HitFlags(BTreeSet::from([HitFlag::Ok]))
        } else {
            HitFlags(set)
        }
    }

    pub fn is_ok(&self) -> bool {
        self.0.contains(&HitFlag::Ok)
    }

    pub fn contains(&self, flag: HitFlag) -> bool {
        self.0.contains(&flag)
    }

    pub fn iter(&self) -> impl Iterator<Item = HitFlag> + '_ {
        self.0.iter().copied()
    }
}

impl fmt::Display for HitFlags {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.0.iter().map(|h| h.as_str()).collect();
        f.write_str(&names.join(","))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QualityRules {
    /// Level that delimits the main pulse, N.
    pub threshold_n: f64,
    /// A later force maximum above this fraction of the main peak is a double hit.
    pub double_hit_ratio: f64,
    /// Hits below this peak force are underloaded, N.
    pub min_force_n: f64,
    /// Force transducer saturation level, N.
    pub max_force_n: f64,
}

impl QualityRules {
    pub fn for_nominal(nominal_peak_force_n: f64) -> QualityRules {
        QualityRules {
            threshold_n: 0.02 * nominal_peak_force_n,
            double_hit_ratio: 0.2,
            min_force_n: 0.1 * nominal_peak_force_n,
            max_force_n: 2.0 * nominal_peak_force_n,
        }
    }
}

impl Default for QualityRules {
    fn default() -> Self {
        QualityRules::for_nominal(NOMINAL_PEAK_FORCE_N)
    }
}

/// One captured hammer hit. All segments share length and sample rate; the
/// trigger sits `pretrigger_samples` into the record.
#[derive(Debug, Clone, PartialEq)]
pub struct ImpactRecord {
    pub force: TimeSeries,
    pub responses: Vec<ResponseChannel>,
    pub trigger_time_s: f64,
    pub pretrigger_samples: usize,
    pub peak_force_n: f64,
    pub flags: HitFlags,
}

impl ImpactRecord {
    /// Builds a record and checks segment consistency. Flags start as `{ok}`.
    pub fn new(
        force: TimeSeries,
        responses: Vec<ResponseChannel>,
        trigger_time_s: f64,
        pretrigger_samples: usize,
    ) -> Result<ImpactRecord> {
        for r in &responses {
            if r.series.len() != force.len() || r.series.sample_rate_hz() != force.sample_rate_hz() {
                return Err(Error::mismatch(format!("response {} does not match the force segment", r.point)));
            }
        }
        if pretrigger_samples >= force.len() {
            return Err(Error::invalid("pretrigger longer than the record"));
        }
        let peak_force_n = force.samples().iter().copied().fold(0.0, f64::max);
        Ok(ImpactRecord {
            force,
            responses,
            trigger_time_s,
            pretrigger_samples,
            peak_force_n,
            flags: HitFlags::from_defects([]),
        })
    }

    pub fn response(&self, point: crate::PointAxis) -> Option<&TimeSeries> {
        self.responses.iter().find(|r| r.point == point).map(|r| &r.series)
    }
}

/// Main pulse: the first contiguous run at or above the threshold, as
/// `(start, end)` sample indices with `end` exclusive.
fn main_pulse(x: &[f64], threshold: f64) -> Option<(usize, usize)> {
    let start = x.iter().position(|v| *v >= threshold)?;
    let len = x[start..].iter().take_while(|v| **v >= threshold).count();
    Some((start, start + len))
}

pub fn classify_hit(record: &ImpactRecord, sensors: &SensorSpec, rules: &QualityRules) -> HitFlags {
    let x = record.force.samples();
    let mut defects = Vec::new();

    if let Some((start, end)) = main_pulse(x, rules.threshold_n) {
        let peak = x[start..end].iter().copied().fold(0.0, f64::max);
        let search_from = end + 2 * (end - start);
        let limit = rules.double_hit_ratio * peak;
        let second = (search_from.max(1)..x.len().saturating_sub(1))
            .any(|i| x[i] > limit && x[i] >= x[i - 1] && x[i] >= x[i + 1]);
        if second {
            defects.push(HitFlag::DoubleHit);
        }
    }

    let response_overload =
        record.responses.iter().any(|r| r.series.samples().iter().any(|a| a.abs() >= sensors.range_pk));
    if response_overload || record.peak_force_n >= rules.max_force_n {
        defects.push(HitFlag::Overload);
    }
    if record.peak_force_n < rules.min_force_n {
        defects.push(HitFlag::Underload);
    }
    HitFlags::from_defects(defects)
}

/// Cut each span out of the run, classify it, and split accepted (`{ok}`)
/// from rejected records. Order is preserved in both lists.
pub fn assemble_records(
    run: &RawRun,
    spans: &[Span],
    sensors: &SensorSpec,
    rules: &QualityRules,
) -> Result<(Vec<ImpactRecord>, Vec<ImpactRecord>)> {
    let force = run.force.as_ref().ok_or_else(|| Error::invalid("run has no force channel"))?;
    let mut accepted = Vec::new();
    let mut rejected = Vec::new();
    for span in spans {
        let seg_force = force.segment(span.start, span.end)?;
        let responses = run
            .responses
            .iter()
            .map(|c| Ok(ResponseChannel { point: c.point, series: c.series.segment(span.start, span.end)? }))
            .collect::<Result<Vec<_>>>()?;
        let trigger_time_s = force.start_time_s() + span.trigger as f64 / force.sample_rate_hz();
        let mut record = ImpactRecord::new(seg_force, responses, trigger_time_s, span.pretrigger_samples())?;
        record.flags = classify_hit(&record, sensors, rules);
        if record.flags.is_ok() {
            accepted.push(record);
        } else {
            rejected.push(record);
        }
    }
    Ok((accepted, rejected))
}
