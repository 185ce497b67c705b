use crate::units::Quantity;
use crate::{Error, Result};

/// Uniformly sampled single-channel signal in SI units.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    samples: Vec<f64>,
    sample_rate_hz: f64,
    quantity: Quantity,
    channel_id: String,
    start_time_s: f64,
}

impl TimeSeries {
    pub fn new(
        samples: Vec<f64>,
        sample_rate_hz: f64,
        quantity: Quantity,
        channel_id: impl Into<String>,
    ) -> Result<Self> {
        Self::with_start(samples, sample_rate_hz, quantity, channel_id, 0.0)
    }

    pub fn with_start(
        samples: Vec<f64>,
        sample_rate_hz: f64,
        quantity: Quantity,
        channel_id: impl Into<String>,
        start_time_s: f64,
    ) -> Result<Self> {
        if !(sample_rate_hz > 0.0 && sample_rate_hz.is_finite()) {
            return Err(Error::invalid(format!("sample rate must be positive, got {sample_rate_hz}")));
        }
        if let Some(i) = samples.iter().position(|x| !x.is_finite()) {
            return Err(Error::invalid(format!("non-finite sample at index {i}")));
        }
        if !start_time_s.is_finite() {
            return Err(Error::invalid("non-finite start time"));
        }
        Ok(TimeSeries { samples, sample_rate_hz, quantity, channel_id: channel_id.into(), start_time_s })
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<f64> {
        self.samples
    }

    pub fn sample_rate_hz(&self) -> f64 {
        self.sample_rate_hz
    }

    pub fn dt(&self) -> f64 {
        1.0 / self.sample_rate_hz
    }

    pub fn quantity(&self) -> Quantity {
        self.quantity
    }

    pub fn channel_id(&self) -> &str {
        &self.channel_id
    }

    pub fn start_time_s(&self) -> f64 {
        self.start_time_s
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn duration_s(&self) -> f64 {
        self.samples.len() as f64 / self.sample_rate_hz
    }

    /// Same channel and timing, new sample values.
    pub fn with_samples(&self, samples: Vec<f64>) -> Result<TimeSeries> {
        TimeSeries::with_start(samples, self.sample_rate_hz, self.quantity, self.channel_id.clone(), self.start_time_s)
    }

    /// Copy of `start..end` (sample indices), with the start time shifted to match.
    pub fn segment(&self, start: usize, end: usize) -> Result<TimeSeries> {
        if start >= end || end > self.samples.len() {
            return Err(Error::invalid(format!(
                "segment {start}..{end} outside series of length {}",
                self.samples.len()
            )));
        }
        Ok(TimeSeries {
            samples: self.samples[start..end].to_vec(),
            sample_rate_hz: self.sample_rate_hz,
            quantity: self.quantity,
            channel_id: self.channel_id.clone(),
            start_time_s: self.start_time_s + start as f64 / self.sample_rate_hz,
        })
    }

    pub fn scaled(&self, factor: f64) -> Result<TimeSeries> {
        self.with_samples(self.samples.iter().map(|x| x * factor).collect())
    }

    pub fn peak_abs(&self) -> f64 {
        self.samples.iter().fold(0.0_f64, |m, x| m.max(x.abs()))
    }

    pub fn rms(&self) -> f64 {
        if self.samples.is_empty() {
            return 0.0;
        }
        (self.samples.iter().map(|x| x * x).sum::<f64>() / self.samples.len() as f64).sqrt()
    }
}
