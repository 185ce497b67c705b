use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use super::RawRun;
use crate::{Error, Result};

/// A steady tone from running auxiliary machinery (pumps, fans).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tone {
    pub frequency_hz: f64,
    pub amplitude_mps2: f64,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct NoiseSpec {
    #[serde(default)]
    pub tones: Vec<Tone>,
    #[serde(default)]
    pub broadband_rms_mps2: f64,
    #[serde(default)]
    pub seed: u64,
}

impl NoiseSpec {
    pub fn is_empty(&self) -> bool {
        self.tones.is_empty() && self.broadband_rms_mps2 == 0.0
    }
}

/// Add tones (seeded random phase per channel) and Gaussian broadband noise
/// to every acceleration channel. The force channel is left untouched.
pub fn inject_noise(run: &RawRun, noise: &NoiseSpec) -> Result<RawRun> {
    if noise.is_empty() {
        return Ok(run.clone());
    }
    let nyquist = run.sample_rate_hz / 2.0;
    if let Some(t) = noise.tones.iter().find(|t| !(t.frequency_hz >= 0.0 && t.frequency_hz < nyquist)) {
        return Err(Error::invalid(format!("tone at {} Hz is not below Nyquist ({nyquist} Hz)", t.frequency_hz)));
    }
    if !(noise.broadband_rms_mps2 >= 0.0 && noise.broadband_rms_mps2.is_finite()) {
        return Err(Error::invalid("broadband rms must be non-negative"));
    }
    let normal =
        Normal::new(0.0, noise.broadband_rms_mps2).map_err(|e| Error::invalid(format!("broadband noise: {e}")))?;
    let mut rng = ChaCha8Rng::seed_from_u64(noise.seed);
    let mut out = run.clone();
    let fs = run.sample_rate_hz;
    for ch in &mut out.responses {
        let phases: Vec<f64> = noise.tones.iter().map(|_| rng.random_range(0.0..2.0 * PI)).collect();
        let samples = ch
            .series
            .samples()
            .iter()
            .enumerate()
            .map(|(i, &x)| {
                let t = i as f64 / fs;
                let tonal: f64 = noise
                    .tones
                    .iter()
                    .zip(&phases)
                    .map(|(tone, ph)| tone.amplitude_mps2 * (2.0 * PI * tone.frequency_hz * t + ph).sin())
                    .sum();
                let broadband = if noise.broadband_rms_mps2 > 0.0 { normal.sample(&mut rng) } else { 0.0 };
                x + tonal + broadband
            })
            .collect();
        ch.series = ch.series.with_samples(samples)?;
    }
    Ok(out)
}
