use serde::{Deserialize, Serialize};

use crate::units::g_to_mps2;
use crate::{Error, Result};

/// Accelerometer model: peak range, sensitivity error and usable band.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SensorSpec {
    /// Peak measurable acceleration, m/s².
    pub range_pk: f64,
    /// Actual/nominal sensitivity; 1.0 is a perfectly calibrated sensor.
    pub sensitivity_factor: f64,
    pub band_hz: [f64; 2],
}

impl Default for SensorSpec {
    fn default() -> Self {
        SensorSpec { range_pk: g_to_mps2(50.0), sensitivity_factor: 1.0, band_hz: [0.5, 4500.0] }
    }
}

impl SensorSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.range_pk > 0.0) {
            return Err(Error::invalid("sensor range must be positive"));
        }
        if !(0.5..=1.5).contains(&self.sensitivity_factor) {
            return Err(Error::invalid(format!("sensitivity factor {} outside [0.5, 1.5]", self.sensitivity_factor)));
        }
        if !(self.band_hz[0] < self.band_hz[1]) {
            return Err(Error::invalid("sensor band must have f_lo < f_hi"));
        }
        Ok(())
    }

    /// Sensor output for a true acceleration: scaled, then clipped at range.
    /// Returns the reading and whether it clipped.
    pub fn measure(&self, a: f64) -> (f64, bool) {
        let v = a * self.sensitivity_factor;
        if v.abs() >= self.range_pk {
            (self.range_pk.copysign(v), true)
        } else {
            (v, false)
        }
    }
}
