use std::f64::consts::PI;

use num_complex::Complex64;

use super::{Spectrum, SpectrumUnit};
use crate::units::Quantity;
use crate::{Error, Result};

/// Default high-pass corner for frequency-domain integration, Hz.
pub const DEFAULT_HIGHPASS_HZ: f64 = 2.0;

fn shift_unit(unit: SpectrumUnit, delta: i32) -> Result<SpectrumUnit> {
    let shift = |q: Quantity| -> Result<Quantity> {
        let rank =
            q.motion_rank().ok_or_else(|| Error::invalid("force spectra cannot be integrated or differentiated"))?;
        Quantity::from_motion_rank(rank + delta)
            .ok_or_else(|| Error::invalid(format!("cannot take {q} through {delta} derivative order(s)")))
    };
    match unit {
        SpectrumUnit::Amplitude(q) => Ok(SpectrumUnit::Amplitude(shift(q)?)),
        SpectrumUnit::PerForce(q) => Ok(SpectrumUnit::PerForce(shift(q)?)),
        SpectrumUnit::Power(..) => Err(Error::invalid("power spectra cannot be integrated")),
    }
}

/// Divide each bin by `(i·2π·f)^order`. Bins at or below `highpass_hz`
/// (always including DC) are zeroed.
pub fn integrate_freq(spec: &Spectrum, order: u32, highpass_hz: f64) -> Result<Spectrum> {
    if !(1..=2).contains(&order) {
        return Err(Error::invalid(format!("integration order must be 1 or 2, got {order}")));
    }
    if !(highpass_hz >= 0.0) {
        return Err(Error::invalid("high-pass corner must be non-negative"));
    }
    let unit = shift_unit(spec.unit, -(order as i32))?;
    let bins = spec
        .bins
        .iter()
        .enumerate()
        .map(|(i, &c)| {
            let f = spec.frequency(i);
            if f <= highpass_hz || f == 0.0 {
                Complex64::new(0.0, 0.0)
            } else {
                c / Complex64::new(0.0, 2.0 * PI * f).powu(order)
            }
        })
        .collect();
    Ok(Spectrum { bins, unit, ..spec.clone() })
}

/// Multiply each bin by `(i·2π·f)^order`; velocity to acceleration is `order = 1`.
pub fn differentiate_freq(spec: &Spectrum, order: u32) -> Result<Spectrum> {
    if !(1..=2).contains(&order) {
        return Err(Error::invalid(format!("derivative order must be 1 or 2, got {order}")));
    }
    let unit = shift_unit(spec.unit, order as i32)?;
    let bins = spec
        .bins
        .iter()
        .enumerate()
        .map(|(i, &c)| c * Complex64::new(0.0, 2.0 * PI * spec.frequency(i)).powu(order))
        .collect();
    Ok(Spectrum { bins, unit, ..spec.clone() })
}
