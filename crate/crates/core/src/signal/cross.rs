use super::{dft_forward, Spectrum, SpectrumUnit, TimeSeries};
use crate::{Error, Result};

/// Auto and cross spectra of one record pair: `Sxx = |X|²`, `Syy = |Y|²`,
/// `Sxy = conj(X)·Y`.
#[derive(Debug, Clone, PartialEq)]
pub struct CrossSpectra {
    pub sxx: Spectrum,
    pub syy: Spectrum,
    pub sxy: Spectrum,
}

pub fn auto_cross_spectra(x: &TimeSeries, y: &TimeSeries) -> Result<CrossSpectra> {
    if x.len() != y.len() {
        return Err(Error::mismatch(format!("series lengths differ: {} vs {}", x.len(), y.len())));
    }
    if x.sample_rate_hz() != y.sample_rate_hz() {
        return Err(Error::mismatch(format!("sample rates differ: {} vs {}", x.sample_rate_hz(), y.sample_rate_hz())));
    }
    let fx = dft_forward(x)?;
    let fy = dft_forward(y)?;
    let (qx, qy) = (x.quantity(), y.quantity());
    let product = |bins, unit| Spectrum { bins, unit, ..fx.clone() };
    let sxx = product(fx.bins.iter().map(|c| c.norm_sqr().into()).collect(), SpectrumUnit::Power(qx, qx));
    let syy = product(fy.bins.iter().map(|c| c.norm_sqr().into()).collect(), SpectrumUnit::Power(qy, qy));
    let sxy = product(fx.bins.iter().zip(&fy.bins).map(|(a, b)| a.conj() * b).collect(), SpectrumUnit::Power(qx, qy));
    Ok(CrossSpectra { sxx, syy, sxy })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::units::Quantity;
    use num_complex::Complex64;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ts(x: Vec<f64>) -> TimeSeries {
        TimeSeries::new(x, 100.0, Quantity::Acceleration, "a").unwrap()
    }

    fn signal() -> Vec<f64> {
        (0..64).map(|i| (i as f64 * 0.37).sin() + 0.2 * (i as f64 * 1.3).cos()).collect()
    }

    #[test]
    fn self_cross_equals_auto() {
        let x = ts(signal());
        let s = auto_cross_spectra(&x, &x).unwrap();
        for (a, b) in s.sxy.bins.iter().zip(&s.sxx.bins) {
            assert_eq!(a.im, 0.0);
            assert!((a.re - b.re).abs() <= 1e-15 * b.re.max(1.0));
        }
    }

    #[test]
    fn negated_series_flips_cross_sign() {
        let x = ts(signal());
        let y = x.scaled(-1.0).unwrap();
        let s = auto_cross_spectra(&x, &y).unwrap();
        for (a, b) in s.sxy.bins.iter().zip(&s.sxx.bins) {
            assert!((a + b).norm() <= 1e-12 * b.norm().max(1.0));
        }
    }

    #[test]
    fn mismatched_inputs_are_rejected() {
        let x = ts(signal());
        assert!(auto_cross_spectra(&x, &ts(vec![0.0; 10])).is_err());
        let y = TimeSeries::new(signal(), 50.0, Quantity::Acceleration, "b").unwrap();
        assert!(auto_cross_spectra(&x, &y).is_err());
    }

    #[test]
    fn independent_noise_has_low_averaged_coherence() {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        let n = 128;
        let bins = n / 2 + 1;
        let mut sxx = vec![0.0; bins];
        let mut syy = vec![0.0; bins];
        let mut sxy = vec![Complex64::new(0.0, 0.0); bins];
        for _ in 0..100 {
            let x = ts((0..n).map(|_| rng.random_range(-1.0..1.0)).collect());
            let y = ts((0..n).map(|_| rng.random_range(-1.0..1.0)).collect());
            let s = auto_cross_spectra(&x, &y).unwrap();
            for k in 0..bins {
                sxx[k] += s.sxx.bins[k].re;
                syy[k] += s.syy.bins[k].re;
                sxy[k] += s.sxy.bins[k];
            }
        }
        for k in 0..bins {
            let c = sxy[k].norm() / (sxx[k] * syy[k]).sqrt();
            assert!(c < 0.3, "bin {k}: {c}");
        }
    }
}
