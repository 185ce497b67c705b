use crate::signal::TimeSeries;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TriggerSettings {
    pub threshold_n: f64,
    /// Samples kept ahead of the trigger, seconds. Part of `window_s`.
    pub pretrigger_s: f64,
    /// Total captured length per hit, seconds.
    pub window_s: f64,
    /// Crossings closer than this to the previous trigger are ignored.
    pub holdoff_s: f64,
}

impl TriggerSettings {
    /// Threshold at 2% of the nominal peak force, pretrigger 5% of the
    /// window, holdoff equal to the window.
    pub fn for_window(window_s: f64, nominal_peak_force_n: f64) -> TriggerSettings {
        TriggerSettings {
            threshold_n: 0.02 * nominal_peak_force_n,
            pretrigger_s: 0.05 * window_s,
            window_s,
            holdoff_s: window_s,
        }
    }
}

/// Sample range of one captured hit: `start..end`, with the threshold
/// crossing at `trigger`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Span {
    pub start: usize,
    pub trigger: usize,
    pub end: usize,
}

impl Span {
    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.end == self.start
    }

    pub fn pretrigger_samples(&self) -> usize {
        self.trigger - self.start
    }
}

/// One span per upward threshold crossing that is outside the holdoff of the
/// previous trigger. Crossings whose window would run past either end of the
/// record are skipped (they still start a holdoff).
pub fn detect_triggers(force: &TimeSeries, settings: &TriggerSettings) -> Result<Vec<Span>> {
    if !(settings.threshold_n > 0.0) {
        return Err(Error::invalid("trigger threshold must be positive"));
    }
    if !(settings.window_s > 0.0 && settings.pretrigger_s >= 0.0 && settings.pretrigger_s < settings.window_s) {
        return Err(Error::invalid("trigger window must be positive and longer than the pretrigger"));
    }
    if !(settings.holdoff_s >= 0.0) {
        return Err(Error::invalid("holdoff must be non-negative"));
    }
    let fs = force.sample_rate_hz();
    let window = (settings.window_s * fs).round() as usize;
    let pre = (settings.pretrigger_s * fs).round() as usize;
    let holdoff = (settings.holdoff_s * fs).round() as usize;
    let x = force.samples();
    let mut spans = Vec::new();
    let mut last_trigger: Option<usize> = None;
    for i in 0..x.len() {
        let below_before = i == 0 || x[i - 1] < settings.threshold_n;
        if !(x[i] >= settings.threshold_n && below_before) {
            continue;
        }
        if let Some(last) = last_trigger {
            if i - last < holdoff {
                continue;
            }
        }
        last_trigger = Some(i);
        if i < pre || i - pre + window > x.len() {
            continue;
        }
        spans.push(Span { start: i - pre, trigger: i, end: i - pre + window });
    }
    Ok(spans)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rig::HammerSpec;
    use crate::rig::Tip;
    use crate::units::Quantity;

    fn force_with_pulses(times: &[f64], fs: f64, duration: f64) -> TimeSeries {
        let hammer = HammerSpec::new(Tip::MediumHard);
        let n = (duration * fs) as usize;
        let x = (0..n)
            .map(|i| {
                let t = i as f64 / fs;
                times.iter().map(|t0| hammer.force_at(t, *t0)).sum()
            })
            .collect();
        TimeSeries::new(x, fs, Quantity::Force, "f").unwrap()
    }

    #[test]
    fn zero_force_has_no_triggers() {
        let f = TimeSeries::new(vec![0.0; 1000], 100.0, Quantity::Force, "f").unwrap();
        let s = TriggerSettings::for_window(1.0, 4448.0);
        assert!(detect_triggers(&f, &s).unwrap().is_empty());
    }

    #[test]
    fn single_pulse_triggers_at_first_crossing() {
        let fs = 4096.0;
        let f = force_with_pulses(&[0.5], fs, 2.0);
        let s = TriggerSettings { threshold_n: 100.0, pretrigger_s: 0.05, window_s: 1.0, holdoff_s: 1.0 };
        let spans = detect_triggers(&f, &s).unwrap();
        assert_eq!(spans.len(), 1);
        let first = f.samples().iter().position(|x| *x >= 100.0).unwrap();
        assert_eq!(spans[0].trigger, first);
        assert_eq!(spans[0].pretrigger_samples(), (0.05 * fs).round() as usize);
        assert_eq!(spans[0].len(), 4096);
    }

    #[test]
    fn five_pulses_two_seconds_apart() {
        let f = force_with_pulses(&[0.3, 2.3, 4.3, 6.3, 8.3], 2048.0, 10.0);
        let s = TriggerSettings::for_window(1.0, 4448.0);
        let spans = detect_triggers(&f, &s).unwrap();
        assert_eq!(spans.len(), 5);
        assert!(spans.windows(2).all(|w| w[0].end <= w[1].start));
    }

    #[test]
    fn holdoff_suppresses_retriggering() {
        let f = force_with_pulses(&[0.3, 0.35], 2048.0, 2.0);
        let s = TriggerSettings::for_window(1.0, 4448.0);
        assert_eq!(detect_triggers(&f, &s).unwrap().len(), 1);
    }

    #[test]
    fn invalid_settings() {
        let f = force_with_pulses(&[0.3], 2048.0, 1.0);
        let bad = TriggerSettings { threshold_n: 0.0, pretrigger_s: 0.0, window_s: 1.0, holdoff_s: 1.0 };
        assert!(detect_triggers(&f, &bad).is_err());
    }
}
