use std::ops::Range;

use crate::capture::Span;
use crate::signal::{apply_window, dft_forward, Band, RealSpectrum, SpectrumUnit, TimeSeries, Window};
use crate::{Error, Result};

use super::FrfSpectrum;

/// Per-bin sum of `|H|` over all FRFs, restricted to `band`.
pub fn summed_spectrum(frfs: &[FrfSpectrum], band: Band) -> Result<RealSpectrum> {
    let first = frfs.first().ok_or_else(|| Error::invalid("no FRFs to sum"))?;
    let mut total = first.h.magnitude().restrict(band)?;
    for frf in &frfs[1..] {
        if (frf.h.df_hz - first.h.df_hz).abs() > 1e-12 * first.h.df_hz {
            return Err(Error::mismatch(format!(
                "frequency resolution {} Hz differs from {} Hz",
                frf.h.df_hz, first.h.df_hz
            )));
        }
        let mag = frf.h.magnitude().restrict(band)?;
        if mag.first_bin != total.first_bin || mag.len() != total.len() {
            return Err(Error::mismatch("FRFs cover different bins"));
        }
        for (t, m) in total.values.iter_mut().zip(&mag.values) {
            *t += m;
        }
    }
    Ok(total)
}

/// Per-bin sum over channels of the Hann-windowed autospectrum `|X|²`,
/// averaged over the given sample ranges of each channel. All ranges must
/// have the same length; an empty range list uses each whole record.
pub fn summed_autospectrum(responses: &[TimeSeries], ranges: &[Range<usize>], band: Band) -> Result<RealSpectrum> {
    let first = responses.first().ok_or_else(|| Error::invalid("summed autospectrum needs at least one channel"))?;
    let whole = 0..first.len();
    let ranges = if ranges.is_empty() { std::slice::from_ref(&whole) } else { ranges };
    let seg_len = ranges[0].len();
    if ranges.iter().any(|r| r.len() != seg_len) {
        return Err(Error::mismatch("autospectrum segments differ in length"));
    }
    let mut total: Option<RealSpectrum> = None;
    for ts in responses {
        if ts.len() != first.len() || ts.sample_rate_hz() != first.sample_rate_hz() {
            return Err(Error::mismatch(format!("channel {} differs in length or rate", ts.channel_id())));
        }
        for r in ranges {
            if r.end > ts.len() {
                return Err(Error::invalid("autospectrum segment exceeds the record"));
            }
            let seg = apply_window(&ts.segment(r.start, r.end)?, &Window::Hann)?;
            let spec = dft_forward(&seg)?;
            let t = total.get_or_insert_with(|| RealSpectrum {
                values: vec![0.0; spec.len()],
                df_hz: spec.df_hz,
                first_bin: 0,
                unit: SpectrumUnit::Power(ts.quantity(), ts.quantity()),
            });
            let scale = 1.0 / ranges.len() as f64;
            for (v, c) in t.values.iter_mut().zip(&spec.bins) {
                *v += c.norm_sqr() * scale;
            }
        }
    }
    total.expect("at least one channel and range").restrict(band)
}

/// Tiles `0..n_samples` with back-to-back ranges of `seg_len` samples.
pub fn contiguous_ranges(n_samples: usize, seg_len: usize) -> Vec<Range<usize>> {
    if seg_len == 0 {
        return Vec::new();
    }
    (0..n_samples / seg_len).map(|k| k * seg_len..(k + 1) * seg_len).collect()
}

/// Tiles the stretches of a record that no capture span touches, giving
/// ranges of `seg_len` samples where only ambient vibration is present.
pub fn quiet_ranges(n_samples: usize, spans: &[Span], seg_len: usize) -> Vec<Range<usize>> {
    if seg_len == 0 {
        return Vec::new();
    }
    let mut busy: Vec<(usize, usize)> = spans.iter().map(|s| (s.start, s.end.min(n_samples))).collect();
    busy.sort_unstable();
    let mut out = Vec::new();
    let mut cursor = 0;
    for (start, end) in busy.into_iter().chain(std::iter::once((n_samples, n_samples))) {
        while cursor + seg_len <= start {
            out.push(cursor..cursor + seg_len);
            cursor += seg_len;
        }
        cursor = cursor.max(end);
    }
    out
}
