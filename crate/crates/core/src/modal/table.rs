use std::io::{Read, Write};

use super::estimate::ModeEstimate;
use crate::{Error, Result};

pub const MODE_TABLE_HEADER: [&str; 7] = ["f_hz", "zeta", "amplitude", "f1_hz", "f2_hz", "classification", "run_id"];

/// Formats `x` with six significant digits in the style of C's `%g`:
/// fixed notation for exponents in `[-4, 6)`, scientific otherwise, with
/// trailing zeros removed.
pub fn format_g6(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{x:.5e}");
    let (mantissa, exp) = sci.split_once('e').expect("scientific format has an exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-4..6).contains(&exp) {
        let decimals = (5 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}"))
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_zeros(mantissa), exp.abs())
    }
}

fn trim_zeros(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}

fn opt(x: Option<f64>) -> String {
    x.map(format_g6).unwrap_or_default()
}

/// Writes modes as CSV; unresolved damping columns are left empty.
/// `amplitude_scale` converts amplitudes for display (1.0 keeps SI).
pub fn write_mode_table<W: Write>(out: W, modes: &[ModeEstimate], amplitude_scale: f64) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(MODE_TABLE_HEADER)?;
    for m in modes {
        w.write_record([
            format_g6(m.f_hz),
            opt(m.zeta),
            format_g6(m.amplitude * amplitude_scale),
            opt(m.half_power.map(|h| h.0)),
            opt(m.half_power.map(|h| h.1)),
            m.classification.to_string(),
            m.run_id.clone(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_mode_table<R: Read>(input: R) -> Result<Vec<ModeEstimate>> {
    let mut r = csv::Reader::from_reader(input);
    let header = r.headers()?.clone();
    if header.iter().ne(MODE_TABLE_HEADER) {
        return Err(Error::Parse(format!("unexpected mode table header {:?}", header.iter().collect::<Vec<_>>())));
    }
    let num = |s: &str, col: &str| -> Result<f64> {
        s.trim().parse().map_err(|_| Error::Parse(format!("bad {col} value {s:?}")))
    };
    let opt_num = |s: &str, col: &str| -> Result<Option<f64>> {
        if s.trim().is_empty() {
            Ok(None)
        } else {
            num(s, col).map(Some)
        }
    };
    let mut modes = Vec::new();
    for row in r.records() {
        let row = row?;
        if row.len() != MODE_TABLE_HEADER.len() {
            return Err(Error::Parse(format!("mode table row has {} fields", row.len())));
        }
        let f1 = opt_num(&row[3], "f1_hz")?;
        let f2 = opt_num(&row[4], "f2_hz")?;
        modes.push(ModeEstimate {
            f_hz: num(&row[0], "f_hz")?,
            zeta: opt_num(&row[1], "zeta")?,
            amplitude: num(&row[2], "amplitude")?,
            half_power: f1.zip(f2),
            classification: row[5].parse()?,
            run_id: row[6].to_string(),
        });
    }
    Ok(modes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modal::Classification;

    #[test]
    fn g6_matches_printf() {
        let cases = [
            (24.0, "24"),
            (24.012345678, "24.0123"),
            (0.0199996, "0.0199996"),
            (0.019999996, "0.02"),
            (1234567.0, "1.23457e+06"),
            (999999.7, "1e+06"),
            (0.0000123456789, "1.23457e-05"),
            (0.000123456789, "0.000123457"),
            (-63.5, "-63.5"),
            (100000.0, "100000"),
        ];
        for (x, want) in cases {
            assert_eq!(format_g6(x), want, "{x}");
        }
    }

    #[test]
    fn table_round_trip() {
        let modes = vec![
            ModeEstimate {
                f_hz: 24.0123,
                zeta: Some(0.0201),
                amplitude: 0.5,
                half_power: Some((23.53, 24.49)),
                classification: Classification::Structural,
                run_id: "on".into(),
            },
            ModeEstimate {
                f_hz: 30.0,
                zeta: None,
                amplitude: 0.1,
                half_power: None,
                classification: Classification::ExternalTone,
                run_id: "on".into(),
            },
        ];
        let mut buf = Vec::new();
        write_mode_table(&mut buf, &modes, 1.0).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("f_hz,zeta,amplitude,f1_hz,f2_hz,classification,run_id\n"));
        assert!(text.contains("30,,0.1,,,external_tone,on"));
        assert_eq!(read_mode_table(&buf[..]).unwrap(), modes);
    }

    #[test]
    fn bad_header_rejected() {
        assert!(read_mode_table("a,b\n1,2\n".as_bytes()).is_err());
    }
}
