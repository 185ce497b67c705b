//! Command implementations. Each takes parsed arguments and a sink for its
//! human-readable report; files are written atomically.

use std::fs;
use std::io::Write;
use std::path::Path;

use ema_core::frf::{summed_spectrum, WindowMeta};
use ema_core::modal::{
    compare_runs, identify_modes, read_mode_table, write_mode_table, Classification, IdentifyParams, ModeEstimate,
    Tolerance,
};
use ema_core::ods::{export_animation, extract_ods, seam_check, GeometryModel, SeamTolerance};
use ema_core::pipeline::{analyze_run, merge_ambient, AnalysisSettings};
use ema_core::rig::{
    hit_schedule, inject_noise, simulate_impacts, simulate_sweep, HammerSpec, NoiseSpec, RigModel, SensorSpec,
    SweepSpec, Tip,
};
use ema_core::signal::Band;
use ema_core::units::STANDARD_GRAVITY;
use ema_core::PointAxis;

use crate::args::{AnalyzeArgs, Command, CompareArgs, ModesArgs, OdsArgs, SimulateArgs};
use crate::bundle::{read_run_bundle, write_run_bundle};
use crate::error::{CliError, CliResult};
use crate::frf_bundle::{AmbientRecord, FrfBundle, FrfRecord, RunReport};
use crate::io::{config_text, read_text, write_atomic, write_json};

/// Seconds of record per hit when `--duration` is not given.
pub const SECONDS_PER_HIT: f64 = 5.0;
/// Shaker force amplitude of simulated sweeps, N.
pub const SWEEP_AMPLITUDE_N: f64 = 10.0;
/// Offset mixed into `--seed` for the noise generator so hit timing and
/// noise draw from unrelated streams.
const NOISE_SEED_OFFSET: u64 = 0x9E37_79B9_7F4A_7C15;

pub fn run(command: &Command, out: &mut dyn Write) -> CliResult<()> {
    match command {
        Command::Simulate(a) => simulate(a, out),
        Command::Analyze(a) => analyze(a, out),
        Command::Modes(a) => modes(a, out),
        Command::Ods(a) => ods(a, out),
        Command::Compare(a) => compare(a, out),
    }
}

fn say(out: &mut dyn Write, line: impl std::fmt::Display) -> CliResult<()> {
    writeln!(out, "{line}").map_err(|e| CliError::Io(format!("stdout: {e}")))
}

fn parse_json<T: serde::de::DeserializeOwned>(what: &str, text: &str) -> CliResult<T> {
    serde_json::from_str(text).map_err(|e| CliError::usage(format!("invalid {what}: {e}")))
}

fn parse_sweep(s: &str) -> CliResult<SweepSpec> {
    let parts: Vec<f64> = s
        .split(':')
        .map(|p| p.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::usage(format!("sweep must be F0:F1:RATE, got {s:?}")))?;
    match parts[..] {
        [f0, f1, rate] => {
            Ok(SweepSpec { f_start_hz: f0, f_end_hz: f1, rate_hz_per_s: rate, amplitude_n: SWEEP_AMPLITUDE_N })
        }
        _ => Err(CliError::usage(format!("sweep must be F0:F1:RATE, got {s:?}"))),
    }
}

pub fn simulate(a: &SimulateArgs, out: &mut dyn Write) -> CliResult<()> {
    let rig =
        RigModel::from_json(&config_text(&a.model)?).map_err(|e| CliError::usage(format!("invalid model: {e}")))?;
    let drive: PointAxis = a.drive.parse()?;
    if !(a.fs > 0.0 && a.fs.is_finite()) {
        return Err(CliError::usage("fs must be positive"));
    }
    let sensors = SensorSpec::default();
    let mut run = match (a.hits, &a.sweep) {
        (Some(_), Some(_)) => return Err(CliError::usage("give either --hits or --sweep, not both")),
        (None, None) => return Err(CliError::usage("one of --hits or --sweep is required")),
        (Some(0), None) => return Err(CliError::usage("hits must be ≥ 1")),
        (Some(n), None) => {
            let tip: Tip = a.tip.parse()?;
            let duration = a.duration.unwrap_or(SECONDS_PER_HIT * n as f64);
            let hits = hit_schedule(n, duration, a.seed)?;
            simulate_impacts(&rig, &HammerSpec::new(tip), drive, &sensors, a.fs, duration, &hits)?
        }
        (None, Some(s)) => simulate_sweep(&rig, drive, &parse_sweep(s)?, &sensors, a.fs)?,
    };
    let noise = match &a.noise {
        Some(src) => {
            let mut spec: NoiseSpec = parse_json("noise spec", &config_text(src)?)?;
            spec.seed = a.seed.wrapping_add(NOISE_SEED_OFFSET);
            run = inject_noise(&run, &spec)?;
            Some(spec)
        }
        None => None,
    };
    let meta = write_run_bundle(&a.out, &run, noise.as_ref(), Some(a.seed))?;
    say(
        out,
        format!(
            "wrote {}: {} channels, {} samples at {} Hz",
            a.out.display(),
            meta.channels.len(),
            meta.n_samples,
            meta.sample_rate_hz
        ),
    )
}

fn parse_window(s: &str) -> CliResult<WindowMeta> {
    if s == "none" {
        return Ok(WindowMeta::default());
    }
    let tau = s
        .strip_prefix("exp:")
        .and_then(|t| t.trim().parse::<f64>().ok())
        .ok_or_else(|| CliError::usage(format!("window must be exp:TAU or none, got {s:?}")))?;
    if !(tau > 0.0 && tau.is_finite()) {
        return Err(CliError::usage("exponential window time constant must be positive"));
    }
    Ok(WindowMeta::exponential(tau))
}

pub fn analyze(a: &AnalyzeArgs, out: &mut dyn Write) -> CliResult<()> {
    let band: Band = a.band.parse()?;
    let settings = AnalysisSettings {
        band,
        window: parse_window(&a.window)?,
        min_force_n: a.min_force,
        ..AnalysisSettings::default()
    };
    let mut frfs = Vec::new();
    let mut ambients = Vec::new();
    let mut runs = Vec::new();
    for dir in &a.runs {
        let (raw, _) = read_run_bundle(dir)?;
        let analysis = analyze_run(&raw, &settings)?;
        let report = RunReport {
            source: dir.display().to_string(),
            excitation: analysis.excitation.map_or_else(|| "none".to_string(), |p| p.to_string()),
            accepted: analysis.accepted(),
            rejected: analysis.rejected(),
            rejected_by_flag: analysis.rejected_by_flag().into_iter().map(|(f, n)| (f.to_string(), n)).collect(),
            hits: analysis.hits.clone(),
        };
        say(
            out,
            format!(
                "{} (drive {}): {} accepted, {} rejected",
                report.source, report.excitation, report.accepted, report.rejected
            ),
        )?;
        for (flag, n) in &report.rejected_by_flag {
            say(out, format!("  {n} rejected ({flag})"))?;
        }
        if analysis.excitation.is_some() && analysis.frfs.is_empty() {
            return Err(CliError::usage(format!("{}: no accepted hits", report.source)));
        }
        frfs.extend(analysis.frfs);
        ambients.extend(analysis.ambient);
        runs.push(report);
    }
    let bundle = FrfBundle {
        band,
        window_meta: settings.window,
        runs,
        ambient: merge_ambient(&ambients).as_ref().map(AmbientRecord::from_spectrum),
        frfs: frfs.iter().map(FrfRecord::from_frf).collect(),
    };
    bundle.write(&a.out)?;
    say(out, format!("wrote {}: {} FRFs over {} Hz", a.out.display(), bundle.frfs.len(), band))
}

fn run_id(dir: &Path) -> String {
    fs::canonicalize(dir)
        .ok()
        .as_deref()
        .unwrap_or(dir)
        .file_name()
        .map_or_else(|| dir.display().to_string(), |n| n.to_string_lossy().into_owned())
}

/// Modes of an FRF bundle, as `ema modes` computes them.
pub fn bundle_modes(dir: &Path, prominence: f64) -> CliResult<Vec<ModeEstimate>> {
    let bundle = FrfBundle::read(dir)?;
    let frfs = bundle.frf_spectra()?;
    if frfs.is_empty() {
        return Err(CliError::usage(format!("{}: empty FRF set", dir.display())));
    }
    let summed = summed_spectrum(&frfs, bundle.band)?;
    let params = IdentifyParams { prominence_ratio: prominence, ..IdentifyParams::new(bundle.band) };
    Ok(identify_modes(&summed, &frfs, bundle.ambient_spectrum().as_ref(), &params, &run_id(dir))?)
}

pub fn modes(a: &ModesArgs, out: &mut dyn Write) -> CliResult<()> {
    let scale = match a.units.as_str() {
        "si" => 1.0,
        "g" => 1.0 / STANDARD_GRAVITY,
        other => return Err(CliError::usage(format!("units must be si or g, got {other:?}"))),
    };
    let modes = bundle_modes(&a.frf, a.prominence)?;
    let mut table = Vec::new();
    write_mode_table(&mut table, &modes, scale)?;
    match &a.out {
        Some(path) => {
            write_atomic(path, &table)?;
            let count = |c| modes.iter().filter(|m| m.classification == c).count();
            say(
                out,
                format!(
                    "wrote {}: {} modes ({} structural, {} external_tone, {} unresolved)",
                    path.display(),
                    modes.len(),
                    count(Classification::Structural),
                    count(Classification::ExternalTone),
                    count(Classification::Unresolved)
                ),
            )
        }
        None => out.write_all(&table).map_err(|e| CliError::Io(format!("stdout: {e}"))),
    }
}

fn parse_pairs(s: &str) -> CliResult<Vec<(u32, u32)>> {
    s.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| {
            let (a, b) =
                p.split_once(':').ok_or_else(|| CliError::usage(format!("seam pair must be A:B, got {p:?}")))?;
            let id = |x: &str| x.trim().parse::<u32>().map_err(|_| CliError::usage(format!("bad point id {x:?}")));
            Ok((id(a)?, id(b)?))
        })
        .collect()
}

pub fn ods(a: &OdsArgs, out: &mut dyn Write) -> CliResult<()> {
    let geometry = GeometryModel::from_json(&config_text(&a.geometry)?)?;
    let pairs = a.seam_pairs.as_deref().map(parse_pairs).transpose()?.unwrap_or_default();
    for &(pa, pb) in &pairs {
        for p in [pa, pb] {
            if !geometry.contains(p) {
                return Err(CliError::usage(format!("seam point {p} is not in the geometry")));
            }
        }
    }
    let bundle = FrfBundle::read(&a.frf)?;
    if !bundle.band.contains(a.freq) {
        return Err(CliError::usage(format!("{} Hz is outside the analysed band {} Hz", a.freq, bundle.band)));
    }
    let frfs = bundle.frf_spectra()?;
    let shape = extract_ods(&frfs, a.freq, &geometry)?;
    for p in &shape.omitted {
        eprintln!("warning: {p} is not in the geometry; omitted from the shape");
    }
    let doc = export_animation(&shape, &geometry, a.frames, a.scale)?;
    write_json(&a.out, &doc)?;
    say(
        out,
        format!(
            "wrote {}: {} frames at {} Hz (drive {})",
            a.out.display(),
            doc.n_frames,
            shape.bin_frequency_hz,
            shape.excitation
        ),
    )?;
    for &(pa, pb) in &pairs {
        let results = seam_check(&shape, &[(pa, pb)], &SeamTolerance::default())?;
        let verdict = if results.iter().all(|r| r.passed()) { "PASS" } else { "FAIL" };
        let detail: Vec<String> = results
            .iter()
            .map(|r| {
                format!(
                    "{}: magnitude {:.3}%, phase {:.3} deg",
                    r.axis.as_str(),
                    100.0 * r.magnitude_diff_rel,
                    r.phase_diff_deg
                )
            })
            .collect();
        say(out, format!("seam {pa}:{pb} {verdict} ({})", detail.join("; ")))?;
    }
    Ok(())
}

fn load_table(path: &Path) -> CliResult<Vec<ModeEstimate>> {
    read_mode_table(read_text(path)?.as_bytes()).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
}

fn describe(m: &ModeEstimate) -> String {
    format!("{:.3} Hz {}", m.f_hz, m.classification)
}

pub fn compare(a: &CompareArgs, out: &mut dyn Write) -> CliResult<()> {
    if !(a.tol_pct >= 0.0 && a.tol_pct.is_finite()) {
        return Err(CliError::usage("tolerance must be a non-negative percentage"));
    }
    let ma = load_table(&a.modes_a)?;
    let mb = load_table(&a.modes_b)?;
    let cmp = compare_runs(&ma, &mb, Tolerance::Relative { fraction: a.tol_pct / 100.0 });
    say(out, format!("matched ({}):", cmp.matched.len()))?;
    for p in &cmp.matched {
        say(out, format!("  {} <-> {} (df {:+.3} Hz)", describe(&p.a), describe(&p.b), p.df_hz))?;
    }
    say(out, format!("only in {} ({}):", a.modes_a.display(), cmp.only_in_a.len()))?;
    for m in &cmp.only_in_a {
        say(out, format!("  {}", describe(m)))?;
    }
    say(out, format!("only in {} ({}):", a.modes_b.display(), cmp.only_in_b.len()))?;
    for m in &cmp.only_in_b {
        say(out, format!("  {}", describe(m)))?;
    }
    if cmp.structural_sets_match() {
        say(out, "structural sets match")
    } else {
        Err(CliError::Mismatch(format!("structural mode sets differ beyond {}%", a.tol_pct)))
    }
}
