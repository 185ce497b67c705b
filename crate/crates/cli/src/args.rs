//! Command-line grammar.

use std::path::PathBuf;

use clap::{Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "ema", version, about = "Simulated impact-hammer modal testing workflow")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Synthesise a hammer or swept-sine run and write a run bundle.
    Simulate(SimulateArgs),
    /// Trigger, screen and average runs into an FRF bundle.
    Analyze(AnalyzeArgs),
    /// Pick and classify modes from an FRF bundle.
    Modes(ModesArgs),
    /// Extract an operating deflection shape, export its animation and check seams.
    Ods(OdsArgs),
    /// Compare two mode tables; exits 1 when the structural sets differ.
    Compare(CompareArgs),
}

#[derive(Debug, Clone, clap::Args)]
pub struct SimulateArgs {
    /// Rig model JSON, or `demo:rig-12dof` / `demo:rig-12dof-bad-weld`.
    pub model: String,
    /// Output run bundle directory.
    pub out: PathBuf,
    /// Number of hammer hits.
    #[arg(long)]
    pub hits: Option<usize>,
    /// Excitation point, `POINT:AXIS`.
    #[arg(long)]
    pub drive: String,
    /// Hammer tip: soft, medium, medium_hard or hard.
    #[arg(long, default_value = "medium_hard")]
    pub tip: String,
    /// Noise spec JSON, or `demo:noise-pumps`.
    #[arg(long)]
    pub noise: Option<String>,
    /// Linear sweep `F0:F1:RATE` (Hz, Hz, Hz/s) instead of hammer hits.
    #[arg(long)]
    pub sweep: Option<String>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Sample rate, Hz.
    #[arg(long, default_value_t = 4096.0)]
    pub fs: f64,
    /// Run length in seconds for hammer runs (default: 5 s per hit).
    #[arg(long)]
    pub duration: Option<f64>,
}

#[derive(Debug, Clone, clap::Args)]
pub struct AnalyzeArgs {
    /// One or more run bundle directories; each contributes its drive point.
    #[arg(required = true)]
    pub runs: Vec<PathBuf>,
    /// Analysis band `LO:HI` in Hz.
    #[arg(long, default_value = "0:200")]
    pub band: String,
    /// Output FRF bundle directory.
    #[arg(long)]
    pub out: PathBuf,
    /// `exp:TAU` (seconds) for an exponential response window, or `none`.
    #[arg(long, default_value = "none")]
    pub window: String,
    /// Underload limit in newtons (default: a tenth of the hammer's nominal force).
    #[arg(long)]
    pub min_force: Option<f64>,
}

#[derive(Debug, Clone, clap::Args)]
pub struct ModesArgs {
    /// FRF bundle directory.
    pub frf: PathBuf,
    /// Minimum peak prominence as a multiple of the band median.
    #[arg(long, default_value_t = ema_core::modal::DEFAULT_PROMINENCE_RATIO)]
    pub prominence: f64,
    /// Mode table CSV (default: standard output).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Amplitude units: `si` (m/s² per N) or `g` (g per N).
    #[arg(long, default_value = "si")]
    pub units: String,
}

#[derive(Debug, Clone, clap::Args)]
pub struct OdsArgs {
    /// FRF bundle directory.
    pub frf: PathBuf,
    /// Frequency of the deflection shape, Hz.
    #[arg(long)]
    pub freq: f64,
    /// Geometry JSON, or `demo:geometry-gearbox`.
    #[arg(long)]
    pub geometry: String,
    /// Animation JSON output.
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, default_value_t = 24)]
    pub frames: usize,
    /// Displacement magnification applied to the receptance shape.
    #[arg(long, default_value_t = 1.0)]
    pub scale: f64,
    /// Co-located point pairs to check, `A:B,C:D`.
    #[arg(long)]
    pub seam_pairs: Option<String>,
}

#[derive(Debug, Clone, clap::Args)]
pub struct CompareArgs {
    pub modes_a: PathBuf,
    pub modes_b: PathBuf,
    /// Frequency matching tolerance, percent of the first table's frequency.
    #[arg(long, default_value_t = 2.0)]
    pub tol_pct: f64,
}
