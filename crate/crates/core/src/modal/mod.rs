//! Mode identification from summed spectra and FRFs.

mod compare;
mod damping;
mod estimate;
mod peaks;
mod table;
mod tone;

pub use compare::{compare_runs, Comparison, MatchedPair, Tolerance};
pub use damping::{half_power_damping, HalfPower};
pub use estimate::{identify_modes, mass_shift_estimate, Classification, IdentifyParams, ModeEstimate};
pub use peaks::{pick_peaks, Peak, DEFAULT_PROMINENCE_RATIO};
pub use table::{format_g6, read_mode_table, write_mode_table, MODE_TABLE_HEADER};
pub use tone::{classify_tone, ToneScreen};
