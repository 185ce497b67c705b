//! Ground-truth structure simulator.
//!
//! A [`RigModel`] is a lumped mass/stiffness model with one damping ratio
//! per mode. Its exact modal parameters ([`eigen_modes`]) are the oracle the
//! analysis chain is checked against.

mod hammer;
mod model;
mod modes;
mod noise;
mod response;
mod run;
mod sensor;
mod simulate;

pub use hammer::{usable_bandwidth, HammerSpec, Tip, TipDurations, NOMINAL_PEAK_FORCE_N};
pub use model::{Axis, NodeMapping, PointAxis, RigModel};
pub use modes::{eigen_modes, Mode};
pub use noise::{inject_noise, NoiseSpec, Tone};
pub use response::{modal_impact_response, modal_sweep_response, DofResponse};
pub use run::{ClipEvent, Excitation, RawRun, ResponseChannel};
pub use sensor::SensorSpec;
pub use simulate::{
    hit_schedule, simulate_impact, simulate_impacts, simulate_sweep, Echo, HitEvent, SweepSpec, CAPTURE_FRACTION,
};
