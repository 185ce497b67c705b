//! Bundled demonstration configurations.

use crate::ods::GeometryModel;
use crate::rig::{NoiseSpec, RigModel};
use crate::{Axis, PointAxis, Result};

pub const RIG_12DOF_JSON: &str = include_str!("../configs/rig-12dof.json");
pub const NOISE_PUMPS_JSON: &str = include_str!("../configs/noise-pumps.json");
pub const GEOMETRY_JSON: &str = include_str!("../configs/geometry-gearbox.json");

/// Two-pedestal gearbox model: 12 DOFs, six modes below 200 Hz.
pub fn rig_12dof() -> Result<RigModel> {
    RigModel::from_json(RIG_12DOF_JSON)
}

/// Three lube-oil pump tones plus light broadband noise.
pub fn noise_pumps() -> Result<NoiseSpec> {
    Ok(serde_json::from_str(NOISE_PUMPS_JSON)?)
}

/// The 49-point gearbox test geometry.
pub fn geometry() -> Result<GeometryModel> {
    GeometryModel::from_json(GEOMETRY_JSON)
}

/// Demo rig whose point 48 sits on a 20 kg patch joined to the gearbox
/// DOF through a compliant spring (local resonance near 300 Hz) instead of
/// sharing the DOF with point 46: a cracked seam.
pub fn rig_12dof_bad_weld() -> Result<RigModel> {
    let rig = rig_12dof()?;
    let anchor = rig.dof_of(PointAxis::new(46, Axis::Z))?;
    let mass = 20.0;
    let spring = mass * (2.0 * std::f64::consts::PI * 300.0f64).powi(2);
    rig.with_attached_dof(anchor, mass, spring, 0.01, &[PointAxis::new(48, Axis::Z)])
}
