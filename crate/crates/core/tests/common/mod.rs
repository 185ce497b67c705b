#![allow(dead_code)]

use std::f64::consts::PI;

use ema_core::rig::{Axis, NodeMapping, RigModel, SensorSpec};
use nalgebra::DMatrix;

/// Single mass on a spring, one measurement point `1:z`.
pub fn sdof(f_n: f64, zeta: f64, m: f64) -> RigModel {
    let k = m * (2.0 * PI * f_n).powi(2);
    RigModel::new(
        vec![m],
        DMatrix::from_element(1, 1, k),
        vec![zeta],
        vec![NodeMapping { point: 1, axis: Axis::Z, dof: 0 }],
    )
    .unwrap()
}

/// Two unit masses in a grounded chain, K = c·[[2, −1], [−1, 1]], points
/// `1:z` and `2:z`. The first mode sits at `f1` Hz.
pub fn chain2(f1: f64, zeta: f64) -> RigModel {
    let lambda1 = (3.0 - 5f64.sqrt()) / 2.0;
    let c = (2.0 * PI * f1).powi(2) / lambda1;
    RigModel::new(
        vec![1.0, 1.0],
        DMatrix::from_row_slice(2, 2, &[2.0 * c, -c, -c, c]),
        vec![zeta, zeta],
        vec![NodeMapping { point: 1, axis: Axis::Z, dof: 0 }, NodeMapping { point: 2, axis: Axis::Z, dof: 1 }],
    )
    .unwrap()
}

/// A sensor that never clips.
pub fn unclipped() -> SensorSpec {
    SensorSpec { range_pk: 1e12, ..SensorSpec::default() }
}

pub fn wrap_deg(a: f64) -> f64 {
    let w = a.rem_euclid(360.0);
    if w > 180.0 {
        w - 360.0
    } else {
        w
    }
}
