//! Physical quantities and the IO-boundary unit conversions.
//!
//! Everything inside the crate is SI. Gravity units and pound-force only
//! appear when reading or displaying data.

use serde::{Deserialize, Serialize};
use std::fmt;

/// Standard gravity, m/s² per g.
pub const STANDARD_GRAVITY: f64 = 9.80665;
/// Newtons per pound-force.
pub const NEWTONS_PER_LBF: f64 = 4.4482216;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Quantity {
    #[serde(rename = "force_N")]
    Force,
    #[serde(rename = "accel_mps2")]
    Acceleration,
    #[serde(rename = "vel_mps")]
    Velocity,
    #[serde(rename = "disp_m")]
    Displacement,
}

impl Quantity {
    pub fn unit(self) -> &'static str {
        match self {
            Quantity::Force => "N",
            Quantity::Acceleration => "m/s^2",
            Quantity::Velocity => "m/s",
            Quantity::Displacement => "m",
        }
    }

    /// Motion quantities ordered by time derivative: displacement 0,
    /// velocity 1, acceleration 2. Force has no rank.
    pub(crate) fn motion_rank(self) -> Option<i32> {
        match self {
            Quantity::Displacement => Some(0),
            Quantity::Velocity => Some(1),
            Quantity::Acceleration => Some(2),
            Quantity::Force => None,
        }
    }

    pub(crate) fn from_motion_rank(rank: i32) -> Option<Quantity> {
        match rank {
            0 => Some(Quantity::Displacement),
            1 => Some(Quantity::Velocity),
            2 => Some(Quantity::Acceleration),
            _ => None,
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            Quantity::Force => "force_N",
            Quantity::Acceleration => "accel_mps2",
            Quantity::Velocity => "vel_mps",
            Quantity::Displacement => "disp_m",
        }
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

pub fn g_to_mps2(g: f64) -> f64 {
    g * STANDARD_GRAVITY
}

pub fn mps2_to_g(a: f64) -> f64 {
    a / STANDARD_GRAVITY
}

pub fn lbf_to_newton(lbf: f64) -> f64 {
    lbf * NEWTONS_PER_LBF
}

pub fn newton_to_lbf(n: f64) -> f64 {
    n / NEWTONS_PER_LBF
}
