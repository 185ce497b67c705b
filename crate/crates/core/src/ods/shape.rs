use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::GeometryModel;
use crate::frf::FrfSpectrum;
use crate::{Axis, Error, PointAxis, Result};

/// Wraps an angle in degrees into `(-180, 180]`.
fn wrap_deg(a: f64) -> f64 {
    let w = a - 360.0 * ((a + 180.0) / 360.0).floor();
    if w <= -180.0 {
        w + 360.0
    } else {
        w
    }
}

/// Deflection of one point along one axis, displacement per unit force (m/N).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShapeEntry {
    pub point: PointAxis,
    pub value: Complex64,
}

impl ShapeEntry {
    pub fn magnitude(&self) -> f64 {
        self.value.norm()
    }

    /// Phase relative to the excitation force, in `(-180, 180]` degrees.
    pub fn phase_deg(&self) -> f64 {
        wrap_deg(self.value.arg().to_degrees())
    }
}

/// Operating deflection shape at one frequency.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeflectionShape {
    /// Requested frequency.
    pub frequency_hz: f64,
    /// Frequency of the bin actually used.
    pub bin_frequency_hz: f64,
    pub excitation: PointAxis,
    pub entries: Vec<ShapeEntry>,
    /// FRF response points absent from the geometry, omitted from `entries`.
    pub omitted: Vec<PointAxis>,
    /// Geometry points with no FRF.
    pub unmeasured: Vec<u32>,
}

impl DeflectionShape {
    pub fn entry(&self, point: PointAxis) -> Option<&ShapeEntry> {
        self.entries.iter().find(|e| e.point == point)
    }

    fn require(&self, point: PointAxis) -> Result<&ShapeEntry> {
        self.entry(point).ok_or_else(|| Error::UnknownPoint(point.to_string()))
    }
}

/// Receptance shape `H(f*) / (−(2πf*)²)` at the bin `f*` nearest `f_hz`.
///
/// Only FRFs sharing the first FRF's excitation point are used; for a
/// response point measured twice the first FRF wins.
pub fn extract_ods(frfs: &[FrfSpectrum], f_hz: f64, geometry: &GeometryModel) -> Result<DeflectionShape> {
    let first = frfs.first().ok_or_else(|| Error::invalid("no FRFs to build a deflection shape from"))?;
    let k = first.h.nearest_bin(f_hz).ok_or_else(|| Error::invalid(format!("{f_hz} Hz lies outside the FRF band")))?;
    let bin_frequency_hz = first.h.frequency(k);
    if bin_frequency_hz <= 0.0 {
        return Err(Error::invalid("deflection shapes need a non-zero frequency"));
    }
    let omega = 2.0 * PI * bin_frequency_hz;
    let mut entries: Vec<ShapeEntry> = Vec::new();
    let mut omitted = Vec::new();
    for frf in frfs.iter().filter(|f| f.excitation == first.excitation) {
        if entries.iter().any(|e| e.point == frf.response) || omitted.contains(&frf.response) {
            continue;
        }
        if !geometry.contains(frf.response.point) {
            omitted.push(frf.response);
            continue;
        }
        let kk = frf
            .h
            .nearest_bin(bin_frequency_hz)
            .ok_or_else(|| Error::mismatch(format!("FRF {} does not cover {bin_frequency_hz} Hz", frf.response)))?;
        entries.push(ShapeEntry { point: frf.response, value: frf.h.bins[kk] / (-omega * omega) });
    }
    let unmeasured =
        geometry.points().iter().map(|p| p.id).filter(|id| !entries.iter().any(|e| e.point.point == *id)).collect();
    Ok(DeflectionShape {
        frequency_hz: f_hz,
        bin_frequency_hz,
        excitation: first.excitation,
        entries,
        omitted,
        unmeasured,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseThresholds {
    /// `|angle|` at or below this is in phase.
    pub in_phase_deg: f64,
    /// `|angle|` at or above this is out of phase.
    pub out_of_phase_deg: f64,
}

impl Default for PhaseThresholds {
    fn default() -> PhaseThresholds {
        PhaseThresholds { in_phase_deg: 30.0, out_of_phase_deg: 150.0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PhaseKind {
    InPhase,
    OutOfPhase,
    Indeterminate,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseRelation {
    pub kind: PhaseKind,
    /// Phase of `b` relative to `a`, in `(-180, 180]` degrees.
    pub angle_deg: f64,
}

pub fn phase_relation(
    shape: &DeflectionShape,
    point_a: u32,
    point_b: u32,
    axis: Axis,
    thresholds: &PhaseThresholds,
) -> Result<PhaseRelation> {
    let a = shape.require(PointAxis { point: point_a, axis })?;
    let b = shape.require(PointAxis { point: point_b, axis })?;
    let angle_deg = wrap_deg((b.value * a.value.conj()).arg().to_degrees());
    let kind = if angle_deg.abs() <= thresholds.in_phase_deg {
        PhaseKind::InPhase
    } else if angle_deg.abs() >= thresholds.out_of_phase_deg {
        PhaseKind::OutOfPhase
    } else {
        PhaseKind::Indeterminate
    };
    Ok(PhaseRelation { kind, angle_deg })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeamTolerance {
    /// Allowed `|m_a − m_b| / max(m_a, m_b)`.
    pub magnitude_rel: f64,
    pub phase_deg: f64,
}

impl Default for SeamTolerance {
    fn default() -> SeamTolerance {
        SeamTolerance { magnitude_rel: 0.05, phase_deg: 5.0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeamFailure {
    Magnitude,
    Phase,
    MagnitudeAndPhase,
}

/// Seam comparison of two points along one axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeamResult {
    pub point_a: u32,
    pub point_b: u32,
    pub axis: Axis,
    pub magnitude_diff_rel: f64,
    pub phase_diff_deg: f64,
    pub failure: Option<SeamFailure>,
}

impl SeamResult {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Compares each pair along every axis measured at the first point. A pair
/// passes when both the relative magnitude difference and the absolute
/// phase difference are within tolerance.
pub fn seam_check(shape: &DeflectionShape, pairs: &[(u32, u32)], tol: &SeamTolerance) -> Result<Vec<SeamResult>> {
    let mut out = Vec::new();
    for &(pa, pb) in pairs {
        let axes: Vec<Axis> = shape.entries.iter().filter(|e| e.point.point == pa).map(|e| e.point.axis).collect();
        if axes.is_empty() {
            return Err(Error::UnknownPoint(pa.to_string()));
        }
        for axis in axes {
            let a = shape.require(PointAxis { point: pa, axis })?;
            let b = shape.require(PointAxis { point: pb, axis })?;
            let (ma, mb) = (a.magnitude(), b.magnitude());
            let scale = ma.max(mb);
            let magnitude_diff_rel = if scale > 0.0 { (ma - mb).abs() / scale } else { 0.0 };
            let phase_diff_deg = wrap_deg((b.value * a.value.conj()).arg().to_degrees()).abs();
            let failure = match (magnitude_diff_rel > tol.magnitude_rel, phase_diff_deg > tol.phase_deg) {
                (false, false) => None,
                (true, false) => Some(SeamFailure::Magnitude),
                (false, true) => Some(SeamFailure::Phase),
                (true, true) => Some(SeamFailure::MagnitudeAndPhase),
            };
            out.push(SeamResult { point_a: pa, point_b: pb, axis, magnitude_diff_rel, phase_diff_deg, failure });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shape(values: &[(u32, Complex64)]) -> DeflectionShape {
        DeflectionShape {
            frequency_hz: 10.0,
            bin_frequency_hz: 10.0,
            excitation: PointAxis { point: 1, axis: Axis::Z },
            entries: values
                .iter()
                .map(|(p, v)| ShapeEntry { point: PointAxis { point: *p, axis: Axis::Z }, value: *v })
                .collect(),
            omitted: vec![],
            unmeasured: vec![],
        }
    }

    #[test]
    fn wrapping() {
        assert_eq!(wrap_deg(180.0), 180.0);
        assert_eq!(wrap_deg(-180.0), 180.0);
        assert!((wrap_deg(190.0) + 170.0).abs() < 1e-12);
        assert!((wrap_deg(-540.0) - 180.0).abs() < 1e-12);
    }

    #[test]
    fn phase_identity_and_flip() {
        let v = Complex64::from_polar(2.0, 0.7);
        let s = shape(&[(1, v), (2, v), (3, -v)]);
        let t = PhaseThresholds::default();
        let same = phase_relation(&s, 1, 2, Axis::Z, &t).unwrap();
        assert_eq!((same.kind, same.angle_deg), (PhaseKind::InPhase, 0.0));
        let flip = phase_relation(&s, 1, 3, Axis::Z, &t).unwrap();
        assert_eq!(flip.kind, PhaseKind::OutOfPhase);
        assert!((flip.angle_deg.abs() - 180.0).abs() < 1e-9);
        assert!(phase_relation(&s, 1, 9, Axis::Z, &t).unwrap_err().to_string().contains('9'));
    }

    #[test]
    fn quadrature_is_indeterminate() {
        let s = shape(&[(1, Complex64::new(1.0, 0.0)), (2, Complex64::new(0.0, 1.0))]);
        let r = phase_relation(&s, 1, 2, Axis::Z, &PhaseThresholds::default()).unwrap();
        assert_eq!(r.kind, PhaseKind::Indeterminate);
        assert!((r.angle_deg - 90.0).abs() < 1e-9);
    }

    #[test]
    fn seam_magnitude_mismatch_fails() {
        let v = Complex64::new(1e-6, -2e-6);
        let s = shape(&[(46, v), (48, v), (47, v), (49, v * 0.9)]);
        let r = seam_check(&s, &[(46, 48), (47, 49)], &SeamTolerance::default()).unwrap();
        assert!(r[0].passed());
        assert_eq!(r[0].magnitude_diff_rel, 0.0);
        assert_eq!(r[1].failure, Some(SeamFailure::Magnitude));
        assert!(seam_check(&s, &[(46, 50)], &SeamTolerance::default()).is_err());
    }
}
