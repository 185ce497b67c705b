use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{DeflectionShape, GeometryModel};
use crate::{Axis, Error, Result};

/// Displaced position of one point in one frame.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FramePoint {
    pub id: u32,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

/// One period of a deflection shape sampled at `n_frames` phases.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnimationDocument {
    pub frequency_hz: f64,
    pub scale: f64,
    pub n_frames: usize,
    pub frames: Vec<Vec<FramePoint>>,
}

impl AnimationDocument {
    /// Frame `k` of the periodic sequence (any `k`, wrapping).
    pub fn frame(&self, k: usize) -> &[FramePoint] {
        &self.frames[k % self.n_frames]
    }
}

/// Frame `k` places each point at `position + scale·Re(entry·e^{i2πk/n})`
/// per measured axis; unmeasured axes and points stay at rest.
pub fn export_animation(
    shape: &DeflectionShape,
    geometry: &GeometryModel,
    n_frames: usize,
    scale: f64,
) -> Result<AnimationDocument> {
    if n_frames == 0 {
        return Err(Error::invalid("animation needs at least one frame"));
    }
    if !(scale > 0.0 && scale.is_finite()) {
        return Err(Error::invalid(format!("animation scale must be positive, got {scale}")));
    }
    let frames = (0..n_frames)
        .map(|k| {
            let rot = Complex64::from_polar(1.0, 2.0 * PI * k as f64 / n_frames as f64);
            geometry
                .points()
                .iter()
                .map(|p| {
                    let mut pos = p.position;
                    for e in shape.entries.iter().filter(|e| e.point.point == p.id) {
                        let idx = match e.point.axis {
                            Axis::X => 0,
                            Axis::Y => 1,
                            Axis::Z => 2,
                        };
                        pos[idx] += scale * (e.value * rot).re;
                    }
                    FramePoint { id: p.id, x: pos[0], y: pos[1], z: pos[2] }
                })
                .collect()
        })
        .collect();
    Ok(AnimationDocument { frequency_hz: shape.bin_frequency_hz, scale, n_frames, frames })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ods::{GeometryPoint, Group, ShapeEntry};
    use crate::PointAxis;

    fn geometry() -> GeometryModel {
        let pt = |id, x| GeometryPoint {
            id,
            label: String::new(),
            position: [x, 0.0, 0.0],
            group: Group::Gearbox,
            pedestal: Some(1),
        };
        GeometryModel::new("t", vec![pt(1, 0.0), pt(2, 1.0), pt(3, 2.0)]).unwrap()
    }

    fn shape(entries: &[(u32, Complex64)]) -> DeflectionShape {
        DeflectionShape {
            frequency_hz: 5.0,
            bin_frequency_hz: 5.0,
            excitation: PointAxis { point: 1, axis: Axis::Z },
            entries: entries
                .iter()
                .map(|(p, v)| ShapeEntry { point: PointAxis { point: *p, axis: Axis::Z }, value: *v })
                .collect(),
            omitted: vec![],
            unmeasured: vec![3],
        }
    }

    #[test]
    fn single_frame_displaced_by_magnitude() {
        let doc = export_animation(&shape(&[(1, Complex64::new(0.5, 0.0))]), &geometry(), 1, 2.0).unwrap();
        assert_eq!(doc.frames.len(), 1);
        assert_eq!(doc.frames[0][0].z, 1.0);
        assert_eq!(doc.frames[0][1].z, 0.0);
    }

    #[test]
    fn four_frames_follow_cosine() {
        let doc = export_animation(&shape(&[(1, Complex64::new(1.0, 0.0))]), &geometry(), 4, 3.0).unwrap();
        let z: Vec<f64> = doc.frames.iter().map(|f| f[0].z).collect();
        for (got, want) in z.iter().zip([3.0, 0.0, -3.0, 0.0]) {
            assert!((got - want).abs() < 1e-12, "{z:?}");
        }
        assert_eq!(doc.frame(5), doc.frame(1));
    }

    #[test]
    fn out_of_phase_points_move_oppositely() {
        let v = Complex64::from_polar(1.0, 0.3);
        let doc = export_animation(&shape(&[(1, v), (2, -v)]), &geometry(), 7, 1.0).unwrap();
        for f in &doc.frames {
            assert!(f[0].z * f[1].z <= 0.0);
            assert!((f[0].z + f[1].z).abs() < 1e-12);
        }
    }

    #[test]
    fn invalid_parameters() {
        let s = shape(&[]);
        assert!(export_animation(&s, &geometry(), 0, 1.0).is_err());
        assert!(export_animation(&s, &geometry(), 4, 0.0).is_err());
    }
}
