//! Test geometry, operating deflection shapes, seam checks and animation
//! export.

mod animation;
mod geometry;
mod shape;

pub use animation::{export_animation, AnimationDocument, FramePoint};
pub use geometry::{GeometryModel, GeometryPoint, Group};
pub use shape::{
    extract_ods, phase_relation, seam_check, DeflectionShape, PhaseKind, PhaseRelation, PhaseThresholds, SeamFailure,
    SeamResult, SeamTolerance, ShapeEntry,
};
