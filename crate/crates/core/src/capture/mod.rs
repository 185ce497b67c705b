//! Trigger detection and hit-quality screening for hammer runs.

mod quality;
mod trigger;

pub use quality::{assemble_records, classify_hit, HitFlag, HitFlags, ImpactRecord, QualityRules};
pub use trigger::{detect_triggers, Span, TriggerSettings};
