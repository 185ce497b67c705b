use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Structural group a measurement point belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Group {
    Foundation,
    GroutPlate,
    SteelPlate,
    Gearbox,
    Piping,
}

impl Group {
    pub fn as_str(self) -> &'static str {
        match self {
            Group::Foundation => "foundation",
            Group::GroutPlate => "grout_plate",
            Group::SteelPlate => "steel_plate",
            Group::Gearbox => "gearbox",
            Group::Piping => "piping",
        }
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Group {
    type Err = Error;

    fn from_str(s: &str) -> Result<Group> {
        match s {
            "foundation" => Ok(Group::Foundation),
            "grout_plate" => Ok(Group::GroutPlate),
            "steel_plate" => Ok(Group::SteelPlate),
            "gearbox" => Ok(Group::Gearbox),
            "piping" => Ok(Group::Piping),
            other => Err(Error::UnknownGroup(other.to_string())),
        }
    }
}

/// One measurement point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GeometryPoint {
    pub id: u32,
    pub label: String,
    /// Position in metres.
    pub position: [f64; 3],
    pub group: Group,
    /// Pedestal number; `None` for piping.
    pub pedestal: Option<u8>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum PedestalRepr {
    Number(u8),
    Text(String),
}

#[derive(Deserialize)]
struct RawPoint {
    id: u32,
    #[serde(default)]
    label: String,
    position: [f64; 3],
    group: String,
    #[serde(default)]
    pedestal: Option<PedestalRepr>,
}

#[derive(Deserialize)]
struct RawGeometry {
    #[serde(default)]
    name: String,
    points: Vec<RawPoint>,
}

/// Validated set of measurement points with unique ids.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GeometryModel {
    pub name: String,
    points: Vec<GeometryPoint>,
}

impl GeometryModel {
    /// Checks id uniqueness, finite positions and pedestal rules: every
    /// non-piping point sits on pedestal 1 or 2, piping on none.
    pub fn new(name: impl Into<String>, points: Vec<GeometryPoint>) -> Result<GeometryModel> {
        let mut seen = BTreeSet::new();
        for p in &points {
            if !seen.insert(p.id) {
                return Err(Error::DuplicatePoint(p.id));
            }
            if p.position.iter().any(|c| !c.is_finite()) {
                return Err(Error::invalid(format!("point {} has a non-finite position", p.id)));
            }
            match (p.group, p.pedestal) {
                (Group::Piping, None) => {}
                (Group::Piping, Some(n)) => {
                    return Err(Error::invalid(format!("piping point {} cannot sit on pedestal {n}", p.id)))
                }
                (_, None) => return Err(Error::invalid(format!("point {} needs a pedestal", p.id))),
                (_, Some(1 | 2)) => {}
                (_, Some(n)) => return Err(Error::invalid(format!("point {} on unknown pedestal {n}", p.id))),
            }
        }
        Ok(GeometryModel { name: name.into(), points })
    }

    pub fn from_json(text: &str) -> Result<GeometryModel> {
        let raw: RawGeometry = serde_json::from_str(text)?;
        let mut points = Vec::with_capacity(raw.points.len());
        for p in raw.points {
            let pedestal = match p.pedestal {
                None => None,
                Some(PedestalRepr::Number(n)) => Some(n),
                Some(PedestalRepr::Text(t)) if t == "none" => None,
                Some(PedestalRepr::Text(t)) => {
                    return Err(Error::Parse(format!("point {}: pedestal must be 1, 2 or none, got {t:?}", p.id)))
                }
            };
            points.push(GeometryPoint {
                id: p.id,
                label: p.label,
                position: p.position,
                group: p.group.parse()?,
                pedestal,
            });
        }
        GeometryModel::new(raw.name, points)
    }

    pub fn points(&self) -> &[GeometryPoint] {
        &self.points
    }

    pub fn point(&self, id: u32) -> Option<&GeometryPoint> {
        self.points.iter().find(|p| p.id == id)
    }

    pub fn contains(&self, id: u32) -> bool {
        self.point(id).is_some()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duplicate_id_named() {
        let text = r#"{"points": [
            {"id": 7, "position": [0,0,0], "group": "gearbox", "pedestal": 1},
            {"id": 7, "position": [1,0,0], "group": "gearbox", "pedestal": 1}]}"#;
        assert_eq!(GeometryModel::from_json(text).unwrap_err().to_string(), "duplicate point 7");
    }

    #[test]
    fn unknown_group_rejected() {
        let text = r#"{"points": [{"id": 1, "position": [0,0,0], "group": "roof", "pedestal": 1}]}"#;
        assert!(matches!(GeometryModel::from_json(text), Err(Error::UnknownGroup(g)) if g == "roof"));
    }

    #[test]
    fn pedestal_rules() {
        let none_text = r#"{"points": [{"id": 33, "position": [0,0,0], "group": "piping", "pedestal": "none"}]}"#;
        assert_eq!(GeometryModel::from_json(none_text).unwrap().point(33).unwrap().pedestal, None);
        let missing = r#"{"points": [{"id": 1, "position": [0,0,0], "group": "foundation", "pedestal": null}]}"#;
        assert!(GeometryModel::from_json(missing).is_err());
        let piping_on_pedestal = r#"{"points": [{"id": 1, "position": [0,0,0], "group": "piping", "pedestal": 2}]}"#;
        assert!(GeometryModel::from_json(piping_on_pedestal).is_err());
    }
}
