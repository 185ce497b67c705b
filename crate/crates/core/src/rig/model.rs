use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub fn as_str(self) -> &'static str {
        match self {
            Axis::X => "x",
            Axis::Y => "y",
            Axis::Z => "z",
        }
    }

    pub fn index(self) -> usize {
        match self {
            Axis::X => 0,
            Axis::Y => 1,
            Axis::Z => 2,
        }
    }
}

impl FromStr for Axis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Axis> {
        match s.trim().to_ascii_lowercase().as_str() {
            "x" => Ok(Axis::X),
            "y" => Ok(Axis::Y),
            "z" => Ok(Axis::Z),
            other => Err(Error::Parse(format!("unknown axis {other:?}"))),
        }
    }
}

/// A measurement location: geometry point id plus direction, written `13:z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PointAxis {
    pub point: u32,
    pub axis: Axis,
}

impl PointAxis {
    pub fn new(point: u32, axis: Axis) -> Self {
        PointAxis { point, axis }
    }
}

impl fmt::Display for PointAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.point, self.axis.as_str())
    }
}

impl FromStr for PointAxis {
    type Err = Error;

    fn from_str(s: &str) -> Result<PointAxis> {
        let (p, a) = s.split_once(':').ok_or_else(|| Error::Parse(format!("expected POINT:AXIS, got {s:?}")))?;
        let point = p.trim().parse().map_err(|_| Error::Parse(format!("bad point id {p:?}")))?;
        Ok(PointAxis { point, axis: a.parse()? })
    }
}

impl Serialize for PointAxis {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for PointAxis {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeMapping {
    pub point: u32,
    pub axis: Axis,
    pub dof: usize,
}

impl NodeMapping {
    pub fn point_axis(&self) -> PointAxis {
        PointAxis::new(self.point, self.axis)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct RigFile {
    #[serde(default)]
    name: Option<String>,
    #[serde(default)]
    dof_labels: Vec<String>,
    masses_kg: Vec<f64>,
    stiffness_n_per_m: Vec<Vec<f64>>,
    modal_damping: Vec<f64>,
    node_map: Vec<NodeMapping>,
}

/// Lumped structure: diagonal mass matrix, symmetric stiffness, one damping
/// ratio per mode (ascending frequency order) and the point/axis → DOF map.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RigFile", into = "RigFile")]
pub struct RigModel {
    name: Option<String>,
    dof_labels: Vec<String>,
    masses: Vec<f64>,
    stiffness: DMatrix<f64>,
    modal_damping: Vec<f64>,
    node_map: Vec<NodeMapping>,
}

impl TryFrom<RigFile> for RigModel {
    type Error = Error;

    fn try_from(f: RigFile) -> Result<RigModel> {
        let n = f.masses_kg.len();
        if f.stiffness_n_per_m.len() != n || f.stiffness_n_per_m.iter().any(|r| r.len() != n) {
            return Err(Error::invalid(format!("stiffness matrix must be {n}x{n}")));
        }
        let k = DMatrix::from_fn(n, n, |i, j| f.stiffness_n_per_m[i][j]);
        let mut rig = RigModel::new(f.masses_kg, k, f.modal_damping, f.node_map)?;
        rig.name = f.name;
        rig.dof_labels = f.dof_labels;
        Ok(rig)
    }
}

impl From<RigModel> for RigFile {
    fn from(r: RigModel) -> RigFile {
        let n = r.n_dof();
        RigFile {
            name: r.name,
            dof_labels: r.dof_labels,
            masses_kg: r.masses,
            stiffness_n_per_m: (0..n).map(|i| (0..n).map(|j| r.stiffness[(i, j)]).collect()).collect(),
            modal_damping: r.modal_damping,
            node_map: r.node_map,
        }
    }
}

impl RigModel {
    pub fn new(
        masses: Vec<f64>,
        stiffness: DMatrix<f64>,
        modal_damping: Vec<f64>,
        node_map: Vec<NodeMapping>,
    ) -> Result<RigModel> {
        let n = masses.len();
        if n == 0 {
            return Err(Error::invalid("rig needs at least one degree of freedom"));
        }
        if let Some(m) = masses.iter().find(|m| !(**m > 0.0 && m.is_finite())) {
            return Err(Error::invalid(format!("masses must be positive, got {m}")));
        }
        if stiffness.nrows() != n || stiffness.ncols() != n {
            return Err(Error::invalid(format!("stiffness matrix must be {n}x{n}")));
        }
        if stiffness.iter().any(|k| !k.is_finite()) {
            return Err(Error::invalid("stiffness entries must be finite"));
        }
        let scale = stiffness.amax().max(f64::MIN_POSITIVE);
        for i in 0..n {
            for j in (i + 1)..n {
                if (stiffness[(i, j)] - stiffness[(j, i)]).abs() > 1e-12 * scale {
                    return Err(Error::invalid(format!("stiffness not symmetric at ({i},{j})")));
                }
            }
        }
        if modal_damping.len() != n {
            return Err(Error::invalid(format!("need {n} modal damping ratios, got {}", modal_damping.len())));
        }
        if let Some(z) = modal_damping.iter().find(|z| !(**z > 0.0 && **z < 1.0)) {
            return Err(Error::invalid(format!("damping ratio {z} outside (0, 1)")));
        }
        let mut seen = BTreeSet::new();
        for m in &node_map {
            if m.dof >= n {
                return Err(Error::invalid(format!(
                    "point {} maps to DOF {} but the rig has {n}",
                    m.point_axis(),
                    m.dof
                )));
            }
            if !seen.insert(m.point_axis()) {
                return Err(Error::invalid(format!("point {} mapped twice", m.point_axis())));
            }
        }
        Ok(RigModel { name: None, dof_labels: Vec::new(), masses, stiffness, modal_damping, node_map })
    }

    pub fn from_json(text: &str) -> Result<RigModel> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn n_dof(&self) -> usize {
        self.masses.len()
    }

    pub fn masses(&self) -> &[f64] {
        &self.masses
    }

    pub fn stiffness(&self) -> &DMatrix<f64> {
        &self.stiffness
    }

    pub fn modal_damping(&self) -> &[f64] {
        &self.modal_damping
    }

    pub fn node_map(&self) -> &[NodeMapping] {
        &self.node_map
    }

    pub fn dof_of(&self, p: PointAxis) -> Result<usize> {
        self.node_map
            .iter()
            .find(|m| m.point_axis() == p)
            .map(|m| m.dof)
            .ok_or_else(|| Error::UnknownPoint(p.to_string()))
    }

    /// Copy with `delta_kg` added to the mass at `dof`.
    pub fn with_added_mass(&self, dof: usize, delta_kg: f64) -> Result<RigModel> {
        if dof >= self.n_dof() {
            return Err(Error::invalid(format!("no DOF {dof}")));
        }
        let mut masses = self.masses.clone();
        masses[dof] += delta_kg;
        let mut rig = RigModel::new(masses, self.stiffness.clone(), self.modal_damping.clone(), self.node_map.clone())?;
        rig.name = self.name.clone();
        rig.dof_labels = self.dof_labels.clone();
        Ok(rig)
    }

    /// Copy with a new DOF of `mass_kg` hung from `anchor_dof` by a spring of
    /// `spring_n_per_m`, and the listed points moved onto it. `zeta` is
    /// appended to the modal damping list. Models a compliant joint such as a
    /// cracked weld between two co-located sensors.
    pub fn with_attached_dof(
        &self,
        anchor_dof: usize,
        mass_kg: f64,
        spring_n_per_m: f64,
        zeta: f64,
        points: &[PointAxis],
    ) -> Result<RigModel> {
        let n = self.n_dof();
        if anchor_dof >= n {
            return Err(Error::invalid(format!("no DOF {anchor_dof}")));
        }
        if !(spring_n_per_m > 0.0 && spring_n_per_m.is_finite()) {
            return Err(Error::invalid("attachment spring must be positive"));
        }
        let mut k = self.stiffness.clone().resize(n + 1, n + 1, 0.0);
        k[(anchor_dof, anchor_dof)] += spring_n_per_m;
        k[(n, n)] = spring_n_per_m;
        k[(anchor_dof, n)] = -spring_n_per_m;
        k[(n, anchor_dof)] = -spring_n_per_m;
        let mut masses = self.masses.clone();
        masses.push(mass_kg);
        let mut damping = self.modal_damping.clone();
        damping.push(zeta);
        let mut node_map = self.node_map.clone();
        for p in points {
            let m =
                node_map.iter_mut().find(|m| m.point_axis() == *p).ok_or_else(|| Error::UnknownPoint(p.to_string()))?;
            m.dof = n;
        }
        let mut rig = RigModel::new(masses, k, damping, node_map)?;
        rig.name = self.name.clone();
        if !self.dof_labels.is_empty() {
            rig.dof_labels = self.dof_labels.clone();
            rig.dof_labels.push(format!("attached to {anchor_dof}"));
        }
        Ok(rig)
    }

    /// Copy with masses and stiffness multiplied by the same factor.
    pub fn scaled(&self, factor: f64) -> Result<RigModel> {
        RigModel::new(
            self.masses.iter().map(|m| m * factor).collect(),
            &self.stiffness * factor,
            self.modal_damping.clone(),
            self.node_map.clone(),
        )
    }
}
