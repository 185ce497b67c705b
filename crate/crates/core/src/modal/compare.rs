use serde::{Deserialize, Serialize};

use super::estimate::{Classification, ModeEstimate};

/// Frequency window for matching modes between runs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Tolerance {
    Absolute {
        hz: f64,
    },
    /// Fraction of the first run's frequency (0.02 = 2%).
    Relative {
        fraction: f64,
    },
}

impl Tolerance {
    fn allows(&self, f_a: f64, f_b: f64) -> bool {
        let limit = match *self {
            Tolerance::Absolute { hz } => hz,
            Tolerance::Relative { fraction } => fraction * f_a.abs(),
        };
        (f_a - f_b).abs() <= limit
    }
}

impl Default for Tolerance {
    fn default() -> Tolerance {
        Tolerance::Relative { fraction: 0.02 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatchedPair {
    pub a: ModeEstimate,
    pub b: ModeEstimate,
    /// `f_b − f_a`.
    pub df_hz: f64,
    /// `ζ_b − ζ_a`, when both are resolved.
    pub dzeta: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Comparison {
    pub matched: Vec<MatchedPair>,
    pub only_in_a: Vec<ModeEstimate>,
    pub only_in_b: Vec<ModeEstimate>,
}

impl Comparison {
    /// True when every structural mode of either run is matched to a
    /// structural mode of the other.
    pub fn structural_sets_match(&self) -> bool {
        let structural = |m: &ModeEstimate| m.classification == Classification::Structural;
        self.only_in_a.iter().chain(&self.only_in_b).all(|m| !structural(m))
            && self.matched.iter().all(|p| structural(&p.a) == structural(&p.b))
    }
}

/// Greedy nearest-frequency matching within `tol`.
///
/// Candidate pairs are taken in order of increasing frequency distance; ties
/// go to the pair with the lower frequency in `a`, then in `b`. Output lists
/// are sorted by frequency.
pub fn compare_runs(modes_a: &[ModeEstimate], modes_b: &[ModeEstimate], tol: Tolerance) -> Comparison {
    let mut candidates: Vec<(f64, usize, usize)> = Vec::new();
    for (i, a) in modes_a.iter().enumerate() {
        for (j, b) in modes_b.iter().enumerate() {
            if tol.allows(a.f_hz, b.f_hz) {
                candidates.push(((a.f_hz - b.f_hz).abs(), i, j));
            }
        }
    }
    candidates.sort_by(|x, y| {
        x.0.total_cmp(&y.0)
            .then(modes_a[x.1].f_hz.total_cmp(&modes_a[y.1].f_hz))
            .then(modes_b[x.2].f_hz.total_cmp(&modes_b[y.2].f_hz))
    });
    let mut used_a = vec![false; modes_a.len()];
    let mut used_b = vec![false; modes_b.len()];
    let mut matched = Vec::new();
    for (_, i, j) in candidates {
        if used_a[i] || used_b[j] {
            continue;
        }
        used_a[i] = true;
        used_b[j] = true;
        let (a, b) = (&modes_a[i], &modes_b[j]);
        matched.push(MatchedPair {
            a: a.clone(),
            b: b.clone(),
            df_hz: b.f_hz - a.f_hz,
            dzeta: a.zeta.zip(b.zeta).map(|(za, zb)| zb - za),
        });
    }
    matched.sort_by(|x, y| x.a.f_hz.total_cmp(&y.a.f_hz));
    let leftovers = |modes: &[ModeEstimate], used: &[bool]| {
        let mut v: Vec<ModeEstimate> = modes.iter().zip(used).filter(|(_, u)| !**u).map(|(m, _)| m.clone()).collect();
        v.sort_by(|x, y| x.f_hz.total_cmp(&y.f_hz));
        v
    };
    Comparison { only_in_a: leftovers(modes_a, &used_a), only_in_b: leftovers(modes_b, &used_b), matched }
}
