use std::f64::consts::PI;

use nalgebra::{DMatrix, SymmetricEigen};

use super::RigModel;
use crate::{Error, Result};

/// One undamped normal mode with its assigned damping ratio.
#[derive(Debug, Clone, PartialEq)]
pub struct Mode {
    pub frequency_hz: f64,
    pub zeta: f64,
    /// Mass-normalised shape: `φᵀ M φ = 1`. The largest-magnitude entry is positive.
    pub shape: Vec<f64>,
}

impl Mode {
    pub fn omega(&self) -> f64 {
        2.0 * PI * self.frequency_hz
    }
}

/// Natural frequencies (ascending) and mass-orthonormal mode shapes.
pub fn eigen_modes(rig: &RigModel) -> Result<Vec<Mode>> {
    let n = rig.n_dof();
    let inv_sqrt_m: Vec<f64> = rig.masses().iter().map(|m| 1.0 / m.sqrt()).collect();
    let k = rig.stiffness();
    let a = DMatrix::from_fn(n, n, |i, j| inv_sqrt_m[i] * k[(i, j)] * inv_sqrt_m[j]);
    let a = (&a + a.transpose()) * 0.5;
    let eig = SymmetricEigen::new(a);

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));

    let tol = 1e-12 * eig.eigenvalues.amax().max(f64::MIN_POSITIVE);
    let mut modes = Vec::with_capacity(n);
    for (rank, &idx) in order.iter().enumerate() {
        let lambda = eig.eigenvalues[idx];
        if !(lambda > tol) {
            return Err(Error::UnstableModel(format!("stiffness is not positive definite (eigenvalue {lambda:e})")));
        }
        let mut shape: Vec<f64> = (0..n).map(|i| eig.eigenvectors[(i, idx)] * inv_sqrt_m[i]).collect();
        let lead = shape.iter().copied().fold(0.0_f64, |m, v| if v.abs() > m.abs() { v } else { m });
        if lead < 0.0 {
            shape.iter_mut().for_each(|v| *v = -*v);
        }
        modes.push(Mode { frequency_hz: lambda.sqrt() / (2.0 * PI), zeta: rig.modal_damping()[rank], shape });
    }
    Ok(modes)
}
