//! Modal-superposition response of a rig to a force at one DOF.

use nalgebra::{Matrix4, Vector2};

use super::{eigen_modes, Mode, RigModel};
use crate::{Error, Result};

/// Per-DOF time histories, indexed `[dof][sample]`.
#[derive(Debug, Clone, PartialEq)]
pub struct DofResponse {
    pub displacement: Vec<Vec<f64>>,
    pub acceleration: Vec<Vec<f64>>,
}

/// Exact discrete-time propagator for `q'' + 2ζω q' + ω² q = u(t)` with `u`
/// linear between samples.
struct ExactStep {
    phi: nalgebra::Matrix2<f64>,
    gamma_u: Vector2<f64>,
    gamma_slope: Vector2<f64>,
}

impl ExactStep {
    fn new(omega: f64, zeta: f64, dt: f64) -> ExactStep {
        // Augmented state [q, q', u, u'] with u' constant over the step.
        #[rustfmt::skip]
        let a = Matrix4::new(
            0.0, 1.0, 0.0, 0.0,
            -omega * omega, -2.0 * zeta * omega, 1.0, 0.0,
            0.0, 0.0, 0.0, 1.0,
            0.0, 0.0, 0.0, 0.0,
        ) * dt;
        let e = a.exp();
        ExactStep {
            phi: e.fixed_view::<2, 2>(0, 0).into_owned(),
            gamma_u: e.fixed_view::<2, 1>(0, 2).into_owned(),
            gamma_slope: e.fixed_view::<2, 1>(0, 3).into_owned(),
        }
    }
}

/// Modal coordinate `q` and acceleration `q''` for a modal force history.
fn exact_modal_history(mode: &Mode, u: &[f64], dt: f64) -> (Vec<f64>, Vec<f64>) {
    let omega = mode.omega();
    let step = ExactStep::new(omega, mode.zeta, dt);
    let n = u.len();
    let mut q = Vec::with_capacity(n);
    let mut acc = Vec::with_capacity(n);
    let mut x = Vector2::new(0.0, 0.0);
    for i in 0..n {
        q.push(x[0]);
        acc.push(u[i] - 2.0 * mode.zeta * omega * x[1] - omega * omega * x[0]);
        if i + 1 < n {
            let slope = (u[i + 1] - u[i]) / dt;
            x = step.phi * x + step.gamma_u * u[i] + step.gamma_slope * slope;
        }
    }
    (q, acc)
}

/// Average-acceleration Newmark (γ = 1/2, β = 1/4) for one modal equation.
fn newmark_modal_history(mode: &Mode, u: &[f64], dt: f64) -> (Vec<f64>, Vec<f64>) {
    let (gamma, beta) = (0.5, 0.25);
    let omega = mode.omega();
    let c = 2.0 * mode.zeta * omega;
    let k = omega * omega;
    let n = u.len();
    let mut q = Vec::with_capacity(n);
    let mut acc = Vec::with_capacity(n);
    let (mut d, mut v) = (0.0, 0.0);
    let mut a = u.first().copied().unwrap_or(0.0);
    let k_eff = k + gamma / (beta * dt) * c + 1.0 / (beta * dt * dt);
    for i in 0..n {
        q.push(d);
        acc.push(a);
        if i + 1 == n {
            break;
        }
        let p_eff = u[i + 1]
            + (d / (beta * dt * dt) + v / (beta * dt) + (0.5 / beta - 1.0) * a)
            + c * (gamma / (beta * dt) * d + (gamma / beta - 1.0) * v + dt * (gamma / (2.0 * beta) - 1.0) * a);
        let d_next = p_eff / k_eff;
        let a_next = (d_next - d) / (beta * dt * dt) - v / (beta * dt) - (0.5 / beta - 1.0) * a;
        let v_next = v + dt * ((1.0 - gamma) * a + gamma * a_next);
        d = d_next;
        v = v_next;
        a = a_next;
    }
    (q, acc)
}

/// Modal coordinate and its acceleration for one mode under a modal force history.
type ModalSolver = fn(&Mode, &[f64], f64) -> (Vec<f64>, Vec<f64>);

fn superpose(rig: &RigModel, drive_dof: usize, force: &[f64], fs_hz: f64, solver: ModalSolver) -> Result<DofResponse> {
    if drive_dof >= rig.n_dof() {
        return Err(Error::invalid(format!("no DOF {drive_dof}")));
    }
    if !(fs_hz > 0.0) {
        return Err(Error::invalid("sample rate must be positive"));
    }
    let modes = eigen_modes(rig)?;
    let n_dof = rig.n_dof();
    let n = force.len();
    let dt = 1.0 / fs_hz;
    let mut displacement = vec![vec![0.0; n]; n_dof];
    let mut acceleration = vec![vec![0.0; n]; n_dof];
    let mut u = vec![0.0; n];
    for mode in &modes {
        let participation = mode.shape[drive_dof];
        for (ui, fi) in u.iter_mut().zip(force) {
            *ui = participation * fi;
        }
        let (q, qa) = solver(mode, &u, dt);
        for dof in 0..n_dof {
            let phi = mode.shape[dof];
            for i in 0..n {
                displacement[dof][i] += phi * q[i];
                acceleration[dof][i] += phi * qa[i];
            }
        }
    }
    Ok(DofResponse { displacement, acceleration })
}

/// Response to a sampled force history, exact for force varying linearly
/// between samples.
pub fn modal_impact_response(rig: &RigModel, drive_dof: usize, force: &[f64], fs_hz: f64) -> Result<DofResponse> {
    superpose(rig, drive_dof, force, fs_hz, exact_modal_history)
}

/// Response by Newmark average-acceleration stepping of each modal equation.
pub fn modal_sweep_response(rig: &RigModel, drive_dof: usize, force: &[f64], fs_hz: f64) -> Result<DofResponse> {
    superpose(rig, drive_dof, force, fs_hz, newmark_modal_history)
}
