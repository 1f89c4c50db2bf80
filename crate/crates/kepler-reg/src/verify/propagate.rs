//! Closed-form propagation through the anomaly solvers.

use crate::anomaly::{position_from_anomaly, solve_mean, true_from_anomaly, velocity_from_anomaly};
use crate::error::{Error, Result};
use crate::geometry::Vec3;
use crate::kepler::{elements_and_anomaly, OrbitElements, PhaseState};

/// Orthonormal basis of the orbit plane with `periapsis` pointing at the
/// periapsis and `normal` along `L`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrbitPlane {
    pub periapsis: Vec3,
    pub transverse: Vec3,
    pub normal: Vec3,
}

/// Elements and orbit plane of a state, with times measured from the state.
pub fn orbit_plane(state: &PhaseState) -> Result<(OrbitElements, OrbitPlane)> {
    let (el, psi0) = elements_and_anomaly(state)?;
    let l = state.q.cross(&state.p);
    let ln = l.norm();
    if !(ln >= 1e-12) {
        return Err(Error::RectilinearOrbit(ln));
    }
    let normal = l / ln;
    let qh = state.q / state.radius()?;
    let nu = true_from_anomaly(psi0, el.e, el.class)?;
    let periapsis = nu.cos() * qh - nu.sin() * normal.cross(&qh);
    let transverse = normal.cross(&periapsis);
    Ok((
        el,
        OrbitPlane {
            periapsis,
            transverse,
            normal,
        },
    ))
}

/// State at time `t` from Kepler's equation in the regime's normal form.
pub fn anomaly_propagate(el: &OrbitElements, plane: &OrbitPlane, t: f64) -> Result<PhaseState> {
    let psi = solve_mean(el.mean_motion * (t - el.t_p), el.e, el.class)?;
    let (x, y) = position_from_anomaly(psi, el)?;
    let (vx, vy) = velocity_from_anomaly(psi, el)?;
    Ok(PhaseState::new(
        x * plane.periapsis + y * plane.transverse,
        vx * plane.periapsis + vy * plane.transverse,
    ))
}
