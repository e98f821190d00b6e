//! Explicit finite-difference integrator for the coupled Burgers system.
//!
//! Forward Euler in time, second-order centered differences in space, periodic
//! wrap. It shares no code with the Cole-Hopf pipeline and exists to check it.

use thiserror::Error;

use crate::heat::{HeatError, ScalarField2D};

/// Fraction of the diffusive limit `min(hx², hy²)/4` allowed for `dt`.
pub const STABILITY_FACTOR: f64 = 0.9;

/// Fraction of `min(hx, hy)/max|u, v|` allowed for `dt`.
pub const ADVECTIVE_FACTOR: f64 = 0.5;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FdError {
    #[error("dt = {dt:e} exceeds the stability limit {limit:e}")]
    CflViolation { dt: f64, limit: f64 },
    #[error("state became non-finite at t = {time}")]
    NonFiniteState { time: f64 },
    #[error("cannot integrate backwards from {from} to {to}")]
    BackwardTime { from: f64, to: f64 },
    #[error("u and v live on different grids or times")]
    Mismatch,
    #[error(transparent)]
    Grid(#[from] HeatError),
}

/// `(u, v)` at a common time plus the step size used to advance them.
#[derive(Debug, Clone, PartialEq)]
pub struct FDState {
    u: ScalarField2D,
    v: ScalarField2D,
    dt: f64,
}

/// Largest step allowed by both the diffusive and the advective bound.
pub fn stability_limit(u: &ScalarField2D, v: &ScalarField2D) -> f64 {
    let d = u.domain();
    let (hx, hy) = (d.hx(), d.hy());
    let diffusive = STABILITY_FACTOR * hx.min(hy).powi(2) / 4.0;
    let speed = u.max_abs().max(v.max_abs()).max(f64::EPSILON);
    let advective = ADVECTIVE_FACTOR * hx.min(hy) / speed;
    diffusive.min(advective)
}

impl FDState {
    /// State stepping at the largest stable `dt`.
    pub fn new(u: ScalarField2D, v: ScalarField2D) -> Result<Self, FdError> {
        check_pair(&u, &v)?;
        let dt = stability_limit(&u, &v);
        Ok(Self { u, v, dt })
    }

    pub fn with_dt(u: ScalarField2D, v: ScalarField2D, dt: f64) -> Result<Self, FdError> {
        check_pair(&u, &v)?;
        let limit = stability_limit(&u, &v);
        if !(dt > 0.0 && dt <= limit) {
            return Err(FdError::CflViolation { dt, limit });
        }
        Ok(Self { u, v, dt })
    }

    pub fn u(&self) -> &ScalarField2D {
        &self.u
    }

    pub fn v(&self) -> &ScalarField2D {
        &self.v
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn time(&self) -> f64 {
        self.u.time()
    }
}

fn check_pair(u: &ScalarField2D, v: &ScalarField2D) -> Result<(), FdError> {
    if u.domain() != v.domain() || u.time() != v.time() {
        return Err(FdError::Mismatch);
    }
    Ok(())
}

/// Advances both fields by `dt` from the same time level.
fn advance(u: &ScalarField2D, v: &ScalarField2D, dt: f64, time: f64) -> Result<(ScalarField2D, ScalarField2D), FdError> {
    let d = *u.domain();
    let (nx, ny) = (d.nx, d.ny);
    let (hx, hy) = (d.hx(), d.hy());
    let (ihx2, ihy2) = (1.0 / (hx * hx), 1.0 / (hy * hy));
    let (i2hx, i2hy) = (0.5 / hx, 0.5 / hy);
    let (uv, vv) = (u.values(), v.values());
    let mut nu = vec![0.0; nx * ny];
    let mut nv = vec![0.0; nx * ny];
    for iy in 0..ny {
        let up = ((iy + 1) % ny) * nx;
        let dn = ((iy + ny - 1) % ny) * nx;
        let row = iy * nx;
        for ix in 0..nx {
            let r = (ix + 1) % nx;
            let l = (ix + nx - 1) % nx;
            let c = row + ix;
            let (uc, vc) = (uv[c], vv[c]);
            let rate = |w: &[f64]| {
                let lap = (w[row + r] - 2.0 * w[c] + w[row + l]) * ihx2
                    + (w[up + ix] - 2.0 * w[c] + w[dn + ix]) * ihy2;
                let wx = (w[row + r] - w[row + l]) * i2hx;
                let wy = (w[up + ix] - w[dn + ix]) * i2hy;
                lap + 2.0 * uc * wx + 2.0 * vc * wy
            };
            nu[c] = uc + dt * rate(uv);
            nv[c] = vc + dt * rate(vv);
        }
    }
    let u = ScalarField2D::new(d, time, nu)?;
    let v = ScalarField2D::new(d, time, nv)?;
    if !(u.all_finite() && v.all_finite()) {
        return Err(FdError::NonFiniteState { time });
    }
    Ok((u, v))
}

/// One forward-Euler step of size `state.dt()`.
pub fn fd_step(state: &FDState) -> Result<FDState, FdError> {
    let limit = stability_limit(&state.u, &state.v);
    if state.dt > limit {
        return Err(FdError::CflViolation {
            dt: state.dt,
            limit,
        });
    }
    let (u, v) = advance(&state.u, &state.v, state.dt, state.time() + state.dt)?;
    Ok(FDState { u, v, dt: state.dt })
}

/// Full steps of `state.dt()` followed by one shorter step landing on `t_end`.
pub fn fd_integrate(state: &FDState, t_end: f64) -> Result<FDState, FdError> {
    let start = state.time();
    if !(t_end >= start) {
        return Err(FdError::BackwardTime { from: start, to: t_end });
    }
    let dt = state.dt;
    let full_steps = ((t_end - start) / dt).floor() as usize;
    let mut current = state.clone();
    for i in 1..=full_steps {
        let limit = stability_limit(&current.u, &current.v);
        if dt > limit {
            return Err(FdError::CflViolation { dt, limit });
        }
        let (u, v) = advance(&current.u, &current.v, dt, start + i as f64 * dt)?;
        current.u = u;
        current.v = v;
    }
    let remaining = t_end - (start + full_steps as f64 * dt);
    if remaining > 0.0 {
        let (u, v) = advance(&current.u, &current.v, remaining, t_end)?;
        current.u = u;
        current.v = v;
    } else {
        current.u = current.u.with_time(t_end);
        current.v = current.v.with_time(t_end);
    }
    Ok(current)
}

/// Centered-difference `∂u/∂y − ∂v/∂x`.
pub fn discrete_curl(u: &ScalarField2D, v: &ScalarField2D) -> ScalarField2D {
    let d = *u.domain();
    let (nx, ny) = (d.nx, d.ny);
    ScalarField2D::new(
        d,
        u.time(),
        (0..nx * ny)
            .map(|p| {
                let (ix, iy) = (p % nx, p / nx);
                let uy = (u.at(ix, (iy + 1) % ny) - u.at(ix, (iy + ny - 1) % ny)) / (2.0 * d.hy());
                let vx = (v.at((ix + 1) % nx, iy) - v.at((ix + nx - 1) % nx, iy)) / (2.0 * d.hx());
                uy - vx
            })
            .collect(),
    )
    .expect("same grid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heat::DomainBox;

    fn domain() -> DomainBox {
        DomainBox::new(4.0, 4.0, 16, 16, 0.0).unwrap()
    }

    #[test]
    fn constants_are_unchanged() {
        for (a, b) in [(0.0, 0.0), (0.7, -1.2)] {
            let u = ScalarField2D::constant(domain(), 0.0, a);
            let v = ScalarField2D::constant(domain(), 0.0, b);
            let s = FDState::new(u.clone(), v.clone()).unwrap();
            let next = fd_step(&s).unwrap();
            assert_eq!(next.u().values(), u.values());
            assert_eq!(next.v().values(), v.values());
            assert_eq!(next.time(), s.dt());
        }
    }

    #[test]
    fn zero_duration_is_identity() {
        let u = ScalarField2D::from_fn(domain(), 0.5, |x, y| (x + y).sin());
        let v = u.clone();
        let s = FDState::new(u, v).unwrap();
        let out = fd_integrate(&s, 0.5).unwrap();
        assert_eq!(out, s);
    }

    #[test]
    fn halves_compose_exactly() {
        let u = ScalarField2D::from_fn(domain(), 0.0, |x, y| 0.3 * (x * 1.5).sin() * y.cos());
        let v = ScalarField2D::from_fn(domain(), 0.0, |x, y| 0.1 * (y * 1.5).cos() + x.cos());
        let dt = 1.0 / 512.0;
        let s = FDState::with_dt(u, v, dt).unwrap();
        let full = fd_integrate(&s, 64.0 * dt).unwrap();
        let half = fd_integrate(&fd_integrate(&s, 32.0 * dt).unwrap(), 64.0 * dt).unwrap();
        assert_eq!(full, half);
    }

    #[test]
    fn partial_final_step_lands_on_target() {
        let u = ScalarField2D::from_fn(domain(), 0.0, |x, _| 0.2 * x.sin());
        let s = FDState::new(u.clone(), u).unwrap();
        let t_end = 2.5 * s.dt();
        let out = fd_integrate(&s, t_end).unwrap();
        assert_eq!(out.time(), t_end);
        assert_eq!(out.v().time(), t_end);
    }

    #[test]
    fn cfl_and_time_errors() {
        let u = ScalarField2D::constant(domain(), 0.0, 1.0);
        let limit = stability_limit(&u, &u);
        assert!(matches!(
            FDState::with_dt(u.clone(), u.clone(), 2.0 * limit),
            Err(FdError::CflViolation { .. })
        ));
        let s = FDState::new(u.clone(), u).unwrap();
        assert!(matches!(fd_integrate(&s, -1.0), Err(FdError::BackwardTime { .. })));
    }

    #[test]
    fn curl_of_gradient_vanishes() {
        // u = ψ_x, v = ψ_y with ψ = sin x cos y sampled on a periodic 2π box
        let d = DomainBox::new(2.0 * std::f64::consts::PI, 2.0 * std::f64::consts::PI, 32, 32, 0.0).unwrap();
        let u = ScalarField2D::from_fn(d, 0.0, |x, y| x.cos() * y.cos());
        let v = ScalarField2D::from_fn(d, 0.0, |x, y| -x.sin() * y.sin());
        assert!(discrete_curl(&u, &v).max_abs() < 1e-14);
    }
}
