use std::fmt;
use std::sync::Arc;

use super::quadrature::integrate;
use super::{DomainBox, HeatError, ScalarField2D};
use crate::exact::{ConstantPair, HeatSolution, SolutionPair};

/// Step of the centered differences used for the `s_y = k_x` check.
pub const COMPAT_FD_STEP: f64 = 1e-4;

/// Largest `|s_y − k_x|` accepted on the grid.
pub const COMPAT_TOL: f64 = 1e-6;

/// Initial Burgers fields `u(x, y, t₀) = s(x, y)`, `v(x, y, t₀) = k(x, y)`.
pub trait InitialProfile: Send + Sync {
    fn name(&self) -> &str;

    fn s(&self, x: f64, y: f64) -> f64;

    fn k(&self, x: f64, y: f64) -> f64;

    /// The exact Burgers pair these fields are a snapshot of, if known.
    fn exact_pair(&self) -> Option<SolutionPair> {
        None
    }

    /// The heat-type field whose Cole-Hopf lift is [`Self::exact_pair`].
    fn exact_phi(&self) -> Option<HeatSolution> {
        None
    }
}

/// Everything needed to build the transformed initial datum.
#[derive(Clone)]
pub struct InitialData {
    pub profile: Arc<dyn InitialProfile>,
    pub base_point: (f64, f64),
    pub background: ConstantPair,
}

impl fmt::Debug for InitialData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("InitialData")
            .field("profile", &self.profile.name())
            .field("base_point", &self.base_point)
            .field("background", &self.background)
            .finish()
    }
}

impl InitialData {
    pub fn new(profile: Arc<dyn InitialProfile>, base_point: (f64, f64), background: ConstantPair) -> Self {
        Self {
            profile,
            base_point,
            background,
        }
    }

    fn s1(&self, x: f64, y: f64) -> f64 {
        self.profile.s(x, y) - self.background.u0
    }

    fn k1(&self, x: f64, y: f64) -> f64 {
        self.profile.k(x, y) - self.background.v0
    }

    /// `|∂s/∂y − ∂k/∂x|` by centered differences at `(x, y)`.
    pub fn curl_at(&self, x: f64, y: f64) -> f64 {
        let h = COMPAT_FD_STEP;
        let p = &self.profile;
        let sy = (p.s(x, y + h) - p.s(x, y - h)) / (2.0 * h);
        let kx = (p.k(x + h, y) - p.k(x - h, y)) / (2.0 * h);
        (sy - kx).abs()
    }

    /// Largest curl over the grid points of `domain`, with its location.
    pub fn max_curl(&self, domain: &DomainBox) -> (f64, f64, f64) {
        let mut worst = (0.0, domain.x(0), domain.y(0));
        for iy in 0..domain.ny {
            for ix in 0..domain.nx {
                let (x, y) = (domain.x(ix), domain.y(iy));
                let c = self.curl_at(x, y);
                if !(c <= worst.0) {
                    worst = (c, x, y);
                }
            }
        }
        worst
    }

    /// Integral along `(x₀, y₀) → (x, y₀) → (x, y)`.
    pub fn exponent_x_first(&self, x: f64, y: f64) -> Result<f64, HeatError> {
        let (x0, y0) = self.base_point;
        Ok(integrate(|xi| self.s1(xi, y0), x0, x)? + integrate(|eta| self.k1(x, eta), y0, y)?)
    }

    /// Integral along `(x₀, y₀) → (x₀, y) → (x, y)`.
    pub fn exponent_y_first(&self, x: f64, y: f64) -> Result<f64, HeatError> {
        let (x0, y0) = self.base_point;
        Ok(integrate(|eta| self.k1(x0, eta), y0, y)? + integrate(|xi| self.s1(xi, y), x0, x)?)
    }
}

/// Cumulative integrals of `g` from `start` to each of `targets`, sharing
/// the segments between consecutive sorted targets.
fn cumulative_integrals(
    g: impl Fn(f64) -> f64,
    start: f64,
    targets: &[f64],
) -> Result<Vec<f64>, HeatError> {
    let mut out = vec![0.0; targets.len()];
    let mut order: Vec<usize> = (0..targets.len()).collect();
    order.sort_by(|&a, &b| targets[a].total_cmp(&targets[b]));
    let split = order.partition_point(|&i| targets[i] < start);
    // walk upward from start, then downward
    let (mut pos, mut acc) = (start, 0.0);
    for &i in &order[split..] {
        acc += integrate(&g, pos, targets[i])?;
        pos = targets[i];
        out[i] = acc;
    }
    let (mut pos, mut acc) = (start, 0.0);
    for &i in order[..split].iter().rev() {
        acc += integrate(&g, pos, targets[i])?;
        pos = targets[i];
        out[i] = acc;
    }
    Ok(out)
}

/// The transformed initial datum
/// `f(x, y) = exp(∫_{x₀}^{x} s₁(ξ, y₀) dξ + ∫_{y₀}^{y} k₁(x, η) dη)` on the grid.
pub fn build_initial_data(data: &InitialData, domain: &DomainBox) -> Result<ScalarField2D, HeatError> {
    domain.validate()?;
    let (curl, x, y) = data.max_curl(domain);
    if !(curl <= COMPAT_TOL) {
        return Err(HeatError::CompatibilityViolated { curl, x, y });
    }
    let (x0, y0) = data.base_point;
    let xs: Vec<f64> = (0..domain.nx).map(|i| domain.x(i)).collect();
    let ys: Vec<f64> = (0..domain.ny).map(|j| domain.y(j)).collect();
    let along_x = cumulative_integrals(|xi| data.s1(xi, y0), x0, &xs)?;
    let mut exponent = vec![0.0; domain.len()];
    for (ix, &x) in xs.iter().enumerate() {
        let along_y = cumulative_integrals(|eta| data.k1(x, eta), y0, &ys)?;
        for (iy, ay) in along_y.into_iter().enumerate() {
            exponent[iy * domain.nx + ix] = along_x[ix] + ay;
        }
    }
    ScalarField2D::new(*domain, domain.t0, exponent.into_iter().map(f64::exp).collect())
}

/// `|I₁ − I₂|` for the two axis-aligned paths from the base point to `probe`.
pub fn path_independence_check(data: &InitialData, probe: (f64, f64)) -> Result<f64, HeatError> {
    let (x, y) = probe;
    Ok((data.exponent_x_first(x, y)? - data.exponent_y_first(x, y)?).abs())
}
