//! Exact Burgers solutions generated from heat-equation seeds.
//!
//! A positive solution `φ` of `φ_t = φ_xx + φ_yy + 2u₀φ_x + 2v₀φ_y` lifts a
//! known solution `(u₀, v₀)` with `u₀_y = v₀_x` to the new solution
//! `(φ_x/φ + u₀, φ_y/φ + v₀)`. Taking `φ = u + v` of the current pair turns
//! the lift into a recurrence. Everything here is evaluated through [`Jet`]s,
//! so residuals are computed from exact derivatives.

mod pair;
mod residual;
mod seed;
mod validate;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::jets::JetError;

pub use pair::{
    backlund_lift, cole_hopf_lift, recurrence_step, Lineage, PairField, PairSum, SolutionPair,
};
pub use residual::{burgers_residual, compatibility_defect, heat_residual};
pub use seed::{make_plane_wave_seed, HeatField, HeatSolution, PlaneWaveTerm};
pub use validate::{
    max_pair_defects, sample_points, validate_bt_premises, PairDefects, SampleBox,
    ValidationReport,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExactError {
    #[error("seed amplitude {0} is negative")]
    NonPositiveSeed(f64),
    #[error("phi = {value:e} at ({x}, {y}, {t}) is not positive")]
    PhiNonPositive { value: f64, x: f64, y: f64, t: f64 },
    #[error("u + v = {value:e} is too small to divide by")]
    DivisorTooSmall { value: f64 },
    #[error("requested jet order {requested} but only {available} is available")]
    OrderExhausted { requested: usize, available: usize },
    #[error("residual needs jet order >= 2, got {0}")]
    ResidualOrderTooLow(usize),
    #[error(transparent)]
    Jet(#[from] JetError),
}

/// Constant background solution `(u₀, v₀)`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct ConstantPair {
    pub u0: f64,
    pub v0: f64,
}

impl ConstantPair {
    pub const ZERO: ConstantPair = ConstantPair { u0: 0.0, v0: 0.0 };

    pub fn new(u0: f64, v0: f64) -> Self {
        Self { u0, v0 }
    }
}

/// A point in `(x, y, t)`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct SpaceTimePoint {
    pub x: f64,
    pub y: f64,
    pub t: f64,
}

impl SpaceTimePoint {
    pub fn new(x: f64, y: f64, t: f64) -> Self {
        Self { x, y, t }
    }
}
