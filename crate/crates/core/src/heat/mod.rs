//! The linear initial-value problem behind the Burgers IVP.
//!
//! Initial Burgers data `(s, k)` are turned into a positive datum `f` by a
//! line integral, `f` is evolved under `φ_t = Δφ + 2u₀φ_x + 2v₀φ_y` on a
//! periodic box, and `(u, v)` is read back as `(φ_x/φ + u₀, φ_y/φ + v₀)`.
//! The whole-plane problem is truncated to a periodic box; data must be
//! placed so that wrap-around is negligible where results are compared.

mod grid;
mod initial;
mod kernel;
mod profiles;
mod periodic;
mod propagator;
pub mod quadrature;
mod recover;
mod spectral;

use thiserror::Error;

pub use grid::{DomainBox, Region, ScalarField2D, Spectrum2D};
pub use initial::{
    build_initial_data, path_independence_check, InitialData, InitialProfile, COMPAT_FD_STEP,
    COMPAT_TOL,
};
pub use kernel::{kernel_convolve_oracle, KERNEL_TAIL_TOL};
pub use profiles::{Constants, GaussianBump, ProfileBuilder, ProfileParams, ProfileRegistry, TanhPair};
pub use propagator::{HeatPropagator, KernelPropagator, PropagatorRegistry, SpectralPropagator};
pub use periodic::ExpCosSolution;
pub use recover::{recover_burgers, recovered_curl, spectral_curl};
pub use spectral::{
    evolve_spectrum, solve_heat_spectral, spectral_derivative, spectral_multiplier,
    IMAGINARY_RESIDUE_TOL,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HeatError {
    #[error("invalid domain box: {0}")]
    InvalidBox(String),
    #[error("field has {found} values, grid needs {expected}")]
    ShapeMismatch { expected: usize, found: usize },
    #[error("initial data violate s_y = k_x: |curl| = {curl:e} at ({x}, {y})")]
    CompatibilityViolated { curl: f64, x: f64, y: f64 },
    #[error("quadrature on [{a}, {b}] did not converge")]
    QuadratureNonConvergent { a: f64, b: f64 },
    #[error("initial datum is not positive (min {min:e})")]
    NonPositiveInput { min: f64 },
    #[error("evolved field is not positive (min {min:e}); the box is probably too small for the data")]
    NonPositiveResult { min: f64 },
    #[error("cannot evolve backwards in time (tau = {tau})")]
    BackwardTime { tau: f64 },
    #[error("inverse transform left an imaginary part of relative size {ratio:e}")]
    ImaginaryResidue { ratio: f64 },
    #[error("heat kernel is singular at tau = {tau}")]
    KernelSingular { tau: f64 },
    #[error("kernel image sum cannot reach the tail bound at tau = {tau} (bound {bound:e})")]
    KernelTruncation { tau: f64, bound: f64 },
    #[error("phi is not positive (min {min:e})")]
    PhiNonPositive { min: f64 },
    #[error("unknown {kind} `{name}` (known: {known})")]
    UnknownName {
        kind: &'static str,
        name: String,
        known: String,
    },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
