use std::collections::BTreeMap;

use super::{kernel_convolve_oracle, solve_heat_spectral, HeatError, ScalarField2D};
use crate::exact::ConstantPair;

/// A method that advances the linear problem
/// `φ_t = Δφ + 2u₀φ_x + 2v₀φ_y`, `φ(t₀) = f` to a later time.
pub trait HeatPropagator: Send + Sync {
    fn name(&self) -> &'static str;

    fn propagate(
        &self,
        f: &ScalarField2D,
        background: ConstantPair,
        t: f64,
    ) -> Result<ScalarField2D, HeatError>;
}

/// Exact Fourier multiplier on the periodic grid.
pub struct SpectralPropagator;

impl HeatPropagator for SpectralPropagator {
    fn name(&self) -> &'static str {
        "spectral"
    }

    fn propagate(&self, f: &ScalarField2D, background: ConstantPair, t: f64) -> Result<ScalarField2D, HeatError> {
        solve_heat_spectral(f, background, t)
    }
}

/// Direct quadrature of the heat-kernel convolution.
pub struct KernelPropagator;

impl HeatPropagator for KernelPropagator {
    fn name(&self) -> &'static str {
        "kernel"
    }

    fn propagate(&self, f: &ScalarField2D, background: ConstantPair, t: f64) -> Result<ScalarField2D, HeatError> {
        if t == f.time() {
            return Ok(f.clone());
        }
        kernel_convolve_oracle(f, background, t)
    }
}

/// Propagators selectable by name.
pub struct PropagatorRegistry {
    entries: BTreeMap<&'static str, Box<dyn HeatPropagator>>,
}

impl Default for PropagatorRegistry {
    fn default() -> Self {
        let mut reg = Self {
            entries: BTreeMap::new(),
        };
        reg.register(Box::new(SpectralPropagator));
        reg.register(Box::new(KernelPropagator));
        reg
    }
}

impl PropagatorRegistry {
    pub fn register(&mut self, propagator: Box<dyn HeatPropagator>) {
        self.entries.insert(propagator.name(), propagator);
    }

    pub fn get(&self, name: &str) -> Result<&dyn HeatPropagator, HeatError> {
        self.entries
            .get(name)
            .map(|b| b.as_ref())
            .ok_or_else(|| HeatError::UnknownName {
                kind: "propagator",
                name: name.to_string(),
                known: self.names().join(", "),
            })
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.keys().copied().collect()
    }
}
