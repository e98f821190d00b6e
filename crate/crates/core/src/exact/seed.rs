use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{ConstantPair, ExactError, SpaceTimePoint};
use crate::jets::{Jet, JetOrder};

/// A scalar field `φ(x, y, t)` that can be expanded as a jet anywhere.
pub trait HeatField: Send + Sync {
    fn eval(&self, p: SpaceTimePoint, order: JetOrder) -> Result<Jet, ExactError>;

    /// Highest jet order this field can supply, `None` when unbounded.
    fn max_order(&self) -> Option<usize> {
        None
    }

    fn label(&self) -> String;
}

/// One exponential term `a · exp(k x + l y + ω t)` of a plane-wave seed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlaneWaveTerm {
    pub a: f64,
    pub k: f64,
    pub l: f64,
}

impl PlaneWaveTerm {
    pub fn new(a: f64, k: f64, l: f64) -> Self {
        Self { a, k, l }
    }

    /// Growth rate making the term solve the linear equation for `background`.
    pub fn rate(&self, background: ConstantPair) -> f64 {
        self.k * self.k + self.l * self.l + 2.0 * background.u0 * self.k + 2.0 * background.v0 * self.l
    }
}

/// A solution of the linear heat-type equation attached to a background pair.
#[derive(Clone)]
pub struct HeatSolution {
    field: Arc<dyn HeatField>,
    background: ConstantPair,
    terms: Vec<PlaneWaveTerm>,
}

impl fmt::Debug for HeatSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("HeatSolution")
            .field("label", &self.field.label())
            .field("background", &self.background)
            .field("terms", &self.terms)
            .finish()
    }
}

impl HeatSolution {
    /// Wraps an arbitrary field. Nothing is checked here; run
    /// [`super::validate_bt_premises`] before trusting it.
    pub fn from_field(field: Arc<dyn HeatField>, background: ConstantPair) -> Self {
        Self {
            field,
            background,
            terms: Vec::new(),
        }
    }

    /// Wraps a closure as a field.
    pub fn from_fn<F>(label: impl Into<String>, background: ConstantPair, f: F) -> Self
    where
        F: Fn(SpaceTimePoint, JetOrder) -> Result<Jet, ExactError> + Send + Sync + 'static,
    {
        Self::from_field(
            Arc::new(FnField {
                label: label.into(),
                f,
            }),
            background,
        )
    }

    pub fn eval(&self, p: SpaceTimePoint, order: JetOrder) -> Result<Jet, ExactError> {
        if let Some(max) = self.field.max_order() {
            if order.get() > max {
                return Err(ExactError::OrderExhausted {
                    requested: order.get(),
                    available: max,
                });
            }
        }
        self.field.eval(p, order)
    }

    pub fn value(&self, p: SpaceTimePoint) -> Result<f64, ExactError> {
        Ok(self.eval(p, JetOrder::new(0)?)?.value())
    }

    pub fn background(&self) -> ConstantPair {
        self.background
    }

    /// Plane-wave terms, empty for fields not built by [`make_plane_wave_seed`].
    pub fn terms(&self) -> &[PlaneWaveTerm] {
        &self.terms
    }

    pub fn max_order(&self) -> Option<usize> {
        self.field.max_order()
    }

    pub fn label(&self) -> String {
        self.field.label()
    }

    pub fn field(&self) -> Arc<dyn HeatField> {
        Arc::clone(&self.field)
    }
}

/// `φ = 1 + Σ aᵢ exp(kᵢx + lᵢy + ωᵢt)` with `ωᵢ = kᵢ² + lᵢ² + 2u₀kᵢ + 2v₀lᵢ`.
pub fn make_plane_wave_seed(
    background: ConstantPair,
    terms: &[PlaneWaveTerm],
) -> Result<HeatSolution, ExactError> {
    if let Some(bad) = terms.iter().find(|t| !(t.a >= 0.0)) {
        return Err(ExactError::NonPositiveSeed(bad.a));
    }
    let waves = terms
        .iter()
        .map(|t| (*t, t.rate(background)))
        .collect::<Vec<_>>();
    Ok(HeatSolution {
        field: Arc::new(PlaneWaveField { waves }),
        background,
        terms: terms.to_vec(),
    })
}

struct PlaneWaveField {
    waves: Vec<(PlaneWaveTerm, f64)>,
}

impl HeatField for PlaneWaveField {
    fn eval(&self, p: SpaceTimePoint, order: JetOrder) -> Result<Jet, ExactError> {
        let mut phi = Jet::constant(1.0, order);
        for (term, omega) in &self.waves {
            if term.a == 0.0 {
                continue;
            }
            // exponent is linear, so only the first-order coefficients are set
            let arg = Jet::from_fn(order, |i, j, k| match (i, j, k) {
                (0, 0, 0) => term.k * p.x + term.l * p.y + omega * p.t,
                (1, 0, 0) => term.k,
                (0, 1, 0) => term.l,
                (0, 0, 1) => *omega,
                _ => 0.0,
            });
            phi = phi + arg.exp().scale(term.a);
        }
        Ok(phi)
    }

    fn label(&self) -> String {
        let parts: Vec<String> = self
            .waves
            .iter()
            .map(|(t, w)| format!("{}*exp({}x+{}y+{}t)", t.a, t.k, t.l, w))
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            format!("1+{}", parts.join("+"))
        }
    }
}

struct FnField<F> {
    label: String,
    f: F,
}

impl<F> HeatField for FnField<F>
where
    F: Fn(SpaceTimePoint, JetOrder) -> Result<Jet, ExactError> + Send + Sync,
{
    fn eval(&self, p: SpaceTimePoint, order: JetOrder) -> Result<Jet, ExactError> {
        (self.f)(p, order)
    }

    fn label(&self) -> String {
        self.label.clone()
    }
}
