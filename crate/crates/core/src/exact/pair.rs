use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{ConstantPair, ExactError, HeatField, HeatSolution, SpaceTimePoint};
use crate::jets::{Coord, Jet, JetOrder, DIVISOR_FLOOR};

/// A pair of fields `(u, v)` that can be expanded as jets.
pub trait PairField: Send + Sync {
    fn eval(&self, p: SpaceTimePoint, order: JetOrder) -> Result<(Jet, Jet), ExactError>;

    fn max_order(&self) -> Option<usize> {
        None
    }
}

/// How a pair was produced.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lineage {
    pub seed: String,
    pub depth: usize,
}

/// A candidate (or confirmed) solution `(u, v)` of the coupled Burgers system.
#[derive(Clone)]
pub struct SolutionPair {
    field: Arc<dyn PairField>,
    lineage: Lineage,
}

impl fmt::Debug for SolutionPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SolutionPair")
            .field("lineage", &self.lineage)
            .field("max_order", &self.max_order())
            .finish()
    }
}

impl From<ConstantPair> for SolutionPair {
    fn from(c: ConstantPair) -> Self {
        SolutionPair::constant(c)
    }
}

impl SolutionPair {
    pub fn constant(c: ConstantPair) -> Self {
        Self {
            field: Arc::new(ConstantField(c)),
            lineage: Lineage {
                seed: format!("const({}, {})", c.u0, c.v0),
                depth: 0,
            },
        }
    }

    pub fn from_field(field: Arc<dyn PairField>, lineage: Lineage) -> Self {
        Self { field, lineage }
    }

    pub fn from_fn<F>(label: impl Into<String>, f: F) -> Self
    where
        F: Fn(SpaceTimePoint, JetOrder) -> Result<(Jet, Jet), ExactError> + Send + Sync + 'static,
    {
        Self {
            field: Arc::new(FnPair(f)),
            lineage: Lineage {
                seed: label.into(),
                depth: 0,
            },
        }
    }

    pub fn eval(&self, p: SpaceTimePoint, order: JetOrder) -> Result<(Jet, Jet), ExactError> {
        if let Some(max) = self.max_order() {
            if order.get() > max {
                return Err(ExactError::OrderExhausted {
                    requested: order.get(),
                    available: max,
                });
            }
        }
        self.field.eval(p, order)
    }

    /// Point values `(u, v)`.
    pub fn value(&self, p: SpaceTimePoint) -> Result<(f64, f64), ExactError> {
        let (u, v) = self.eval(p, JetOrder::new(0)?)?;
        Ok((u.value(), v.value()))
    }

    pub fn lineage(&self) -> &Lineage {
        &self.lineage
    }

    pub fn depth(&self) -> usize {
        self.lineage.depth
    }

    pub fn max_order(&self) -> Option<usize> {
        self.field.max_order()
    }

    /// Caps the jet order this pair will hand out.
    pub fn with_order_budget(&self, max_order: usize) -> SolutionPair {
        SolutionPair {
            field: Arc::new(Budgeted {
                inner: self.clone(),
                max_order,
            }),
            lineage: self.lineage.clone(),
        }
    }

    /// Applies [`recurrence_step`] `depth` times.
    pub fn iterate(&self, depth: usize) -> Result<SolutionPair, ExactError> {
        let mut pair = self.clone();
        for _ in 0..depth {
            pair = recurrence_step(&pair)?;
        }
        Ok(pair)
    }
}

struct ConstantField(ConstantPair);

impl PairField for ConstantField {
    fn eval(&self, _p: SpaceTimePoint, order: JetOrder) -> Result<(Jet, Jet), ExactError> {
        Ok((Jet::constant(self.0.u0, order), Jet::constant(self.0.v0, order)))
    }
}

struct FnPair<F>(F);

impl<F> PairField for FnPair<F>
where
    F: Fn(SpaceTimePoint, JetOrder) -> Result<(Jet, Jet), ExactError> + Send + Sync,
{
    fn eval(&self, p: SpaceTimePoint, order: JetOrder) -> Result<(Jet, Jet), ExactError> {
        (self.0)(p, order)
    }
}

struct Budgeted {
    inner: SolutionPair,
    max_order: usize,
}

impl PairField for Budgeted {
    fn eval(&self, p: SpaceTimePoint, order: JetOrder) -> Result<(Jet, Jet), ExactError> {
        self.inner.eval(p, order)
    }

    fn max_order(&self) -> Option<usize> {
        Some(match self.inner.max_order() {
            Some(m) => m.min(self.max_order),
            None => self.max_order,
        })
    }
}

fn lower(max: Option<usize>) -> Option<usize> {
    max.map(|m| m.saturating_sub(1))
}

fn min_budget(a: Option<usize>, b: Option<usize>) -> Option<usize> {
    match (a, b) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (a, None) => a,
        (None, b) => b,
    }
}

/// `u = φ_x/φ + u₀`, `v = φ_y/φ + v₀` over a constant background.
///
/// With `(u₀, v₀) = (0, 0)` this is the plain Cole-Hopf transformation.
pub fn cole_hopf_lift(phi: &HeatSolution, background: ConstantPair) -> SolutionPair {
    SolutionPair {
        field: Arc::new(ColeHopfField {
            phi: phi.field(),
            background,
        }),
        lineage: Lineage {
            seed: phi.label(),
            depth: 0,
        },
    }
}

struct ColeHopfField {
    phi: Arc<dyn HeatField>,
    background: ConstantPair,
}

impl PairField for ColeHopfField {
    fn eval(&self, p: SpaceTimePoint, order: JetOrder) -> Result<(Jet, Jet), ExactError> {
        let phi = self.phi.eval(p, order.raised()?)?;
        if !(phi.value() > DIVISOR_FLOOR) {
            return Err(ExactError::PhiNonPositive {
                value: phi.value(),
                x: p.x,
                y: p.y,
                t: p.t,
            });
        }
        let base = phi.truncate(order);
        let u = phi.derivative(Coord::X)?.checked_div(&base)?;
        let v = phi.derivative(Coord::Y)?.checked_div(&base)?;
        Ok((u.add_scalar(self.background.u0), v.add_scalar(self.background.v0)))
    }

    fn max_order(&self) -> Option<usize> {
        lower(self.phi.max_order())
    }
}

/// General lift over a (possibly non-constant) background pair, computed as
/// `u = ∂ₓ ln|φ| + u₀`, `v = ∂ᵧ ln|φ| + v₀`.
///
/// The background must satisfy `u₀_y = v₀_x` and `φ` the linear equation with
/// coefficients `(u₀, v₀)`; neither is checked here.
pub fn backlund_lift(phi: Arc<dyn HeatField>, background: &SolutionPair) -> SolutionPair {
    let lineage = Lineage {
        seed: background.lineage.seed.clone(),
        depth: background.lineage.depth + 1,
    };
    SolutionPair {
        field: Arc::new(LogLiftField {
            phi,
            background: background.clone(),
        }),
        lineage,
    }
}

struct LogLiftField {
    phi: Arc<dyn HeatField>,
    background: SolutionPair,
}

impl PairField for LogLiftField {
    fn eval(&self, p: SpaceTimePoint, order: JetOrder) -> Result<(Jet, Jet), ExactError> {
        let phi = self.phi.eval(p, order.raised()?)?;
        let value = phi.value();
        if !(value.abs() > DIVISOR_FLOOR) {
            return Err(ExactError::DivisorTooSmall { value });
        }
        // φ and −φ give the same lift
        let magnitude = if value < 0.0 { -&phi } else { phi };
        let w = magnitude.ln()?;
        let (u0, v0) = self.background.eval(p, order)?;
        Ok((
            w.derivative(Coord::X)? + &u0,
            w.derivative(Coord::Y)? + &v0,
        ))
    }

    fn max_order(&self) -> Option<usize> {
        min_budget(lower(self.phi.max_order()), self.background.max_order())
    }
}

/// One step of the recurrence
/// `u' = (u_x + v_x)/(u + v) + u`, `v' = (u_y + v_y)/(u + v) + v`.
///
/// Fails with `OrderExhausted` when the input cannot supply another
/// derivative order. A vanishing `u + v` is reported when the result is
/// evaluated.
pub fn recurrence_step(pair: &SolutionPair) -> Result<SolutionPair, ExactError> {
    if pair.max_order() == Some(0) {
        return Err(ExactError::OrderExhausted {
            requested: 1,
            available: 0,
        });
    }
    Ok(SolutionPair {
        field: Arc::new(RecurrenceField {
            inner: pair.clone(),
        }),
        lineage: Lineage {
            seed: pair.lineage.seed.clone(),
            depth: pair.lineage.depth + 1,
        },
    })
}

struct RecurrenceField {
    inner: SolutionPair,
}

impl PairField for RecurrenceField {
    fn eval(&self, p: SpaceTimePoint, order: JetOrder) -> Result<(Jet, Jet), ExactError> {
        let (u, v) = self.inner.eval(p, order.raised()?)?;
        let sum = &u + &v;
        if !(sum.value().abs() > DIVISOR_FLOOR) {
            return Err(ExactError::DivisorTooSmall { value: sum.value() });
        }
        let base = sum.truncate(order);
        let next_u = sum.derivative(Coord::X)?.checked_div(&base)? + &u.truncate(order);
        let next_v = sum.derivative(Coord::Y)?.checked_div(&base)? + &v.truncate(order);
        Ok((next_u, next_v))
    }

    fn max_order(&self) -> Option<usize> {
        lower(self.inner.max_order())
    }
}

/// `φ' = u + v` of a pair, viewed as a heat-type field over that pair.
pub struct PairSum(pub SolutionPair);

impl HeatField for PairSum {
    fn eval(&self, p: SpaceTimePoint, order: JetOrder) -> Result<Jet, ExactError> {
        let (u, v) = self.0.eval(p, order)?;
        Ok(u + v)
    }

    fn max_order(&self) -> Option<usize> {
        self.0.max_order()
    }

    fn label(&self) -> String {
        format!("u+v of {}", self.0.lineage.seed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{make_plane_wave_seed, PlaneWaveTerm};

    fn ord(n: usize) -> JetOrder {
        JetOrder::new(n).unwrap()
    }

    #[test]
    fn lift_of_one_is_background() {
        let phi = make_plane_wave_seed(ConstantPair::new(0.5, -2.0), &[]).unwrap();
        let pair = cole_hopf_lift(&phi, ConstantPair::new(0.5, -2.0));
        let (u, v) = pair.value(SpaceTimePoint::new(1.0, 2.0, 0.3)).unwrap();
        assert_eq!((u, v), (0.5, -2.0));
    }

    #[test]
    fn lift_of_pure_exponential_is_constant() {
        let (k, l) = (0.7, -1.3);
        let phi = HeatSolution::from_fn("exp", ConstantPair::ZERO, move |p, o| {
            let arg = Jet::from_fn(o, |i, j, m| match (i, j, m) {
                (0, 0, 0) => k * p.x + l * p.y + (k * k + l * l) * p.t,
                (1, 0, 0) => k,
                (0, 1, 0) => l,
                (0, 0, 1) => k * k + l * l,
                _ => 0.0,
            });
            Ok(arg.exp())
        });
        let pair = cole_hopf_lift(&phi, ConstantPair::ZERO);
        let (u, v) = pair.eval(SpaceTimePoint::new(0.2, 0.1, 0.5), ord(2)).unwrap();
        assert!((u.value() - k).abs() < 1e-14);
        assert!((v.value() - l).abs() < 1e-14);
        assert!(u.coeffs()[1..].iter().all(|c| c.abs() < 1e-13));
    }

    #[test]
    fn sigmoid_lift_closed_form() {
        let phi = make_plane_wave_seed(ConstantPair::ZERO, &[PlaneWaveTerm::new(1.0, 1.0, 0.0)]).unwrap();
        let pair = cole_hopf_lift(&phi, ConstantPair::ZERO);
        let p = SpaceTimePoint::new(-0.4, 1.0, 0.7);
        let (u, v) = pair.value(p).unwrap();
        let e = (p.x + p.t).exp();
        assert!((u - e / (1.0 + e)).abs() < 1e-15);
        assert_eq!(v, 0.0);
    }

    #[test]
    fn nonpositive_phi_rejected() {
        let phi = HeatSolution::from_fn("neg", ConstantPair::ZERO, |_, o| Ok(Jet::constant(-1.0, o)));
        let pair = cole_hopf_lift(&phi, ConstantPair::ZERO);
        assert!(matches!(
            pair.value(SpaceTimePoint::default()),
            Err(ExactError::PhiNonPositive { .. })
        ));
    }

    #[test]
    fn constants_are_recurrence_fixed_points() {
        let c = SolutionPair::constant(ConstantPair::new(1.5, -0.25));
        let next = recurrence_step(&c).unwrap();
        assert_eq!(next.depth(), 1);
        let (u, v) = next.eval(SpaceTimePoint::new(3.0, 1.0, 2.0), ord(2)).unwrap();
        assert_eq!(u.value(), 1.5);
        assert_eq!(v.value(), -0.25);
        assert!(u.coeffs()[1..].iter().all(|c| *c == 0.0));
    }

    #[test]
    fn opposite_constants_hit_the_divisor_floor() {
        let c = SolutionPair::constant(ConstantPair::new(2.0, -2.0));
        let next = recurrence_step(&c).unwrap();
        assert!(matches!(
            next.value(SpaceTimePoint::default()),
            Err(ExactError::DivisorTooSmall { .. })
        ));
    }

    #[test]
    fn order_budget_is_consumed() {
        let c = SolutionPair::constant(ConstantPair::new(1.0, 1.0)).with_order_budget(2);
        let once = recurrence_step(&c).unwrap();
        assert_eq!(once.max_order(), Some(1));
        let twice = recurrence_step(&once).unwrap();
        assert_eq!(twice.max_order(), Some(0));
        assert!(matches!(
            recurrence_step(&twice),
            Err(ExactError::OrderExhausted { .. })
        ));
        assert!(matches!(
            once.eval(SpaceTimePoint::default(), ord(2)),
            Err(ExactError::OrderExhausted { requested: 2, available: 1 })
        ));
    }
}
