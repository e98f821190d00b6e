use super::{ExactError, HeatSolution, SolutionPair, SpaceTimePoint};
use crate::jets::JetOrder;

/// Both components of the Burgers residual at `p`:
/// `r₁ = u_t − u_xx − u_yy − 2uu_x − 2vu_y` and the same for `v`.
pub fn burgers_residual(
    pair: &SolutionPair,
    p: SpaceTimePoint,
    order: JetOrder,
) -> Result<(f64, f64), ExactError> {
    if order.get() < 2 {
        return Err(ExactError::ResidualOrderTooLow(order.get()));
    }
    let (u, v) = pair.eval(p, order)?;
    let (uv, vv) = (u.value(), v.value());
    let component = |w: &crate::jets::Jet| -> Result<f64, ExactError> {
        Ok(w.partial(0, 0, 1)?
            - w.partial(2, 0, 0)?
            - w.partial(0, 2, 0)?
            - 2.0 * uv * w.partial(1, 0, 0)?
            - 2.0 * vv * w.partial(0, 1, 0)?)
    };
    Ok((component(&u)?, component(&v)?))
}

/// Signed curl `u_y − v_x` at `p`.
pub fn compatibility_defect(pair: &SolutionPair, p: SpaceTimePoint) -> Result<f64, ExactError> {
    let (u, v) = pair.eval(p, JetOrder::new(1)?)?;
    Ok(u.partial(0, 1, 0)? - v.partial(1, 0, 0)?)
}

/// `φ_t − φ_xx − φ_yy − 2u₀φ_x − 2v₀φ_y` with `(u₀, v₀)` read from `background` at `p`.
pub fn heat_residual(
    phi: &HeatSolution,
    background: &SolutionPair,
    p: SpaceTimePoint,
) -> Result<f64, ExactError> {
    let f = phi.eval(p, JetOrder::new(2)?)?;
    let (u0, v0) = background.value(p)?;
    Ok(f.partial(0, 0, 1)?
        - f.partial(2, 0, 0)?
        - f.partial(0, 2, 0)?
        - 2.0 * u0 * f.partial(1, 0, 0)?
        - 2.0 * v0 * f.partial(0, 1, 0)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ConstantPair;
    use crate::jets::{Coord, Jet};

    fn ord(n: usize) -> JetOrder {
        JetOrder::new(n).unwrap()
    }

    #[test]
    fn constant_pair_has_zero_residual() {
        let pair = SolutionPair::constant(ConstantPair::new(3.0, -1.0));
        let r = burgers_residual(&pair, SpaceTimePoint::new(0.1, 0.2, 0.3), ord(2)).unwrap();
        assert_eq!(r, (0.0, 0.0));
    }

    #[test]
    fn linear_non_solution() {
        // u = x, v = 0: r₁ = −2·u·u_x = −2x
        let pair = SolutionPair::from_fn("u=x", |p, o| {
            Ok((Jet::variable(Coord::X, p.x, o), Jet::constant(0.0, o)))
        });
        let r = burgers_residual(&pair, SpaceTimePoint::new(1.0, 0.0, 0.0), ord(2)).unwrap();
        assert_eq!(r, (-2.0, 0.0));
    }

    #[test]
    fn residual_needs_second_order() {
        let pair = SolutionPair::constant(ConstantPair::ZERO);
        assert!(matches!(
            burgers_residual(&pair, SpaceTimePoint::default(), ord(1)),
            Err(ExactError::ResidualOrderTooLow(1))
        ));
    }
}
