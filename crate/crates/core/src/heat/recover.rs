use super::spectral::spectral_derivative;
use super::{HeatError, ScalarField2D};
use crate::exact::ConstantPair;

/// `u = φ_x/φ + u₀`, `v = φ_y/φ + v₀` with spectral derivatives.
pub fn recover_burgers(
    phi: &ScalarField2D,
    background: ConstantPair,
) -> Result<(ScalarField2D, ScalarField2D), HeatError> {
    let min = phi.min();
    if !(min > 0.0) {
        return Err(HeatError::PhiNonPositive { min });
    }
    let u = spectral_derivative(phi, 0).zip_map(phi, |d, p| d / p + background.u0)?;
    let v = spectral_derivative(phi, 1).zip_map(phi, |d, p| d / p + background.v0)?;
    Ok((u, v))
}

/// `∂u/∂y − ∂v/∂x` of the fields recovered from `phi`, with the derivatives
/// of `u = φ_x/φ` and `v = φ_y/φ` taken by the quotient rule from spectral
/// derivatives of `φ`.
///
/// `φ` stays smooth and periodic even when `u` and `v` do not (a front that
/// wraps around the box), so this avoids re-differentiating `u` and `v`.
pub fn recovered_curl(phi: &ScalarField2D) -> Result<ScalarField2D, HeatError> {
    let min = phi.min();
    if !(min > 0.0) {
        return Err(HeatError::PhiNonPositive { min });
    }
    let px = spectral_derivative(phi, 0);
    let py = spectral_derivative(phi, 1);
    let pxy = spectral_derivative(&px, 1);
    let pyx = spectral_derivative(&py, 0);
    let d = *phi.domain();
    let values = (0..d.len())
        .map(|i| {
            let (p, fx, fy) = (phi.values()[i], px.values()[i], py.values()[i]);
            let uy = pxy.values()[i] / p - fx * fy / (p * p);
            let vx = pyx.values()[i] / p - fy * fx / (p * p);
            uy - vx
        })
        .collect();
    ScalarField2D::new(d, phi.time(), values)
}

/// Spectral `∂u/∂y − ∂v/∂x` of two periodic fields.
pub fn spectral_curl(u: &ScalarField2D, v: &ScalarField2D) -> Result<ScalarField2D, HeatError> {
    spectral_derivative(u, 1).zip_map(&spectral_derivative(v, 0), |a, b| a - b)
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;
    use crate::heat::{DomainBox, Region};

    #[test]
    fn flat_phi_gives_background() {
        let d = DomainBox::new(1.0, 1.0, 16, 16, 0.0).unwrap();
        let phi = ScalarField2D::constant(d, 0.0, 3.0);
        let (u, v) = recover_burgers(&phi, ConstantPair::new(0.5, -0.5)).unwrap();
        assert!(u.values().iter().all(|x| (*x - 0.5).abs() < 1e-15));
        assert!(v.values().iter().all(|x| (*x + 0.5).abs() < 1e-15));
    }

    #[test]
    fn periodic_exact_pair() {
        // φ = 1 + ½ e^{−2t} cos x cos y solves φ_t = Δφ
        let d = DomainBox::new(2.0 * PI, 2.0 * PI, 32, 32, 0.0).unwrap();
        let t = 0.2;
        let a = 0.5 * (-2.0f64 * t).exp();
        let phi = ScalarField2D::from_fn(d, t, |x, y| 1.0 + a * x.cos() * y.cos());
        let (u, v) = recover_burgers(&phi, ConstantPair::ZERO).unwrap();
        let eu = ScalarField2D::from_fn(d, t, |x, y| -a * x.sin() * y.cos() / (1.0 + a * x.cos() * y.cos()));
        let ev = ScalarField2D::from_fn(d, t, |x, y| -a * x.cos() * y.sin() / (1.0 + a * x.cos() * y.cos()));
        assert!(u.max_abs_diff(&eu, Region::Full).unwrap() < 1e-10);
        assert!(v.max_abs_diff(&ev, Region::Full).unwrap() < 1e-10);
        assert!(spectral_curl(&u, &v).unwrap().max_abs() < 1e-10);
        assert!(recovered_curl(&phi).unwrap().max_abs() < 1e-12);
    }

    #[test]
    fn nonpositive_phi_rejected() {
        let d = DomainBox::new(1.0, 1.0, 8, 8, 0.0).unwrap();
        let phi = ScalarField2D::from_fn(d, 0.0, |x, _| x);
        assert!(matches!(
            recover_burgers(&phi, ConstantPair::ZERO),
            Err(HeatError::PhiNonPositive { .. })
        ));
    }
}
