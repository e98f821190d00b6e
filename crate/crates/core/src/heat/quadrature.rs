//! Composite Gauss-Legendre quadrature with panel doubling.

use std::sync::OnceLock;

use super::HeatError;

const GL_POINTS: usize = 8;
const MAX_PANELS: usize = 1 << 14;

/// Relative agreement required between successive panel refinements.
pub const QUADRATURE_RTOL: f64 = 1e-10;

/// Nodes and weights on `[-1, 1]`, found by Newton iteration on `P_n`.
fn gauss_legendre() -> &'static [(f64, f64); GL_POINTS] {
    static RULE: OnceLock<[(f64, f64); GL_POINTS]> = OnceLock::new();
    RULE.get_or_init(|| {
        let n = GL_POINTS;
        let mut rule = [(0.0, 0.0); GL_POINTS];
        for (i, slot) in rule.iter_mut().enumerate() {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=n {
                    let k = k as f64;
                    let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                let step = p1 / dp;
                x -= step;
                if step.abs() < 1e-16 {
                    break;
                }
            }
            *slot = (x, 2.0 / ((1.0 - x * x) * dp * dp));
        }
        rule
    })
}

fn composite(f: &impl Fn(f64) -> f64, a: f64, b: f64, panels: usize) -> f64 {
    let rule = gauss_legendre();
    let h = (b - a) / panels as f64;
    let mut total = 0.0;
    for p in 0..panels {
        let mid = a + (p as f64 + 0.5) * h;
        let mut panel = 0.0;
        for &(x, w) in rule {
            panel += w * f(mid + 0.5 * h * x);
        }
        total += 0.5 * h * panel;
    }
    total
}

/// `∫ₐᵇ f`, doubling the panel count until two successive estimates agree
/// to [`QUADRATURE_RTOL`].
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64) -> Result<f64, HeatError> {
    if a == b {
        return Ok(0.0);
    }
    let mut panels = 1;
    let mut prev = composite(&f, a, b, panels);
    while panels < MAX_PANELS {
        panels *= 2;
        let next = composite(&f, a, b, panels);
        if !next.is_finite() {
            break;
        }
        // the absolute floor handles integrals that are exactly zero
        if (next - prev).abs() <= QUADRATURE_RTOL * next.abs() + 1e-15 * (b - a).abs() {
            return Ok(next);
        }
        prev = next;
    }
    Err(HeatError::QuadratureNonConvergent { a, b })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rule_integrates_polynomials_exactly() {
        let rule = gauss_legendre();
        let wsum: f64 = rule.iter().map(|r| r.1).sum();
        assert!((wsum - 2.0).abs() < 1e-14);
        // degree 15 is the highest exact degree for 8 points
        let m: f64 = rule.iter().map(|(x, w)| w * x.powi(14)).sum();
        assert!((m - 2.0 / 15.0).abs() < 1e-14);
    }

    #[test]
    fn smooth_integrals() {
        let v = integrate(|x| x.exp(), 0.0, 2.0).unwrap();
        assert!((v - (2.0f64.exp() - 1.0)).abs() < 1e-12);
        let v = integrate(|x| 1.0 / (1.0 + (-x).exp()), -5.0, 5.0).unwrap();
        assert!((v - 5.0).abs() < 1e-10);
        assert_eq!(integrate(|_| 0.0, -1.0, 3.0).unwrap(), 0.0);
        let rev = integrate(|x| x * x, 1.0, 0.0).unwrap();
        assert!((rev + 1.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn nonconvergent() {
        assert!(integrate(|x: f64| x.abs().powf(-0.5), -1.0, 1.0).is_err());
    }
}
