//! Closed-form periodic heat solution used as an off-grid oracle.

use std::f64::consts::PI;

use crate::exact::ConstantPair;

/// Modified Bessel function `I_m(x)` by its power series.
pub fn bessel_i(m: u32, x: f64) -> f64 {
    let half = 0.5 * x;
    let mut term = half.powi(m as i32) / (1..=m).map(f64::from).product::<f64>();
    let mut sum = term;
    for k in 1..200 {
        let k = f64::from(k);
        term *= half * half / (k * (k + f64::from(m)));
        sum += term;
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    sum
}

/// Solution of `φ_t = Δφ + 2u₀φ_x + 2v₀φ_y` with datum
/// `exp(cos(2πx/Lx) + cos(2πy/Ly))`, from the expansion
/// `e^{cos θ} = I₀(1) + 2 Σ I_m(1) cos(mθ)`.
#[derive(Debug, Clone)]
pub struct ExpCosSolution {
    lx: f64,
    ly: f64,
    coeffs: Vec<f64>,
}

impl ExpCosSolution {
    pub fn new(lx: f64, ly: f64) -> Self {
        let coeffs = (0..24).map(|m| bessel_i(m, 1.0)).collect();
        Self { lx, ly, coeffs }
    }

    pub fn datum(&self, x: f64, y: f64) -> f64 {
        ((2.0 * PI * x / self.lx).cos() + (2.0 * PI * y / self.ly).cos()).exp()
    }

    fn factor(&self, z: f64, period: f64, tau: f64) -> f64 {
        let c = 2.0 * PI / period;
        let mut sum = self.coeffs[0];
        for (m, im) in self.coeffs.iter().enumerate().skip(1) {
            let mf = m as f64;
            sum += 2.0 * im * (-mf * mf * c * c * tau).exp() * (mf * c * z).cos();
        }
        sum
    }

    /// `φ(x, y, t₀ + τ)`; the drift enters as a shift of the argument.
    pub fn value(&self, x: f64, y: f64, tau: f64, background: ConstantPair) -> f64 {
        self.factor(x + 2.0 * background.u0 * tau, self.lx, tau)
            * self.factor(y + 2.0 * background.v0 * tau, self.ly, tau)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bessel_values() {
        // reference values of I₀(1), I₁(1), I₂(1)
        assert!((bessel_i(0, 1.0) - 1.266_065_877_752_008_4).abs() < 1e-15);
        assert!((bessel_i(1, 1.0) - 0.565_159_103_992_485).abs() < 1e-15);
        assert!((bessel_i(2, 1.0) - 0.135_747_669_767_038_3).abs() < 1e-15);
    }

    #[test]
    fn expansion_reproduces_datum() {
        let sol = ExpCosSolution::new(3.0, 5.0);
        for (x, y) in [(0.0, 0.0), (0.4, -1.7), (1.2, 2.2)] {
            let v = sol.value(x, y, 0.0, ConstantPair::ZERO);
            assert!((v - sol.datum(x, y)).abs() < 1e-14);
        }
    }
}
