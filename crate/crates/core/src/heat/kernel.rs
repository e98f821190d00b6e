//! Direct quadrature of the heat-kernel convolution.
//!
//! For `φ_t = Δφ + 2u₀φ_x + 2v₀φ_y`, `τ = t − t₀`:
//!
//! ```text
//! φ(x, y, t) = 1/(4πτ) ∬ f(z₁, z₂) exp(−[(x + 2u₀τ − z₁)² + (y + 2v₀τ − z₂)²] / (4τ)) dz₁ dz₂
//! ```
//!
//! On the periodic box the Gaussian is summed over lattice images. The
//! kernel factorizes, so the 2D quadrature is done as two 1D passes of the
//! periodic trapezoid rule.

use std::f64::consts::PI;

use super::{HeatError, ScalarField2D};
use crate::exact::ConstantPair;

/// Bound on the free-space kernel mass left outside the summed images.
pub const KERNEL_TAIL_TOL: f64 = 1e-12;

const MAX_IMAGES: usize = 256;

/// `erfc(a) ≤ exp(−a²) / (a√π)` for `a > 0`.
fn gaussian_tail_bound(a: f64) -> f64 {
    if a <= 0.0 {
        return f64::INFINITY;
    }
    (-a * a).exp() / (a * PI.sqrt())
}

/// Number of images per side so that the neglected kernel mass is below
/// [`KERNEL_TAIL_TOL`].
fn image_count(period: f64, tau: f64) -> Result<usize, HeatError> {
    let width = (4.0 * tau).sqrt();
    for k in 0..=MAX_IMAGES {
        let bound = gaussian_tail_bound((k as f64 + 0.5) * period / width);
        if bound < KERNEL_TAIL_TOL {
            return Ok(k);
        }
    }
    Err(HeatError::KernelTruncation {
        tau,
        bound: gaussian_tail_bound((MAX_IMAGES as f64 + 0.5) * period / width),
    })
}

/// `h · g(x_i + shift − z_p)` for every target `i` and source `p`, where `g`
/// is the image-summed 1D Gaussian of variance `2τ`.
fn kernel_matrix(
    n: usize,
    origin: f64,
    period: f64,
    shift: f64,
    tau: f64,
) -> Result<Vec<f64>, HeatError> {
    let h = period / n as f64;
    let images = image_count(period, tau)? as i64;
    let norm = h / (4.0 * PI * tau).sqrt();
    let mut m = vec![0.0; n * n];
    for i in 0..n {
        let x = origin + i as f64 * h + shift;
        for p in 0..n {
            let z = origin + p as f64 * h;
            let d = (x - z) - period * ((x - z) / period).round();
            let sum: f64 = (-images..=images)
                .map(|img| {
                    let s = d + img as f64 * period;
                    (-s * s / (4.0 * tau)).exp()
                })
                .sum();
            m[i * n + p] = norm * sum;
        }
    }
    Ok(m)
}

/// Evaluates the kernel convolution of `f` at time `t` on the grid of `f`.
pub fn kernel_convolve_oracle(
    f: &ScalarField2D,
    background: ConstantPair,
    t: f64,
) -> Result<ScalarField2D, HeatError> {
    let tau = t - f.time();
    if !(tau > 0.0) {
        return Err(HeatError::KernelSingular { tau });
    }
    let d = *f.domain();
    let (nx, ny) = (d.nx, d.ny);
    let kx = kernel_matrix(nx, d.x(0), d.lx, 2.0 * background.u0 * tau, tau)?;
    let ky = kernel_matrix(ny, d.y(0), d.ly, 2.0 * background.v0 * tau, tau)?;

    let src = f.values();
    // first pass along x for every source row
    let mut rows = vec![0.0; nx * ny];
    for q in 0..ny {
        let row = &src[q * nx..(q + 1) * nx];
        for i in 0..nx {
            let weights = &kx[i * nx..(i + 1) * nx];
            rows[q * nx + i] = weights.iter().zip(row).map(|(w, v)| w * v).sum();
        }
    }
    // second pass along y
    let mut out = vec![0.0; nx * ny];
    for j in 0..ny {
        let weights = &ky[j * ny..(j + 1) * ny];
        for (q, w) in weights.iter().enumerate() {
            let row = &rows[q * nx..(q + 1) * nx];
            for (o, r) in out[j * nx..(j + 1) * nx].iter_mut().zip(row) {
                *o += w * r;
            }
        }
    }
    ScalarField2D::new(d, t, out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heat::DomainBox;

    #[test]
    fn kernel_preserves_constants() {
        let d = DomainBox::new(2.0 * PI, 2.0 * PI, 64, 64, 0.0).unwrap();
        let f = ScalarField2D::constant(d, 0.0, 1.0);
        for tau in [0.01, 0.1, 1.0, 10.0] {
            let phi = kernel_convolve_oracle(&f, ConstantPair::new(0.3, -1.0), tau).unwrap();
            for v in phi.values() {
                assert!((v - 1.0).abs() < 1e-12, "tau {tau}: {v}");
            }
        }
    }

    #[test]
    fn singular_at_initial_time() {
        let d = DomainBox::new(1.0, 1.0, 8, 8, 0.5).unwrap();
        let f = ScalarField2D::constant(d, 0.5, 1.0);
        assert!(matches!(
            kernel_convolve_oracle(&f, ConstantPair::ZERO, 0.5),
            Err(HeatError::KernelSingular { .. })
        ));
    }

    #[test]
    fn image_count_grows_with_time() {
        assert_eq!(image_count(2.0 * PI, 0.01).unwrap(), 0);
        assert!(image_count(2.0 * PI, 1.0).unwrap() >= 1);
        assert!(matches!(
            image_count(1.0, 1e9),
            Err(HeatError::KernelTruncation { .. })
        ));
    }
}
