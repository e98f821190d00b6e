use rustfft::num_complex::Complex64;

use super::{HeatError, ScalarField2D, Spectrum2D};
use crate::exact::ConstantPair;

/// Imaginary residue tolerated after the inverse transform, relative to the
/// largest real value.
pub const IMAGINARY_RESIDUE_TOL: f64 = 1e-10;

/// Per-mode factor `exp((−c₁² − c₂² + 2i(u₀c₁ + v₀c₂)) τ)`.
///
/// The drift part is dropped along any axis where the slot is the Nyquist
/// mode, which is its own conjugate partner; that keeps real fields real.
pub fn spectral_multiplier(
    spectrum: &Spectrum2D,
    ix: usize,
    iy: usize,
    background: ConstantPair,
    tau: f64,
) -> Complex64 {
    let (c1, c2) = spectrum.wavenumbers(ix, iy);
    let drift_x = if spectrum.is_nyquist_x(ix) { 0.0 } else { background.u0 * c1 };
    let drift_y = if spectrum.is_nyquist_y(iy) { 0.0 } else { background.v0 * c2 };
    Complex64::new(-(c1 * c1 + c2 * c2) * tau, 2.0 * (drift_x + drift_y) * tau).exp()
}

/// Advances every mode of `spectrum` by `tau`.
pub fn evolve_spectrum(spectrum: &Spectrum2D, background: ConstantPair, tau: f64) -> Spectrum2D {
    spectrum.apply(|ix, iy| spectral_multiplier(spectrum, ix, iy, background, tau))
}

/// Solves `φ_t = Δφ + 2u₀φ_x + 2v₀φ_y` with `φ(·, ·, f.time) = f` up to time
/// `t` using the exact Fourier multiplier on the periodic grid.
pub fn solve_heat_spectral(
    f: &ScalarField2D,
    background: ConstantPair,
    t: f64,
) -> Result<ScalarField2D, HeatError> {
    let tau = t - f.time();
    if !(tau >= 0.0) {
        return Err(HeatError::BackwardTime { tau });
    }
    let min_in = f.min();
    if !(min_in > 0.0) {
        return Err(HeatError::NonPositiveInput { min: min_in });
    }
    let evolved = evolve_spectrum(&Spectrum2D::forward(f), background, tau);
    let (values, max_imag) = evolved.inverse();
    let out = ScalarField2D::new(*f.domain(), t, values)?;
    let scale = out.max_abs();
    if max_imag > IMAGINARY_RESIDUE_TOL * scale {
        return Err(HeatError::ImaginaryResidue {
            ratio: max_imag / scale,
        });
    }
    let min_out = out.min();
    if !(min_out > 0.0) {
        return Err(HeatError::NonPositiveResult { min: min_out });
    }
    Ok(out)
}

/// Spectral partial derivative along x (`axis = 0`) or y (`axis = 1`), with
/// the Nyquist coefficient of that axis set to zero.
pub fn spectral_derivative(field: &ScalarField2D, axis: usize) -> ScalarField2D {
    let spectrum = Spectrum2D::forward(field);
    let diff = spectrum.apply(|ix, iy| {
        let (c1, c2) = spectrum.wavenumbers(ix, iy);
        match axis {
            0 if !spectrum.is_nyquist_x(ix) => Complex64::new(0.0, c1),
            1 if !spectrum.is_nyquist_y(iy) => Complex64::new(0.0, c2),
            _ => Complex64::new(0.0, 0.0),
        }
    });
    let (values, _) = diff.inverse();
    ScalarField2D::new(*field.domain(), field.time(), values).expect("same grid")
}
