use std::f64::consts::PI;

use rustfft::num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use super::HeatError;

/// Periodic rectangle `[-Lx/2, Lx/2) × [-Ly/2, Ly/2)` sampled on an
/// `nx × ny` grid, plus the initial time of the problem posed on it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DomainBox {
    pub lx: f64,
    pub ly: f64,
    pub nx: usize,
    pub ny: usize,
    pub t0: f64,
}

impl DomainBox {
    pub fn new(lx: f64, ly: f64, nx: usize, ny: usize, t0: f64) -> Result<Self, HeatError> {
        let b = Self { lx, ly, nx, ny, t0 };
        b.validate()?;
        Ok(b)
    }

    pub fn validate(&self) -> Result<(), HeatError> {
        for (name, n) in [("nx", self.nx), ("ny", self.ny)] {
            if n < 8 || !n.is_power_of_two() {
                return Err(HeatError::InvalidBox(format!(
                    "{name} = {n} must be a power of two and at least 8"
                )));
            }
        }
        for (name, l) in [("lx", self.lx), ("ly", self.ly)] {
            if !(l.is_finite() && l > 0.0) {
                return Err(HeatError::InvalidBox(format!("{name} = {l} must be positive")));
            }
        }
        if !self.t0.is_finite() {
            return Err(HeatError::InvalidBox(format!("t0 = {} is not finite", self.t0)));
        }
        Ok(())
    }

    pub fn hx(&self) -> f64 {
        self.lx / self.nx as f64
    }

    pub fn hy(&self) -> f64 {
        self.ly / self.ny as f64
    }

    pub fn x(&self, ix: usize) -> f64 {
        -0.5 * self.lx + ix as f64 * self.hx()
    }

    pub fn y(&self, iy: usize) -> f64 {
        -0.5 * self.ly + iy as f64 * self.hy()
    }

    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Whether `(ix, iy)` lies in the central half of the box in both directions.
    pub fn in_interior_half(&self, ix: usize, iy: usize) -> bool {
        (self.nx / 4..3 * self.nx / 4).contains(&ix) && (self.ny / 4..3 * self.ny / 4).contains(&iy)
    }

    /// Same box with a different resolution.
    pub fn with_resolution(&self, nx: usize, ny: usize) -> Result<Self, HeatError> {
        Self::new(self.lx, self.ly, nx, ny, self.t0)
    }
}

/// Which grid points a comparison looks at.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Region {
    Full,
    InteriorHalf,
}

/// Samples of a real field on a [`DomainBox`] at one time, stored
/// row-major: `values[iy * nx + ix]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarField2D {
    values: Vec<f64>,
    domain: DomainBox,
    time: f64,
}

impl ScalarField2D {
    pub fn new(domain: DomainBox, time: f64, values: Vec<f64>) -> Result<Self, HeatError> {
        if values.len() != domain.len() {
            return Err(HeatError::ShapeMismatch {
                expected: domain.len(),
                found: values.len(),
            });
        }
        Ok(Self {
            values,
            domain,
            time,
        })
    }

    pub fn from_fn(domain: DomainBox, time: f64, mut f: impl FnMut(f64, f64) -> f64) -> Self {
        let mut values = Vec::with_capacity(domain.len());
        for iy in 0..domain.ny {
            let y = domain.y(iy);
            for ix in 0..domain.nx {
                values.push(f(domain.x(ix), y));
            }
        }
        Self {
            values,
            domain,
            time,
        }
    }

    pub fn constant(domain: DomainBox, time: f64, value: f64) -> Self {
        Self {
            values: vec![value; domain.len()],
            domain,
            time,
        }
    }

    pub fn domain(&self) -> &DomainBox {
        &self.domain
    }

    pub fn time(&self) -> f64 {
        self.time
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn at(&self, ix: usize, iy: usize) -> f64 {
        self.values[iy * self.domain.nx + ix]
    }

    pub fn with_time(mut self, time: f64) -> Self {
        self.time = time;
        self
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        Self {
            values: self.values.iter().map(|&v| f(v)).collect(),
            domain: self.domain,
            time: self.time,
        }
    }

    pub fn zip_map(&self, other: &Self, f: impl Fn(f64, f64) -> f64) -> Result<Self, HeatError> {
        self.check_same_grid(other)?;
        Ok(Self {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(&a, &b)| f(a, b))
                .collect(),
            domain: self.domain,
            time: self.time,
        })
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn all_finite(&self) -> bool {
        self.values.iter().all(|v| v.is_finite())
    }

    /// Values in `region` paired with their grid indices.
    pub fn region_iter(&self, region: Region) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        let nx = self.domain.nx;
        self.values
            .iter()
            .enumerate()
            .map(move |(p, &v)| (p % nx, p / nx, v))
            .filter(move |&(ix, iy, _)| match region {
                Region::Full => true,
                Region::InteriorHalf => self.domain.in_interior_half(ix, iy),
            })
    }

    /// Max-norm of `self − other` restricted to `region`.
    pub fn max_abs_diff(&self, other: &Self, region: Region) -> Result<f64, HeatError> {
        self.check_same_grid(other)?;
        Ok(self
            .region_iter(region)
            .map(|(ix, iy, v)| (v - other.at(ix, iy)).abs())
            .fold(0.0, f64::max))
    }

    /// Trapezoid-rule integral over the periodic box.
    pub fn integral(&self) -> f64 {
        self.values.iter().sum::<f64>() * self.domain.hx() * self.domain.hy()
    }

    fn check_same_grid(&self, other: &Self) -> Result<(), HeatError> {
        if self.domain.nx != other.domain.nx || self.domain.ny != other.domain.ny {
            return Err(HeatError::ShapeMismatch {
                expected: self.domain.len(),
                found: other.domain.len(),
            });
        }
        Ok(())
    }
}

/// Discrete Fourier coefficients of a field, same layout as the field.
///
/// Index `ix` holds integer wavenumber `m = ix` for `ix < nx/2` and
/// `m = ix − nx` otherwise, i.e. physical wavenumber `2πm/Lx`. Index `nx/2`
/// is the Nyquist mode.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum2D {
    coeffs: Vec<Complex64>,
    domain: DomainBox,
}

fn signed_mode(i: usize, n: usize) -> i64 {
    if i < n / 2 {
        i as i64
    } else {
        i as i64 - n as i64
    }
}

fn fft_rows(data: &mut [Complex64], nx: usize, ny: usize, inverse: bool) {
    let mut planner = FftPlanner::<f64>::new();
    let row = if inverse {
        planner.plan_fft_inverse(nx)
    } else {
        planner.plan_fft_forward(nx)
    };
    row.process(data);

    let col = if inverse {
        planner.plan_fft_inverse(ny)
    } else {
        planner.plan_fft_forward(ny)
    };
    let mut column = vec![Complex64::new(0.0, 0.0); ny];
    for ix in 0..nx {
        for iy in 0..ny {
            column[iy] = data[iy * nx + ix];
        }
        col.process(&mut column);
        for iy in 0..ny {
            data[iy * nx + ix] = column[iy];
        }
    }
}

impl Spectrum2D {
    pub fn zeros(domain: DomainBox) -> Self {
        Self {
            coeffs: vec![Complex64::new(0.0, 0.0); domain.len()],
            domain,
        }
    }

    /// Unnormalized forward DFT.
    pub fn forward(field: &ScalarField2D) -> Self {
        let d = *field.domain();
        let mut data: Vec<Complex64> = field.values().iter().map(|&v| Complex64::new(v, 0.0)).collect();
        fft_rows(&mut data, d.nx, d.ny, false);
        Self {
            coeffs: data,
            domain: d,
        }
    }

    /// Inverse DFT (normalized). Returns the real part and the largest
    /// magnitude of the discarded imaginary part.
    pub fn inverse(&self) -> (Vec<f64>, f64) {
        let d = self.domain;
        let mut data = self.coeffs.clone();
        fft_rows(&mut data, d.nx, d.ny, true);
        let scale = 1.0 / d.len() as f64;
        let mut max_imag = 0.0f64;
        let real = data
            .iter()
            .map(|c| {
                max_imag = max_imag.max((c.im * scale).abs());
                c.re * scale
            })
            .collect();
        (real, max_imag)
    }

    pub fn domain(&self) -> &DomainBox {
        &self.domain
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [Complex64] {
        &mut self.coeffs
    }

    pub fn get(&self, ix: usize, iy: usize) -> Complex64 {
        self.coeffs[iy * self.domain.nx + ix]
    }

    /// Integer wavenumbers `(m, n)` of slot `(ix, iy)`.
    pub fn modes(&self, ix: usize, iy: usize) -> (i64, i64) {
        (signed_mode(ix, self.domain.nx), signed_mode(iy, self.domain.ny))
    }

    /// Physical wavenumbers `(c₁, c₂) = (2πm/Lx, 2πn/Ly)` of slot `(ix, iy)`.
    pub fn wavenumbers(&self, ix: usize, iy: usize) -> (f64, f64) {
        let (m, n) = self.modes(ix, iy);
        (
            2.0 * PI * m as f64 / self.domain.lx,
            2.0 * PI * n as f64 / self.domain.ly,
        )
    }

    pub fn is_nyquist_x(&self, ix: usize) -> bool {
        ix == self.domain.nx / 2
    }

    pub fn is_nyquist_y(&self, iy: usize) -> bool {
        iy == self.domain.ny / 2
    }

    /// Multiplies every coefficient by `f(ix, iy)`.
    pub fn apply(&self, f: impl Fn(usize, usize) -> Complex64) -> Self {
        let nx = self.domain.nx;
        Self {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(p, c)| c * f(p % nx, p / nx))
                .collect(),
            domain: self.domain,
        }
    }
}
