//! Truncated Taylor jets in the three variables `(x, y, t)`.
//!
//! A [`Jet`] of order `n` stores the Taylor coefficients
//! `∂ⁱₓ∂ʲᵧ∂ᵏₜ f / (i! j! k!)` for every multi-index with `i + j + k ≤ n`,
//! densely, in graded-lexicographic order. Arithmetic on jets is exact on the
//! retained coefficients, so derivatives of composite expressions come out
//! without any finite-difference error.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use thiserror::Error;

/// Value coefficients at or below this magnitude are rejected as divisors.
pub const DIVISOR_FLOOR: f64 = 1e-12;

/// Largest total order a jet may carry.
pub const MAX_JET_ORDER: usize = 16;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum JetError {
    #[error("divisor value {value:e} is within the floor {floor:e}")]
    DivisorTooSmall { value: f64, floor: f64 },
    #[error("logarithm of non-positive value {0:e}")]
    NonPositiveLog(f64),
    #[error("multi-index ({i}, {j}, {k}) exceeds jet order {order}")]
    OrderExceeded {
        i: usize,
        j: usize,
        k: usize,
        order: usize,
    },
    #[error("jet of order 0 has no derivative information left")]
    OrderExhausted,
    #[error("jet order {0} is above the supported maximum {MAX_JET_ORDER}")]
    OrderTooLarge(usize),
}

/// Total degree of retained mixed partials.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct JetOrder(usize);

impl JetOrder {
    pub fn new(max_order: usize) -> Result<Self, JetError> {
        if max_order > MAX_JET_ORDER {
            return Err(JetError::OrderTooLarge(max_order));
        }
        Ok(Self(max_order))
    }

    pub fn get(self) -> usize {
        self.0
    }

    /// The order one higher, saturating at [`MAX_JET_ORDER`] with an error.
    pub fn raised(self) -> Result<Self, JetError> {
        Self::new(self.0 + 1)
    }

    /// Number of stored coefficients: C(n + 3, 3).
    pub fn len(self) -> usize {
        let n = self.0;
        (n + 1) * (n + 2) * (n + 3) / 6
    }

    pub fn is_empty(self) -> bool {
        false
    }
}

impl fmt::Display for JetOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// One of the three independent variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Coord {
    X,
    Y,
    T,
}

impl Coord {
    fn unit(self) -> [usize; 3] {
        match self {
            Coord::X => [1, 0, 0],
            Coord::Y => [0, 1, 0],
            Coord::T => [0, 0, 1],
        }
    }
}

/// Position of `(i, j, k)` in graded-lexicographic order.
#[inline]
fn flat_index(i: usize, j: usize, k: usize) -> usize {
    let d = i + j + k;
    let a = d - i;
    d * (d + 1) * (d + 2) / 6 + a * (a + 1) / 2 + (a - j)
}

struct Layout {
    indices: Vec<[usize; 3]>,
    /// `prefix[d]` = number of multi-indices of total degree `≤ d`.
    prefix: Vec<usize>,
}

fn layout(order: usize) -> &'static Layout {
    static LAYOUTS: [OnceLock<Layout>; MAX_JET_ORDER + 1] = [const { OnceLock::new() }; MAX_JET_ORDER + 1];
    LAYOUTS[order].get_or_init(|| {
        let mut indices = Vec::new();
        let mut prefix = Vec::new();
        for d in 0..=order {
            for i in (0..=d).rev() {
                for j in (0..=d - i).rev() {
                    indices.push([i, j, d - i - j]);
                }
            }
            prefix.push(indices.len());
        }
        debug_assert!(indices
            .iter()
            .enumerate()
            .all(|(p, m)| flat_index(m[0], m[1], m[2]) == p));
        Layout { indices, prefix }
    })
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|v| v as f64).product()
}

/// A truncated multivariate Taylor expansion around a fixed point.
#[derive(Clone, PartialEq)]
pub struct Jet {
    order: JetOrder,
    coeffs: Vec<f64>,
}

impl fmt::Debug for Jet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Jet")
            .field("order", &self.order.0)
            .field("value", &self.value())
            .field("coeffs", &self.coeffs)
            .finish()
    }
}

impl Jet {
    pub fn constant(value: f64, order: JetOrder) -> Self {
        let mut coeffs = vec![0.0; order.len()];
        coeffs[0] = value;
        Self { order, coeffs }
    }

    /// The jet of the coordinate function `which` expanded at `value`.
    pub fn variable(which: Coord, value: f64, order: JetOrder) -> Self {
        let mut jet = Self::constant(value, order);
        if order.0 >= 1 {
            let [i, j, k] = which.unit();
            jet.coeffs[flat_index(i, j, k)] = 1.0;
        }
        jet
    }

    /// Builds a jet from raw Taylor coefficients indexed by multi-index.
    pub fn from_fn(order: JetOrder, mut coeff: impl FnMut(usize, usize, usize) -> f64) -> Self {
        let coeffs = layout(order.0)
            .indices
            .iter()
            .map(|&[i, j, k]| coeff(i, j, k))
            .collect();
        Self { order, coeffs }
    }

    pub fn order(&self) -> JetOrder {
        self.order
    }

    pub fn value(&self) -> f64 {
        self.coeffs[0]
    }

    /// Raw Taylor coefficient of `xⁱ yʲ tᵏ`, zero beyond the order.
    pub fn coeff(&self, i: usize, j: usize, k: usize) -> f64 {
        if i + j + k > self.order.0 {
            0.0
        } else {
            self.coeffs[flat_index(i, j, k)]
        }
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Mixed partial derivative `∂ⁱₓ∂ʲᵧ∂ᵏₜ` at the expansion point.
    pub fn partial(&self, i: usize, j: usize, k: usize) -> Result<f64, JetError> {
        if i + j + k > self.order.0 {
            return Err(JetError::OrderExceeded {
                i,
                j,
                k,
                order: self.order.0,
            });
        }
        Ok(factorial(i) * factorial(j) * factorial(k) * self.coeffs[flat_index(i, j, k)])
    }

    /// The jet of `∂f/∂which`; one order is consumed.
    pub fn derivative(&self, which: Coord) -> Result<Jet, JetError> {
        if self.order.0 == 0 {
            return Err(JetError::OrderExhausted);
        }
        let [di, dj, dk] = which.unit();
        let order = JetOrder(self.order.0 - 1);
        Ok(Jet::from_fn(order, |i, j, k| {
            let (si, sj, sk) = (i + di, j + dj, k + dk);
            let mult = match which {
                Coord::X => si,
                Coord::Y => sj,
                Coord::T => sk,
            } as f64;
            mult * self.coeffs[flat_index(si, sj, sk)]
        }))
    }

    /// Drops every coefficient above `order`.
    pub fn truncate(&self, order: JetOrder) -> Jet {
        assert!(order <= self.order, "cannot raise jet order by truncation");
        Jet {
            order,
            coeffs: self.coeffs[..order.len()].to_vec(),
        }
    }

    pub fn scale(&self, factor: f64) -> Jet {
        Jet {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    pub fn add_scalar(&self, value: f64) -> Jet {
        let mut out = self.clone();
        out.coeffs[0] += value;
        out
    }

    fn check_order(&self, other: &Jet) {
        assert_eq!(
            self.order, other.order,
            "jet arithmetic requires matching orders"
        );
    }

    fn mul_jet(&self, other: &Jet) -> Jet {
        self.check_order(other);
        let n = self.order.0;
        let lay = layout(n);
        let mut out = vec![0.0; self.coeffs.len()];
        for (pa, &[ai, aj, ak]) in lay.indices.iter().enumerate() {
            let ca = self.coeffs[pa];
            if ca == 0.0 {
                continue;
            }
            let room = n - (ai + aj + ak);
            for (pb, &[bi, bj, bk]) in lay.indices[..lay.prefix[room]].iter().enumerate() {
                out[flat_index(ai + bi, aj + bj, ak + bk)] += ca * other.coeffs[pb];
            }
        }
        Jet {
            order: self.order,
            coeffs: out,
        }
    }

    /// `Σ_{m=0}^{n} weights[m] · hᵐ` where `h` is this jet minus its value.
    fn nilpotent_series(&self, weights: &[f64]) -> Jet {
        let mut h = self.clone();
        h.coeffs[0] = 0.0;
        let mut acc = Jet::constant(weights[0], self.order);
        let mut power = Jet::constant(1.0, self.order);
        for &w in &weights[1..] {
            power = power.mul_jet(&h);
            for (a, p) in acc.coeffs.iter_mut().zip(&power.coeffs) {
                *a += w * p;
            }
        }
        acc
    }

    pub fn exp(&self) -> Jet {
        let n = self.order.0;
        let base = self.value().exp();
        let weights: Vec<f64> = (0..=n).map(|m| base / factorial(m)).collect();
        self.nilpotent_series(&weights)
    }

    /// Natural logarithm; the value coefficient must be positive.
    pub fn ln(&self) -> Result<Jet, JetError> {
        let a0 = self.value();
        if !(a0 > 0.0) {
            return Err(JetError::NonPositiveLog(a0));
        }
        let n = self.order.0;
        let mut weights = vec![a0.ln()];
        for m in 1..=n {
            let sign = if m % 2 == 1 { 1.0 } else { -1.0 };
            weights.push(sign / (m as f64 * a0.powi(m as i32)));
        }
        Ok(self.nilpotent_series(&weights))
    }

    pub fn recip(&self) -> Result<Jet, JetError> {
        let b0 = self.value();
        if !(b0.abs() > DIVISOR_FLOOR) {
            return Err(JetError::DivisorTooSmall {
                value: b0,
                floor: DIVISOR_FLOOR,
            });
        }
        let n = self.order.0;
        let weights: Vec<f64> = (0..=n)
            .map(|m| {
                let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
                sign / b0.powi(m as i32 + 1)
            })
            .collect();
        Ok(self.nilpotent_series(&weights))
    }

    pub fn checked_div(&self, divisor: &Jet) -> Result<Jet, JetError> {
        self.check_order(divisor);
        Ok(self.mul_jet(&divisor.recip()?))
    }
}

impl Add for &Jet {
    type Output = Jet;
    fn add(self, rhs: &Jet) -> Jet {
        self.check_order(rhs);
        Jet {
            order: self.order,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &Jet {
    type Output = Jet;
    fn sub(self, rhs: &Jet) -> Jet {
        self.check_order(rhs);
        Jet {
            order: self.order,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &Jet {
    type Output = Jet;
    fn mul(self, rhs: &Jet) -> Jet {
        self.mul_jet(rhs)
    }
}

impl Neg for &Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.scale(-1.0)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Jet {
            type Output = Jet;
            fn $m(self, rhs: Jet) -> Jet {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Jet> for Jet {
            type Output = Jet;
            fn $m(self, rhs: &Jet) -> Jet {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;

    fn ord(n: usize) -> JetOrder {
        JetOrder::new(n).unwrap()
    }

    #[test]
    fn variable_jets() {
        let x = Jet::variable(Coord::X, 2.0, ord(2));
        assert_eq!(x.coeff(0, 0, 0), 2.0);
        assert_eq!(x.coeff(1, 0, 0), 1.0);
        assert_eq!(x.coeffs().iter().filter(|c| **c != 0.0).count(), 2);

        let t = Jet::variable(Coord::T, 0.0, ord(1));
        assert_eq!(t.coeffs(), &[0.0, 0.0, 0.0, 1.0]);

        let y = Jet::variable(Coord::Y, -1.5, ord(3));
        assert_eq!(y.value(), -1.5);
        assert_eq!(y.coeff(0, 1, 0), 1.0);
        assert_eq!(y.coeff(1, 0, 0), 0.0);
    }

    #[test]
    fn flat_index_is_dense() {
        for n in 0..=6 {
            let lay = layout(n);
            assert_eq!(lay.indices.len(), ord(n).len());
        }
    }

    #[test]
    fn exp_of_x_at_zero() {
        let e = Jet::variable(Coord::X, 0.0, ord(2)).exp();
        assert_eq!(e.coeff(0, 0, 0), 1.0);
        assert_eq!(e.coeff(1, 0, 0), 1.0);
        assert_eq!(e.coeff(2, 0, 0), 0.5);
        assert_eq!(e.partial(2, 0, 0).unwrap(), 1.0);
    }

    #[test]
    fn partial_of_value() {
        let x = Jet::variable(Coord::X, 5.0, ord(1));
        assert_eq!(x.partial(0, 0, 0).unwrap(), 5.0);
        assert!(matches!(
            x.partial(1, 1, 0),
            Err(JetError::OrderExceeded { order: 1, .. })
        ));
    }

    #[test]
    fn self_division_is_one() {
        let o = ord(4);
        let x = Jet::variable(Coord::X, 0.3, o);
        let y = Jet::variable(Coord::Y, -0.7, o);
        let j = (&x * &y).exp() + Jet::constant(2.0, o);
        let q = j.checked_div(&j).unwrap();
        assert!((q.value() - 1.0).abs() < 1e-15);
        for c in &q.coeffs()[1..] {
            assert!(c.abs() < 1e-14, "{c}");
        }
    }

    #[test]
    fn tiny_divisor_rejected() {
        let o = ord(2);
        let z = Jet::variable(Coord::X, 0.0, o);
        let one = Jet::constant(1.0, o);
        assert!(matches!(
            one.checked_div(&z),
            Err(JetError::DivisorTooSmall { .. })
        ));
        let small = Jet::constant(1e-12, o);
        assert!(one.checked_div(&small).is_err());
    }

    #[test]
    fn ln_inverts_exp() {
        let o = ord(5);
        let x = Jet::variable(Coord::X, 0.4, o);
        let t = Jet::variable(Coord::T, 1.1, o);
        let f = &x * &t + x.clone();
        let back = f.exp().ln().unwrap();
        for (a, b) in back.coeffs().iter().zip(f.coeffs()) {
            assert!((a - b).abs() < 1e-12);
        }
        assert!(Jet::constant(-1.0, o).ln().is_err());
    }

    #[test]
    fn derivative_shifts_coefficients() {
        // f = x²y + t³ at (1, 2, 3)
        let o = ord(4);
        let x = Jet::variable(Coord::X, 1.0, o);
        let y = Jet::variable(Coord::Y, 2.0, o);
        let t = Jet::variable(Coord::T, 3.0, o);
        let f = &(&x * &x) * &y + &(&t * &t) * &t;
        let fx = f.derivative(Coord::X).unwrap();
        assert_eq!(fx.order().get(), 3);
        assert_eq!(fx.value(), 4.0);
        assert_eq!(fx.partial(1, 0, 0).unwrap(), 4.0);
        assert_eq!(fx.partial(0, 1, 0).unwrap(), 2.0);
        let ft = f.derivative(Coord::T).unwrap();
        assert_eq!(ft.value(), 27.0);
        assert_eq!(ft.partial(0, 0, 1).unwrap(), 18.0);
        assert!(matches!(
            Jet::constant(1.0, ord(0)).derivative(Coord::X),
            Err(JetError::OrderExhausted)
        ));
    }

    #[test]
    fn order_limit() {
        assert!(JetOrder::new(MAX_JET_ORDER).is_ok());
        assert!(JetOrder::new(MAX_JET_ORDER + 1).is_err());
    }
}
