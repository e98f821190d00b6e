use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{
    burgers_residual, compatibility_defect, heat_residual, ExactError, HeatSolution, SolutionPair,
    SpaceTimePoint,
};
use crate::jets::JetOrder;

/// Axis-aligned box in `(x, y, t)` that random sample points are drawn from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SampleBox {
    pub x: [f64; 2],
    pub y: [f64; 2],
    pub t: [f64; 2],
}

impl Default for SampleBox {
    fn default() -> Self {
        Self {
            x: [-2.0, 2.0],
            y: [-2.0, 2.0],
            t: [0.1, 1.0],
        }
    }
}

/// `count` uniform points in `bounds`, reproducible for a given `seed`.
pub fn sample_points(bounds: &SampleBox, count: usize, seed: u64) -> Vec<SpaceTimePoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = |[lo, hi]: [f64; 2]| lo + (hi - lo) * rng.gen::<f64>();
    (0..count)
        .map(|_| {
            let x = draw(bounds.x);
            let y = draw(bounds.y);
            let t = draw(bounds.t);
            SpaceTimePoint::new(x, y, t)
        })
        .collect()
}

/// Outcome of checking the premises of the lift over a set of points.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub samples: usize,
    /// Largest `|φ_t − Δφ − 2u₀φ_x − 2v₀φ_y|`.
    pub max_heat_residual: f64,
    /// Largest `|u₀_y − v₀_x|` of the background.
    pub max_compatibility_defect: f64,
    /// Smallest `φ` seen.
    pub min_phi: f64,
    pub failures: Vec<String>,
}

impl ValidationReport {
    pub fn passes(&self, tolerance: f64) -> bool {
        self.failures.is_empty()
            && self.min_phi > 0.0
            && self.max_heat_residual <= tolerance
            && self.max_compatibility_defect <= tolerance
    }
}

/// Measures how well `phi` and `background` satisfy the lift's premises.
/// Evaluation errors are collected in the report, never returned.
pub fn validate_bt_premises(
    phi: &HeatSolution,
    background: &SolutionPair,
    points: &[SpaceTimePoint],
) -> ValidationReport {
    let mut report = ValidationReport {
        samples: points.len(),
        max_heat_residual: 0.0,
        max_compatibility_defect: 0.0,
        min_phi: f64::INFINITY,
        failures: Vec::new(),
    };
    for &p in points {
        let checked = (|| -> Result<(), ExactError> {
            let r = heat_residual(phi, background, p)?;
            report.max_heat_residual = report.max_heat_residual.max(r.abs());
            let c = compatibility_defect(background, p)?;
            report.max_compatibility_defect = report.max_compatibility_defect.max(c.abs());
            report.min_phi = report.min_phi.min(phi.value(p)?);
            Ok(())
        })();
        if let Err(e) = checked {
            report.failures.push(format!("({}, {}, {}): {e}", p.x, p.y, p.t));
        }
    }
    report
}

/// Worst-case residual and curl of a pair over a set of points.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct PairDefects {
    pub max_residual_u: f64,
    pub max_residual_v: f64,
    pub max_curl: f64,
}

impl PairDefects {
    pub fn max_residual(&self) -> f64 {
        self.max_residual_u.max(self.max_residual_v)
    }
}

pub fn max_pair_defects(
    pair: &SolutionPair,
    points: &[SpaceTimePoint],
) -> Result<PairDefects, ExactError> {
    let order = JetOrder::new(2)?;
    let mut out = PairDefects::default();
    for &p in points {
        let (r1, r2) = burgers_residual(pair, p, order)?;
        out.max_residual_u = out.max_residual_u.max(r1.abs());
        out.max_residual_v = out.max_residual_v.max(r2.abs());
        out.max_curl = out.max_curl.max(compatibility_defect(pair, p)?.abs());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{make_plane_wave_seed, ConstantPair, PlaneWaveTerm};

    #[test]
    fn sampling_is_reproducible_and_in_bounds() {
        let b = SampleBox::default();
        let a = sample_points(&b, 50, 7);
        assert_eq!(a, sample_points(&b, 50, 7));
        assert_ne!(a, sample_points(&b, 50, 8));
        assert!(a.iter().all(|p| (-2.0..=2.0).contains(&p.x) && (0.1..=1.0).contains(&p.t)));
    }

    #[test]
    fn trivial_seed_has_exactly_zero_defects() {
        let bg = ConstantPair::new(0.4, 1.2);
        let phi = make_plane_wave_seed(bg, &[]).unwrap();
        let pts = sample_points(&SampleBox::default(), 20, 1);
        let report = validate_bt_premises(&phi, &bg.into(), &pts);
        assert_eq!(report.max_heat_residual, 0.0);
        assert_eq!(report.max_compatibility_defect, 0.0);
        assert!(report.passes(0.0));
    }

    #[test]
    fn failures_are_collected() {
        let phi = make_plane_wave_seed(ConstantPair::ZERO, &[PlaneWaveTerm::new(1.0, 1.0, 0.0)]).unwrap();
        let bg = SolutionPair::constant(ConstantPair::ZERO).with_order_budget(0);
        let pts = sample_points(&SampleBox::default(), 3, 1);
        let report = validate_bt_premises(&phi, &bg, &pts);
        assert_eq!(report.failures.len(), 3);
        assert!(!report.passes(1.0));
    }
}
