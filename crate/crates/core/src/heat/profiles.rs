//! Named closed-form initial data.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::{HeatError, InitialProfile};
use crate::exact::{cole_hopf_lift, make_plane_wave_seed, ConstantPair, HeatSolution, PlaneWaveTerm, SolutionPair};

pub type ProfileParams = BTreeMap<String, f64>;

/// Builds a profile from its parameters, the background pair and `t₀`.
pub type ProfileBuilder =
    fn(&ProfileParams, ConstantPair, f64) -> Result<Arc<dyn InitialProfile>, HeatError>;

fn param(params: &ProfileParams, allowed: &[&str], name: &str, default: f64) -> Result<f64, HeatError> {
    if let Some(bad) = params.keys().find(|k| !allowed.contains(&k.as_str())) {
        return Err(HeatError::InvalidParameter(format!(
            "unknown parameter `{bad}` (expected one of {})",
            allowed.join(", ")
        )));
    }
    let v = params.get(name).copied().unwrap_or(default);
    if !v.is_finite() {
        return Err(HeatError::InvalidParameter(format!("`{name}` = {v} is not finite")));
    }
    Ok(v)
}

/// `e^z / (1 + e^z)` without overflow.
fn logistic(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + (-z).exp())
    } else {
        let e = z.exp();
        e / (1.0 + e)
    }
}

/// `s ≡ a`, `k ≡ b`.
pub struct Constants {
    a: f64,
    b: f64,
}

impl Constants {
    fn build(p: &ProfileParams, bg: ConstantPair, _t0: f64) -> Result<Arc<dyn InitialProfile>, HeatError> {
        const KEYS: &[&str] = &["a", "b"];
        Ok(Arc::new(Constants {
            a: param(p, KEYS, "a", bg.u0)?,
            b: param(p, KEYS, "b", bg.v0)?,
        }))
    }
}

impl InitialProfile for Constants {
    fn name(&self) -> &str {
        "constants"
    }
    fn s(&self, _x: f64, _y: f64) -> f64 {
        self.a
    }
    fn k(&self, _x: f64, _y: f64) -> f64 {
        self.b
    }
    fn exact_pair(&self) -> Option<SolutionPair> {
        Some(SolutionPair::constant(ConstantPair::new(self.a, self.b)))
    }
}

/// Snapshot at `t₀` of the lift of `φ = 1 + a·exp(kx + ly + ωt)`: a
/// travelling logistic front in each component.
pub struct TanhPair {
    term: PlaneWaveTerm,
    rate: f64,
    t0: f64,
    background: ConstantPair,
    seed: HeatSolution,
}

impl TanhPair {
    pub fn new(term: PlaneWaveTerm, background: ConstantPair, t0: f64) -> Result<Self, HeatError> {
        let seed = make_plane_wave_seed(background, &[term])
            .map_err(|e| HeatError::InvalidParameter(e.to_string()))?;
        Ok(Self {
            term,
            rate: term.rate(background),
            t0,
            background,
            seed,
        })
    }

    fn build(p: &ProfileParams, bg: ConstantPair, t0: f64) -> Result<Arc<dyn InitialProfile>, HeatError> {
        const KEYS: &[&str] = &["a", "k", "l"];
        let term = PlaneWaveTerm::new(
            param(p, KEYS, "a", 1.0)?,
            param(p, KEYS, "k", 1.0)?,
            param(p, KEYS, "l", 1.0)?,
        );
        Ok(Arc::new(Self::new(term, bg, t0)?))
    }

    fn front(&self, x: f64, y: f64) -> f64 {
        if self.term.a == 0.0 {
            return 0.0;
        }
        logistic(self.term.k * x + self.term.l * y + self.rate * self.t0 + self.term.a.ln())
    }
}

impl InitialProfile for TanhPair {
    fn name(&self) -> &str {
        "tanh-pair"
    }
    fn s(&self, x: f64, y: f64) -> f64 {
        self.background.u0 + self.term.k * self.front(x, y)
    }
    fn k(&self, x: f64, y: f64) -> f64 {
        self.background.v0 + self.term.l * self.front(x, y)
    }
    fn exact_pair(&self) -> Option<SolutionPair> {
        Some(cole_hopf_lift(&self.seed, self.background))
    }
    fn exact_phi(&self) -> Option<HeatSolution> {
        Some(self.seed.clone())
    }
}

/// Lift of `φ₀ = 1 + A·exp(−((x−x_c)² + (y−y_c)²)/w²)`; decays to the
/// background away from the bump.
pub struct GaussianBump {
    amplitude: f64,
    width: f64,
    center: (f64, f64),
    background: ConstantPair,
}

impl GaussianBump {
    fn build(p: &ProfileParams, bg: ConstantPair, _t0: f64) -> Result<Arc<dyn InitialProfile>, HeatError> {
        const KEYS: &[&str] = &["amplitude", "width", "xc", "yc"];
        let amplitude = param(p, KEYS, "amplitude", 1.0)?;
        let width = param(p, KEYS, "width", 1.0)?;
        if amplitude < 0.0 || width <= 0.0 {
            return Err(HeatError::InvalidParameter(format!(
                "gaussian-bump needs amplitude >= 0 and width > 0, got {amplitude}, {width}"
            )));
        }
        Ok(Arc::new(GaussianBump {
            amplitude,
            width,
            center: (param(p, KEYS, "xc", 0.0)?, param(p, KEYS, "yc", 0.0)?),
            background: bg,
        }))
    }

    /// `(∂ₓ ln φ₀, ∂ᵧ ln φ₀)`.
    fn log_gradient(&self, x: f64, y: f64) -> (f64, f64) {
        let (dx, dy) = (x - self.center.0, y - self.center.1);
        let w2 = self.width * self.width;
        let bump = self.amplitude * (-(dx * dx + dy * dy) / w2).exp();
        let scale = -2.0 * bump / (w2 * (1.0 + bump));
        (scale * dx, scale * dy)
    }
}

impl InitialProfile for GaussianBump {
    fn name(&self) -> &str {
        "gaussian-bump"
    }
    fn s(&self, x: f64, y: f64) -> f64 {
        self.background.u0 + self.log_gradient(x, y).0
    }
    fn k(&self, x: f64, y: f64) -> f64 {
        self.background.v0 + self.log_gradient(x, y).1
    }
}

/// Initial-data profiles selectable by name.
pub struct ProfileRegistry {
    entries: BTreeMap<&'static str, ProfileBuilder>,
}

impl Default for ProfileRegistry {
    fn default() -> Self {
        let mut reg = Self {
            entries: BTreeMap::new(),
        };
        reg.register("constants", Constants::build);
        reg.register("tanh-pair", TanhPair::build);
        reg.register("gaussian-bump", GaussianBump::build);
        reg
    }
}

impl ProfileRegistry {
    pub fn register(&mut self, name: &'static str, builder: ProfileBuilder) {
        self.entries.insert(name, builder);
    }

    pub fn build(
        &self,
        name: &str,
        params: &ProfileParams,
        background: ConstantPair,
        t0: f64,
    ) -> Result<Arc<dyn InitialProfile>, HeatError> {
        let builder = self.entries.get(name).ok_or_else(|| HeatError::UnknownName {
            kind: "profile",
            name: name.to_string(),
            known: self.names().join(", "),
        })?;
        builder(params, background, t0)
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.keys().copied().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::SpaceTimePoint;

    #[test]
    fn tanh_pair_matches_its_lift() {
        let bg = ConstantPair::new(0.2, -0.3);
        let prof = ProfileRegistry::default()
            .build("tanh-pair", &ProfileParams::new(), bg, 0.4)
            .unwrap();
        let pair = prof.exact_pair().unwrap();
        for (x, y) in [(-3.0, 1.0), (0.0, 0.0), (5.0, 4.0), (-20.0, -20.0)] {
            let (u, v) = pair.value(SpaceTimePoint::new(x, y, 0.4)).unwrap();
            assert!((u - prof.s(x, y)).abs() < 1e-14);
            assert!((v - prof.k(x, y)).abs() < 1e-14);
        }
    }

    #[test]
    fn bump_is_curl_free() {
        let prof = ProfileRegistry::default()
            .build(
                "gaussian-bump",
                &[("amplitude".to_string(), 3.0), ("width".to_string(), 1.5)].into(),
                ConstantPair::ZERO,
                0.0,
            )
            .unwrap();
        let data = crate::heat::InitialData::new(prof.clone(), (0.0, 0.0), ConstantPair::ZERO);
        assert!(data.curl_at(0.3, -0.8) < 1e-8);
        assert!(prof.s(30.0, 0.0).abs() < 1e-12);
    }

    #[test]
    fn bad_names_and_params() {
        let reg = ProfileRegistry::default();
        assert!(matches!(
            reg.build("nope", &ProfileParams::new(), ConstantPair::ZERO, 0.0),
            Err(HeatError::UnknownName { .. })
        ));
        let params: ProfileParams = [("q".to_string(), 1.0)].into();
        assert!(matches!(
            reg.build("constants", &params, ConstantPair::ZERO, 0.0),
            Err(HeatError::InvalidParameter(_))
        ));
        let neg: ProfileParams = [("width".to_string(), -1.0)].into();
        assert!(reg.build("gaussian-bump", &neg, ConstantPair::ZERO, 0.0).is_err());
    }
}
