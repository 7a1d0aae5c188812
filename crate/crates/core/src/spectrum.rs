//! Closed-form bound-state spectrum.
//!
//! With A₀⁽¹⁾ = −g₁/|x| and A₀⁽²⁾ = −g₂/|x| the upper DKP component obeys a
//! Schrödinger-like equation
//!
//! ```text
//! −Φ''/(2m) + (−q/|x| + α/x²) Φ = E_eff Φ,
//! q = E g₁/m,   α = −(g₁² + g₂²)/(2m),   E_eff = (E² − m²)/(2m)
//! ```
//!
//! whose Coulomb strength depends on the energy itself. Bound states exist
//! only for 0 < g₁² + g₂² < 1/4 and g₁ ≠ 0, with
//!
//! ```text
//! E_n = ε(g₁) m {1 + [g₁ / (n + 1/2 + √(1/4 − g₁² − g₂²))]²}^{−1/2}
//! ```

use serde::Serialize;

use crate::algebra::Spin;
use crate::error::{DkpError, Result};

/// Levels accumulate at |E| = m; beyond this many the spacing approaches the
/// floating-point resolution of E near m.
pub const DEFAULT_LEVEL_CAP: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CouplingConfig {
    pub m: f64,
    pub g1: f64,
    pub g2: f64,
    pub spin: Spin,
}

impl CouplingConfig {
    /// Only the mass is validated; out-of-gate couplings are constructible and
    /// reported by [`CouplingConfig::bound_state_gate`].
    pub fn new(m: f64, g1: f64, g2: f64, spin: Spin) -> Result<Self> {
        if !(m > 0.0 && m.is_finite()) {
            return Err(DkpError::InvalidParameter {
                name: "m",
                reason: format!("mass {m} must be positive and finite"),
            });
        }
        if !g1.is_finite() || !g2.is_finite() {
            return Err(DkpError::InvalidParameter {
                name: "g",
                reason: format!("couplings must be finite (g1 = {g1}, g2 = {g2})"),
            });
        }
        Ok(CouplingConfig { m, g1, g2, spin })
    }

    pub fn spin0(m: f64, g1: f64, g2: f64) -> Result<Self> {
        Self::new(m, g1, g2, Spin::Spin0)
    }

    pub fn with_spin(self, spin: Spin) -> Self {
        CouplingConfig { spin, ..self }
    }

    /// g₁² + g₂²
    pub fn coupling_sq(&self) -> f64 {
        self.g1 * self.g1 + self.g2 * self.g2
    }

    /// Inverse-square strength α = −(g₁² + g₂²)/(2m).
    pub fn alpha(&self) -> f64 {
        -self.coupling_sq() / (2.0 * self.m)
    }

    /// α_c = −1/(8m), below which the particle falls to the center.
    pub fn critical_alpha(&self) -> f64 {
        -1.0 / (8.0 * self.m)
    }

    /// Ok when 0 < g₁² + g₂² < 1/4.
    pub fn bound_state_gate(&self) -> Result<()> {
        exponent_s(self).map(|_| ())
    }

    /// Effective Coulomb strength q(E) = E g₁ / m.
    pub fn coulomb_strength(&self, energy: f64) -> f64 {
        energy / self.m * self.g1
    }

    /// E_eff = (E² − m²)/(2m)
    pub fn effective_energy(&self, energy: f64) -> f64 {
        (energy - self.m) * (energy + self.m) / (2.0 * self.m)
    }

    /// V_eff(x) = −q/|x| + α/x² at trial energy E.
    pub fn effective_potential(&self, energy: f64, x: f64) -> f64 {
        let ax = x.abs();
        -self.coulomb_strength(energy) / ax + self.alpha() / (ax * ax)
    }
}

/// Indicial exponent s = 1/2 + √(1/4 − (g₁² + g₂²)), always in (1/2, 1).
///
/// The other root of s(s − 1) = 2mα is never returned: it violates the
/// vanishing-Wronskian condition at the origin.
pub fn exponent_s(config: &CouplingConfig) -> Result<f64> {
    let coupling_sq = config.coupling_sq();
    if coupling_sq == 0.0 {
        return Err(DkpError::FreeCase);
    }
    let disc = 0.25 - coupling_sq;
    if !(disc > 0.0) {
        return Err(DkpError::CriticalCoupling { coupling_sq });
    }
    Ok(0.5 + disc.sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EffectiveParams {
    pub q: f64,
    pub alpha: f64,
    pub e_eff: f64,
    pub s: f64,
    pub gamma: f64,
    pub lambda: f64,
    pub kummer_a: f64,
    pub kummer_b: f64,
}

impl EffectiveParams {
    /// Map a trial energy with |E| < m onto the Kratzer problem.
    pub fn at_energy(config: &CouplingConfig, energy: f64) -> Result<Self> {
        let s = exponent_s(config)?;
        if !(energy.abs() < config.m) {
            return Err(DkpError::InvalidParameter {
                name: "energy",
                reason: format!("|E| = {} must be below m = {}", energy.abs(), config.m),
            });
        }
        let q = config.coulomb_strength(energy);
        let e_eff = config.effective_energy(energy);
        let gamma = q * (-config.m / (2.0 * e_eff)).sqrt();
        let lambda = 2.0 * (-2.0 * config.m * e_eff).sqrt();
        Ok(EffectiveParams {
            q,
            alpha: config.alpha(),
            e_eff,
            s,
            gamma,
            lambda,
            kummer_a: s - gamma,
            kummer_b: 2.0 * s,
        })
    }
}

/// γ(E) = E g₁ / √(m² − E²)
pub fn gamma_of_energy(config: &CouplingConfig, energy: f64) -> f64 {
    let m = config.m;
    energy * config.g1 / ((m - energy) * (m + energy)).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundState {
    pub n: usize,
    pub energy: f64,
    pub s: f64,
    /// Inverse length scale λ = 2√(m² − E²), so z = λx.
    pub lambda: f64,
    pub gamma: f64,
    /// ε(g₁) = sign of E.
    pub sign: i8,
}

impl BoundState {
    /// m − |E|
    pub fn binding_energy(&self, m: f64) -> f64 {
        m - self.energy.abs()
    }
}

pub fn energy_level(config: &CouplingConfig, n: usize) -> Result<BoundState> {
    let coupling_sq = config.coupling_sq();
    if coupling_sq >= 0.25 {
        return Err(DkpError::CriticalCoupling { coupling_sq });
    }
    if config.g1 == 0.0 {
        return Err(DkpError::NoBoundStates);
    }
    let s = exponent_s(config)?;
    let m = config.m;
    let root = (0.25 - coupling_sq).sqrt();
    let ratio = config.g1 / (n as f64 + 0.5 + root);
    let magnitude = m / (1.0 + ratio * ratio).sqrt();
    let sign: i8 = if config.g1 > 0.0 { 1 } else { -1 };
    let energy = f64::from(sign) * magnitude;
    // √(m² − E²) = |E·ratio| without the cancellation in m − |E|.
    let lambda = 2.0 * (magnitude * ratio).abs();
    Ok(BoundState {
        n,
        energy,
        s,
        lambda,
        gamma: gamma_of_energy(config, energy),
        sign,
    })
}

pub fn spectrum(config: &CouplingConfig, n_max: usize) -> Result<Vec<BoundState>> {
    spectrum_with_cap(config, n_max, DEFAULT_LEVEL_CAP)
}

pub fn spectrum_with_cap(config: &CouplingConfig, n_max: usize, cap: usize) -> Result<Vec<BoundState>> {
    if n_max > cap {
        return Err(DkpError::InvalidParameter {
            name: "n_max",
            reason: format!("{n_max} exceeds the level cap {cap}"),
        });
    }
    (0..=n_max).map(|n| energy_level(config, n)).collect()
}

/// Weak-coupling reference E ≈ m − m g₁²/(2(n + 1)²).
pub fn nonrelativistic_energy(config: &CouplingConfig, n: usize) -> Result<f64> {
    if !(config.g1 > 0.0) {
        return Err(DkpError::InvalidParameter {
            name: "g1",
            reason: "weak-coupling limit needs g1 > 0".into(),
        });
    }
    let k = (n + 1) as f64;
    Ok(config.m - config.m * config.g1 * config.g1 / (2.0 * k * k))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(g1: f64, g2: f64) -> CouplingConfig {
        CouplingConfig::spin0(1.0, g1, g2).unwrap()
    }

    #[test]
    fn exponent_with_perfect_square_discriminant() {
        // g1² + g2² = 3/16
        let c = cfg(0.25, 0.125f64.sqrt());
        assert!((exponent_s(&c).unwrap() - 0.75).abs() < 1e-15);
    }

    #[test]
    fn exponent_free_limit() {
        let s = exponent_s(&cfg(1e-8, 0.0)).unwrap();
        assert!((s - 1.0).abs() < 1e-15);
    }

    #[test]
    fn exponent_rejects_boundary_and_free_case() {
        assert!(matches!(
            exponent_s(&cfg(0.3, 0.4)),
            Err(DkpError::CriticalCoupling { .. })
        ));
        assert!(matches!(exponent_s(&cfg(0.5, 0.0)), Err(DkpError::CriticalCoupling { .. })));
        assert_eq!(exponent_s(&cfg(0.0, 0.0)), Err(DkpError::FreeCase));
    }

    #[test]
    fn exponent_is_admissible_root() {
        for &(g1, g2) in &[(0.1, 0.0), (0.3, 0.2), (0.0, 0.45), (-0.2, 0.3)] {
            let c = cfg(g1, g2);
            let s = exponent_s(&c).unwrap();
            assert!(s > 0.5 && s < 1.0);
            // s(s − 1) = 2mα
            assert!((s * (s - 1.0) - 2.0 * c.m * c.alpha()).abs() < 1e-15);
            assert!(c.alpha() > c.critical_alpha());
        }
    }

    #[test]
    fn ground_state_reference_value() {
        let b = energy_level(&cfg(0.3, 0.0), 0).unwrap();
        assert!((b.s - 0.9).abs() < 1e-15);
        assert!((b.energy - 3.0 / 10f64.sqrt()).abs() < 1e-15);
        assert!((b.energy - 0.948_683_298_050_513_8).abs() < 1e-15);
        assert_eq!(b.sign, 1);
    }

    #[test]
    fn mixed_coupling_reference_value() {
        // 30-digit evaluation of the closed form
        let b = energy_level(&cfg(0.3, 0.2), 0).unwrap();
        assert!((b.s - 0.846_410_161_513_775_5).abs() < 1e-15);
        assert!((b.energy - 0.942_546_690_353_357_3).abs() < 1e-15);
    }

    #[test]
    fn antiparticle_branch() {
        let b = energy_level(&cfg(-0.3, 0.0), 0).unwrap();
        assert!((b.energy + 0.948_683_298_050_513_8).abs() < 1e-15);
        assert_eq!(b.sign, -1);
    }

    #[test]
    fn errors() {
        assert_eq!(energy_level(&cfg(0.0, 0.3), 0), Err(DkpError::NoBoundStates));
        assert!(matches!(
            energy_level(&cfg(0.4, 0.4), 0),
            Err(DkpError::CriticalCoupling { .. })
        ));
        assert!(spectrum(&cfg(0.0, 0.3), 3).is_err());
    }

    #[test]
    fn effective_params_at_eigenvalue() {
        let c = cfg(0.3, 0.2);
        let b = energy_level(&c, 2).unwrap();
        let p = EffectiveParams::at_energy(&c, b.energy).unwrap();
        assert!((p.kummer_a + 2.0).abs() < 1e-12);
        assert!((p.kummer_b - 2.0 * b.s).abs() < 1e-15);
        assert!((p.lambda - b.lambda).abs() < 1e-12);
        assert!(p.e_eff < 0.0);
        assert!((p.q - b.energy * 0.3).abs() < 1e-15);
        assert!(EffectiveParams::at_energy(&c, 1.0).is_err());
    }

    #[test]
    fn spectrum_is_monotone_and_bounded() {
        let levels = spectrum(&cfg(0.3, 0.0), 20).unwrap();
        assert_eq!(levels.len(), 21);
        for w in levels.windows(2) {
            assert!(w[0].energy < w[1].energy);
        }
        assert!(levels.iter().all(|b| b.energy > 0.0 && b.energy < 1.0));
        let far = energy_level(&cfg(0.3, 0.0), 10_000).unwrap();
        assert!(1.0 - far.energy < 1e-8);
    }

    #[test]
    fn level_cap() {
        assert!(spectrum(&cfg(0.3, 0.0), 65).is_err());
        assert_eq!(spectrum_with_cap(&cfg(0.3, 0.0), 100, 100).unwrap().len(), 101);
    }

    #[test]
    fn nonrelativistic_reference() {
        let c = cfg(0.1, 0.0);
        assert!((nonrelativistic_energy(&c, 0).unwrap() - 0.995).abs() < 1e-15);
        let exact = energy_level(&c, 0).unwrap().energy;
        assert!((exact - 0.994_936_153_005_124_1).abs() < 1e-15);
        assert!((1.0 - nonrelativistic_energy(&c, 1_000_000).unwrap()) < 1e-13);
        assert!(nonrelativistic_energy(&cfg(-0.1, 0.0), 0).is_err());
    }

    #[test]
    fn mass_scaling() {
        let c1 = cfg(0.2, 0.1);
        let c2 = CouplingConfig::spin0(2.5, 0.2, 0.1).unwrap();
        for n in 0..5 {
            let e1 = energy_level(&c1, n).unwrap().energy;
            let e2 = energy_level(&c2, n).unwrap().energy;
            assert!((e2 - 2.5 * e1).abs() < 1e-15 * 2.5);
        }
    }

    #[test]
    fn rejects_nonpositive_mass() {
        assert!(CouplingConfig::spin0(0.0, 0.1, 0.0).is_err());
        assert!(CouplingConfig::spin0(-1.0, 0.1, 0.0).is_err());
        assert!(CouplingConfig::spin0(1.0, f64::NAN, 0.0).is_err());
    }
}
