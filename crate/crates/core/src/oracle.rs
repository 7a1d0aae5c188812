//! Shooting solver for the energy-dependent effective equation
//! Φ'' = 2m[V_eff(x; E) − E_eff(E)]Φ, independent of the closed-form levels.
//!
//! For each trial energy the Coulomb strength q(E) = E g₁/m is rebuilt, the
//! regular solution is integrated outward from a Frobenius seed and the
//! decaying solution inward from the exponential tail. Their normalized
//! Wronskian at the outer classical turning point is the mismatch.

use serde::Serialize;

use crate::error::{DkpError, Result};
use crate::ode::{integrate_linear, LinearRun};
use crate::spectrum::{exponent_s, CouplingConfig};

const MAX_UPPER_DOUBLINGS: u32 = 45;
const NODE_BRACKET_REL_WIDTH: f64 = 1e-7;
const MAX_WIDENINGS: usize = 60;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OracleOptions {
    /// x_min = x_min_factor / λ(E)
    pub x_min_factor: f64,
    /// x_max = x_max_factor / λ(E)
    pub x_max_factor: f64,
    pub ode_tol: f64,
    /// Final bracket width, in units of m.
    pub energy_tol: f64,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions {
            x_min_factor: 1e-6,
            x_max_factor: 50.0,
            ode_tol: 1e-11,
            energy_tol: 1e-10,
        }
    }
}

impl OracleOptions {
    fn validate(&self) -> Result<()> {
        let ok = self.x_min_factor > 0.0
            && self.x_max_factor > self.x_min_factor
            && self.ode_tol > 0.0
            && self.energy_tol > 0.0
            && [self.x_min_factor, self.x_max_factor, self.ode_tol, self.energy_tol]
                .iter()
                .all(|v| v.is_finite());
        if ok {
            Ok(())
        } else {
            Err(DkpError::InvalidParameter {
                name: "oracle_options",
                reason: format!("{self:?}"),
            })
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OracleResult {
    pub n: usize,
    pub energy: f64,
    pub iterations: usize,
    pub mismatch: f64,
    pub bracket: (f64, f64),
    pub node_count: usize,
}

/// One trial-energy integration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Shot {
    pub energy: f64,
    pub mismatch: f64,
    /// Zeros of the matched solution: outward on (x_min, x_match) plus inward
    /// on (x_match, x_max).
    pub node_count: usize,
    /// Zeros of the regular solution on the whole (x_min, x_max).
    pub regular_nodes: usize,
    pub x_min: f64,
    pub x_match: f64,
    pub x_max: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanPoint {
    pub energy: f64,
    /// NaN when the point failed.
    pub mismatch: f64,
    pub node_count: Option<usize>,
    pub error: Option<String>,
}

/// Outer root of V_eff(x) = E_eff, clamped into the integration range.
fn turning_point(q: f64, alpha: f64, e_eff: f64, x_min: f64, x_max: f64) -> f64 {
    let b = -e_eff;
    let xt = (q + (q * q - 4.0 * b * alpha).sqrt()) / (2.0 * b);
    xt.clamp(10.0 * x_min, 0.5 * x_max)
}

/// Integrate both branches at trial energy `energy` (|E| < m).
pub fn shoot(config: &CouplingConfig, energy: f64, opts: &OracleOptions) -> Result<Shot> {
    opts.validate()?;
    let s = exponent_s(config)?;
    let m = config.m;
    if !(energy.abs() < m) {
        return Err(DkpError::InvalidParameter {
            name: "energy",
            reason: format!("trial energy {energy} outside (-m, m)"),
        });
    }
    let kappa = ((m - energy) * (m + energy)).sqrt();
    let lambda = 2.0 * kappa;
    let q = config.coulomb_strength(energy);
    let alpha = config.alpha();
    let e_eff = config.effective_energy(energy);
    let two_m = 2.0 * m;
    // Φ'' = [2m(α/x² − q/x) + κ²] Φ
    let k = |x: f64| two_m * (alpha / (x * x) - q / x) + kappa * kappa;

    let x_min = opts.x_min_factor / lambda;
    let x_max = opts.x_max_factor / lambda;
    let x_match = turning_point(q, alpha, e_eff, x_min, x_max);

    // Φ ≈ x^s (1 + c₁x), c₁ = −mq/s
    let c1 = -m * q / s;
    let u0 = x_min.powf(s) * (1.0 + c1 * x_min);
    let du0 = x_min.powf(s - 1.0) * (s + (s + 1.0) * c1 * x_min);
    let outward_a = integrate_linear(k, x_min, [u0, du0], x_match, opts.ode_tol, 0.01 * x_min)?;
    let outward_b: LinearRun = integrate_linear(
        k,
        x_match,
        outward_a.state,
        x_max,
        opts.ode_tol,
        0.01 * x_match,
    )?;

    // Φ ≈ x^γ e^{−κx}
    let gamma = energy * config.g1 / kappa;
    let inward = integrate_linear(
        k,
        x_max,
        [1.0, gamma / x_max - kappa],
        x_match,
        opts.ode_tol,
        -0.01 / kappa,
    )?;

    let [uo, duo] = outward_a.state;
    let [ui, dui] = inward.state;
    let norm = |u: f64, du: f64| (u * u + (du / kappa) * (du / kappa)).sqrt();
    let mismatch = (duo * ui - uo * dui) / (kappa * norm(uo, duo) * norm(ui, dui));

    Ok(Shot {
        energy,
        mismatch,
        node_count: outward_a.sign_changes + inward.sign_changes,
        regular_nodes: outward_a.sign_changes + outward_b.sign_changes,
        x_min,
        x_match,
        x_max,
    })
}

/// Energy of level `n` by node-count bracketing and mismatch bisection.
///
/// The equation depends on E only through E² and E·g₁, so a negative g₁ is
/// solved as the mirrored positive problem and the energy negated.
pub fn solve_level(config: &CouplingConfig, n: usize, opts: &OracleOptions) -> Result<OracleResult> {
    opts.validate()?;
    exponent_s(config)?;
    if config.g1 < 0.0 {
        let mirrored = CouplingConfig { g1: -config.g1, ..*config };
        let r = solve_level(&mirrored, n, opts)?;
        return Ok(OracleResult {
            energy: -r.energy,
            bracket: (-r.bracket.1, -r.bracket.0),
            ..r
        });
    }

    let m = config.m;
    let mut iterations = 0usize;
    let mut shot_at = |e: f64| -> Result<Shot> {
        iterations += 1;
        shoot(config, e, opts)
    };

    // Below E = 0 the potential is at least α/x², which binds nothing, so the
    // regular solution count is monotone in E on [0, m).
    let lower = shot_at(0.0)?;
    if lower.regular_nodes > n {
        return Err(DkpError::BracketExhausted {
            n,
            reason: format!("{} nodes already at E = 0", lower.regular_nodes),
        });
    }
    let mut lo = (0.0, lower);
    let mut hi = None;
    for k in 1..=MAX_UPPER_DOUBLINGS {
        let e = m * (1.0 - 0.5f64.powi(k as i32));
        let shot = shot_at(e)?;
        if shot.regular_nodes > n {
            hi = Some((e, shot));
            break;
        }
        lo = (e, shot);
    }
    let Some(mut hi) = hi else {
        return Err(DkpError::NoRootInBracket {
            reason: format!(
                "regular solution never reaches {} nodes below E = m(1 - 2^-{MAX_UPPER_DOUBLINGS})",
                n + 1
            ),
        });
    };

    while hi.0 - lo.0 > NODE_BRACKET_REL_WIDTH * m {
        let mid = 0.5 * (lo.0 + hi.0);
        let shot = shot_at(mid)?;
        if shot.regular_nodes > n {
            hi = (mid, shot);
        } else {
            lo = (mid, shot);
        }
    }

    // The node count changes where the (n+1)-th zero enters through x_max,
    // a hair above E_n; widen downward until the mismatch brackets the root.
    let mut width = hi.0 - lo.0;
    let mut widenings = 0;
    while lo.1.mismatch.signum() == hi.1.mismatch.signum() {
        width *= 2.0;
        let e = hi.0 - width;
        widenings += 1;
        if e <= 0.0 || widenings > MAX_WIDENINGS {
            return Err(DkpError::NoRootInBracket {
                reason: format!("mismatch keeps one sign on [{e}, {}]", hi.0),
            });
        }
        lo = (e, shot_at(e)?);
    }

    while hi.0 - lo.0 > opts.energy_tol * m {
        let mid = 0.5 * (lo.0 + hi.0);
        if mid <= lo.0 || mid >= hi.0 {
            break;
        }
        let shot = shot_at(mid)?;
        if shot.mismatch == 0.0 {
            lo = (mid, shot);
            hi = (mid, shot);
            break;
        }
        if shot.mismatch.signum() == lo.1.mismatch.signum() {
            lo = (mid, shot);
        } else {
            hi = (mid, shot);
        }
    }

    let energy = 0.5 * (lo.0 + hi.0);
    let fin = shot_at(energy)?;
    Ok(OracleResult {
        n,
        energy,
        iterations,
        mismatch: fin.mismatch,
        bracket: (lo.0, hi.0),
        node_count: fin.node_count,
    })
}

/// Mismatch along an energy grid; failures are recorded per point.
pub fn scan_mismatch(config: &CouplingConfig, energies: &[f64], opts: &OracleOptions) -> Vec<ScanPoint> {
    energies
        .iter()
        .map(|&energy| match shoot(config, energy, opts) {
            Ok(shot) => ScanPoint {
                energy,
                mismatch: shot.mismatch,
                node_count: Some(shot.node_count),
                error: None,
            },
            Err(e) => ScanPoint {
                energy,
                mismatch: f64::NAN,
                node_count: None,
                error: Some(e.to_string()),
            },
        })
        .collect()
}

/// `points` energies evenly spaced strictly inside (e_min, e_max).
pub fn energy_grid(e_min: f64, e_max: f64, points: usize) -> Vec<f64> {
    let step = (e_max - e_min) / points as f64;
    (0..points).map(|k| e_min + (k as f64 + 0.5) * step).collect()
}

/// Sign changes of the mismatch between consecutive successful points.
pub fn sign_changes(points: &[ScanPoint]) -> Vec<(f64, f64)> {
    let good: Vec<&ScanPoint> = points.iter().filter(|p| p.mismatch.is_finite()).collect();
    good.windows(2)
        .filter(|w| w[0].mismatch.signum() != w[1].mismatch.signum())
        .map(|w| (w[0].energy, w[1].energy))
        .collect()
}
