//! Odd-parity eigenfunctions on the whole line.
//!
//! On x > 0, Φ(x) = N z^s e^{−z/2} L_n^{(2s−1)}(z) with z = λx; the whole-line
//! function is the odd extension Φ(−x) = −Φ(x), which vanishes at the origin.
//! The normalization uses the charge-density weight (E − A₀⁽¹⁾)/m
//! = (E + g₁/|x|)/m, so the weighted norm is +1 on the particle branch
//! (E > 0) and −1 on the antiparticle branch (E < 0).

use serde::Serialize;

use crate::error::{DkpError, Result};
use crate::special::{envelope_cutoff, integrate, laguerre_unchecked, QuadratureRule};
use crate::spectrum::{energy_level, BoundState, CouplingConfig};

/// Normalization integrals are truncated where the envelope
/// z^{2s+2n} e^{−z} drops below this fraction of its peak.
pub const ENVELOPE_CUTOFF_RATIO: f64 = 1e-18;

pub const DEFAULT_GRID_SAMPLES: usize = 2001;
/// Default half-width of exported grids, in units of 1/λ.
pub const DEFAULT_GRID_EXTENT: f64 = 40.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Parity {
    Odd,
    Even,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhiValue {
    pub phi: f64,
    pub dphi: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Eigenfunction {
    pub state: BoundState,
    pub config: CouplingConfig,
    pub norm_const: f64,
    pub parity: Parity,
}

impl Eigenfunction {
    /// Eigenfunction with an explicit normalization constant.
    pub fn with_norm_const(config: CouplingConfig, state: BoundState, norm_const: f64) -> Self {
        Eigenfunction {
            state,
            config,
            norm_const,
            parity: Parity::Odd,
        }
    }

    /// Level `n` with N = 1.
    pub fn unnormalized(config: &CouplingConfig, n: usize) -> Result<Self> {
        let state = energy_level(config, n)?;
        Ok(Self::with_norm_const(*config, state, 1.0))
    }

    /// Level `n` normalized to the signed charge ±1.
    pub fn normalized(config: &CouplingConfig, n: usize, rule: &QuadratureRule) -> Result<Self> {
        let mut ef = Self::unnormalized(config, n)?;
        ef.norm_const = normalize(&ef, rule)?;
        Ok(ef)
    }

    pub fn energy(&self) -> f64 {
        self.state.energy
    }

    /// Laguerre order 2s − 1.
    pub fn laguerre_order(&self) -> f64 {
        2.0 * self.state.s - 1.0
    }

    /// +1 for E > 0, −1 for E < 0.
    pub fn target_norm(&self) -> f64 {
        if self.state.energy > 0.0 {
            1.0
        } else {
            -1.0
        }
    }

    /// Truncation point of half-line integrals, in z.
    pub fn z_cutoff(&self) -> f64 {
        envelope_cutoff(2.0 * self.state.s + 2.0 * self.state.n as f64, ENVELOPE_CUTOFF_RATIO)
    }

    pub fn x_cutoff(&self) -> f64 {
        self.z_cutoff() / self.state.lambda
    }

    /// (E − A₀⁽¹⁾)/m = (E + g₁/|x|)/m
    pub fn charge_weight(&self, x: f64) -> f64 {
        (self.state.energy + self.config.g1 / x.abs()) / self.config.m
    }

    /// Φ, dΦ/dx and d²Φ/dx² for x > 0.
    pub fn half_line(&self, x: f64) -> (f64, f64, f64) {
        let BoundState { n, s, lambda, .. } = self.state;
        let a = self.laguerre_order();
        let z = lambda * x;
        let l = laguerre_unchecked(n, a, z);
        let dl = if n == 0 { 0.0 } else { -laguerre_unchecked(n - 1, a + 1.0, z) };
        let d2l = if n < 2 { 0.0 } else { laguerre_unchecked(n - 2, a + 2.0, z) };
        // g = z^s e^{−z/2}
        let g = (s * z.ln() - 0.5 * z).exp();
        let log_slope = s / z - 0.5;
        let f = g * l;
        let df = g * (log_slope * l + dl);
        let d2f = g * ((log_slope * log_slope - s / (z * z)) * l + 2.0 * log_slope * dl + d2l);
        let nc = self.norm_const;
        (nc * f, nc * lambda * df, nc * lambda * lambda * d2f)
    }

    /// Φ″ on the whole line (odd).
    pub fn second_derivative(&self, x: f64) -> f64 {
        if x == 0.0 {
            return 0.0;
        }
        let (_, _, d2) = self.half_line(x.abs());
        d2 * x.signum()
    }

    /// −Φ″/(2m) + V_eff Φ − E_eff Φ
    pub fn ode_residual(&self, x: f64) -> f64 {
        let v = evaluate(self, x);
        let d2 = self.second_derivative(x);
        let e = self.state.energy;
        let m = self.config.m;
        -d2 / (2.0 * m) + (self.config.effective_potential(e, x) - self.config.effective_energy(e)) * v.phi
    }
}

/// Φ and dΦ/dx of the odd whole-line eigenfunction.
///
/// At x = 0, Φ = 0 and dΦ/dx is reported as its one-sided limit ±∞ (Φ ~ x^s
/// with s < 1).
pub fn evaluate(ef: &Eigenfunction, x: f64) -> PhiValue {
    if x == 0.0 {
        return PhiValue {
            phi: 0.0,
            dphi: f64::INFINITY.copysign(ef.norm_const),
        };
    }
    let (phi, dphi, _) = ef.half_line(x.abs());
    if x > 0.0 {
        PhiValue { phi, dphi }
    } else {
        PhiValue { phi: -phi, dphi }
    }
}

/// Half-line value with the requested parity extension to x < 0.
fn extended(ef: &Eigenfunction, parity: Parity, x: f64) -> PhiValue {
    let v = evaluate(ef, x);
    match parity {
        Parity::Odd => v,
        Parity::Even if x < 0.0 => PhiValue {
            phi: -v.phi,
            dphi: -v.dphi,
        },
        Parity::Even => v,
    }
}

/// ∫ dx (E + g₁/|x|)/m · |Φ|² over the whole line, for the current N.
pub fn weighted_norm(ef: &Eigenfunction, rule: &QuadratureRule) -> Result<f64> {
    let BoundState {
        energy, s, lambda, n, ..
    } = ef.state;
    let a = ef.laguerre_order();
    let m = ef.config.m;
    let g1 = ef.config.g1;
    // In z = λx: (1/(mλ)) (E z^{2s} + g₁λ z^{2s−1}) e^{−z} L², integrable at 0.
    let integrand = |z: f64| {
        let l = laguerre_unchecked(n, a, z);
        let env = ((2.0 * s - 1.0) * z.ln() - z).exp();
        (energy * z + g1 * lambda) * env * l * l / (m * lambda)
    };
    let half = integrate(integrand, 0.0, ef.z_cutoff(), rule)?;
    Ok(2.0 * ef.norm_const * ef.norm_const * half.value)
}

/// N > 0 such that the weighted self-integral equals ±1 (sign of E).
pub fn normalize(ef: &Eigenfunction, rule: &QuadratureRule) -> Result<f64> {
    let unit = Eigenfunction {
        norm_const: 1.0,
        ..*ef
    };
    let raw = weighted_norm(&unit, rule)?;
    if raw == 0.0 || raw.signum() != unit.target_norm() {
        return Err(DkpError::Domain {
            function: "normalize",
            reason: format!("weighted norm {raw} has the wrong sign for E = {}", ef.state.energy),
        });
    }
    Ok(1.0 / raw.abs().sqrt())
}

/// Weighted Gram matrix with entries
/// ∫ dx [((E_κ + E_κ′)/2 + g₁/|x|)/m] Φ_κ Φ_κ′.
pub fn orthogonality_matrix(states: &[Eigenfunction], rule: &QuadratureRule) -> Result<Vec<Vec<f64>>> {
    if let Some(first) = states.first() {
        if states.iter().any(|ef| ef.config != first.config) {
            return Err(DkpError::InvalidParameter {
                name: "states",
                reason: "all eigenfunctions must share one coupling configuration".into(),
            });
        }
    }
    let k = states.len();
    let mut gram = vec![vec![0.0; k]; k];
    for i in 0..k {
        for j in i..k {
            let value = overlap(&states[i], &states[j], rule)?;
            gram[i][j] = value;
            gram[j][i] = value;
        }
    }
    Ok(gram)
}

fn overlap(a: &Eigenfunction, b: &Eigenfunction, rule: &QuadratureRule) -> Result<f64> {
    let m = a.config.m;
    let g1 = a.config.g1;
    let mean_energy = 0.5 * (a.state.energy + b.state.energy);
    let x_max = a.x_cutoff().max(b.x_cutoff());
    let integrand = |x: f64| {
        let (pa, _, _) = a.half_line(x);
        let (pb, _, _) = b.half_line(x);
        (mean_energy + g1 / x) / m * pa * pb
    };
    // odd × odd is even: twice the half line
    Ok(2.0 * integrate(integrand, 0.0, x_max, rule)?.value)
}

/// W(x) = Φ_a Φ_b′ − Φ_a′ Φ_b at each probe.
pub fn wronskian_limit_check(a: &Eigenfunction, b: &Eigenfunction, x_probes: &[f64]) -> Vec<f64> {
    x_probes
        .iter()
        .map(|&x| {
            let va = evaluate(a, x);
            let vb = evaluate(b, x);
            va.phi * vb.dphi - va.dphi * vb.phi
        })
        .collect()
}

/// R = [Φ′(+δ) − Φ′(−δ)] − 2m ∫_{(−δ,−ε)∪(ε,δ)} V_eff Φ dx for the chosen
/// parity extension. The E_eff Φ term of the integrated equation is
/// omitted; it is O(δ^{s+1}) and odd for the odd extension.
pub fn connection_condition_residual(
    ef: &Eigenfunction,
    parity: Parity,
    delta: f64,
    epsilon: f64,
    rule: &QuadratureRule,
) -> Result<f64> {
    if !(epsilon > 0.0 && epsilon < delta) {
        return Err(DkpError::InvalidParameter {
            name: "epsilon",
            reason: format!("need 0 < epsilon ({epsilon}) < delta ({delta})"),
        });
    }
    let energy = ef.state.energy;
    let m = ef.config.m;
    let integrand = |x: f64| ef.config.effective_potential(energy, x) * extended(ef, parity, x).phi;
    let left = integrate(integrand, -delta, -epsilon, rule)?.value;
    let right = integrate(integrand, epsilon, delta, rule)?.value;
    let jump = extended(ef, parity, delta).dphi - extended(ef, parity, -delta).dphi;
    Ok(jump - 2.0 * m * (left + right))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ParityRow {
    pub delta: f64,
    pub epsilon: f64,
    pub r_odd: f64,
    pub r_even: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ParityReport {
    pub rows: Vec<ParityRow>,
    /// log–log slope of |R_even| against ε.
    pub fitted_slope: f64,
    /// s − 1
    pub expected_slope: f64,
}

pub fn parity_report(
    ef: &Eigenfunction,
    delta: f64,
    epsilons: &[f64],
    rule: &QuadratureRule,
) -> Result<ParityReport> {
    let mut rows = Vec::with_capacity(epsilons.len());
    for &epsilon in epsilons {
        rows.push(ParityRow {
            delta,
            epsilon,
            r_odd: connection_condition_residual(ef, Parity::Odd, delta, epsilon, rule)?,
            r_even: connection_condition_residual(ef, Parity::Even, delta, epsilon, rule)?,
        });
    }
    let xs: Vec<f64> = rows.iter().map(|r| r.epsilon).collect();
    let ys: Vec<f64> = rows.iter().map(|r| r.r_even.abs()).collect();
    Ok(ParityReport {
        rows,
        fitted_slope: loglog_slope(&xs, &ys),
        expected_slope: ef.state.s - 1.0,
    })
}

/// Least-squares slope of ln|y| against ln x.
pub fn loglog_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let pts: Vec<(f64, f64)> = xs
        .iter()
        .zip(ys)
        .map(|(&x, &y)| (x.ln(), y.abs().ln()))
        .collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    sxy / sxx
}

/// Zeros of Φ on (0, x_cutoff), counted as sign changes on a fine grid.
pub fn count_nodes(ef: &Eigenfunction, samples: usize) -> usize {
    let x_max = ef.x_cutoff();
    let mut prev: f64 = 0.0;
    let mut nodes = 0;
    for i in 1..=samples {
        let x = x_max * i as f64 / samples as f64;
        let (phi, _, _) = ef.half_line(x);
        // the far tail underflows to exact zeros
        if phi == 0.0 {
            continue;
        }
        if prev != 0.0 && phi.signum() != prev.signum() {
            nodes += 1;
        }
        prev = phi;
    }
    nodes
}

/// Slope of ln|Φ| against ln x over the given probes; tends to s as x → 0.
pub fn small_x_exponent(ef: &Eigenfunction, xs: &[f64]) -> f64 {
    let ys: Vec<f64> = xs.iter().map(|&x| evaluate(ef, x).phi).collect();
    loglog_slope(xs, &ys)
}

/// Symmetric grid of `samples` points on [−x_max, x_max].
pub fn symmetric_grid(x_max: f64, samples: usize) -> Vec<f64> {
    if samples < 2 {
        return vec![0.0];
    }
    let step = 2.0 * x_max / (samples - 1) as f64;
    (0..samples)
        .map(|i| {
            // mirror the two halves so the grid is exactly symmetric
            let j = i.min(samples - 1 - i);
            let x = -x_max + j as f64 * step;
            let x = if 2 * j + 1 == samples { 0.0 } else { x };
            if i > j {
                -x
            } else {
                x
            }
        })
        .collect()
}
