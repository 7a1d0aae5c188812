//! Full DKP spinors rebuilt from Φ, and the conserved four-current.
//!
//! The current is computed from its matrix definition J^μ = ψ̄β^μψ/2 with
//! ψ̄ = ψ†η⁰. The component formulas J⁰ = [(E − A₀⁽¹⁾)/m] Σ|φ_I|² and
//! J¹ = (1/m) Im Σ φ_I† φ_I′ are kept separately as a cross-check.

use std::sync::OnceLock;

use num_complex::Complex64;
use serde::Serialize;

use crate::algebra::{build_representation, BetaRepresentation, IntMatrix, Spin};
use crate::error::{DkpError, Result};
use crate::wavefunction::{evaluate, symmetric_grid, Eigenfunction};

const WEIGHT_NORM_TOL: f64 = 1e-12;

fn representation(spin: Spin) -> &'static BetaRepresentation {
    static SPIN0: OnceLock<BetaRepresentation> = OnceLock::new();
    static SPIN1: OnceLock<BetaRepresentation> = OnceLock::new();
    match spin {
        Spin::Spin0 => SPIN0.get_or_init(|| build_representation(Spin::Spin0)),
        Spin::Spin1 => SPIN1.get_or_init(|| build_representation(Spin::Spin1)),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DkpSpinor {
    pub spin: Spin,
    pub components: Vec<Complex64>,
    pub x: f64,
    pub energy: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurrentSample {
    pub j0: f64,
    pub j1: f64,
}

/// Amplitudes of the two spin-1 channels.
///
/// The σ = + channel is a two-component block (ψ₃, ψ₄); `plus` holds its
/// polarization times c₊. The σ = − channel is the single component ψ₅.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChannelWeights {
    pub plus: [Complex64; 2],
    pub minus: Complex64,
}

impl ChannelWeights {
    /// (c₊, c₋) with the σ = + amplitude placed on ψ₃.
    pub fn from_pair(c_plus: Complex64, c_minus: Complex64) -> Result<Self> {
        Self::new([c_plus, Complex64::new(0.0, 0.0)], c_minus)
    }

    pub fn new(plus: [Complex64; 2], minus: Complex64) -> Result<Self> {
        let total = plus[0].norm_sqr() + plus[1].norm_sqr() + minus.norm_sqr();
        if (total - 1.0).abs() > WEIGHT_NORM_TOL {
            return Err(DkpError::InvalidParameter {
                name: "channel_weights",
                reason: format!("|c+|^2 + |c-|^2 = {total}, expected 1"),
            });
        }
        Ok(ChannelWeights { plus, minus })
    }

    pub fn plus_only() -> Self {
        ChannelWeights {
            plus: [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
            minus: Complex64::new(0.0, 0.0),
        }
    }
}

impl Default for ChannelWeights {
    fn default() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        ChannelWeights {
            plus: [Complex64::new(h, 0.0), Complex64::new(0.0, 0.0)],
            minus: Complex64::new(h, 0.0),
        }
    }
}

/// (E − A₀⁽¹⁾ ± i A₀⁽²⁾)/m with A₀⁽ᵏ⁾ = −g_k/|x|, for σ = ±1.
fn upper_to_middle(ef: &Eigenfunction, x: f64, sigma: f64) -> Complex64 {
    let ax = x.abs();
    let m = ef.config.m;
    let a1 = -ef.config.g1 / ax;
    let a2 = -ef.config.g2 / ax;
    Complex64::new(ef.state.energy - a1, sigma * a2) / m
}

/// φ₁ = Φ, φ₂ = (E − A₀⁽¹⁾ + iA₀⁽²⁾)Φ/m, φ₃ = iΦ′/m, φ₄ = φ₅ = 0.
///
/// At x = 0 the zero spinor is returned. φ₁ vanishes there while φ₂ and φ₃
/// grow like |x|^{s−1}; their current contributions vanish like |x|^{2s−1},
/// so the zero vector reproduces the limiting current.
pub fn assemble_spin0(ef: &Eigenfunction, x: f64) -> DkpSpinor {
    let zero = Complex64::new(0.0, 0.0);
    let mut components = vec![zero; 5];
    if x != 0.0 {
        let v = evaluate(ef, x);
        let phi = Complex64::new(v.phi, 0.0);
        let i_over_m = Complex64::new(0.0, 1.0 / ef.config.m);
        components[0] = phi;
        components[1] = upper_to_middle(ef, x, 1.0) * phi;
        components[2] = i_over_m * v.dphi;
    }
    DkpSpinor {
        spin: Spin::Spin0,
        components,
        x,
        energy: ef.state.energy,
    }
}

/// Ten-component spinor from the channel blocks
///
/// ```text
/// ψ_I⁽⁺⁾ = (ψ₃, ψ₄)   ψ_II⁽⁺⁾ = (ψ₆, ψ₇)   ψ_III⁽⁺⁾ = (ψ₁₀, −ψ₉)
/// ψ_I⁽⁻⁾ = ψ₅         ψ_II⁽⁻⁾ = ψ₂         ψ_III⁽⁻⁾ = ψ₁
/// ```
///
/// with ψ_I⁽σ⁾ = c_σ Φ, ψ_II⁽σ⁾ = (E − A₀⁽¹⁾ + iσA₀⁽²⁾)ψ_I⁽σ⁾/m,
/// ψ_III⁽σ⁾ = iψ_I⁽σ⁾′/m and ψ₈ = 0.
pub fn assemble_spin1(ef: &Eigenfunction, weights: &ChannelWeights, x: f64) -> DkpSpinor {
    let zero = Complex64::new(0.0, 0.0);
    let mut c = vec![zero; 10];
    if x != 0.0 {
        let v = evaluate(ef, x);
        let i_over_m = Complex64::new(0.0, 1.0 / ef.config.m);
        let up = upper_to_middle(ef, x, 1.0);
        let down = upper_to_middle(ef, x, -1.0);

        let plus_i = [weights.plus[0] * v.phi, weights.plus[1] * v.phi];
        let plus_d = [weights.plus[0] * v.dphi, weights.plus[1] * v.dphi];
        let minus_i = weights.minus * v.phi;
        let minus_d = weights.minus * v.dphi;

        // σ = +
        c[2] = plus_i[0];
        c[3] = plus_i[1];
        c[5] = up * plus_i[0];
        c[6] = up * plus_i[1];
        c[9] = i_over_m * plus_d[0];
        c[8] = -(i_over_m * plus_d[1]);
        // σ = −
        c[4] = minus_i;
        c[1] = down * minus_i;
        c[0] = i_over_m * minus_d;
    }
    DkpSpinor {
        spin: Spin::Spin1,
        components: c,
        x,
        energy: ef.state.energy,
    }
}

/// Spinor for the eigenfunction's own spin sector.
pub fn assemble(ef: &Eigenfunction, weights: &ChannelWeights, x: f64) -> DkpSpinor {
    match ef.config.spin {
        Spin::Spin0 => assemble_spin0(ef, x),
        Spin::Spin1 => assemble_spin1(ef, weights, x),
    }
}

pub(crate) fn apply(m: &IntMatrix, v: &[Complex64]) -> Vec<Complex64> {
    (0..m.dim())
        .map(|i| {
            (0..m.dim())
                .filter(|&j| m.get(i, j) != 0)
                .map(|j| v[j] * m.get(i, j) as f64)
                .sum()
        })
        .collect()
}

/// ψ̄ β^μ ψ / 2
pub fn current_component(spinor: &DkpSpinor, mu: usize) -> f64 {
    let rep = representation(spinor.spin);
    let beta_psi = apply(&rep.beta[mu], &spinor.components);
    let eta_beta_psi = apply(&rep.eta0, &beta_psi);
    let total: Complex64 = spinor
        .components
        .iter()
        .zip(&eta_beta_psi)
        .map(|(a, b)| a.conj() * b)
        .sum();
    0.5 * total.re
}

pub fn current(spinor: &DkpSpinor) -> CurrentSample {
    CurrentSample {
        j0: current_component(spinor, 0),
        j1: current_component(spinor, 1),
    }
}

/// J⁰ = [(E − A₀⁽¹⁾)/m] Σ_σ |φ_I⁽σ⁾|², J¹ = (1/m) Im Σ_σ φ_I⁽σ⁾† φ_I⁽σ⁾′.
pub fn current_closed_form(ef: &Eigenfunction, weights: &ChannelWeights, x: f64) -> CurrentSample {
    if x == 0.0 {
        return CurrentSample { j0: 0.0, j1: 0.0 };
    }
    let v = evaluate(ef, x);
    let m = ef.config.m;
    let (upper, upper_d): (Vec<Complex64>, Vec<Complex64>) = match ef.config.spin {
        Spin::Spin0 => (
            vec![Complex64::new(v.phi, 0.0)],
            vec![Complex64::new(v.dphi, 0.0)],
        ),
        Spin::Spin1 => {
            let amps = [weights.plus[0], weights.plus[1], weights.minus];
            (
                amps.iter().map(|c| c * v.phi).collect(),
                amps.iter().map(|c| c * v.dphi).collect(),
            )
        }
    };
    let density: f64 = upper.iter().map(|c| c.norm_sqr()).sum();
    let flux: Complex64 = upper.iter().zip(&upper_d).map(|(a, b)| a.conj() * b).sum();
    CurrentSample {
        j0: ef.charge_weight(x) * density,
        j1: flux.im / m,
    }
}

/// ψ → C ψ* with E → −E.
pub fn charge_conjugate(spinor: &DkpSpinor) -> DkpSpinor {
    let rep = representation(spinor.spin);
    let conj: Vec<Complex64> = spinor.components.iter().map(|c| c.conj()).collect();
    DkpSpinor {
        spin: spinor.spin,
        components: apply(&rep.conjugator, &conj),
        x: spinor.x,
        energy: -spinor.energy,
    }
}

/// Residual of the one-dimensional stationary DKP equation
/// [β⁰(E − A₀⁽¹⁾) + iβ¹ d/dx − m − i[P, β⁰]A₀⁽²⁾] ψ, given ψ and dψ/dx.
#[allow(clippy::too_many_arguments)]
pub fn dkp_equation_residual(
    spin: Spin,
    energy: f64,
    m: f64,
    g1: f64,
    g2: f64,
    x: f64,
    psi: &[Complex64],
    dpsi: &[Complex64],
) -> Vec<Complex64> {
    let rep = representation(spin);
    let a1 = -g1 / x.abs();
    let a2 = -g2 / x.abs();
    let i = Complex64::new(0.0, 1.0);
    let t0 = apply(&rep.beta[0], psi);
    let t1 = apply(&rep.beta[1], dpsi);
    let t2 = apply(&rep.nonminimal_vertex(0), psi);
    (0..psi.len())
        .map(|k| t0[k] * (energy - a1) + i * t1[k] - psi[k] * m - i * t2[k] * a2)
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WavefunctionSample {
    pub x: f64,
    pub phi: f64,
    pub dphi: f64,
    pub j0: f64,
    pub j1: f64,
}

/// Φ, Φ′ and the matrix-path current on a symmetric grid.
pub fn wavefunction_samples(
    ef: &Eigenfunction,
    weights: &ChannelWeights,
    x_max: f64,
    samples: usize,
) -> Vec<WavefunctionSample> {
    symmetric_grid(x_max, samples)
        .into_iter()
        .map(|x| {
            let v = evaluate(ef, x);
            let j = current(&assemble(ef, weights, x));
            WavefunctionSample {
                x,
                phi: v.phi,
                dphi: v.dphi,
                j0: j.j0,
                j1: j.j1,
            }
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurrentComparison {
    pub x: f64,
    pub j0_matrix: f64,
    pub j0_closed: f64,
    pub j1_matrix: f64,
    pub j1_closed: f64,
}

impl CurrentComparison {
    /// Largest gap between the two paths relative to the local current scale
    /// max(|J⁰|, |J¹|); zero where both paths vanish.
    pub fn relative_gap(&self) -> f64 {
        let scale = self
            .j0_matrix
            .abs()
            .max(self.j0_closed.abs())
            .max(self.j1_matrix.abs())
            .max(self.j1_closed.abs());
        if scale == 0.0 {
            return 0.0;
        }
        let gap = (self.j0_matrix - self.j0_closed)
            .abs()
            .max((self.j1_matrix - self.j1_closed).abs());
        gap / scale
    }
}

pub fn compare_currents(
    ef: &Eigenfunction,
    weights: &ChannelWeights,
    xs: &[f64],
) -> Vec<CurrentComparison> {
    xs.iter()
        .map(|&x| {
            let matrix = current(&assemble(ef, weights, x));
            let closed = current_closed_form(ef, weights, x);
            CurrentComparison {
                x,
                j0_matrix: matrix.j0,
                j0_closed: closed.j0,
                j1_matrix: matrix.j1,
                j1_closed: closed.j1,
            }
        })
        .collect()
}
