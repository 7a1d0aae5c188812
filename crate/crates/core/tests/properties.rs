use dkp_core::current::{assemble_spin0, charge_conjugate, current_closed_form, ChannelWeights};
use dkp_core::special::{integrate, kummer_m, laguerre, QuadratureRule};
use dkp_core::wavefunction::{evaluate, Eigenfunction};
use dkp_core::{energy_level, spectrum, CouplingConfig};
use proptest::prelude::*;
use statrs::function::gamma::{gamma, ln_gamma};

fn rule() -> QuadratureRule {
    QuadratureRule::adaptive(1e-13, 1e-12)
}

/// N² from the Laguerre moment integrals ∫z^{a+1}e^{−z}L² and ∫z^a e^{−z}L².
fn closed_form_norm_sq(config: &CouplingConfig, n: usize) -> f64 {
    let st = energy_level(config, n).unwrap();
    let a = 2.0 * st.s - 1.0;
    let moment = (ln_gamma(n as f64 + a + 1.0) - ln_gamma(n as f64 + 1.0)).exp();
    let bracket = st.energy * (2.0 * n as f64 + a + 1.0) + config.g1 * st.lambda;
    config.m * st.lambda / (2.0 * moment * bracket.abs())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn laguerre_three_term_recurrence(n in 1usize..25, a in -0.9f64..4.0, z in 0.0f64..30.0) {
        let lm = laguerre(n - 1, a, z).unwrap();
        let l0 = laguerre(n, a, z).unwrap();
        let lp = laguerre(n + 1, a, z).unwrap();
        let nf = n as f64;
        let lhs = (nf + 1.0) * lp;
        let rhs = (2.0 * nf + a + 1.0 - z) * l0 - (nf + a) * lm;
        let scale = lhs.abs().max((2.0 * nf + a + 1.0 + z) * l0.abs()).max(1.0);
        prop_assert!((lhs - rhs).abs() <= 1e-11 * scale);
    }

    #[test]
    fn kummer_matches_laguerre(n in 0usize..15, a in -0.5f64..3.0, z in 0.0f64..20.0) {
        let m = kummer_m(-(n as f64), a + 1.0, z).unwrap();
        let binom = gamma(n as f64 + a + 1.0) / (gamma(n as f64 + 1.0) * gamma(a + 1.0));
        let l = laguerre(n, a, z).unwrap() / binom;
        prop_assert!((m - l).abs() <= 1e-10 * m.abs().max(1.0), "M = {m}, L/C = {l}");
    }

    #[test]
    fn spectrum_is_monotone_and_bound(g1 in 0.01f64..2.0, g2 in -0.45f64..0.45, m in 0.1f64..10.0) {
        prop_assume!(g1 * g1 + g2 * g2 < 0.24);
        let config = CouplingConfig::spin0(m, g1, g2).unwrap();
        let levels = spectrum(&config, 12).unwrap();
        for w in levels.windows(2) {
            prop_assert!(w[1].energy > w[0].energy);
        }
        for st in &levels {
            prop_assert!(st.energy > 0.0 && st.energy < m);
        }
    }

    #[test]
    fn eigenfunction_is_odd(g1 in 0.05f64..0.45, n in 0usize..6, x in 1e-4f64..30.0) {
        let config = CouplingConfig::spin0(1.0, g1, 0.0).unwrap();
        let ef = Eigenfunction::unnormalized(&config, n).unwrap();
        let p = evaluate(&ef, x);
        let q = evaluate(&ef, -x);
        prop_assert_eq!(p.phi, -q.phi);
        prop_assert_eq!(p.dphi, q.dphi);
    }

    #[test]
    fn charge_conjugation_maps_sign_of_g1(g1 in 0.05f64..0.45, g2 in -0.1f64..0.1, x in 0.01f64..20.0, n in 0usize..4) {
        let plus = CouplingConfig::spin0(1.0, g1, g2).unwrap();
        let minus = CouplingConfig::spin0(1.0, -g1, g2).unwrap();
        let ef_p = Eigenfunction::unnormalized(&plus, n).unwrap();
        let ef_m = Eigenfunction::unnormalized(&minus, n).unwrap();
        let cp = charge_conjugate(&assemble_spin0(&ef_p, x));
        let pm = assemble_spin0(&ef_m, x);
        prop_assert_eq!(cp.energy, pm.energy);
        for (a, b) in cp.components.iter().zip(&pm.components) {
            prop_assert_eq!(a.re, -b.re);
            prop_assert_eq!(a.im, -b.im);
        }
        let j_p = current_closed_form(&ef_p, &ChannelWeights::default(), x);
        let j_m = current_closed_form(&ef_m, &ChannelWeights::default(), x);
        prop_assert!((j_p.j0 + j_m.j0).abs() <= 1e-14 * j_p.j0.abs());
    }
}

#[test]
fn normalization_matches_moment_integrals() {
    for &(g1, g2) in &[(0.3, 0.0), (0.3, 0.2), (-0.25, 0.1), (0.45, 0.1)] {
        let config = CouplingConfig::spin0(1.0, g1, g2).unwrap();
        for n in 0..5 {
            let ef = Eigenfunction::normalized(&config, n, &rule()).unwrap();
            let want = closed_form_norm_sq(&config, n).sqrt();
            let got = ef.norm_const.abs();
            assert!((got - want).abs() < 1e-9 * want, "g1={g1} g2={g2} n={n}: {got} vs {want}");
        }
    }
}

#[test]
fn quadrature_reproduces_gamma() {
    // Γ(1.6) = ∫₀^∞ t^{0.6} e^{−t} dt, truncated where the tail is below 1e−17
    let r = integrate(|t: f64| t.powf(0.6) * (-t).exp(), 0.0, 50.0, &rule()).unwrap();
    assert!((r.value - gamma(1.6)).abs() < 1e-12);
    // endpoint singularity t^{−0.4}
    let r = integrate(|t: f64| t.powf(-0.4) * (-t).exp(), 0.0, 50.0, &rule()).unwrap();
    assert!((r.value - gamma(0.6)).abs() < 1e-9);
}

#[test]
fn derivative_matches_finite_difference() {
    let config = CouplingConfig::spin0(1.0, 0.3, 0.2).unwrap();
    for n in 0..4 {
        let ef = Eigenfunction::unnormalized(&config, n).unwrap();
        for &x in &[0.05, 0.7, 3.0, 12.0] {
            let h = 1e-4 * x;
            let fd = (evaluate(&ef, x + h).phi - evaluate(&ef, x - h).phi) / (2.0 * h);
            let d = evaluate(&ef, x).dphi;
            assert!((fd - d).abs() < 1e-6 * d.abs().max(1e-3), "n={n} x={x}");
        }
    }
}
