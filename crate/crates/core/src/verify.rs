//! Invariant suites with per-check measured values and thresholds.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::algebra::{build_representation, projector_ok, verify_algebra, verify_conjugation, Spin};
use crate::current::{compare_currents, current, assemble, ChannelWeights};
use crate::error::{DkpError, Result};
use crate::oracle::{energy_grid, scan_mismatch, sign_changes, solve_level, OracleOptions};
use crate::special::QuadratureRule;
use crate::spectrum::{energy_level, gamma_of_energy, nonrelativistic_energy, CouplingConfig};
use crate::wavefunction::{
    orthogonality_matrix, parity_report, small_x_exponent, symmetric_grid, wronskian_limit_check,
    loglog_slope, Eigenfunction,
};

pub const COUPLING_GRID_G1: [f64; 3] = [0.1, 0.2, 0.3];
pub const COUPLING_GRID_G2: [f64; 3] = [0.0, 0.1, 0.2];
pub const PARITY_DELTA: f64 = 0.1;
pub const PARITY_EPSILONS: [f64; 4] = [1e-2, 1e-3, 1e-4, 1e-5];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Algebra,
    Spectrum,
    Parity,
    Orthogonality,
    Oracle,
    Current,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Algebra,
        Suite::Spectrum,
        Suite::Parity,
        Suite::Orthogonality,
        Suite::Oracle,
        Suite::Current,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Algebra => "algebra",
            Suite::Spectrum => "spectrum",
            Suite::Parity => "parity",
            Suite::Orthogonality => "orthogonality",
            Suite::Oracle => "oracle",
            Suite::Current => "current",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = DkpError;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| DkpError::InvalidParameter {
                name: "suite",
                reason: format!("unknown suite `{s}`"),
            })
    }
}

/// How `measured` is compared with `threshold`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Comparison {
    Below,
    AtMost,
    Above,
    Equal,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub measured: f64,
    pub threshold: f64,
    pub comparison: Comparison,
    pub pass: bool,
}

impl Check {
    fn new(name: impl Into<String>, measured: f64, comparison: Comparison, threshold: f64) -> Self {
        let pass = match comparison {
            Comparison::Below => measured < threshold,
            Comparison::AtMost => measured <= threshold,
            Comparison::Above => measured > threshold,
            Comparison::Equal => measured == threshold,
        };
        Check {
            name: name.into(),
            measured,
            threshold,
            comparison,
            pass,
        }
    }

    fn within(name: impl Into<String>, measured: f64, lo: f64, hi: f64) -> Vec<Self> {
        let name = name.into();
        vec![
            Check::new(format!("{name} lower"), measured, Comparison::Above, lo),
            Check::new(format!("{name} upper"), measured, Comparison::Below, hi),
        ]
    }

    fn failed(name: impl Into<String>, err: &DkpError) -> Self {
        Check {
            name: format!("{} ({})", name.into(), err),
            measured: f64::NAN,
            threshold: f64::NAN,
            comparison: Comparison::Below,
            pass: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub pass: bool,
    pub checks: Vec<Check>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub pass: bool,
    pub suites: Vec<SuiteReport>,
}

fn collect(suite: Suite, body: impl FnOnce(&mut Vec<Check>) -> Result<()>) -> SuiteReport {
    let mut checks = Vec::new();
    if let Err(e) = body(&mut checks) {
        checks.push(Check::failed("suite aborted", &e));
    }
    SuiteReport {
        suite,
        pass: checks.iter().all(|c| c.pass),
        checks,
    }
}

fn grid_configs() -> Vec<CouplingConfig> {
    let mut out = Vec::new();
    for &g1 in &COUPLING_GRID_G1 {
        for &g2 in &COUPLING_GRID_G2 {
            if let Ok(c) = CouplingConfig::spin0(1.0, g1, g2) {
                if c.bound_state_gate().is_ok() {
                    out.push(c);
                }
            }
        }
    }
    out
}

fn bool_measure(ok: bool) -> f64 {
    if ok {
        1.0
    } else {
        0.0
    }
}

pub fn verify_suite(suite: Suite) -> SuiteReport {
    match suite {
        Suite::Algebra => algebra_suite(),
        Suite::Spectrum => spectrum_suite(),
        Suite::Parity => parity_suite(),
        Suite::Orthogonality => orthogonality_suite(),
        Suite::Oracle => oracle_suite(),
        Suite::Current => current_suite(),
    }
}

/// All suites, run on scoped threads and reported in a fixed order.
pub fn verify_all() -> VerifyReport {
    let suites: Vec<SuiteReport> = std::thread::scope(|scope| {
        let handles: Vec<_> = Suite::ALL
            .into_iter()
            .map(|s| scope.spawn(move || verify_suite(s)))
            .collect();
        handles
            .into_iter()
            .zip(Suite::ALL)
            .map(|(h, s)| {
                h.join().unwrap_or_else(|_| SuiteReport {
                    suite: s,
                    pass: false,
                    checks: vec![Check::failed("suite panicked", &DkpError::Domain {
                        function: "verify",
                        reason: s.name().into(),
                    })],
                })
            })
            .collect()
    });
    VerifyReport {
        pass: suites.iter().all(|s| s.pass),
        suites,
    }
}

fn algebra_suite() -> SuiteReport {
    collect(Suite::Algebra, |checks| {
        for spin in [Spin::Spin0, Spin::Spin1] {
            let rep = build_representation(spin);
            let alg = verify_algebra(&rep);
            let conj = verify_conjugation(&rep);
            checks.push(Check::new(
                format!("spin {spin}: max algebra residual over {} triples", alg.triples_checked),
                alg.max_residual as f64,
                Comparison::Equal,
                0.0,
            ));
            checks.push(Check::new(
                format!("spin {spin}: projector idempotent"),
                bool_measure(projector_ok(&rep)),
                Comparison::Equal,
                1.0,
            ));
            checks.push(Check::new(
                format!("spin {spin}: C anticommutes with beta"),
                bool_measure(conj.anticommute_beta),
                Comparison::Equal,
                1.0,
            ));
            checks.push(Check::new(
                format!("spin {spin}: C anticommutes with [P, beta]"),
                bool_measure(conj.anticommute_commutator),
                Comparison::Equal,
                1.0,
            ));
        }
        Ok(())
    })
}

fn spectrum_suite() -> SuiteReport {
    collect(Suite::Spectrum, |checks| {
        let reference = energy_level(&CouplingConfig::spin0(1.0, 0.3, 0.0)?, 0)?.energy;
        checks.push(Check::new(
            "E(g1=0.3, g2=0, n=0) vs 3/sqrt(10)",
            (reference - 3.0 / 10f64.sqrt()).abs(),
            Comparison::Below,
            1e-15,
        ));

        let mut conj_mismatch = 0usize;
        let mut g2_mismatch = 0usize;
        for c in grid_configs() {
            let flipped = CouplingConfig { g1: -c.g1, ..c };
            let mirrored = CouplingConfig { g2: -c.g2, ..c };
            for n in 0..=5 {
                let e = energy_level(&c, n)?.energy;
                if energy_level(&flipped, n)?.energy.to_bits() != (-e).to_bits() {
                    conj_mismatch += 1;
                }
                if energy_level(&mirrored, n)?.energy.to_bits() != e.to_bits() {
                    g2_mismatch += 1;
                }
            }
        }
        checks.push(Check::new(
            "levels not bit-flipped under g1 -> -g1",
            conj_mismatch as f64,
            Comparison::Equal,
            0.0,
        ));
        checks.push(Check::new(
            "levels changed under g2 -> -g2",
            g2_mismatch as f64,
            Comparison::Equal,
            0.0,
        ));

        for n in 0..2 {
            let deviation = |g1: f64| -> Result<f64> {
                let c = CouplingConfig::spin0(1.0, g1, 0.0)?;
                Ok((energy_level(&c, n)?.energy - nonrelativistic_energy(&c, n)?).abs())
            };
            let d = [deviation(0.1)?, deviation(0.05)?, deviation(0.025)?];
            checks.extend(Check::within(
                format!("n={n}: deviation ratio 0.1 -> 0.05"),
                d[0] / d[1],
                14.0,
                18.0,
            ));
            checks.extend(Check::within(
                format!("n={n}: deviation ratio 0.05 -> 0.025"),
                d[1] / d[2],
                14.0,
                18.0,
            ));
        }

        let critical = CouplingConfig::spin0(1.0, 0.4, 0.4)?;
        checks.push(Check::new(
            "critical coupling rejected",
            bool_measure(matches!(
                energy_level(&critical, 0),
                Err(DkpError::CriticalCoupling { .. })
            )),
            Comparison::Equal,
            1.0,
        ));
        let pure = CouplingConfig::spin0(1.0, 0.0, 0.3)?;
        checks.push(Check::new(
            "g1 = 0 reports no bound states",
            bool_measure(matches!(energy_level(&pure, 0), Err(DkpError::NoBoundStates))),
            Comparison::Equal,
            1.0,
        ));
        Ok(())
    })
}

fn parity_suite() -> SuiteReport {
    collect(Suite::Parity, |checks| {
        let rule = QuadratureRule::default();
        for (g1, g2) in [(0.3, 0.0), (0.3, 0.2)] {
            let c = CouplingConfig::spin0(1.0, g1, g2)?;
            let ef = Eigenfunction::normalized(&c, 0, &rule)?;
            let report = parity_report(&ef, PARITY_DELTA, &PARITY_EPSILONS, &rule)?;
            let worst_odd = report.rows.iter().map(|r| r.r_odd.abs()).fold(0.0, f64::max);
            let tag = format!("g1={g1} g2={g2}");
            checks.push(Check::new(
                format!("{tag}: max |R_odd|"),
                worst_odd,
                Comparison::Below,
                1e-9,
            ));
            checks.push(Check::new(
                format!("{tag}: |even slope - (s - 1)|"),
                (report.fitted_slope - report.expected_slope).abs(),
                Comparison::Below,
                0.05,
            ));
            if let Some(row) = report.rows.iter().find(|r| r.epsilon == 1e-4) {
                checks.push(Check::new(
                    format!("{tag}: |R_even|/|R_odd| at eps=1e-4"),
                    row.r_even.abs() / row.r_odd.abs().max(f64::MIN_POSITIVE),
                    Comparison::Above,
                    1e6,
                ));
            }
        }
        Ok(())
    })
}

fn orthogonality_suite() -> SuiteReport {
    collect(Suite::Orthogonality, |checks| {
        let rule = QuadratureRule::default();
        let c = CouplingConfig::spin0(1.0, 0.3, 0.2)?;
        let states = (0..3)
            .map(|n| Eigenfunction::normalized(&c, n, &rule))
            .collect::<Result<Vec<_>>>()?;
        let gram = orthogonality_matrix(&states, &rule)?;
        let mut off: f64 = 0.0;
        let mut diag: f64 = 0.0;
        for (i, row) in gram.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if i == j {
                    diag = diag.max((v - 1.0).abs());
                } else {
                    off = off.max(v.abs());
                }
            }
        }
        checks.push(Check::new("max |G_ii - 1|", diag, Comparison::Below, 1e-10));
        checks.push(Check::new("max |G_ij|, i != j", off, Comparison::Below, 1e-8));

        let anti = CouplingConfig { g1: -c.g1, ..c };
        let anti_state = Eigenfunction::normalized(&anti, 0, &rule)?;
        let anti_norm = orthogonality_matrix(&[anti_state], &rule)?[0][0];
        checks.push(Check::new(
            "antiparticle norm + 1",
            (anti_norm + 1.0).abs(),
            Comparison::Below,
            1e-10,
        ));

        let probes: Vec<f64> = (3..=5).map(|k| 10f64.powi(-k)).collect();
        let w = wronskian_limit_check(&states[0], &states[1], &probes);
        let slope = loglog_slope(&probes, &w);
        let s = states[0].state.s;
        checks.push(Check::new(
            "|Wronskian slope - 2s|",
            (slope - 2.0 * s).abs(),
            Comparison::Below,
            0.05,
        ));

        for ef in &states {
            let lambda = ef.state.lambda;
            let xs: Vec<f64> = (0..=400)
                .map(|k| (0.01 + (30.0 - 0.01) * k as f64 / 400.0) / lambda)
                .collect();
            let peak = xs.iter().map(|&x| ef.half_line(x).0.abs()).fold(0.0, f64::max);
            let worst = xs.iter().map(|&x| ef.ode_residual(x).abs()).fold(0.0, f64::max);
            checks.push(Check::new(
                format!("n={}: max ODE residual / max|phi|", ef.state.n),
                worst / peak,
                Comparison::Below,
                1e-8,
            ));
            let small: Vec<f64> = [1e-6, 1e-5, 1e-4].to_vec();
            checks.push(Check::new(
                format!("n={}: |small-x exponent - s|", ef.state.n),
                (small_x_exponent(ef, &small) - ef.state.s).abs(),
                Comparison::Below,
                1e-3,
            ));
        }
        Ok(())
    })
}

fn oracle_suite() -> SuiteReport {
    collect(Suite::Oracle, |checks| {
        let opts = OracleOptions::default();
        for c in grid_configs() {
            let mut worst: f64 = 0.0;
            let mut nodes_ok = true;
            let mut consistency: f64 = 0.0;
            for n in 0..=5 {
                let r = solve_level(&c, n, &opts)?;
                let exact = energy_level(&c, n)?;
                worst = worst.max((r.energy - exact.energy).abs() / c.m);
                nodes_ok &= r.node_count == n;
                if n <= 3 {
                    let level = gamma_of_energy(&c, r.energy) - exact.s;
                    consistency = consistency.max((level - n as f64).abs());
                }
            }
            let tag = format!("g1={} g2={}", c.g1, c.g2);
            checks.push(Check::new(
                format!("{tag}: max |E_oracle - E|/m, n<=5"),
                worst,
                Comparison::Below,
                1e-6,
            ));
            checks.push(Check::new(
                format!("{tag}: node counts equal n"),
                bool_measure(nodes_ok),
                Comparison::Equal,
                1.0,
            ));
            checks.push(Check::new(
                format!("{tag}: |gamma(E_oracle) - s - n|, n<=3"),
                consistency,
                Comparison::Below,
                1e-6,
            ));
        }

        let light = CouplingConfig::spin0(1.0, 0.3, 0.1)?;
        let heavy = CouplingConfig { m: 2.0, ..light };
        let e1 = solve_level(&light, 1, &opts)?.energy;
        let e2 = solve_level(&heavy, 1, &opts)?.energy;
        checks.push(Check::new(
            "mass scaling |E(m=2) - 2E(m=1)|/|2E(m=1)|",
            ((e2 - 2.0 * e1) / (2.0 * e1)).abs(),
            Comparison::Below,
            1e-6,
        ));

        for g2 in [0.1, 0.2, 0.3, 0.45] {
            let c = CouplingConfig::spin0(1.0, 0.0, g2)?;
            let pts = scan_mismatch(&c, &energy_grid(-c.m, c.m, 1000), &opts);
            let failures = pts.iter().filter(|p| p.error.is_some()).count();
            checks.push(Check::new(
                format!("g1=0 g2={g2}: mismatch sign changes over 1000 energies"),
                sign_changes(&pts).len() as f64,
                Comparison::Equal,
                0.0,
            ));
            checks.push(Check::new(
                format!("g1=0 g2={g2}: failed scan points"),
                failures as f64,
                Comparison::Equal,
                0.0,
            ));
        }
        Ok(())
    })
}

fn current_suite() -> SuiteReport {
    collect(Suite::Current, |checks| {
        let rule = QuadratureRule::default();
        for spin in [Spin::Spin0, Spin::Spin1] {
            let c = CouplingConfig::new(1.0, 0.3, 0.2, spin)?;
            for n in 0..3 {
                let ef = Eigenfunction::normalized(&c, n, &rule)?;
                let xs = symmetric_grid(20.0 / ef.state.lambda, 100);
                let rows = compare_currents(&ef, &ChannelWeights::default(), &xs);
                let gap = rows.iter().map(|r| r.relative_gap()).fold(0.0, f64::max);
                let j1 = rows
                    .iter()
                    .map(|r| r.j1_matrix.abs().max(r.j1_closed.abs()))
                    .fold(0.0, f64::max);
                let min_j0 = rows
                    .iter()
                    .filter(|r| r.x != 0.0 && r.j0_closed != 0.0)
                    .map(|r| r.j0_matrix.min(r.j0_closed))
                    .fold(f64::INFINITY, f64::min);
                let tag = format!("spin {spin} n={n}");
                checks.push(Check::new(
                    format!("{tag}: matrix vs closed-form relative gap"),
                    gap,
                    Comparison::Below,
                    1e-12,
                ));
                checks.push(Check::new(format!("{tag}: max |j1|"), j1, Comparison::Below, 1e-15));
                checks.push(Check::new(format!("{tag}: min j0 off the origin"), min_j0, Comparison::Above, 0.0));
            }
        }

        let c0 = CouplingConfig::spin0(1.0, 0.3, 0.2)?;
        let c1 = c0.with_spin(Spin::Spin1);
        let mut spectral_gap: f64 = 0.0;
        let mut current_gap: f64 = 0.0;
        for n in 0..3 {
            spectral_gap = spectral_gap.max((energy_level(&c0, n)?.energy - energy_level(&c1, n)?.energy).abs());
            let e0 = Eigenfunction::normalized(&c0, n, &rule)?;
            let e1 = Eigenfunction::normalized(&c1, n, &rule)?;
            for x in symmetric_grid(20.0 / e0.state.lambda, 100) {
                let a = current(&assemble(&e0, &ChannelWeights::plus_only(), x));
                let b = current(&assemble(&e1, &ChannelWeights::plus_only(), x));
                current_gap = current_gap.max((a.j0 - b.j0).abs()).max((a.j1 - b.j1).abs());
            }
        }
        checks.push(Check::new("spin 0 vs spin 1 level gap", spectral_gap, Comparison::Equal, 0.0));
        checks.push(Check::new(
            "spin 0 vs spin 1 current gap, weights (1, 0)",
            current_gap,
            Comparison::Below,
            1e-15,
        ));
        Ok(())
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn algebra_and_spectrum_suites_pass() {
        for s in [Suite::Algebra, Suite::Spectrum] {
            let r = verify_suite(s);
            assert!(r.pass, "{r:#?}");
        }
    }

    #[test]
    fn comparison_semantics() {
        assert!(Check::new("a", 0.5, Comparison::Below, 1.0).pass);
        assert!(!Check::new("a", 1.0, Comparison::Below, 1.0).pass);
        assert!(Check::new("a", 1.0, Comparison::AtMost, 1.0).pass);
        assert!(!Check::new("a", f64::NAN, Comparison::Below, 1.0).pass);
    }
}
