//! Assemble full DKP spinors and compute J^μ = ψ†η⁰β^μψ/2, then compare with
//! the component formulas and across spins.

use num_complex::Complex64;

use dkp_core::current::{assemble, compare_currents, current, ChannelWeights};
use dkp_core::special::QuadratureRule;
use dkp_core::spectrum::CouplingConfig;
use dkp_core::wavefunction::{symmetric_grid, Eigenfunction};
use dkp_core::Spin;

fn main() -> Result<(), dkp_core::DkpError> {
    let rule = QuadratureRule::default();
    let spin0 = CouplingConfig::spin0(1.0, 0.3, 0.2)?;
    let spin1 = spin0.with_spin(Spin::Spin1);
    let ef0 = Eigenfunction::normalized(&spin0, 1, &rule)?;
    let ef1 = Eigenfunction::normalized(&spin1, 1, &rule)?;

    let psi = assemble(&ef1, &ChannelWeights::default(), 1.5);
    println!("spin-1 spinor at x = 1.5, weights (1/sqrt2, 1/sqrt2):");
    for (k, c) in psi.components.iter().enumerate() {
        println!("  psi{:<2} = {:+.6e} {:+.6e}i", k + 1, c.re, c.im);
    }

    let xs = symmetric_grid(30.0 / ef0.state.lambda, 100);
    for (label, ef) in [("spin 0", &ef0), ("spin 1", &ef1)] {
        let rows = compare_currents(ef, &ChannelWeights::default(), &xs);
        let gap = rows.iter().map(|r| r.relative_gap()).fold(0.0, f64::max);
        let j1 = rows.iter().map(|r| r.j1_matrix.abs()).fold(0.0, f64::max);
        let min_j0 = rows
            .iter()
            .filter(|r| r.x != 0.0)
            .map(|r| r.j0_matrix)
            .fold(f64::INFINITY, f64::min);
        println!("{label}: max relative gap {gap:.2e}, max |j1| {j1:.2e}, min j0 {min_j0:.3e}");
    }

    let phase = ChannelWeights::from_pair(Complex64::new(0.6, 0.0), Complex64::new(0.0, 0.8))?;
    let worst = xs
        .iter()
        .map(|&x| {
            let a = current(&assemble(&ef0, &ChannelWeights::plus_only(), x));
            let b = current(&assemble(&ef1, &phase, x));
            (a.j0 - b.j0).abs()
        })
        .fold(0.0, f64::max);
    println!("spin 0 vs spin 1 with weights (0.6, 0.8i): max |j0 difference| {worst:.2e}");
    Ok(())
}
