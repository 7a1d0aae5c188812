//! Normalized odd-parity eigenfunctions: nodes, the signed norm, the
//! averaged-energy Gram matrix and the behaviour at the origin.

use dkp_core::special::QuadratureRule;
use dkp_core::spectrum::CouplingConfig;
use dkp_core::wavefunction::{
    count_nodes, evaluate, orthogonality_matrix, small_x_exponent, weighted_norm, Eigenfunction,
};

fn main() -> Result<(), dkp_core::DkpError> {
    let rule = QuadratureRule::default();
    let config = CouplingConfig::spin0(1.0, 0.3, 0.2)?;
    let states: Vec<Eigenfunction> = (0..3)
        .map(|n| Eigenfunction::normalized(&config, n, &rule))
        .collect::<Result<_, _>>()?;

    for ef in &states {
        let probes = [1e-6, 1e-5, 1e-4];
        println!(
            "n = {}  E = {:.12}  N = {:.6}  nodes = {}  norm = {:+.12}  small-x exponent = {:.6} (s = {:.6})",
            ef.state.n,
            ef.energy(),
            ef.norm_const,
            count_nodes(ef, 20_000),
            weighted_norm(ef, &rule)?,
            small_x_exponent(ef, &probes),
            ef.state.s,
        );
    }

    println!("\nGram matrix with weight ((E_i + E_j)/2 + g1/|x|)/m:");
    for row in orthogonality_matrix(&states, &rule)? {
        let cells: Vec<String> = row.iter().map(|v| format!("{v:+.3e}")).collect();
        println!("  {}", cells.join("  "));
    }

    let ef = &states[1];
    println!("\nn = 1 near the origin:");
    for x in [-1e-2, -1e-4, 0.0, 1e-4, 1e-2] {
        let v = evaluate(ef, x);
        println!("  x = {x:+.0e}  phi = {:+.6e}  dphi = {:+.6e}", v.phi, v.dphi);
    }

    let anti = CouplingConfig::spin0(1.0, -0.3, 0.2)?;
    let ef = Eigenfunction::normalized(&anti, 0, &rule)?;
    println!("\nantiparticle branch: E = {:.12}, signed norm = {:+.12}", ef.energy(), weighted_norm(&ef, &rule)?);
    Ok(())
}
