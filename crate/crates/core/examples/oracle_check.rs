//! Shooting-method energies against the closed-form spectrum.

use dkp_core::oracle::{solve_level, OracleOptions};
use dkp_core::spectrum::{energy_level, gamma_of_energy, CouplingConfig};

fn main() -> Result<(), dkp_core::DkpError> {
    let opts = OracleOptions::default();
    println!("{:>4} {:>4} {:>2} {:>20} {:>20} {:>10} {:>5} {:>5} {:>10}", "g1", "g2", "n", "E closed form", "E shooting", "|diff|", "nodes", "iters", "gamma-s-n");
    for g1 in [0.1, 0.2, 0.3] {
        for g2 in [0.0, 0.1, 0.2] {
            let config = CouplingConfig::spin0(1.0, g1, g2)?;
            for n in 0..=5 {
                let exact = energy_level(&config, n)?;
                let r = solve_level(&config, n, &opts)?;
                let consistency = gamma_of_energy(&config, r.energy) - exact.s - n as f64;
                println!(
                    "{g1:>4} {g2:>4} {n:>2} {:>20.15} {:>20.15} {:>10.2e} {:>5} {:>5} {:>10.2e}",
                    exact.energy,
                    r.energy,
                    (r.energy - exact.energy).abs(),
                    r.node_count,
                    r.iterations,
                    consistency
                );
            }
        }
    }
    Ok(())
}
