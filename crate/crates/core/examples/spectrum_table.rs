//! Closed-form levels for a few couplings, with the weak-coupling reference.

use dkp_core::spectrum::{nonrelativistic_energy, spectrum, CouplingConfig};

fn main() -> Result<(), dkp_core::DkpError> {
    for (g1, g2) in [(0.3, 0.0), (0.3, 0.2), (-0.3, 0.2), (0.1, 0.0)] {
        let config = CouplingConfig::spin0(1.0, g1, g2)?;
        println!("g1 = {g1:+}, g2 = {g2}");
        println!("  {:>2} {:>20} {:>10} {:>12} {:>14}", "n", "E", "s", "gamma", "m - |E|");
        for level in spectrum(&config, 5)? {
            println!(
                "  {:>2} {:>20.15} {:>10.6} {:>12.6} {:>14.6e}",
                level.n,
                level.energy,
                level.s,
                level.gamma,
                level.binding_energy(config.m)
            );
        }
    }

    // E − (m − m g1²/(2(n+1)²)) shrinks by ≈16 per halving of g1
    println!("\nweak-coupling deviation, n = 0");
    let mut previous: Option<f64> = None;
    for g1 in [0.1, 0.05, 0.025, 0.0125] {
        let c = CouplingConfig::spin0(1.0, g1, 0.0)?;
        let d = (dkp_core::energy_level(&c, 0)?.energy - nonrelativistic_energy(&c, 0)?).abs();
        match previous {
            Some(p) => println!("  g1 = {g1:<7} deviation {d:.3e}  ratio {:.3}", p / d),
            None => println!("  g1 = {g1:<7} deviation {d:.3e}"),
        }
        previous = Some(d);
    }

    for (g1, g2) in [(0.0, 0.3), (0.4, 0.4)] {
        let c = CouplingConfig::spin0(1.0, g1, g2)?;
        println!("g1 = {g1}, g2 = {g2}: {}", spectrum(&c, 3).unwrap_err());
    }
    Ok(())
}
