//! g1 → −g1 flips the spectrum and, through Cψ*, the sign of the current.

use dkp_core::current::{assemble_spin0, charge_conjugate, current};
use dkp_core::special::QuadratureRule;
use dkp_core::spectrum::{energy_level, CouplingConfig};
use dkp_core::wavefunction::Eigenfunction;

fn main() -> Result<(), dkp_core::DkpError> {
    let particle = CouplingConfig::spin0(1.0, 0.3, 0.2)?;
    let anti = CouplingConfig::spin0(1.0, -0.3, 0.2)?;
    for n in 0..4 {
        let e = energy_level(&particle, n)?.energy;
        let ec = energy_level(&anti, n)?.energy;
        println!("n = {n}: E = {e:+.15}, E(-g1) = {ec:+.15}, bitwise mirror: {}", ec.to_bits() == (-e).to_bits());
    }

    let ef = Eigenfunction::normalized(&particle, 0, &QuadratureRule::default())?;
    for x in [-2.0, 0.5, 3.0] {
        let psi = assemble_spin0(&ef, x);
        let conj = charge_conjugate(&psi);
        let j = current(&psi);
        let jc = current(&conj);
        println!("x = {x:+}: j0 = {:+.6e}, j0 after C = {:+.6e}, energy after C = {:+.6}", j.j0, jc.j0, conj.energy);
    }
    Ok(())
}
