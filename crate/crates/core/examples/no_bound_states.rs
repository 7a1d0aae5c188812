//! With g1 = 0 the inverse-square attraction alone binds nothing: the shooting
//! mismatch keeps one sign over the whole gap (−m, m).

use dkp_core::oracle::{energy_grid, scan_mismatch, sign_changes, solve_level, OracleOptions};
use dkp_core::spectrum::{energy_level, CouplingConfig};

fn main() -> Result<(), dkp_core::DkpError> {
    let opts = OracleOptions::default();
    for g2 in [0.1, 0.2, 0.3, 0.45] {
        let config = CouplingConfig::spin0(1.0, 0.0, g2)?;
        let points = scan_mismatch(&config, &energy_grid(-1.0, 1.0, 1000), &opts);
        let lo = points.iter().map(|p| p.mismatch).fold(f64::INFINITY, f64::min);
        let hi = points.iter().map(|p| p.mismatch).fold(f64::NEG_INFINITY, f64::max);
        println!(
            "g2 = {g2:<4}: {} sign changes, mismatch in [{lo:.6}, {hi:.6}]; closed form: {}; shooting: {}",
            sign_changes(&points).len(),
            energy_level(&config, 0).unwrap_err(),
            solve_level(&config, 0, &opts).unwrap_err(),
        );
    }

    let config = CouplingConfig::spin0(1.0, 0.3, 0.0)?;
    let points = scan_mismatch(&config, &energy_grid(0.9, 1.0, 400), &opts);
    println!("\ng1 = 0.3 on (0.9, 1): sign changes near");
    for (a, b) in sign_changes(&points).iter().take(6) {
        println!("  [{a:.6}, {b:.6}]");
    }
    Ok(())
}
