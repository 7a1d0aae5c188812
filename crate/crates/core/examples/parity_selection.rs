//! The connection condition at the origin: the odd extension satisfies it,
//! the even extension leaves a residual that diverges like ε^{s−1}.

use dkp_core::special::QuadratureRule;
use dkp_core::spectrum::CouplingConfig;
use dkp_core::wavefunction::{parity_report, Eigenfunction};

fn main() -> Result<(), dkp_core::DkpError> {
    let rule = QuadratureRule::default();
    let config = CouplingConfig::spin0(1.0, 0.3, 0.0)?;
    for n in 0..2 {
        let ef = Eigenfunction::normalized(&config, n, &rule)?;
        let report = parity_report(&ef, 0.1, &[1e-2, 1e-3, 1e-4, 1e-5, 1e-6], &rule)?;
        println!("n = {n}");
        println!("  {:>8} {:>12} {:>12}", "epsilon", "R_odd", "R_even");
        for row in &report.rows {
            println!("  {:>8.0e} {:>12.3e} {:>12.5e}", row.epsilon, row.r_odd, row.r_even);
        }
        println!(
            "  even-residual slope {:.4} (s - 1 = {:.4})",
            report.fitted_slope, report.expected_slope
        );
    }
    Ok(())
}
