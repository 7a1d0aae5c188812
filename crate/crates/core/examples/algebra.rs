//! Build the 5- and 10-dimensional β-matrix representations and check the
//! trilinear algebra, the projector and the charge-conjugation matrix.

use dkp_core::algebra::{build_representation, projector_ok, verify_algebra, verify_conjugation, Spin};

fn main() {
    for spin in [Spin::Spin0, Spin::Spin1] {
        let rep = build_representation(spin);
        let alg = verify_algebra(&rep);
        let conj = verify_conjugation(&rep);
        println!("spin {spin} ({}x{})", rep.dim, rep.dim);
        println!("  triples checked     {}", alg.triples_checked);
        println!("  max residual        {}", alg.max_residual);
        println!("  projector P^2 = P   {}", projector_ok(&rep));
        println!("  P diagonal          {:?}", rep.projector.diagonal());
        println!("  {{C, beta}} = 0       {}", conj.anticommute_beta);
        println!("  {{C, [P, beta]}} = 0  {}", conj.anticommute_commutator);
        println!("  {{eta0 eta1, beta^mu}} = 0 per mu {:?}", conj.planar_beta_per_mu);
    }

    let rep = build_representation(Spin::Spin0);
    println!("\nbeta^1 (spin 0):");
    for row in rep.beta[1].rows() {
        println!("  {row:?}");
    }
}
