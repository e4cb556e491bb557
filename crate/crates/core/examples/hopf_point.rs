//! Where the ground eigenvalue ν₀(p) crosses zero, for a few diffusion
//! coefficients.

use hopf_fhn::bifurcation::{find_p0, PolynomialFamily};
use hopf_fhn::model::ModelParams;
use hopf_fhn::spectral::temporal_eigs;

fn main() -> hopf_fhn::Result<()> {
    let eps = 0.1;
    for d in [1.0, 0.5, 0.1] {
        let template = ModelParams::new(eps, d, 1.0, 0.0, 201)?;
        let hp = find_p0(&template, &PolynomialFamily { a: 1.0 }, (1.0, 4.0))?;
        println!(
            "d = {d:<4} p0 = {:.6}  nu0(p0) = {:+.1e}  lambda = {:.8}  (1/sqrt(eps) = {:.8}, {} solves)",
            hp.p0,
            hp.nu0,
            hp.lambda,
            1.0 / eps.sqrt(),
            hp.evaluations
        );
        for dp in [-0.05, 0.05] {
            let nu = hopf_fhn::bifurcation::ground_nu(&template, &PolynomialFamily { a: 1.0 }, hp.p0 + dp)?;
            println!("    p0 {dp:+}: Re lambda0 = {:+.5}", temporal_eigs(nu, eps).0.re);
        }
    }
    Ok(())
}
