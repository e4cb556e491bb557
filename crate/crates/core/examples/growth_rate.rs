//! Compares the growth rate of a small ground-mode perturbation in the
//! simulation with Re λ₀ from the spectral solver.

use hopf_fhn::bifurcation::{find_p0, PolynomialFamily};
use hopf_fhn::model::{stationary_state, HeterogeneityProfile, ModelParams};
use hopf_fhn::pde_sim::modal_growth_rate;
use hopf_fhn::spectral::eigen_pair;

fn main() -> hopf_fhn::Result<()> {
    let template = ModelParams::new(0.1, 1.0, 1.0, 0.0, 41)?;
    let p0 = find_p0(&template, &PolynomialFamily { a: 1.0 }, (1.0, 4.0))?.p0;
    for p in [0.9 * p0, 1.1 * p0] {
        let params = template.with_p(p)?;
        let profile = HeterogeneityProfile::polynomial(p, 1.0);
        let lambda = eigen_pair(0, &stationary_state(&params, &profile)?, &params)?.lambda_plus;
        let fit = modal_growth_rate(&params, &profile, lambda, 1e-6, 5.0, 1e-4)?;
        println!(
            "p = {p:.4}: Re lambda0 = {:+.6}, fitted slope = {:+.6}, relative gap {:.2}%",
            lambda.re,
            fit.rate,
            100.0 * (fit.rate / lambda.re - 1.0).abs()
        );
    }
    Ok(())
}
