//! Constant profile c = 0: the Sturm-Liouville eigenvalues are known in
//! closed form, ν_n = d(nπ/2a)² − 3.

use std::f64::consts::PI;

use hopf_fhn::model::{stationary_state, HeterogeneityProfile, ModelParams};
use hopf_fhn::spectral::spectrum;

fn main() -> hopf_fhn::Result<()> {
    let params = ModelParams::new(0.1, 1.0, 1.0, 0.0, 201)?;
    let st = stationary_state(&params, &HeterogeneityProfile::constant(0.0, 1.0))?;

    println!("{:>2} {:>14} {:>14} {:>10}", "n", "nu_n", "exact", "error");
    for pair in spectrum(5, &st, &params)? {
        let exact = (pair.n as f64 * PI / 2.0).powi(2) - 3.0;
        println!(
            "{:>2} {:>14.9} {:>14.9} {:>10.2e}   lambda+ = {:.5}",
            pair.n,
            pair.nu_n,
            exact,
            (pair.nu_n - exact).abs(),
            pair.lambda_plus
        );
    }
    Ok(())
}
