//! Parallel sweep of ν₀ and the leading temporal eigenvalue over p.

use hopf_fhn::bifurcation::{p_grid, stability_sweep, PolynomialFamily};
use hopf_fhn::model::ModelParams;

fn main() -> hopf_fhn::Result<()> {
    let template = ModelParams::new(0.1, 1.0, 1.0, 0.0, 201)?;
    let ps = p_grid(0.0, 4.0, 0.25);
    for entry in stability_sweep(&ps, &template, &PolynomialFamily { a: 1.0 })? {
        match entry.row {
            Ok(r) => println!(
                "p = {:>4.2}  nu0 = {:>+9.5}  lambda0 = {:>+9.4} {:>+8.4}i  {}",
                r.p,
                r.nu0,
                r.re_lambda0,
                r.im_lambda0,
                r.classification.as_str()
            ),
            Err(e) => println!("p = {:>4.2}  failed: {e}", entry.p),
        }
    }
    Ok(())
}
