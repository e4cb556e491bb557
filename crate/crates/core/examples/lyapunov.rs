//! Center-manifold coefficients and the first Lyapunov coefficient at p₀.

use hopf_fhn::bifurcation::{find_p0, PolynomialFamily};
use hopf_fhn::center_manifold::{lyapunov_report, reduced_equation_coeffs};
use hopf_fhn::model::{stationary_state, HeterogeneityProfile, ModelParams};

fn main() -> hopf_fhn::Result<()> {
    let template = ModelParams::new(0.1, 1.0, 1.0, 0.0, 201)?;
    let p0 = find_p0(&template, &PolynomialFamily { a: 1.0 }, (1.0, 4.0))?.p0;
    let params = template.with_p(p0)?;
    let st = stationary_state(&params, &HeterogeneityProfile::polynomial(p0, 1.0))?;

    let r = lyapunov_report(&st, &params)?;
    println!("p0      = {:.8}", r.p);
    println!("C       = {:.8}", r.c);
    println!("omega0  = {:.8}", r.omega0);
    println!("g20     = {:.8}", r.g20);
    println!("g11     = {:.8}", r.g11);
    println!("g21     = {:.8}", r.g21);
    println!("l1      = {:.12}", r.l1);
    println!("l1_alt  = {:.12}  (relative gap {:.1e})", r.l1_alt, r.residual);
    println!("onset is {}", if r.l1 < 0.0 { "supercritical" } else { "subcritical" });

    let reduced = reduced_equation_coeffs(&r, params.epsilon);
    println!("z' = {:.4} z + {:.4} (z^2 terms) + {:.4} z^2 conj(z)", reduced.lambda1, reduced.quadratic, reduced.cubic);

    // With c = 0 the quadratic terms vanish and l1 = -3 sqrt(eps) / (8 eps).
    let flat = stationary_state(&template, &HeterogeneityProfile::constant(0.0, 1.0))?;
    println!("c = 0: l1 = {:.8}", lyapunov_report(&flat, &template)?.l1);
    Ok(())
}
