//! The Prüfer phase θ(x; ν) for the ground mode, and how θ(a) moves with
//! ν and with p.

use hopf_fhn::model::{stationary_state, HeterogeneityProfile, ModelParams};
use hopf_fhn::spectral::{eigen_pair, shoot_theta, sign_changes, target_angle};

fn main() -> hopf_fhn::Result<()> {
    let p = 2.0;
    let params = ModelParams::new(0.1, 1.0, 1.0, p, 201)?;
    let st = stationary_state(&params, &HeterogeneityProfile::polynomial(p, 1.0))?;

    println!("theta(a) against nu at p = {p}:");
    for nu in [-3.0, -1.0, 0.0, 1.0, 5.0, 20.0] {
        let path = shoot_theta(nu, &st, &params);
        let laps = (path.theta_end - target_angle(0)) / std::f64::consts::PI;
        println!("  nu = {nu:>5.1}  theta(a) = {:>8.4}  ({laps:+.3} half-turns past pi/2)", path.theta_end);
    }

    println!("theta(a) at nu = 0 against p:");
    for p in [0.5, 1.0, 2.0, 3.0, 4.0] {
        let params = params.with_p(p)?;
        let st = stationary_state(&params, &HeterogeneityProfile::polynomial(p, 1.0))?;
        println!("  p = {p:.1}  theta(a) = {:.6}", shoot_theta(0.0, &st, &params).theta_end);
    }

    for n in 0..4 {
        let pair = eigen_pair(n, &st, &params)?;
        println!("mode {n}: nu = {:>10.6}, sign changes = {}", pair.nu_n, sign_changes(&pair.u_n));
    }
    Ok(())
}
