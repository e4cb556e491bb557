//! Method-of-lines runs just above and just below p₀ on the dx = 0.1 grid:
//! the first settles to the stationary state, the second keeps oscillating.

use hopf_fhn::bifurcation::{find_p0, PolynomialFamily};
use hopf_fhn::model::{HeterogeneityProfile, ModelParams};
use hopf_fhn::pde_sim::{simulate, SimOptions};

fn main() -> hopf_fhn::Result<()> {
    let template = ModelParams::new(0.1, 1.0, 1.0, 0.0, 21)?;
    let p0 = find_p0(&template, &PolynomialFamily { a: 1.0 }, (1.0, 4.0))?.p0;
    println!("p0 on the 21-node grid: {p0:.6}");

    let opts = SimOptions { t_end: 200.0, ..Default::default() };
    for p in [1.05 * p0, 0.95 * p0] {
        let params = template.with_p(p)?;
        let out = simulate(&params, &HeterogeneityProfile::polynomial(p, 1.0), &opts)?;
        let left = out.probe.series(0);
        let last = out.probe.samples.len() - 1;
        println!(
            "p = {p:.4}: {:<13} peak-to-peak {:.3e}, period {}, u(-a) = {:+.4}, u(0) = {:+.4} at t = {}",
            out.classification().as_str(),
            out.tail.peak_to_peak,
            out.tail.period.map_or("-".into(), |t| format!("{t:.3}")),
            left[last],
            out.center[last],
            out.probe.times[last]
        );
    }
    Ok(())
}
