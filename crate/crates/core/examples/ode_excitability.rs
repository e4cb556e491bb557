//! The space-free system ε u' = f(u) − v, v' = u − c: an oscillating core at
//! c = 0 and an excitable rest state at c = 1.05.

use hopf_fhn::model::f_cubic;
use hopf_fhn::pde_sim::ode_simulate;

fn main() -> hopf_fhn::Result<()> {
    let eps = 0.1;
    for (c, kick) in [(0.0, 0.1), (1.05, -0.1), (1.05, -1.55)] {
        let traj = ode_simulate(c, eps, 60.0, 1e-4, (c + kick, f_cubic(c)))?;
        let min = traj.u.iter().copied().fold(f64::INFINITY, f64::min);
        println!(
            "c = {c:<4} u(0) = {:+.2}: {:<11} min u = {min:+.3}, final u = {:+.5}, period {}",
            c + kick,
            traj.tail.classification.as_str(),
            traj.u.last().unwrap(),
            traj.tail.period.map_or("-".into(), |t| format!("{t:.3}"))
        );
    }
    Ok(())
}
