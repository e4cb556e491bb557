//! Method-of-lines simulation of the reaction-diffusion system and of the
//! planar (space-free) system, with steady/oscillatory classification.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{f_cubic, stationary_state, HeterogeneityProfile, ModelParams};
use crate::quadrature::trapezoid;
use crate::spectral::eigen_pair;

/// A run is aborted once `|u|` exceeds this.
pub const DIVERGENCE_LIMIT: f64 = 1e6;
/// Tail peak-to-peak below this counts as steady.
pub const STEADY_THRESHOLD: f64 = 1e-5;
/// Tail peak-to-peak above this counts as oscillatory.
pub const OSCILLATORY_THRESHOLD: f64 = 1e-2;
/// Fraction of the run after which the tail window starts.
pub const TAIL_START: f64 = 0.8;
pub const DEFAULT_SAMPLE_DT: f64 = 1e-2;
pub const DEFAULT_PERTURBATION: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FieldState {
    pub t: f64,
    pub u: Vec<f64>,
    pub v: Vec<f64>,
}

/// Second-order central differences with the reflections `u[−1] = u[1]`,
/// `u[n] = u[n−2]` at the two ends.
pub fn laplacian_neumann(u: &[f64], dx: f64) -> Vec<f64> {
    let mut out = vec![0.0; u.len()];
    laplacian_into(u, dx, &mut out);
    out
}

fn laplacian_into(u: &[f64], dx: f64, out: &mut [f64]) {
    let n = u.len();
    assert!(n >= 3, "laplacian needs at least 3 nodes");
    let inv = 1.0 / (dx * dx);
    out[0] = 2.0 * (u[1] - u[0]) * inv;
    for i in 1..n - 1 {
        out[i] = (u[i - 1] - 2.0 * u[i] + u[i + 1]) * inv;
    }
    out[n - 1] = 2.0 * (u[n - 2] - u[n - 1]) * inv;
}

/// Stationary state built with the discrete Laplacian, so that it is an exact
/// equilibrium of the semi-discrete system.
pub fn discrete_stationary_state(params: &ModelParams, profile: &HeterogeneityProfile) -> FieldState {
    let grid = params.grid();
    let u: Vec<f64> = grid.nodes().iter().map(|&x| profile.value(x)).collect();
    let lap = laplacian_neumann(&u, grid.dx());
    let v = u.iter().zip(&lap).map(|(&ub, &l)| f_cubic(ub) + params.d * l).collect();
    FieldState { t: 0.0, u, v }
}

/// Conservative explicit limit `ε dx² / (2d)` on the time step.
pub fn stability_limit(params: &ModelParams) -> f64 {
    params.epsilon * params.dx() * params.dx() / (2.0 * params.d)
}

/// Classical RK4 for `u_t = (f(u) − v + d u_xx)/ε`, `v_t = u − c(x)` with
/// preallocated stage buffers.
#[derive(Debug, Clone)]
pub struct Rk4Integrator {
    epsilon: f64,
    d: f64,
    dx: f64,
    c: Vec<f64>,
    lap: Vec<f64>,
    stage_u: Vec<f64>,
    stage_v: Vec<f64>,
    ku: [Vec<f64>; 4],
    kv: [Vec<f64>; 4],
}

impl Rk4Integrator {
    pub fn new(params: &ModelParams, profile: &HeterogeneityProfile) -> Self {
        let grid = params.grid();
        let n = grid.len();
        let z = || vec![0.0; n];
        Self {
            epsilon: params.epsilon,
            d: params.d,
            dx: grid.dx(),
            c: grid.nodes().iter().map(|&x| profile.value(x)).collect(),
            lap: z(),
            stage_u: z(),
            stage_v: z(),
            ku: [z(), z(), z(), z()],
            kv: [z(), z(), z(), z()],
        }
    }

    fn rhs(&mut self, u: &[f64], v: &[f64], k: usize) {
        laplacian_into(u, self.dx, &mut self.lap);
        let inv_eps = 1.0 / self.epsilon;
        for i in 0..u.len() {
            self.ku[k][i] = (f_cubic(u[i]) - v[i] + self.d * self.lap[i]) * inv_eps;
            self.kv[k][i] = u[i] - self.c[i];
        }
    }

    fn stage(&mut self, state: &FieldState, from: usize, h: f64) {
        for i in 0..state.u.len() {
            self.stage_u[i] = state.u[i] + h * self.ku[from][i];
            self.stage_v[i] = state.v[i] + h * self.kv[from][i];
        }
    }

    /// Advances `state` by one step of size `dt` in place.
    pub fn step(&mut self, state: &mut FieldState, dt: f64) -> Result<()> {
        assert_eq!(state.u.len(), self.c.len());
        self.rhs(&state.u, &state.v, 0);
        for (k, h) in [(1, 0.5 * dt), (2, 0.5 * dt), (3, dt)] {
            self.stage(state, k - 1, h);
            let (su, sv) = (std::mem::take(&mut self.stage_u), std::mem::take(&mut self.stage_v));
            self.rhs(&su, &sv, k);
            self.stage_u = su;
            self.stage_v = sv;
        }
        let w = dt / 6.0;
        let mut worst = 0.0_f64;
        for i in 0..state.u.len() {
            state.u[i] += w * (self.ku[0][i] + 2.0 * self.ku[1][i] + 2.0 * self.ku[2][i] + self.ku[3][i]);
            state.v[i] += w * (self.kv[0][i] + 2.0 * self.kv[1][i] + 2.0 * self.kv[2][i] + self.kv[3][i]);
            worst = worst.max(state.u[i].abs());
        }
        state.t += dt;
        if !(worst <= DIVERGENCE_LIMIT) || state.v.iter().any(|x| !x.is_finite()) {
            return Err(Error::Divergence { t: state.t, value: worst });
        }
        Ok(())
    }
}

/// One RK4 step; allocates an integrator, so loops should hold an
/// [`Rk4Integrator`] instead.
pub fn rk4_step(state: &FieldState, params: &ModelParams, profile: &HeterogeneityProfile, dt: f64) -> Result<FieldState> {
    if !(dt > 0.0) {
        return Err(Error::InvalidParams(format!("dt must be positive, got {dt}")));
    }
    warn_if_unstable(params, dt);
    let mut next = state.clone();
    Rk4Integrator::new(params, profile).step(&mut next, dt)?;
    Ok(next)
}

fn warn_if_unstable(params: &ModelParams, dt: f64) {
    let limit = stability_limit(params);
    if dt > limit {
        log::warn!("dt = {dt:e} exceeds the explicit stability guide eps*dx^2/(2d) = {limit:e}");
    }
}

/// Observed order of RK4 from runs with steps `dt`, `dt/2`, `dt/4`:
/// `log₂(‖y_dt − y_dt/2‖ / ‖y_dt/2 − y_dt/4‖)` in the max-norm.
pub fn rk4_self_convergence(
    params: &ModelParams,
    profile: &HeterogeneityProfile,
    initial: &FieldState,
    t_end: f64,
    dt: f64,
) -> Result<f64> {
    let run = |h: f64| -> Result<FieldState> {
        let mut s = initial.clone();
        let mut integ = Rk4Integrator::new(params, profile);
        for _ in 0..(t_end / h).round() as u64 {
            integ.step(&mut s, h)?;
        }
        Ok(s)
    };
    let (a, b, c) = (run(dt)?, run(dt / 2.0)?, run(dt / 4.0)?);
    let diff = |x: &FieldState, y: &FieldState| {
        x.u.iter().zip(&y.u).chain(x.v.iter().zip(&y.v)).map(|(p, q)| (p - q).abs()).fold(0.0, f64::max)
    };
    Ok((diff(&a, &b) / diff(&b, &c)).log2())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    Steady,
    Oscillatory,
    Indeterminate,
}

impl Classification {
    pub fn as_str(&self) -> &'static str {
        match self {
            Classification::Steady => "steady",
            Classification::Oscillatory => "oscillatory",
            Classification::Indeterminate => "indeterminate",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TailSummary {
    pub classification: Classification,
    pub peak_to_peak: f64,
    pub mean: f64,
    /// Mean spacing of upward crossings of the tail mean.
    pub period: Option<f64>,
}

/// Classifies the samples with `t ≥ window_start`.
pub fn classify_tail(times: &[f64], values: &[f64], window_start: f64) -> TailSummary {
    let idx: Vec<usize> = (0..times.len()).filter(|&i| times[i] >= window_start).collect();
    if idx.is_empty() {
        return TailSummary { classification: Classification::Indeterminate, peak_to_peak: f64::NAN, mean: f64::NAN, period: None };
    }
    let (mut lo, mut hi, mut sum) = (f64::INFINITY, f64::NEG_INFINITY, 0.0);
    for &i in &idx {
        lo = lo.min(values[i]);
        hi = hi.max(values[i]);
        sum += values[i];
    }
    let mean = sum / idx.len() as f64;
    let peak_to_peak = hi - lo;
    let classification = if peak_to_peak < STEADY_THRESHOLD {
        Classification::Steady
    } else if peak_to_peak > OSCILLATORY_THRESHOLD {
        Classification::Oscillatory
    } else {
        Classification::Indeterminate
    };

    let mut crossings = Vec::new();
    for w in idx.windows(2) {
        let (a, b) = (values[w[0]] - mean, values[w[1]] - mean);
        if a < 0.0 && b >= 0.0 {
            let s = a / (a - b);
            crossings.push(times[w[0]] + s * (times[w[1]] - times[w[0]]));
        }
    }
    let period = (crossings.len() >= 2)
        .then(|| (crossings[crossings.len() - 1] - crossings[0]) / (crossings.len() - 1) as f64);
    TailSummary { classification, peak_to_peak, mean, period }
}

/// Time series of `u` at a few nodes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TraceProbe {
    pub probe_x: Vec<f64>,
    pub times: Vec<f64>,
    /// `samples[k][j]`: value at probe `j`, time `times[k]`.
    pub samples: Vec<Vec<f64>>,
}

impl TraceProbe {
    pub fn series(&self, probe: usize) -> Vec<f64> {
        self.samples.iter().map(|s| s[probe]).collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum InitialCondition {
    /// Discrete stationary state plus `amplitude · u₀` on `u`.
    Perturbed { amplitude: f64 },
    Custom(FieldState),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimOptions {
    pub t_end: f64,
    pub dt: f64,
    pub sample_dt: f64,
    /// Probe coordinates; `None` means `{−a, 0}`.
    pub probe_x: Option<Vec<f64>>,
    pub snapshot_times: Vec<f64>,
    pub initial: InitialCondition,
}

impl Default for SimOptions {
    fn default() -> Self {
        Self {
            t_end: 600.0,
            dt: 1e-4,
            sample_dt: DEFAULT_SAMPLE_DT,
            probe_x: None,
            snapshot_times: Vec::new(),
            initial: InitialCondition::Perturbed { amplitude: DEFAULT_PERTURBATION },
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimOutcome {
    pub final_state: FieldState,
    pub probe: TraceProbe,
    /// `u(0, t)` at the probe sample times.
    pub center: Vec<f64>,
    pub tail: TailSummary,
    pub snapshots: Vec<FieldState>,
}

impl SimOutcome {
    pub fn classification(&self) -> Classification {
        self.tail.classification
    }
}

/// Normalised ground eigenfunction on the simulation grid.
pub fn ground_mode(params: &ModelParams, profile: &HeterogeneityProfile) -> Result<Vec<f64>> {
    let st = stationary_state(params, profile)?;
    Ok(eigen_pair(0, &st, params)?.u_n)
}

/// Integrates to `t_end` and classifies `u(0, t)` over `[0.8 t_end, t_end]`.
pub fn simulate(params: &ModelParams, profile: &HeterogeneityProfile, opts: &SimOptions) -> Result<SimOutcome> {
    params.validate()?;
    if !(opts.t_end > 0.0 && opts.dt > 0.0 && opts.sample_dt > 0.0) {
        return Err(Error::InvalidParams("t_end, dt and sample_dt must be positive".into()));
    }
    warn_if_unstable(params, opts.dt);
    let grid = params.grid();
    let mut state = match &opts.initial {
        InitialCondition::Perturbed { amplitude } => {
            let mut s = discrete_stationary_state(params, profile);
            let u0 = ground_mode(params, profile)?;
            s.u.iter_mut().zip(&u0).for_each(|(u, m)| *u += amplitude * m);
            s
        }
        InitialCondition::Custom(s) => {
            if s.u.len() != grid.len() || s.v.len() != grid.len() {
                return Err(Error::InvalidParams("initial state does not match the grid".into()));
            }
            s.clone()
        }
    };
    let t0 = state.t;

    let probe_x = opts.probe_x.clone().unwrap_or_else(|| vec![-params.a, 0.0]);
    let probe_idx: Vec<usize> = probe_x.iter().map(|&x| grid.nearest_index(x)).collect();
    let center = grid.center_index();
    let steps = (opts.t_end / opts.dt).round() as u64;
    let every = ((opts.sample_dt / opts.dt).round() as u64).max(1);
    let mut snap_steps: Vec<(u64, usize)> = opts
        .snapshot_times
        .iter()
        .enumerate()
        .map(|(k, &t)| (((t - t0) / opts.dt).round().max(0.0) as u64, k))
        .collect();
    snap_steps.sort();
    let mut snapshots = vec![None; opts.snapshot_times.len()];

    let mut probe = TraceProbe { probe_x: probe_idx.iter().map(|&i| grid.nodes()[i]).collect(), times: Vec::new(), samples: Vec::new() };
    let mut center_series = Vec::new();
    let mut record = |s: &FieldState, step: u64, probe: &mut TraceProbe| {
        let t = t0 + step as f64 * opts.dt;
        probe.times.push(t);
        probe.samples.push(probe_idx.iter().map(|&i| s.u[i]).collect());
        center_series.push(s.u[center]);
    };

    let mut integrator = Rk4Integrator::new(params, profile);
    let mut next_snap = 0;
    record(&state, 0, &mut probe);
    for step in 0..=steps {
        while next_snap < snap_steps.len() && snap_steps[next_snap].0 == step {
            let mut snap = state.clone();
            snap.t = t0 + step as f64 * opts.dt;
            snapshots[snap_steps[next_snap].1] = Some(snap);
            next_snap += 1;
        }
        if step == steps {
            break;
        }
        integrator.step(&mut state, opts.dt)?;
        if (step + 1) % every == 0 {
            record(&state, step + 1, &mut probe);
        }
    }
    state.t = t0 + steps as f64 * opts.dt;
    let tail = classify_tail(&probe.times, &center_series, t0 + TAIL_START * opts.t_end);
    Ok(SimOutcome {
        final_state: state,
        probe,
        center: center_series,
        tail,
        snapshots: snapshots.into_iter().flatten().collect(),
    })
}

/// Sampled trajectory of the planar system `ε u_t = f(u) − v`, `v_t = u − c`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OdeTrajectory {
    pub c: f64,
    pub times: Vec<f64>,
    pub u: Vec<f64>,
    pub v: Vec<f64>,
    pub tail: TailSummary,
}

pub fn ode_simulate(c: f64, epsilon: f64, t_end: f64, dt: f64, initial: (f64, f64)) -> Result<OdeTrajectory> {
    ode_simulate_sampled(c, epsilon, t_end, dt, initial, DEFAULT_SAMPLE_DT)
}

pub fn ode_simulate_sampled(
    c: f64,
    epsilon: f64,
    t_end: f64,
    dt: f64,
    initial: (f64, f64),
    sample_dt: f64,
) -> Result<OdeTrajectory> {
    if !(epsilon > 0.0 && t_end > 0.0 && dt > 0.0 && sample_dt > 0.0) {
        return Err(Error::InvalidParams("epsilon, t_end, dt and sample_dt must be positive".into()));
    }
    let rhs = |u: f64, v: f64| ((f_cubic(u) - v) / epsilon, u - c);
    let steps = (t_end / dt).round() as u64;
    let every = ((sample_dt / dt).round() as u64).max(1);
    let (mut u, mut v) = initial;
    let mut out = OdeTrajectory {
        c,
        times: vec![0.0],
        u: vec![u],
        v: vec![v],
        tail: TailSummary { classification: Classification::Indeterminate, peak_to_peak: 0.0, mean: 0.0, period: None },
    };
    for step in 1..=steps {
        let (a1, b1) = rhs(u, v);
        let (a2, b2) = rhs(u + 0.5 * dt * a1, v + 0.5 * dt * b1);
        let (a3, b3) = rhs(u + 0.5 * dt * a2, v + 0.5 * dt * b2);
        let (a4, b4) = rhs(u + dt * a3, v + dt * b3);
        u += dt / 6.0 * (a1 + 2.0 * a2 + 2.0 * a3 + a4);
        v += dt / 6.0 * (b1 + 2.0 * b2 + 2.0 * b3 + b4);
        if !(u.abs() <= DIVERGENCE_LIMIT && v.is_finite()) {
            return Err(Error::Divergence { t: step as f64 * dt, value: u.abs() });
        }
        if step % every == 0 {
            out.times.push(step as f64 * dt);
            out.u.push(u);
            out.v.push(v);
        }
    }
    out.tail = classify_tail(&out.times, &out.u, TAIL_START * t_end);
    Ok(out)
}

/// Growth rate of the ground-mode component of a small perturbation,
/// measured from a simulation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModalGrowth {
    pub times: Vec<f64>,
    /// `|z(t)|` where `(a, b) = z (1, 1/λ) + c.c.` and `a`, `b` are the
    /// projections of `u − ū`, `v − v̄` on `u₀`.
    pub amplitude: Vec<f64>,
    /// Least-squares slope of `ln |z|`.
    pub rate: f64,
}

/// Runs from the discrete stationary state plus `amplitude · u₀` and fits
/// the exponential rate of the mode-0 amplitude over `[0, t_end]`.
///
/// `lambda` (with nonzero imaginary part) fixes the modal coordinates used
/// to separate the oscillation from the envelope.
pub fn modal_growth_rate(
    params: &ModelParams,
    profile: &HeterogeneityProfile,
    lambda: Complex64,
    amplitude: f64,
    t_end: f64,
    dt: f64,
) -> Result<ModalGrowth> {
    if lambda.im == 0.0 {
        return Err(Error::InvalidParams("modal fit needs a complex eigenvalue".into()));
    }
    let base = discrete_stationary_state(params, profile);
    let u0 = ground_mode(params, profile)?;
    let dx = params.dx();
    let mut state = base.clone();
    state.u.iter_mut().zip(&u0).for_each(|(u, m)| *u += amplitude * m);

    let inv = lambda.inv();
    let project = |s: &FieldState| {
        let du: Vec<f64> = s.u.iter().zip(&base.u).zip(&u0).map(|((u, b), m)| (u - b) * m).collect();
        let dv: Vec<f64> = s.v.iter().zip(&base.v).zip(&u0).map(|((v, b), m)| (v - b) * m).collect();
        let (a, b) = (trapezoid(&du, dx), trapezoid(&dv, dx));
        let x = 0.5 * a;
        let y = (inv.re * x - 0.5 * b) / inv.im;
        x.hypot(y)
    };

    let steps = (t_end / dt).round() as u64;
    let every = ((DEFAULT_SAMPLE_DT / dt).round() as u64).max(1);
    let mut integrator = Rk4Integrator::new(params, profile);
    let mut times = vec![0.0];
    let mut amp = vec![project(&state)];
    for step in 1..=steps {
        integrator.step(&mut state, dt)?;
        if step % every == 0 {
            times.push(step as f64 * dt);
            amp.push(project(&state));
        }
    }
    let logs: Vec<f64> = amp.iter().map(|a| a.ln()).collect();
    let n = times.len() as f64;
    let tm = times.iter().sum::<f64>() / n;
    let lm = logs.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx) = (0.0, 0.0);
    for (t, l) in times.iter().zip(&logs) {
        sxy += (t - tm) * (l - lm);
        sxx += (t - tm) * (t - tm);
    }
    Ok(ModalGrowth { times, amplitude: amp, rate: sxy / sxx })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn laplacian_of_constant_is_zero() {
        assert!(laplacian_neumann(&[2.5; 11], 0.1).iter().all(|&v| v == 0.0));
    }

    #[test]
    fn laplacian_of_quadratic_interior() {
        let dx = 0.01;
        let u: Vec<f64> = (0..201).map(|i| (-1.0 + i as f64 * dx).powi(2)).collect();
        let lap = laplacian_neumann(&u, dx);
        for v in &lap[1..200] {
            assert!((v - 2.0).abs() < 1e-8);
        }
        assert!((lap[0] - 2.0).abs() > 1.0);
    }

    #[test]
    fn laplacian_of_neumann_cosine() {
        for &n in &[41usize, 81, 161] {
            let a = 1.0;
            let dx = 2.0 * a / (n - 1) as f64;
            let x: Vec<f64> = (0..n).map(|i| -a + i as f64 * dx).collect();
            let u: Vec<f64> = x.iter().map(|&x| (PI * x / a).cos()).collect();
            let lap = laplacian_neumann(&u, dx);
            let k2 = (PI / a).powi(2);
            let err = lap.iter().zip(&u).map(|(l, u)| (l + k2 * u).abs()).fold(0.0, f64::max);
            // Truncation error k⁴dx²/12.
            assert!(err < k2 * k2 * dx * dx / 12.0 * 1.01, "n={n}: {err}");
        }
    }

    #[test]
    fn stationary_state_is_a_fixed_point() {
        let params = ModelParams::new(0.1, 1.0, 1.0, 2.1, 21).unwrap();
        let prof = HeterogeneityProfile::polynomial(2.1, 1.0);
        let s0 = discrete_stationary_state(&params, &prof);
        let s1 = rk4_step(&s0, &params, &prof, 1e-4).unwrap();
        for (a, b) in s0.u.iter().zip(&s1.u).chain(s0.v.iter().zip(&s1.v)) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn divergence_is_detected() {
        let params = ModelParams::new(0.1, 1.0, 1.0, 0.0, 21).unwrap();
        let prof = HeterogeneityProfile::polynomial(0.0, 1.0);
        let mut s = discrete_stationary_state(&params, &prof);
        s.u.iter_mut().for_each(|u| *u = 50.0);
        let err = rk4_step(&s, &params, &prof, 0.1).unwrap_err();
        assert!(matches!(err, Error::Divergence { .. }));
    }

    #[test]
    fn rk4_is_fourth_order() {
        let params = ModelParams::new(0.1, 0.01, 1.0, 1.0, 11).unwrap();
        let prof = HeterogeneityProfile::polynomial(1.0, 1.0);
        let mut s = discrete_stationary_state(&params, &prof);
        for (u, x) in s.u.iter_mut().zip(params.grid().nodes()) {
            *u += 0.2 * (std::f64::consts::PI * x).cos();
        }
        let order = rk4_self_convergence(&params, &prof, &s, 0.5, 0.01).unwrap();
        assert!(order > 3.8, "order {order}");
    }

    #[test]
    fn tail_classification() {
        let times: Vec<f64> = (0..1000).map(|i| i as f64 * 0.01).collect();
        let flat: Vec<f64> = times.iter().map(|_| 0.3).collect();
        assert_eq!(classify_tail(&times, &flat, 8.0).classification, Classification::Steady);
        let wave: Vec<f64> = times.iter().map(|t| (2.0 * PI * t / 0.5).sin()).collect();
        let s = classify_tail(&times, &wave, 2.0);
        assert_eq!(s.classification, Classification::Oscillatory);
        assert!((s.period.unwrap() - 0.5).abs() < 1e-3);
        let small: Vec<f64> = times.iter().map(|t| 1e-3 * t.sin()).collect();
        assert_eq!(classify_tail(&times, &small, 0.0).classification, Classification::Indeterminate);
    }

    #[test]
    fn ode_oscillatory_core() {
        let traj = ode_simulate(0.0, 0.1, 60.0, 1e-3, (0.1, 0.0)).unwrap();
        assert_eq!(traj.tail.classification, Classification::Oscillatory);
    }

    #[test]
    fn ode_stable_equilibrium() {
        let c: f64 = 1.05;
        let traj = ode_simulate(c, 0.1, 60.0, 1e-3, (1.2, 2.0)).unwrap();
        assert_eq!(traj.tail.classification, Classification::Steady);
        assert!((traj.u.last().unwrap() - c).abs() < 1e-6);
        assert!((traj.v.last().unwrap() - f_cubic(c)).abs() < 1e-6);
    }

    #[test]
    fn ode_excitable_excursion() {
        let c: f64 = 1.05;
        let traj = ode_simulate(c, 0.1, 60.0, 1e-3, (-0.5, f_cubic(c))).unwrap();
        let min = traj.u.iter().copied().fold(f64::INFINITY, f64::min);
        assert!(min < -1.5, "no excursion: min u = {min}");
        assert_eq!(traj.tail.classification, Classification::Steady);
        assert!((traj.u.last().unwrap() - c).abs() < 1e-5);
    }
}
