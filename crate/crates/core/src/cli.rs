//! Command-line front end. [`dispatch`] parses arguments, runs one
//! subcommand and maps the outcome to an exit code: 0 on success, 1 for
//! usage or configuration problems, 2 when the numerics fail.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::bifurcation::{find_p0, p_grid, stability_sweep, HopfPoint, SweepEntry};
use crate::center_manifold::{lyapunov_report, LyapunovReport};
use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::model::{f_cubic, stationary_state};
use crate::pde_sim::{ode_simulate, simulate, FieldState, SimOptions, SimOutcome, TraceProbe};
use crate::spectral::spectrum;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 1;
pub const EXIT_NUMERICAL: i32 = 2;

/// Grid used by `reproduce` for its time-dependent runs unless `--nx` is given.
pub const REPRODUCE_SIM_NX: usize = 21;
/// `reproduce` simulates at `p₀(1 ± REPRODUCE_OFFSET)`.
pub const REPRODUCE_OFFSET: f64 = 0.05;
const DEFAULT_BRACKET: (f64, f64) = (1.0, 4.0);

#[derive(Debug, Parser)]
#[command(name = "hopf-fhn", version, about = "Spectral, bifurcation and simulation tools for a heterogeneous FitzHugh-Nagumo model")]
struct Cli {
    /// JSON configuration file
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Output directory
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,
    /// Worker threads for sweeps
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,
    /// Override the number of grid nodes
    #[arg(long, global = true, value_name = "N")]
    nx: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sturm-Liouville eigenvalues and temporal eigenvalues
    Spectrum(SpectrumArgs),
    /// Locate p0 and write a stability sweep
    Bifurcate(BifurcateArgs),
    /// Center-manifold coefficients and first Lyapunov coefficient
    Lyapunov(LyapunovArgs),
    /// Integrate the reaction-diffusion system
    Simulate(SimulateArgs),
    /// Integrate the space-free system
    Ode(OdeArgs),
    /// Stability sweep over p
    Sweep(SweepArgs),
    /// Full pipeline: p0, Lyapunov report, sweep, runs above and below p0
    Reproduce(ReproduceArgs),
}

#[derive(Debug, Args)]
struct SpectrumArgs {
    #[arg(long)]
    p: Option<f64>,
    #[arg(long, default_value_t = 5)]
    modes: usize,
    /// Write one `x,u_n` CSV per mode into DIR
    #[arg(long, value_name = "DIR")]
    dump_eigenfunctions: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct BifurcateArgs {
    #[arg(long, default_value_t = DEFAULT_BRACKET.0)]
    p_min: f64,
    #[arg(long, default_value_t = DEFAULT_BRACKET.1)]
    p_max: f64,
    #[arg(long, default_value_t = 0.1)]
    p_step: f64,
}

#[derive(Debug, Args)]
struct LyapunovArgs {
    /// Defaults to the computed p0
    #[arg(long)]
    p: Option<f64>,
    /// Write `x,re,im` of w20 to FILE
    #[arg(long, value_name = "FILE")]
    w20_csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SimulateArgs {
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    t_end: Option<f64>,
    #[arg(long)]
    dt: Option<f64>,
    /// Comma-separated times at which `x,u,v` snapshots are written
    #[arg(long, value_delimiter = ',', value_name = "T1,T2,...")]
    snapshot_times: Vec<f64>,
    /// Write the `t,u(-a),u(0)` trace
    #[arg(long)]
    probe: bool,
}

#[derive(Debug, Args)]
struct OdeArgs {
    #[arg(long, allow_hyphen_values = true)]
    c: f64,
    #[arg(long, default_value_t = 60.0)]
    t_end: f64,
    #[arg(long, default_value_t = 1e-4)]
    dt: f64,
    /// Initial u (default c - 0.5)
    #[arg(long, allow_hyphen_values = true)]
    u0: Option<f64>,
    /// Initial v (default f(c))
    #[arg(long, allow_hyphen_values = true)]
    v0: Option<f64>,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[arg(long, default_value_t = 0.0)]
    p_min: f64,
    #[arg(long, default_value_t = 4.0)]
    p_max: f64,
    #[arg(long, default_value_t = 0.1)]
    p_step: f64,
}

#[derive(Debug, Args)]
struct ReproduceArgs {
    /// Length of the two runs (default from the config)
    #[arg(long)]
    t_end: Option<f64>,
}

/// Runs the command line `argv` (program name first) and returns the exit code.
pub fn dispatch<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
        }
    };
    match run(cli) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(err: &Error) -> i32 {
    if err.is_numerical() {
        EXIT_NUMERICAL
    } else {
        EXIT_CONFIG
    }
}

struct Context {
    config: Option<RunConfig>,
    out: Option<PathBuf>,
    threads: Option<usize>,
}

impl Context {
    fn config(&self) -> Result<&RunConfig> {
        self.config.as_ref().ok_or_else(|| Error::Config("this command needs --config FILE".into()))
    }

    fn out_dir(&self, default: &str) -> Result<PathBuf> {
        let dir = self.out.clone().unwrap_or_else(|| PathBuf::from(default));
        fs::create_dir_all(&dir)?;
        Ok(dir)
    }

    fn with_pool<R: Send>(&self, job: impl FnOnce() -> R + Send) -> Result<R> {
        match self.threads {
            Some(n) => {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build()
                    .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
                Ok(pool.install(job))
            }
            None => Ok(job()),
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    let mut config = cli.config.as_deref().map(RunConfig::load).transpose()?;
    if let (Some(cfg), Some(nx)) = (config.as_mut(), cli.nx) {
        cfg.nx = nx;
        cfg.validate()?;
    }
    if cli.threads == Some(0) {
        return Err(Error::Config("--threads must be at least 1".into()));
    }
    let ctx = Context { config, out: cli.out, threads: cli.threads };
    match cli.command {
        Command::Spectrum(a) => cmd_spectrum(&ctx, a),
        Command::Bifurcate(a) => cmd_bifurcate(&ctx, a),
        Command::Lyapunov(a) => cmd_lyapunov(&ctx, a),
        Command::Simulate(a) => cmd_simulate(&ctx, a),
        Command::Ode(a) => cmd_ode(&ctx, a),
        Command::Sweep(a) => cmd_sweep(&ctx, a),
        Command::Reproduce(a) => cmd_reproduce(&ctx, a, cli.nx),
    }
}

/// Full double precision, 17 significant digits.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn write_csv<W: Write>(sink: W, header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<()> {
    let mut w = csv::Writer::from_writer(sink);
    w.write_record(header)?;
    for row in rows {
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

fn write_csv_file(path: &Path, header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<()> {
    write_csv(fs::File::create(path)?, header, rows)
}

/// Writes to `dir/name` when an output directory was requested, else to stdout.
fn emit_csv(ctx: &Context, name: &str, header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<()> {
    match &ctx.out {
        Some(_) => write_csv_file(&ctx.out_dir(".")?.join(name), header, rows),
        None => write_csv(std::io::stdout().lock(), header, rows),
    }
}

fn write_json(path: &Path, value: &Value) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}

fn cmd_spectrum(ctx: &Context, args: SpectrumArgs) -> Result<()> {
    let cfg = ctx.config()?;
    if args.modes == 0 {
        return Err(Error::Config("--modes must be at least 1".into()));
    }
    let p = cfg.resolve_p(args.p)?;
    let params = cfg.params(p)?;
    let st = stationary_state(&params, &cfg.profile(p))?;
    let pairs = spectrum(args.modes, &st, &params)?;
    let rows = pairs.iter().map(|e| {
        vec![e.n.to_string(), fmt_f64(e.nu_n), fmt_f64(e.lambda_plus.re), fmt_f64(e.lambda_plus.im)]
    });
    emit_csv(ctx, "spectrum.csv", &["n", "nu_n", "re_lambda", "im_lambda"], rows)?;
    if let Some(dir) = args.dump_eigenfunctions {
        fs::create_dir_all(&dir)?;
        for e in &pairs {
            let rows = st.grid.nodes().iter().zip(&e.u_n).map(|(x, u)| vec![fmt_f64(*x), fmt_f64(*u)]);
            write_csv_file(&dir.join(format!("mode_{}.csv", e.n)), &["x", "u_n"], rows)?;
        }
    }
    Ok(())
}

fn sweep_rows(entries: &[SweepEntry]) -> Vec<Vec<String>> {
    entries
        .iter()
        .map(|e| match &e.row {
            Ok(r) => vec![
                fmt_f64(r.p),
                fmt_f64(r.nu0),
                fmt_f64(r.re_lambda0),
                fmt_f64(r.im_lambda0),
                r.classification.as_str().to_string(),
            ],
            Err(err) => {
                log::warn!("sweep row p = {} failed: {err}", e.p);
                vec![fmt_f64(e.p), "nan".into(), "nan".into(), "nan".into(), "failed".into()]
            }
        })
        .collect()
}

const SWEEP_HEADER: [&str; 5] = ["p", "nu0", "re_lambda0", "im_lambda0", "classification"];

fn run_sweep(ctx: &Context, cfg: &RunConfig, lo: f64, hi: f64, step: f64) -> Result<Vec<SweepEntry>> {
    if !(step > 0.0 && hi >= lo && lo >= 0.0) {
        return Err(Error::Config(format!("bad sweep range [{lo}, {hi}] step {step}")));
    }
    let template = cfg.params(lo)?;
    let family = cfg.family();
    let ps = p_grid(lo, hi, step);
    ctx.with_pool(|| stability_sweep(&ps, &template, family.as_ref()))?
}

fn hopf_json(hp: &HopfPoint) -> Value {
    json!({
        "p0": hp.p0,
        "nu0": hp.nu0,
        "lambda_re": hp.lambda.re,
        "lambda_im": hp.lambda.im,
        "bracket": [hp.bracket.0, hp.bracket.1],
        "evaluations": hp.evaluations,
    })
}

fn cmd_bifurcate(ctx: &Context, args: BifurcateArgs) -> Result<()> {
    let cfg = ctx.config()?;
    let template = cfg.params(args.p_min.max(0.0))?;
    let hp = find_p0(&template, cfg.family().as_ref(), (args.p_min, args.p_max))?;
    println!("p0 = {}", fmt_f64(hp.p0));
    let entries = run_sweep(ctx, cfg, args.p_min, args.p_max, args.p_step)?;
    let dir = ctx.out_dir(".")?;
    write_csv_file(&dir.join("sweep.csv"), &SWEEP_HEADER, sweep_rows(&entries))?;
    write_json(&dir.join("p0.json"), &hopf_json(&hp))
}

fn lyapunov_json(r: &LyapunovReport) -> Value {
    json!({
        "p": r.p,
        "C": r.c,
        "omega0": r.omega0,
        "g20": r.g20,
        "g11": r.g11,
        "g21": { "re": r.g21.re, "im": r.g21.im },
        "l1": r.l1,
        "l1_alt": r.l1_alt,
        "residual": r.residual,
    })
}

fn w20_rows(r: &LyapunovReport) -> Vec<Vec<String>> {
    r.x.iter().zip(&r.w20_profile).map(|(x, w)| vec![fmt_f64(*x), fmt_f64(w.re), fmt_f64(w.im)]).collect()
}

fn lyapunov_at(cfg: &RunConfig, p: f64) -> Result<LyapunovReport> {
    let params = cfg.params(p)?;
    let st = stationary_state(&params, &cfg.profile(p))?;
    lyapunov_report(&st, &params)
}

fn cmd_lyapunov(ctx: &Context, args: LyapunovArgs) -> Result<()> {
    let cfg = ctx.config()?;
    let p = match args.p {
        Some(p) => p,
        None => find_p0(&cfg.params(0.0)?, cfg.family().as_ref(), DEFAULT_BRACKET)?.p0,
    };
    let report = lyapunov_at(cfg, p)?;
    let text = serde_json::to_string_pretty(&lyapunov_json(&report))?;
    match &ctx.out {
        Some(_) => fs::write(ctx.out_dir(".")?.join("lyapunov.json"), text + "\n")?,
        None => println!("{text}"),
    }
    if let Some(path) = args.w20_csv {
        write_csv_file(&path, &["x", "re", "im"], w20_rows(&report))?;
    }
    Ok(())
}

fn probe_rows(probe: &TraceProbe) -> Vec<Vec<String>> {
    probe
        .times
        .iter()
        .zip(&probe.samples)
        .map(|(t, s)| std::iter::once(fmt_f64(*t)).chain(s.iter().map(|v| fmt_f64(*v))).collect())
        .collect()
}

fn snapshot_rows(x: &[f64], s: &FieldState) -> Vec<Vec<String>> {
    x.iter().zip(&s.u).zip(&s.v).map(|((x, u), v)| vec![fmt_f64(*x), fmt_f64(*u), fmt_f64(*v)]).collect()
}

fn run_summary(p: f64, nx: usize, opts: &SimOptions, out: &SimOutcome) -> Value {
    json!({
        "p": p,
        "nx": nx,
        "dt": opts.dt,
        "t_end": opts.t_end,
        "classification": out.tail.classification.as_str(),
        "peak_to_peak": out.tail.peak_to_peak,
        "period": out.tail.period,
    })
}

/// Runs one simulation and writes its probe trace, snapshots and summary
/// into `dir` with file names prefixed by `tag`.
fn simulate_into(
    dir: &Path,
    tag: &str,
    cfg: &RunConfig,
    p: f64,
    opts: &SimOptions,
    write_probe: bool,
) -> Result<(SimOutcome, Value)> {
    let params = cfg.params(p)?;
    let out = simulate(&params, &cfg.profile(p), opts)?;
    let grid = params.grid();
    if write_probe {
        write_csv_file(&dir.join(format!("{tag}probe.csv")), &["t", "u_left", "u_center"], probe_rows(&out.probe))?;
    }
    for snap in &out.snapshots {
        let name = format!("{tag}snapshot_t{}.csv", snap.t);
        write_csv_file(&dir.join(name), &["x", "u", "v"], snapshot_rows(grid.nodes(), snap))?;
    }
    let summary = run_summary(p, params.nx, opts, &out);
    Ok((out, summary))
}

fn cmd_simulate(ctx: &Context, args: SimulateArgs) -> Result<()> {
    let cfg = ctx.config()?;
    let p = cfg.resolve_p(args.p)?;
    let opts = SimOptions {
        t_end: args.t_end.unwrap_or(cfg.t_end),
        dt: args.dt.unwrap_or(cfg.dt),
        snapshot_times: args.snapshot_times,
        ..Default::default()
    };
    if opts.snapshot_times.iter().any(|t| !(*t >= 0.0 && *t <= opts.t_end)) {
        return Err(Error::Config("snapshot times must lie in [0, t_end]".into()));
    }
    let dir = ctx.out_dir(".")?;
    let (_, summary) = simulate_into(&dir, "", cfg, p, &opts, args.probe)?;
    println!("{}", serde_json::to_string_pretty(&summary)?);
    Ok(())
}

fn ode_rows(c: f64, eps: f64, t_end: f64, dt: f64, init: (f64, f64)) -> Result<Vec<Vec<String>>> {
    let traj = ode_simulate(c, eps, t_end, dt, init)?;
    Ok((0..traj.times.len())
        .map(|k| vec![fmt_f64(traj.times[k]), fmt_f64(traj.u[k]), fmt_f64(traj.v[k])])
        .collect())
}

fn cmd_ode(ctx: &Context, args: OdeArgs) -> Result<()> {
    let eps = ctx.config.as_ref().map_or(0.1, |c| c.epsilon);
    let init = (args.u0.unwrap_or(args.c - 0.5), args.v0.unwrap_or(f_cubic(args.c)));
    let rows = ode_rows(args.c, eps, args.t_end, args.dt, init)?;
    emit_csv(ctx, "ode.csv", &["t", "u", "v"], rows)
}

fn cmd_sweep(ctx: &Context, args: SweepArgs) -> Result<()> {
    let cfg = ctx.config()?;
    let entries = run_sweep(ctx, cfg, args.p_min, args.p_max, args.p_step)?;
    emit_csv(ctx, "sweep.csv", &SWEEP_HEADER, sweep_rows(&entries))
}

/// Interval in which the transition was reported for the reference setup.
pub const REFERENCE_INTERVAL: (f64, f64) = (2.0, 2.1);

fn cmd_reproduce(ctx: &Context, args: ReproduceArgs, nx_override: Option<usize>) -> Result<()> {
    let cfg = ctx.config()?;
    let dir = ctx.out_dir("reproduce")?;
    let mut files = Vec::new();

    let hp = find_p0(&cfg.params(0.0)?, cfg.family().as_ref(), DEFAULT_BRACKET)?;
    write_json(&dir.join("p0.json"), &hopf_json(&hp))?;
    files.push("p0.json".to_string());

    let report = lyapunov_at(cfg, hp.p0)?;
    write_json(&dir.join("lyapunov.json"), &lyapunov_json(&report))?;
    write_csv_file(&dir.join("w20.csv"), &["x", "re", "im"], w20_rows(&report))?;
    files.extend(["lyapunov.json".into(), "w20.csv".into()]);

    let p_hi = (2.0 * hp.p0).ceil().max(DEFAULT_BRACKET.1);
    let entries = run_sweep(ctx, cfg, 0.0, p_hi, 0.1)?;
    write_csv_file(&dir.join("sweep.csv"), &SWEEP_HEADER, sweep_rows(&entries))?;
    files.push("sweep.csv".into());

    let mut sim_cfg = cfg.clone();
    sim_cfg.nx = nx_override.unwrap_or(REPRODUCE_SIM_NX);
    let t_end = args.t_end.unwrap_or(cfg.t_end);
    let opts = SimOptions {
        t_end,
        dt: cfg.dt,
        snapshot_times: [0.0, 0.25, 0.5, 0.75, 1.0].iter().map(|f| f * t_end).collect(),
        ..Default::default()
    };
    let mut runs = serde_json::Map::new();
    for (tag, factor) in [("above", 1.0 + REPRODUCE_OFFSET), ("below", 1.0 - REPRODUCE_OFFSET)] {
        let prefix = format!("{tag}_");
        let (out, summary) = simulate_into(&dir, &prefix, &sim_cfg, factor * hp.p0, &opts, true)?;
        files.push(format!("{prefix}probe.csv"));
        files.extend(out.snapshots.iter().map(|s| format!("{prefix}snapshot_t{}.csv", s.t)));
        runs.insert(tag.into(), summary);
    }

    for (name, c) in [("ode_c0.csv", 0.0), ("ode_c1.05.csv", 1.05)] {
        let rows = ode_rows(c, cfg.epsilon, 60.0, cfg.dt, (c - 0.5, f_cubic(c)))?;
        write_csv_file(&dir.join(name), &["t", "u", "v"], rows)?;
        files.push(name.into());
    }

    let in_interval = hp.p0 > REFERENCE_INTERVAL.0 && hp.p0 < REFERENCE_INTERVAL.1;
    write_json(
        &dir.join("report.json"),
        &json!({
            "d": cfg.d,
            "p0": hp.p0,
            "reference_interval": [REFERENCE_INTERVAL.0, REFERENCE_INTERVAL.1],
            "p0_in_reference_interval": in_interval,
            "l1": report.l1,
            "runs": runs,
        }),
    )?;
    files.push("report.json".into());
    if !in_interval {
        log::warn!(
            "p0 = {:.6} lies outside ({}, {}) for d = {}",
            hp.p0,
            REFERENCE_INTERVAL.0,
            REFERENCE_INTERVAL.1,
            cfg.d
        );
    }

    files.sort();
    write_json(
        &dir.join("manifest.json"),
        &json!({
            "tool": env!("CARGO_PKG_NAME"),
            "version": env!("CARGO_PKG_VERSION"),
            "config": cfg,
            "simulation_nx": sim_cfg.nx,
            "files": files,
        }),
    )?;
    println!("p0 = {}", fmt_f64(hp.p0));
    println!("wrote {} files to {}", files.len() + 1, dir.display());
    Ok(())
}
