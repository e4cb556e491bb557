//! Drives the command-line front end in-process:
//! `cargo run --example cli -- spectrum --config cfg.json --modes 5`.

fn main() {
    std::process::exit(hopf_fhn::cli::dispatch(std::env::args_os()));
}
