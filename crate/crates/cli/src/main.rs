mod args;
mod commands;
mod render;
mod report;

use std::process::ExitCode;

use clap::Parser;
use jetlink_core::algebra::cache;
use jetlink_core::error::Error;

use args::Cli;

const CACHE_ENV: &str = "JETLINK_CACHE_DIR";

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::Parse { .. } | Error::UnknownSymbol(_) | Error::Config(_)) => 2,
        Some(Error::Validation(_)) => 3,
        Some(Error::HypothesisViolated { .. } | Error::NotJetSpanned { .. }) => 4,
        Some(Error::NotInI1 { .. }) => 5,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(dir) = std::env::var_os(CACHE_ENV).filter(|d| !d.is_empty()) {
        let dir = std::path::PathBuf::from(dir);
        if std::fs::create_dir_all(&dir).is_ok() {
            cache::set_cache_dir(Some(dir));
        }
    }
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("warning: --jobs ignored: {e}");
        }
    }
    match commands::run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
