mod args;
mod commands;
mod failure;
mod figure;
mod output;

use std::process::ExitCode;

use anyhow::Context;
use clap::Parser;

use args::{Cli, Command};
use failure::{CmdResult, Failure};

fn configure_threads() -> CmdResult<()> {
    let Ok(v) = std::env::var("QCORR_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::config(format!("QCORR_THREADS must be a positive integer, got '{v}'")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .context("building the thread pool")
        .map_err(Failure::Numeric)
}

fn run(cli: Cli) -> CmdResult<()> {
    configure_threads()?;
    match cli.command {
        Command::Sweep(a) => commands::sweep(&a),
        Command::Cp(a) => commands::cp(&a),
        Command::Compare(a) => commands::compare(&a),
        Command::Figure(a) => figure::run(&a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.code() as u8)
        }
    }
}
