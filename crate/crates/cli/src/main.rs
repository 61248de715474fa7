//! `qwl`: generate cubes and hosts, compute and cross-check wirelengths,
//! verify cut families, and search for better embeddings.
//!
//! Exit codes: 0 success, 1 a check failed or engines disagreed, 2 usage,
//! domain or I/O error.

mod args;
mod commands;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use commands::Outcome;

fn main() -> ExitCode {
    let cli = Cli::parse();

    if let Some(threads) = cli.threads {
        if let Err(err) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("error: cannot configure {threads} threads: {err}");
            return ExitCode::from(2);
        }
    }

    let result = match &cli.command {
        Command::Gen(a) => commands::gen(a),
        Command::Wl(a) => commands::wl(a),
        Command::Verify(a) => commands::verify(a),
        Command::Search(a) => commands::search(a),
        Command::Report(a) => commands::report(a),
    };

    match result {
        Ok(Outcome::Success) => ExitCode::SUCCESS,
        Ok(Outcome::Failure) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
