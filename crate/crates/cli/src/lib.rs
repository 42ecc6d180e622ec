//! Command-line front end: CSV in, per-mode CSV/JSON/SVG out.

pub mod cli;
pub mod commands;
pub mod csv_io;
pub mod error;
pub mod summary;
pub mod svg;

use std::ffi::OsString;
use std::process::ExitCode;

use clap::Parser;

use crate::cli::{Cli, Command};

pub fn run(args: impl IntoIterator<Item = impl Into<OsString> + Clone>) -> ExitCode {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match &cli.command {
        Command::Decompose(args) => commands::decompose_cmd(args).map(|s| {
            println!("{} modes written to {}", s.mode_count, args.out.display());
        }),
        Command::Bench(args) => commands::bench_cmd(args).map(|_| {
            println!(
                "report written to {}",
                args.out.join("bench.json").display()
            );
        }),
        Command::Generate(args) => commands::generate_cmd(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
