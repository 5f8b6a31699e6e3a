//! `pbt`: tables and plot data for port-based teleportation protocols.

mod args;
mod commands;
mod table;

use std::process::ExitCode;

use clap::Parser;
use pbt_core::simulator::SimError;

use args::Cli;
use commands::{Status, UsageError};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Breach) => ExitCode::from(3),
        Ok(Status::ResourceCap) => ExitCode::from(4),
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<UsageError>().is_some() {
                ExitCode::from(2)
            } else if matches!(e.downcast_ref::<SimError>(), Some(SimError::ResourceCap { .. })) {
                ExitCode::from(4)
            } else {
                ExitCode::FAILURE
            }
        }
    }
}
