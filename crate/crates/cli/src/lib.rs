//! Command-line front end for `qfdiv`: state files, single evaluations,
//! seeded verification campaigns and JSON run reports.

pub mod campaign;
pub mod commands;
pub mod error;
pub mod io;
pub mod report;

use clap::Parser;

pub use commands::{Cli, Command};
pub use error::CliError;

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match commands::execute(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
