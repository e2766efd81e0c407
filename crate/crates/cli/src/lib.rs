//! The `rstc` command line: flag and config-file parsing plus dispatch to `rstc-core`.

mod commands;
mod config;
mod error;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;

pub use commands::execute;
pub use config::{resolve, CapacityTarget, Cli, Job, RunConfig};
pub use error::{CliError, CliResult};

/// Parse `args` (program name first), run the command, and return the exit status:
/// 0 success, 1 domain or convergence error, 2 usage error.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // --help and --version land here with status 0.
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code as u8;
        }
    };
    match resolve(cli).and_then(|cfg| execute(&cfg, out)) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
