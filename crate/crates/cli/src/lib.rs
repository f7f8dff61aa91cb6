//! Library side of the `qcorr` binary: argument parsing, command dispatch
//! and the acceptance suite.

pub mod args;
pub mod commands;
pub mod families;
pub mod output;
pub mod suite;

use clap::Parser;
use qcorr_linalg::Error;

/// Exit status for malformed arguments or inputs outside a supported domain.
pub const EXIT_USAGE: i32 = 2;
/// Exit status for numerical failures and failed checks.
pub const EXIT_FAILURE: i32 = 3;

fn exit_code(err: &anyhow::Error) -> i32 {
    match err.chain().find_map(|e| e.downcast_ref::<Error>()) {
        Some(e) if e.is_numerical() => EXIT_FAILURE,
        _ => EXIT_USAGE,
    }
}

/// Parse `argv`, run the command, write its output and return the exit status.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match args::Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { 0 };
        }
    };
    let outcome = match commands::dispatch(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e:#}");
            return exit_code(&e);
        }
    };
    if let Err(e) = outcome.output.emit(cli.format, &cli.out) {
        eprintln!("error: {e:#}");
        return EXIT_USAGE;
    }
    if outcome.ok {
        0
    } else {
        EXIT_FAILURE
    }
}
