//! Command-line front end for `warpgeo-core`: geometry files, the builtin
//! case catalogue, seeded random domains and report rendering.

pub mod args;
pub mod cases;
pub mod commands;
pub mod error;
pub mod geometry;
pub mod output;
pub mod random;

use std::io::Write;

pub use args::Cli;
pub use error::CliError;

/// Runs one parsed invocation, writing the report to `--output` or `stdout`.
/// Returns whether every verdict passed.
pub fn run(cli: &Cli, stdout: &mut dyn Write) -> Result<bool, CliError> {
    match &cli.command {
        args::Command::Model {
            action: args::ModelAction::Check(a),
        } => commands::model::run(a, stdout),
        args::Command::Profile(a) => commands::profile::run(a, stdout),
        args::Command::Verify(a) => commands::verify::run(a, stdout),
    }
}
