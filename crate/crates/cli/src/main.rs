use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;
use warpgeo::error::{EXIT_FAIL, EXIT_PARSE, EXIT_PASS};
use warpgeo::Cli;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_PARSE } else { EXIT_PASS });
        }
    };
    let stdout = io::stdout();
    let mut lock = stdout.lock();
    let code = match warpgeo::run(&cli, &mut lock) {
        Ok(true) => EXIT_PASS,
        Ok(false) => EXIT_FAIL,
        Err(e) => {
            let _ = lock.flush();
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    let _ = lock.flush();
    ExitCode::from(code)
}
