use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use threegap_cli::{dispatch, write_output, RunConfig, EXIT_OK, EXIT_USAGE};

fn main() -> ExitCode {
    let config = match RunConfig::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::from(EXIT_OK),
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    let result = dispatch(&config).and_then(|emitted| {
        write_output(&config, &emitted)?;
        Ok(emitted.exit_code())
    });
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("threegap: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
