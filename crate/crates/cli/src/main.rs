use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use troplift_cli::{emit, run, Cli, ErrorReport};

fn fail(error: &str, message: String, code: u8) -> ExitCode {
    let report = ErrorReport {
        error: error.into(),
        message,
    };
    eprintln!("{}", serde_json::to_string(&report).unwrap());
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        // malformed command lines count as input parse errors
        Err(e) => return fail("UsageError", e.to_string().trim_end().into(), 5),
    };
    match run(&cli).and_then(|out| emit(&cli, &out).map(|_| out.code)) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => fail(e.kind(), e.to_string(), e.exit_code() as u8),
    }
}
