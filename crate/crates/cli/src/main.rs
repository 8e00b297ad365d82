use std::io::{self, Write};
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use tangle_cli::{run_command, CommandConfig};

fn main() -> ExitCode {
    let config = match CommandConfig::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    let result = panic::catch_unwind(AssertUnwindSafe(|| run_command(&config, &mut io::stdin().lock())));
    let output = match result {
        Ok(Ok(out)) => out,
        Ok(Err(e)) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code());
        }
        Err(_) => return ExitCode::from(2),
    };
    let written = match &config.output {
        Some(path) => std::fs::write(path, &output.text),
        None => io::stdout().lock().write_all(output.text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    ExitCode::from(output.code)
}
