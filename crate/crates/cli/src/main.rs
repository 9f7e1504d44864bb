use std::io::Write;
use std::process::ExitCode;

use cavityfit_cli::{constant_from_env, run, Cli};
use clap::Parser;

const EXIT_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let constant = match constant_from_env() {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(EXIT_USAGE);
        }
    };

    let result = run(&cli.command, constant).and_then(|rendered| match rendered.output {
        Some(path) => std::fs::write(&path, rendered.text.as_bytes())
            .map_err(|e| anyhow::anyhow!("cannot write {}: {e}", path.display())),
        None => std::io::stdout()
            .lock()
            .write_all(rendered.text.as_bytes())
            .map_err(Into::into),
    });

    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(EXIT_FAILURE)
        }
    }
}
