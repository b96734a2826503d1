use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use leavitt_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (code, out) = run(&cli);
    let written =
        if code == leavitt_cli::app::EXIT_INPUT && cli.format == leavitt_cli::app::Format::Text {
            std::io::stderr().write_all(out.as_bytes())
        } else {
            std::io::stdout().write_all(out.as_bytes())
        };
    if written.is_err() {
        return ExitCode::from(leavitt_cli::app::EXIT_INPUT);
    }
    ExitCode::from(code)
}
