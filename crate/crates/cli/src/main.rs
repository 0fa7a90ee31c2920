use std::process::ExitCode;

use clap::Parser;

use nfc_cli::args::Format;
use nfc_cli::{run, Cli, Report};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let args: Vec<String> = std::env::args().skip(1).collect();
    match run(&cli) {
        Ok(outcome) => {
            let report = Report::new(cli.command.name(), args, &outcome);
            match cli.format {
                Format::Json => println!("{}", report.to_json()),
                Format::Text => println!("{}", report.to_text(&outcome)),
            }
            ExitCode::from(if outcome.ok { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
