use std::process::ExitCode;

use clap::Parser;
use meanlab_cli::cli::Cli;
use meanlab_cli::run::execute;

const EXIT_ERROR: u8 = 2;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let print_config = cli.print_config;
    match go(cli, print_config) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}

fn go(cli: Cli, print_config: bool) -> anyhow::Result<u8> {
    let cfg = cli.resolve()?;
    if print_config {
        println!("{}", serde_json::to_string_pretty(&cfg)?);
        return Ok(0);
    }
    let report = execute(&cfg)?;
    let text = report.render(cfg.format)?;
    match &cfg.out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(report.status.exit_code() as u8)
}
