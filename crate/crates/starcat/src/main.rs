use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use starcat::config::{Cli, Format, RunConfig};
use starcat::{error_json, run, CliError};

fn write_file(path: &std::path::Path, body: &str) -> Result<(), CliError> {
    std::fs::write(path, body).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let env = std::env::var("STARCAT_THREADS").ok();
    let cfg = match RunConfig::from_cli(cli, env.as_deref()) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let outcome = match run(&cfg) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            if cfg.format == Format::Json {
                print!("{}", error_json(&e));
            }
            if let Some(path) = &cfg.output {
                let _ = write_file(path, &error_json(&e));
            }
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let json = outcome.report.to_json();
    let mut stdout = std::io::stdout().lock();
    let body = match cfg.format {
        Format::Json => json.clone(),
        Format::Text => outcome.report.to_text(),
    };
    if stdout.write_all(body.as_bytes()).is_err() {
        return ExitCode::from(1);
    }
    if cfg.format == Format::Text {
        for (stage, t) in &outcome.timings {
            eprintln!("[{stage}: {:.3} s]", t.as_secs_f64());
        }
    }
    if let Some(path) = &cfg.output {
        if let Err(e) = write_file(path, &json) {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    if let Some(w) = outcome.report.witness() {
        eprintln!("certification failed: {w}");
    }
    ExitCode::from(outcome.exit_code() as u8)
}
