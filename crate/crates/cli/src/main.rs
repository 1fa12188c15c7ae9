mod args;
mod commands;
mod error;

use std::io::Write;
use std::process;

use clap::error::ErrorKind;
use clap::{CommandFactory, Parser};

use args::Cli;
use error::{CliError, ExitCode};

fn threads() -> Result<(), CliError> {
    let Ok(v) = std::env::var("DEFECT_FORGE_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Usage(format!("DEFECT_FORGE_THREADS must be a positive integer, got '{v}'")))?;
    // Fails only if a pool already exists.
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                    eprintln!("{}", Cli::command().render_usage());
                    process::exit(ExitCode::Usage as i32);
                }
                _ => ExitCode::Usage as i32,
            };
            let _ = e.print();
            process::exit(code);
        }
    };
    let result = threads().and_then(|_| commands::run(&cli.command, &cli.global));
    let out = match result {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            if matches!(e, CliError::Usage(_)) {
                eprintln!("{}", Cli::command().render_usage());
            }
            process::exit(e.code() as i32);
        }
    };
    if let Some(path) = &cli.global.output {
        if let Err(e) = std::fs::write(path, &out.artifact) {
            eprintln!("error: {}", CliError::Io(path.clone(), e));
            process::exit(ExitCode::IoErr as i32);
        }
    } else {
        let mut stdout = std::io::stdout().lock();
        if stdout.write_all(&out.artifact).and_then(|_| stdout.flush()).is_err() {
            process::exit(ExitCode::IoErr as i32);
        }
    }
    if !out.notes.is_empty() {
        eprint!("{}", out.notes);
    }
    process::exit(ExitCode::Ok as i32);
}
