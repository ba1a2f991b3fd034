use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use plane_orbits::cli::{render, run_document, CliError, ConfigOverrides, Subcommand};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Command {
    Factorize,
    Conjugate,
    Classify,
    Closure,
}

impl From<Command> for Subcommand {
    fn from(c: Command) -> Self {
        match c {
            Command::Factorize => Subcommand::Factorize,
            Command::Conjugate => Subcommand::Conjugate,
            Command::Classify => Subcommand::Classify,
            Command::Closure => Subcommand::Closure,
        }
    }
}

/// Orbit closures of polynomial automorphism groups of the affine plane.
///
/// Reads a JSON problem document and prints a JSON report. Caps are taken
/// from flags, then the document's `config`, then PLANE_ORBITS_* variables.
#[derive(Parser, Debug)]
#[command(name = "plane-orbits", version)]
struct Args {
    command: Command,
    /// Problem document; `-` or absent reads stdin.
    input: Option<PathBuf>,
    #[arg(long)]
    orbit_cap: Option<usize>,
    #[arg(long)]
    word_cap: Option<usize>,
    #[arg(long)]
    multdep_bound: Option<u64>,
    #[arg(long)]
    height_cap_bits: Option<u64>,
    /// Include the full closure certificate.
    #[arg(long)]
    trace: bool,
}

fn read_input(path: Option<&PathBuf>) -> Result<String, CliError> {
    let mut s = String::new();
    match path {
        Some(p) if p.as_os_str() != "-" => {
            s = std::fs::read_to_string(p).map_err(|e| CliError::Input(format!("{}: {}", p.display(), e)))?
        }
        _ => {
            std::io::stdin().read_to_string(&mut s).map_err(|e| CliError::Input(format!("stdin: {}", e)))?;
        }
    }
    Ok(s)
}

fn main() -> ExitCode {
    let args = Args::parse();
    let flags = ConfigOverrides {
        orbit_cap: args.orbit_cap,
        word_cap: args.word_cap,
        multdep_bound: args.multdep_bound,
        height_cap_bits: args.height_cap_bits,
    };
    let result = ConfigOverrides::from_env().and_then(|env| {
        let src = read_input(args.input.as_ref())?;
        run_document(args.command.into(), &src, &flags, &env, args.trace)
    });
    match result {
        Ok(report) => {
            print!("{}", render(&report));
            ExitCode::SUCCESS
        }
        Err(e) => {
            print!("{}", render(&e.to_report()));
            eprintln!("plane-orbits: {}", e);
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
