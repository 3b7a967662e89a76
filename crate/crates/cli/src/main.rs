use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use toric_nash_cli::{run_text, Command, Format, RunOptions};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Cmd {
    Info,
    Hilbert,
    Resolve,
    Nash,
    Contact,
    StvNash,
    Certify,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Fmt {
    Table,
    Json,
}

/// Nash problem computations for toric varieties and Stanley-Reisner unions.
#[derive(Debug, Parser)]
#[command(name = "toric-nash", version)]
struct Args {
    #[arg(value_enum)]
    command: Cmd,
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value = "table")]
    format: Fmt,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    buffer: Option<u64>,
    #[arg(long = "level-cap")]
    level_cap: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Cross-check against the brute-force box oracle.
    #[arg(long)]
    oracle: bool,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let command = match args.command {
        Cmd::Info => Command::Info,
        Cmd::Hilbert => Command::Hilbert,
        Cmd::Resolve => Command::Resolve,
        Cmd::Nash => Command::Nash,
        Cmd::Contact => Command::Contact,
        Cmd::StvNash => Command::StvNash,
        Cmd::Certify => Command::Certify,
    };
    let format = match args.format {
        Fmt::Table => Format::Table,
        Fmt::Json => Format::Json,
    };
    let text = match std::fs::read_to_string(&args.input) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", args.input.display());
            return ExitCode::from(1);
        }
    };
    let opts = RunOptions {
        samples: args.samples,
        buffer: args.buffer,
        level_cap: args.level_cap,
        seed: args.seed,
        oracle: args.oracle,
    };
    let (out, code) = run_text(&text, command, &opts, format);
    if code == 0 || code == 3 {
        print!("{out}");
    } else {
        eprint!("{out}");
    }
    ExitCode::from(code as u8)
}
