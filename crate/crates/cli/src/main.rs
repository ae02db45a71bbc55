mod args;
mod digit;
mod failure;
mod period;
mod record;
mod scan;
mod verify;

use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use failure::Failure;

fn dispatch(cli: &Cli) -> Result<(), Failure> {
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let result = match &cli.command {
        Command::Digit(args) => digit::run(args, cli.format, &mut out),
        Command::Period(args) => period::run(args, cli.format, &mut out),
        Command::Scan(args) => scan::run(args, cli.format, &mut out),
        Command::Verify(args) => verify::run(args, cli.format, &mut out),
    };
    out.flush()?;
    result
}

#[cfg(feature = "parallel")]
fn run(cli: &Cli) -> Result<(), Failure> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(threads) = cli.threads {
        if threads == 0 {
            return Err(Failure::Usage("--threads must be >= 1".into()));
        }
        builder = builder.num_threads(threads);
    }
    let pool = builder
        .build()
        .map_err(|e| Failure::Usage(format!("cannot start worker pool: {e}")))?;
    pool.install(|| dispatch(cli))
}

#[cfg(not(feature = "parallel"))]
fn run(cli: &Cli) -> Result<(), Failure> {
    if cli.threads.is_some_and(|t| t > 1) {
        eprintln!("note: built without the `parallel` feature; running single-threaded");
    }
    dispatch(cli)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {failure}");
            failure.exit_code()
        }
    }
}
