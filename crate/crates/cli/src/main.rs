//! Exit codes: 0 success, 1 verification failure, 2 invalid instance or
//! configuration, 3 internal invariant violation.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use kummerlab::error::Error;

use kummerlab_cli::commands;
use kummerlab_cli::instance::{FieldDesc, InstanceFile};

#[derive(Parser)]
#[command(
    name = "kummerlab",
    about = "Kummer extensions of k(t) under a cyclic p^l Galois action: \
             analyze class modules and verify the module/Galois correspondence"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the class-module structure of an instance
    Analyze { file: PathBuf },
    /// Run the full verification on an instance
    Verify {
        file: PathBuf,
        /// also write a structured JSON report
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a seeded campaign of random instances
    Random {
        #[arg(long)]
        count: usize,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        l: u32,
        /// e.g. GF(5) or "GF(3^2) modulus=[1,0,1]"
        #[arg(long)]
        field: String,
        #[arg(long = "max-gens", default_value_t = 3)]
        max_gens: usize,
        #[arg(long = "max-deg", default_value_t = 5)]
        max_deg: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// also write the campaign as JSON
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the built-in oracle suites
    Selftest,
}

fn load(path: &PathBuf) -> Result<InstanceFile, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::domain(format!("cannot read {}: {e}", path.display())))?;
    InstanceFile::parse(&text)
}

fn run(cli: Cli) -> Result<bool, Error> {
    let mut stdout = std::io::stdout().lock();
    match cli.cmd {
        Cmd::Analyze { file } => {
            commands::cmd_analyze(&mut stdout, &load(&file)?)?;
            Ok(true)
        }
        Cmd::Verify { file, out } => {
            commands::cmd_verify(&mut stdout, &load(&file)?, out.as_deref())
        }
        Cmd::Random { count, p, l, field, max_gens, max_deg, seed, out } => {
            let cfg = commands::RandomConfig {
                count,
                p,
                l,
                field: FieldDesc::parse(&field)?,
                max_gens,
                max_deg,
                seed,
            };
            let campaign = commands::cmd_random(&mut stdout, &cfg, out.as_deref())?;
            Ok(campaign.verdict)
        }
        Cmd::Selftest => commands::cmd_selftest(&mut stdout),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::from(0),
        Ok(false) => ExitCode::from(1),
        Err(e @ (Error::Parse { .. } | Error::Domain(_) | Error::Unsupported(_))) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e @ Error::Invariant(_)) => {
            eprintln!("internal error: {e}");
            ExitCode::from(3)
        }
    }
}
