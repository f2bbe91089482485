//! `tsvdkit`: T-SVD decomposition, rank reports, T-rank truncation and
//! invariant checks on tensor files.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use commands::Failure;

#[derive(Parser)]
#[command(name = "tsvdkit", version, about = "T-product SVD toolkit for third-order tensors")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Trank,
}

#[derive(Subcommand)]
enum Command {
    /// Factor a tensor as U * S * V^T; writes <out>.u, <out>.s, <out>.v
    Tsvd {
        input: PathBuf,
        /// Output path prefix
        #[arg(long)]
        out: PathBuf,
    },
    /// Print singular values, T-singular values, T-rank and tubal rank
    Rank {
        input: PathBuf,
        /// Nonzero threshold; defaults to eps * max(m, n) * p * sigma1
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Write the T-rank-s truncation A_s and print its residual
    Approx {
        input: PathBuf,
        #[arg(long)]
        rank: usize,
        #[arg(long, value_enum, default_value = "trank")]
        mode: Mode,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check the decomposition invariants on a tensor
    Verify {
        input: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        trials: usize,
    },
    /// T-product of two tensor files
    Tprod {
        left: PathBuf,
        right: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(raw) = std::env::var("TSVDKIT_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw.trim().parse().map_err(|_| Failure {
        code: 2,
        message: format!("TSVDKIT_THREADS must be a nonnegative integer, got {raw:?}"),
    })?;
    if threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| Failure {
                code: 2,
                message: e.to_string(),
            })?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(String, bool), Failure> {
    configure_threads()?;
    let text = match cli.command {
        Command::Tsvd { input, out } => commands::tsvd_cmd(&input, &out)?,
        Command::Rank { input, tol } => commands::rank_cmd(&input, tol)?,
        Command::Approx {
            input,
            rank,
            mode: Mode::Trank,
            out,
        } => commands::approx_cmd(&input, rank, &out)?,
        Command::Verify { input, seed, trials } => return commands::verify_cmd(&input, seed, trials),
        Command::Tprod { left, right, out } => commands::tprod_cmd(&left, &right, &out)?,
    };
    Ok((text, true))
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok((text, passed)) => {
            print!("{text}");
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(3)
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code as u8)
        }
    }
}
