//! `hpfold` command-line front end.

mod commands;
mod corpus;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

/// Exit codes: 0 ok, 1 input error, 2 verification failure, 3 budget exceeded.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Verify(String),
    #[error("{0}")]
    Budget(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 1,
            CliError::Verify(_) => 2,
            CliError::Budget(_) => 3,
        }
    }
}

pub type CliResult = Result<(), CliError>;

#[derive(Debug, Parser)]
#[command(name = "hpfold", version, about = "Exact HP lattice folding, certificates and invariants")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ClaimKind {
    Equality,
    WrapDrop,
    SuffixDrop,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Svg,
    Ascii,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    Cube54,
    Trefoil24,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Score a fold file and list its contacts.
    Score { file: PathBuf },
    /// Exact optimum by branch and bound.
    Search {
        #[arg(long)]
        lattice: String,
        #[arg(long)]
        word: String,
        /// Fold the word as a closed chain.
        #[arg(long)]
        closed: bool,
        #[arg(long, default_value_t = 1_000_000_000)]
        max_nodes: u64,
        #[arg(long, default_value_t = 600)]
        max_secs: u64,
        #[arg(long, env = "HPFOLD_WORKERS", default_value_t = 1)]
        workers: usize,
    },
    /// Upper bounds on the optimum of a word.
    Bound {
        #[arg(long)]
        lattice: String,
        #[arg(long)]
        word: String,
    },
    /// Check a certificate for the fold in a fold file.
    Certify {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = ClaimKind::Equality)]
        claim: ClaimKind,
        /// Suffix for `--claim suffix-drop`.
        #[arg(long, default_value = "1")]
        suffix: String,
        /// Write the accepted certificate as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Maximum internal edges over connected n-site sets.
    Iso {
        #[arg(long)]
        lattice: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1_000_000_000)]
        max_nodes: u64,
    },
    /// Score a multichain embedding under the levels h_c.
    Multichain {
        /// Embedding file; omit with `--intended`.
        file: Option<PathBuf>,
        #[arg(long)]
        c: u64,
        /// Use the built-in intended embedding for this m.
        #[arg(long)]
        intended: Option<usize>,
        /// Print the embedding that was scored.
        #[arg(long)]
        print: bool,
    },
    /// Linking numbers between the chains of an embedding file.
    Link { file: PathBuf },
    /// Fox 3-colouring count of a closed rect3d fold (or of each chain of an embedding).
    Knot { file: PathBuf },
    /// Recover the key mapping of a keyboard move string.
    Decode {
        #[arg(long, conflicts_with_all = ["keys", "word"])]
        preset: Option<Preset>,
        #[arg(long, requires = "word")]
        keys: Option<String>,
        #[arg(long)]
        word: Option<String>,
        /// Require the zeros to fill a cube of this side.
        #[arg(long)]
        zeros_box: Option<i32>,
        /// List every accepted mapping, not just the canonical one.
        #[arg(long)]
        all: bool,
    },
    /// Draw a fold or embedding file.
    Render {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Svg)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Draw contacts as dashed lines.
        #[arg(long)]
        contacts: bool,
    },
    /// Check every entry of a corpus manifest.
    VerifyCorpus {
        #[arg(long, default_value = "corpus")]
        dir: PathBuf,
    },
}

fn run(cli: Cli) -> CliResult {
    use Command::*;
    match cli.command {
        Score { file } => commands::score(&file),
        Search { lattice, word, closed, max_nodes, max_secs, workers } => {
            commands::search(&lattice, &word, closed, max_nodes, max_secs, workers)
        }
        Bound { lattice, word } => commands::bound(&lattice, &word),
        Certify { file, claim, suffix, json } => commands::certify(&file, claim, &suffix, json.as_deref()),
        Iso { lattice, n, max_nodes } => commands::iso(&lattice, n, max_nodes),
        Multichain { file, c, intended, print } => commands::multichain(file.as_deref(), c, intended, print),
        Link { file } => commands::link(&file),
        Knot { file } => commands::knot(&file),
        Decode { preset, keys, word, zeros_box, all } => commands::decode(preset, keys, word, zeros_box, all),
        Render { file, format, out, contacts } => commands::render(&file, format, out.as_deref(), contacts),
        VerifyCorpus { dir } => corpus::verify(&dir),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
