//! `laysum` command-line tool.
//!
//! Every subcommand reads its inputs, writes its outputs and then writes a
//! run manifest next to them. Exit status is 0 on success, 1 for usage
//! errors and 2 for data errors.

mod commands;
mod manifest;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};

use commands::{corpus, metrics, retrieval};

#[derive(Debug, Parser)]
#[command(name = "laysum", version, about = "Lay-summary corpus toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Subcommand, Serialize, Deserialize)]
#[serde(tag = "subcommand", content = "params", rename_all = "kebab-case")]
pub enum Command {
    /// Align the sentences of every record.
    Align(corpus::AlignArgs),
    /// Derive simplification, background or plainness datasets.
    Derive(corpus::DeriveArgs),
    /// Drop records outside the similarity and length bounds.
    Filter(corpus::FilterArgs),
    /// Shuffle a corpus into train, valid and test files.
    Split(corpus::SplitArgs),
    /// Shuffle sentences and mask words for denoising pretraining.
    Corrupt(corpus::CorruptArgs),
    /// Per-journal length and readability statistics.
    Stats(corpus::StatsArgs),
    /// ROUGE-L, readability, familiarity and BERTScore of text pairs.
    Metrics(metrics::MetricsArgs),
    /// Append lexicon definitions to each source.
    Augment(retrieval::AugmentArgs),
    /// Write a binary embedding index from JSONL vectors.
    BuildIndex(retrieval::BuildIndexArgs),
    /// Top-k inner-product retrieval against an embedding index.
    Retrieve(retrieval::RetrieveArgs),
    /// Re-run the command recorded in a manifest.
    #[serde(skip)]
    Replay {
        manifest: PathBuf,
    },
}

/// An invalid combination of arguments, reported with exit status 1.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct UsageError(pub String);

pub fn usage(message: impl Into<String>) -> anyhow::Error {
    UsageError(message.into()).into()
}

/// Paths and seed of a finished run, for its manifest.
pub struct RunRecord {
    pub inputs: Vec<PathBuf>,
    pub outputs: Vec<PathBuf>,
    pub manifest: PathBuf,
    pub seed: Option<u64>,
}

fn execute(command: &Command) -> anyhow::Result<()> {
    let started = Instant::now();
    let record = match command {
        Command::Align(a) => corpus::align(a)?,
        Command::Derive(a) => corpus::derive(a)?,
        Command::Filter(a) => corpus::filter(a)?,
        Command::Split(a) => corpus::split(a)?,
        Command::Corrupt(a) => corpus::corrupt(a)?,
        Command::Stats(a) => corpus::stats(a)?,
        Command::Metrics(a) => metrics::run(a)?,
        Command::Augment(a) => retrieval::augment(a)?,
        Command::BuildIndex(a) => retrieval::build_index(a)?,
        Command::Retrieve(a) => retrieval::retrieve(a)?,
        Command::Replay { manifest } => {
            let inner = manifest::read_command(manifest)?;
            if matches!(inner, Command::Replay { .. }) {
                return Err(usage("a manifest cannot record a replay"));
            }
            return execute(&inner);
        }
    };
    manifest::write(command, &record, started.elapsed())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match execute(&cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<UsageError>().is_some() {
                ExitCode::from(1)
            } else {
                ExitCode::from(2)
            }
        }
    }
}
