//! Run manifests.
//!
//! A manifest records the full resolved command, so `laysum replay
//! <manifest>` repeats the run. `wall_time_secs` is the only field that
//! differs between identical runs.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Duration;

use anyhow::Context;
use serde::{Deserialize, Serialize};

use crate::{Command, RunRecord};

#[derive(Debug, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub command: Command,
    pub seed: Option<u64>,
    pub inputs: Vec<PathBuf>,
    pub outputs: Vec<PathBuf>,
    pub wall_time_secs: f64,
}

/// `<output>.manifest.json`, next to a single output file.
pub fn beside(output: &Path) -> PathBuf {
    let mut name = output.as_os_str().to_owned();
    name.push(".manifest.json");
    PathBuf::from(name)
}

pub fn write(command: &Command, record: &RunRecord, elapsed: Duration) -> anyhow::Result<()> {
    let manifest = RunManifest {
        tool: env!("CARGO_PKG_NAME").to_owned(),
        version: env!("CARGO_PKG_VERSION").to_owned(),
        command: command.clone(),
        seed: record.seed,
        inputs: record.inputs.clone(),
        outputs: record.outputs.clone(),
        wall_time_secs: elapsed.as_secs_f64(),
    };
    let mut text = serde_json::to_string_pretty(&manifest)?;
    text.push('\n');
    fs::write(&record.manifest, text)
        .with_context(|| format!("writing {}", record.manifest.display()))
}

pub fn read_command(path: &Path) -> anyhow::Result<Command> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let manifest: RunManifest =
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    Ok(manifest.command)
}
