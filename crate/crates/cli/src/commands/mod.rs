pub mod corpus;
pub mod metrics;
pub mod retrieval;

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::Context;
use serde::Serialize;

use laysum::corpus::{read_corpus_file, ParallelRecord};

use crate::usage;

pub fn load_records(path: &Path) -> anyhow::Result<Vec<ParallelRecord>> {
    read_corpus_file(path).with_context(|| format!("reading {}", path.display()))
}

pub fn create(path: &Path) -> anyhow::Result<BufWriter<File>> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent).with_context(|| format!("creating {}", parent.display()))?;
    }
    let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
    Ok(BufWriter::new(file))
}

pub fn write_lines<T: Serialize>(path: &Path, items: &[T]) -> anyhow::Result<()> {
    let mut out = create(path)?;
    for item in items {
        serde_json::to_writer(&mut out, item)?;
        out.write_all(b"\n")?;
    }
    out.flush().with_context(|| format!("writing {}", path.display()))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> anyhow::Result<()> {
    let mut out = create(path)?;
    serde_json::to_writer_pretty(&mut out, value)?;
    out.write_all(b"\n")?;
    out.flush().with_context(|| format!("writing {}", path.display()))
}

/// Refuses to write over any input.
pub fn check_outputs(inputs: &[&Path], outputs: &[&Path]) -> anyhow::Result<()> {
    let canon = |p: &Path| fs::canonicalize(p).unwrap_or_else(|_| p.to_path_buf());
    for o in outputs {
        let o_canon = canon(o);
        if inputs.iter().any(|i| canon(i) == o_canon) {
            return Err(usage(format!("output {} would overwrite an input", o.display())));
        }
    }
    Ok(())
}

pub fn unit_interval(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if (0.0..=1.0).contains(&v) {
        Ok(v)
    } else {
        Err(format!("{v} is not in [0, 1]"))
    }
}

pub fn paths(items: &[&Path]) -> Vec<PathBuf> {
    items.iter().map(|p| p.to_path_buf()).collect()
}
