//! Pair-level quality metrics. The target text is scored as the candidate
//! against the source as reference.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use clap::Args;
use serde::{Deserialize, Serialize};

use laysum::metrics::{bert_score, coleman_liau, rouge_l, word_familiarity, FrequencyTable, Prf, TokenEmbeddings};
use laysum::text::{text_counts, tokenize, word_tokens};

use super::{check_outputs, write_json};
use crate::manifest::beside;
use crate::RunRecord;

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct MetricsArgs {
    /// JSONL with `src` and `tgt` (and optionally `id`) per line.
    pub pairs: PathBuf,
    /// JSON report.
    #[arg(long)]
    pub out: PathBuf,
    /// Document-frequency table for word familiarity.
    #[arg(long)]
    pub familiarity_table: Option<PathBuf>,
    /// JSONL of token vectors, one line per pair: `{"src": [[..]], "tgt": [[..]]}`.
    #[arg(long)]
    pub embeddings: Option<PathBuf>,
}

#[derive(Deserialize)]
struct PairLine {
    id: Option<String>,
    src: String,
    tgt: String,
}

#[derive(Deserialize)]
struct EmbeddingLine {
    src: Vec<Vec<f64>>,
    tgt: Vec<Vec<f64>>,
}

#[derive(Debug, Default, Serialize)]
struct PairScores {
    #[serde(skip_serializing_if = "Option::is_none")]
    id: Option<String>,
    rouge_l: Prf,
    #[serde(skip_serializing_if = "Option::is_none")]
    coleman_liau_src: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    coleman_liau_tgt: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    familiarity_src: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    familiarity_tgt: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    bertscore: Option<Prf>,
}

#[derive(Debug, Serialize)]
struct Report {
    count: usize,
    mean: PairScores,
    pairs: Vec<PairScores>,
}

fn read_jsonl<T: for<'de> Deserialize<'de>>(path: &Path) -> anyhow::Result<Vec<T>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            serde_json::from_str(l).with_context(|| format!("{}: line {}", path.display(), i + 1))
        })
        .collect()
}

fn mean(values: impl Iterator<Item = Option<f64>>) -> Option<f64> {
    let v: Vec<f64> = values.flatten().collect();
    (!v.is_empty()).then(|| v.iter().sum::<f64>() / v.len() as f64)
}

fn mean_prf<'a>(values: impl Iterator<Item = Option<&'a Prf>> + Clone) -> Option<Prf> {
    Some(Prf {
        precision: mean(values.clone().map(|p| p.map(|p| p.precision)))?,
        recall: mean(values.clone().map(|p| p.map(|p| p.recall)))?,
        f1: mean(values.map(|p| p.map(|p| p.f1)))?,
    })
}

pub fn run(args: &MetricsArgs) -> anyhow::Result<RunRecord> {
    let mut inputs = vec![args.pairs.clone()];
    inputs.extend(args.familiarity_table.clone());
    inputs.extend(args.embeddings.clone());
    check_outputs(&inputs.iter().map(PathBuf::as_path).collect::<Vec<_>>(), &[&args.out])?;

    let pairs: Vec<PairLine> = read_jsonl(&args.pairs)?;
    let table = args
        .familiarity_table
        .as_ref()
        .map(|p| FrequencyTable::load(p).with_context(|| format!("reading {}", p.display())))
        .transpose()?;
    let embeddings: Option<Vec<EmbeddingLine>> =
        args.embeddings.as_deref().map(read_jsonl).transpose()?;
    if let Some(e) = &embeddings {
        if e.len() != pairs.len() {
            bail!("{} embedding lines for {} pairs", e.len(), pairs.len());
        }
    }

    let mut scored = Vec::with_capacity(pairs.len());
    for (i, pair) in pairs.iter().enumerate() {
        let cli = |text: &str| coleman_liau(&text_counts(text)).ok();
        let fam = |text: &str| {
            table.as_ref().and_then(|t| word_familiarity(&tokenize(text), t).ok())
        };
        let bertscore = match &embeddings {
            Some(e) => {
                let ctx = || format!("embeddings for pair {}", i + 1);
                let cand = TokenEmbeddings::new(e[i].tgt.clone()).with_context(ctx)?;
                let reference = TokenEmbeddings::new(e[i].src.clone()).with_context(ctx)?;
                Some(bert_score(&cand, &reference).with_context(ctx)?)
            }
            None => None,
        };
        scored.push(PairScores {
            id: pair.id.clone(),
            rouge_l: rouge_l(&word_tokens(&pair.tgt), &word_tokens(&pair.src)),
            coleman_liau_src: cli(&pair.src),
            coleman_liau_tgt: cli(&pair.tgt),
            familiarity_src: fam(&pair.src),
            familiarity_tgt: fam(&pair.tgt),
            bertscore,
        });
    }

    let mean = PairScores {
        id: None,
        rouge_l: mean_prf(scored.iter().map(|s| Some(&s.rouge_l))).unwrap_or_default(),
        coleman_liau_src: mean(scored.iter().map(|s| s.coleman_liau_src)),
        coleman_liau_tgt: mean(scored.iter().map(|s| s.coleman_liau_tgt)),
        familiarity_src: mean(scored.iter().map(|s| s.familiarity_src)),
        familiarity_tgt: mean(scored.iter().map(|s| s.familiarity_tgt)),
        bertscore: mean_prf(scored.iter().map(|s| s.bertscore.as_ref())),
    };
    write_json(
        &args.out,
        &Report {
            count: scored.len(),
            mean,
            pairs: scored,
        },
    )?;
    Ok(RunRecord {
        inputs,
        outputs: vec![args.out.clone()],
        manifest: beside(&args.out),
        seed: None,
    })
}
