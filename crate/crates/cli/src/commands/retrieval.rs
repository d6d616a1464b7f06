use std::fs::File;
use std::io::BufReader;
use std::path::PathBuf;

use anyhow::{bail, Context};
use clap::{Args, ValueEnum};
use serde::{Deserialize, Serialize};

use laysum::retrieval::{
    augment_with_definitions, extract_keywords, match_terms, rag_sequence_marginalize,
    read_vectors, retrieve_top_k, EmbeddingIndex, HashEmbedder, Lexicon, LexiconEntry,
    RetrievalHit, DEFAULT_TOKEN_BUDGET, DEFAULT_TOP_K,
};

use super::{check_outputs, load_records, paths, write_json, write_lines};
use crate::manifest::beside;
use crate::{usage, RunRecord};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// Every lexicon entity found in the source.
    Terms,
    /// Lexicon entities found inside the top-ranked keywords.
    Keywords,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct AugmentArgs {
    pub corpus: PathBuf,
    /// TSV of `entity<TAB>definition`.
    #[arg(long)]
    pub lexicon: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, value_enum, default_value_t = Method::Terms)]
    pub method: Method,
    /// Word budget for source plus definitions.
    #[arg(long, default_value_t = DEFAULT_TOKEN_BUDGET)]
    pub budget: usize,
    /// Keywords per source (keywords method).
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
    pub keywords: u64,
    /// Longest keyword n-gram (keywords method).
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
    pub ngram_max: u64,
    /// Dimension of the built-in hash embedder (keywords method).
    #[arg(long, default_value_t = 256, value_parser = clap::value_parser!(u64).range(1..))]
    pub dimension: u64,
}

pub fn augment(args: &AugmentArgs) -> anyhow::Result<RunRecord> {
    check_outputs(&[&args.corpus, &args.lexicon], &[&args.out])?;
    let lexicon = Lexicon::load(&args.lexicon)
        .with_context(|| format!("reading {}", args.lexicon.display()))?;
    let embedder = HashEmbedder::new(args.dimension as usize);
    let mut out = Vec::new();
    for mut record in load_records(&args.corpus)? {
        let additions: Vec<LexiconEntry> = match args.method {
            Method::Terms => match_terms(&record.source, &lexicon),
            Method::Keywords => {
                let keywords = extract_keywords(
                    &record.source,
                    &embedder,
                    args.keywords as usize,
                    args.ngram_max as usize,
                )?;
                let mut found: Vec<LexiconEntry> = Vec::new();
                for k in keywords {
                    for e in match_terms(&k, &lexicon) {
                        if !found.contains(&e) {
                            found.push(e);
                        }
                    }
                }
                found
            }
        };
        let augmented = augment_with_definitions(&record.source, &additions, args.budget)
            .with_context(|| format!("record {}", record.id))?;
        let entities: Vec<String> = augmented.additions.iter().map(|e| e.entity.clone()).collect();
        record.source = augmented.rendered;
        record
            .extra
            .insert("definitions".into(), serde_json::to_value(entities)?);
        out.push(record);
    }
    write_lines(&args.out, &out)?;
    Ok(RunRecord {
        inputs: paths(&[&args.corpus, &args.lexicon]),
        outputs: paths(&[&args.out]),
        manifest: beside(&args.out),
        seed: None,
    })
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct BuildIndexArgs {
    /// JSONL with `id` and `vector` per line.
    pub vectors: PathBuf,
    /// Binary index to write.
    #[arg(long)]
    pub out: PathBuf,
    /// Sidecar id file to write.
    #[arg(long)]
    pub ids: PathBuf,
}

#[derive(Deserialize)]
struct VectorLine {
    id: String,
    vector: Vec<f32>,
}

pub fn build_index(args: &BuildIndexArgs) -> anyhow::Result<RunRecord> {
    check_outputs(&[&args.vectors], &[&args.out, &args.ids])?;
    let text = std::fs::read_to_string(&args.vectors)
        .with_context(|| format!("reading {}", args.vectors.display()))?;
    let mut rows = Vec::new();
    for (i, line) in text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
        let v: VectorLine = serde_json::from_str(line)
            .with_context(|| format!("{}: line {}", args.vectors.display(), i + 1))?;
        rows.push((v.id, v.vector));
    }
    EmbeddingIndex::build(rows)?.save(&args.out, &args.ids)?;
    Ok(RunRecord {
        inputs: paths(&[&args.vectors]),
        outputs: paths(&[&args.out, &args.ids]),
        manifest: beside(&args.out),
        seed: None,
    })
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct RetrieveArgs {
    /// Binary embedding index.
    #[arg(long)]
    pub index: PathBuf,
    /// Sidecar id file, one id per line.
    #[arg(long)]
    pub ids: PathBuf,
    /// Query vector file in the index format, holding one row.
    #[arg(long, conflicts_with = "query_json", required_unless_present = "query_json")]
    pub query: Option<PathBuf>,
    /// Query vector as an inline JSON array.
    #[arg(long)]
    pub query_json: Option<String>,
    #[arg(long, default_value_t = DEFAULT_TOP_K, value_parser = clap::builder::RangedU64ValueParser::<usize>::new().range(1..))]
    pub k: usize,
    /// Generator log-likelihood for each hit, best hit first, as a JSON
    /// array. Adds the marginal log-likelihood to the report.
    #[arg(long)]
    pub loglik: Option<String>,
    /// JSON report.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Serialize)]
struct RetrieveReport {
    k: usize,
    hits: Vec<RetrievalHit>,
    #[serde(skip_serializing_if = "Option::is_none")]
    log_marginal: Option<f64>,
}

fn parse_json<T: for<'de> Deserialize<'de>>(flag: &str, text: &str) -> anyhow::Result<T> {
    serde_json::from_str(text).map_err(|e| usage(format!("{flag}: {e}")))
}

pub fn retrieve(args: &RetrieveArgs) -> anyhow::Result<RunRecord> {
    let mut inputs = vec![args.index.clone(), args.ids.clone()];
    inputs.extend(args.query.clone());
    check_outputs(&inputs.iter().map(PathBuf::as_path).collect::<Vec<_>>(), &[&args.out])?;
    let loglik: Option<Vec<f64>> = args
        .loglik
        .as_deref()
        .map(|s| parse_json("--loglik", s))
        .transpose()?;
    let query: Vec<f32> = match (&args.query, &args.query_json) {
        (Some(path), _) => {
            let file = File::open(path).with_context(|| format!("reading {}", path.display()))?;
            let (_, mut rows) = read_vectors(BufReader::new(file))
                .with_context(|| format!("reading {}", path.display()))?;
            if rows.len() != 1 {
                bail!("{}: expected one query vector, found {}", path.display(), rows.len());
            }
            rows.remove(0)
        }
        (None, Some(text)) => parse_json("--query-json", text)?,
        (None, None) => return Err(usage("one of --query or --query-json is required")),
    };
    let index = EmbeddingIndex::load(&args.index, &args.ids)
        .with_context(|| format!("loading {}", args.index.display()))?;
    let hits = retrieve_top_k(&index, &query, args.k)?;
    let log_marginal = loglik
        .map(|ll| rag_sequence_marginalize(&hits, &ll))
        .transpose()?;
    write_json(
        &args.out,
        &RetrieveReport {
            k: args.k,
            hits,
            log_marginal,
        },
    )?;
    Ok(RunRecord {
        inputs,
        outputs: vec![args.out.clone()],
        manifest: beside(&args.out),
        seed: None,
    })
}
