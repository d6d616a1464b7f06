use std::io::Write;
use std::path::PathBuf;

use anyhow::Context;
use clap::{Args, ValueEnum};
use serde::{Deserialize, Serialize};

use laysum::align::{align_documents, AlignmentPair, SentenceLabel};
use laysum::corpus::{
    corpus_statistics, corrupt_for_pretraining, derive_background_pairs,
    derive_plainness_training, derive_simplification_pairs, filter_outliers, split_corpus,
    GroupStats, LengthFilter, OutlierBounds, SplitSpec,
};
use laysum::metrics::FrequencyTable;
use laysum::rng::SplitMix64;

use super::{check_outputs, create, load_records, paths, unit_interval, write_json, write_lines};
use crate::manifest::beside;
use crate::{usage, RunRecord};

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct AlignArgs {
    /// Corpus JSONL with `id`, `journal`, `src` and `tgt`.
    pub corpus: PathBuf,
    /// Alignment JSONL to write.
    #[arg(long)]
    pub out: PathBuf,
    /// Drop matched pairs scoring below this ROUGE-L F1.
    #[arg(long, default_value_t = 0.0, value_parser = unit_interval)]
    pub min_score: f64,
}

#[derive(Serialize)]
struct AlignmentLine<'a> {
    id: &'a str,
    pairs: Vec<AlignmentPair>,
    src_labels: Vec<SentenceLabel>,
    tgt_labels: Vec<SentenceLabel>,
}

pub fn align(args: &AlignArgs) -> anyhow::Result<RunRecord> {
    check_outputs(&[&args.corpus], &[&args.out])?;
    let records = load_records(&args.corpus)?;
    let lines: Vec<AlignmentLine> = records
        .iter()
        .map(|r| {
            let a = align_documents(&r.source, &r.target, args.min_score);
            AlignmentLine {
                id: &r.id,
                pairs: a.pairs,
                src_labels: a.src_labels,
                tgt_labels: a.tgt_labels,
            }
        })
        .collect();
    write_lines(&args.out, &lines)?;
    Ok(RunRecord {
        inputs: paths(&[&args.corpus]),
        outputs: paths(&[&args.out]),
        manifest: beside(&args.out),
        seed: None,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DeriveKind {
    Simplification,
    Background,
    Plainness,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct DeriveArgs {
    pub corpus: PathBuf,
    /// Directory for the derived file and its manifest.
    #[arg(long)]
    pub out_dir: PathBuf,
    #[arg(long, value_enum)]
    pub kind: DeriveKind,
    /// Background boundary: content before the n-th matched pair.
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(1..=3))]
    pub boundary: u8,
    /// Minimum sentence length in words (simplification and plainness).
    #[arg(long, default_value_t = 10)]
    pub min_len: usize,
    /// Maximum sentence length in words (simplification and plainness).
    #[arg(long, default_value_t = 150)]
    pub max_len: usize,
    #[arg(long, default_value_t = 0.0, value_parser = unit_interval)]
    pub min_score: f64,
}

pub fn derive(args: &DeriveArgs) -> anyhow::Result<RunRecord> {
    if args.min_len > args.max_len {
        return Err(usage("--min-len exceeds --max-len"));
    }
    let filter = LengthFilter::new(args.min_len, args.max_len);
    let out = args.out_dir.join(match args.kind {
        DeriveKind::Simplification => "simplification.jsonl",
        DeriveKind::Background => "background.jsonl",
        DeriveKind::Plainness => "plainness.tsv",
    });
    check_outputs(&[&args.corpus], &[&out])?;
    let records = load_records(&args.corpus)?;
    let summary = match args.kind {
        DeriveKind::Simplification => {
            let pairs: Vec<_> = records
                .iter()
                .flat_map(|r| derive_simplification_pairs(r, args.min_score, &filter))
                .collect();
            write_lines(&out, &pairs)?;
            serde_json::json!({ "records": records.len(), "pairs": pairs.len() })
        }
        DeriveKind::Background => {
            let mut pairs = Vec::new();
            for r in &records {
                if let Some(p) = derive_background_pairs(r, args.boundary.into(), args.min_score)? {
                    pairs.push(p);
                }
            }
            write_lines(&out, &pairs)?;
            serde_json::json!({ "records": records.len(), "pairs": pairs.len() })
        }
        DeriveKind::Plainness => {
            let labeled = derive_plainness_training(&records, args.min_score, &filter);
            let mut w = create(&out)?;
            for s in &labeled {
                writeln!(w, "{}", s.to_tsv())?;
            }
            w.flush()?;
            let zeros = labeled.iter().filter(|s| s.label == 0).count();
            serde_json::json!({
                "records": records.len(),
                "label_0": zeros,
                "label_1": labeled.len() - zeros,
            })
        }
    };
    println!("{summary}");
    Ok(RunRecord {
        inputs: paths(&[&args.corpus]),
        outputs: vec![out],
        manifest: args.out_dir.join("manifest.json"),
        seed: None,
    })
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct FilterArgs {
    pub corpus: PathBuf,
    /// Records inside every bound.
    #[arg(long)]
    pub out: PathBuf,
    /// Dropped records with the rules they broke.
    #[arg(long)]
    pub dropped: PathBuf,
    #[arg(long, default_value_t = 0.05)]
    pub sim_low: f64,
    #[arg(long, default_value_t = 0.95)]
    pub sim_high: f64,
    /// Word-count bounds, applied to source and target separately.
    #[arg(long, default_value_t = 50)]
    pub len_low: usize,
    #[arg(long, default_value_t = 2000)]
    pub len_high: usize,
}

pub fn filter(args: &FilterArgs) -> anyhow::Result<RunRecord> {
    check_outputs(&[&args.corpus], &[&args.out, &args.dropped])?;
    if args.out == args.dropped {
        return Err(usage("--out and --dropped must differ"));
    }
    let bounds = OutlierBounds {
        sim_low: args.sim_low,
        sim_high: args.sim_high,
        len_low: args.len_low,
        len_high: args.len_high,
    };
    bounds.validate().map_err(|e| usage(e.to_string()))?;
    let outcome = filter_outliers(load_records(&args.corpus)?, &bounds)?;
    write_lines(&args.out, &outcome.kept)?;
    write_lines(&args.dropped, &outcome.dropped)?;
    Ok(RunRecord {
        inputs: paths(&[&args.corpus]),
        outputs: paths(&[&args.out, &args.dropped]),
        manifest: beside(&args.out),
        seed: None,
    })
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct SplitArgs {
    pub corpus: PathBuf,
    /// Receives train.jsonl, valid.jsonl, test.jsonl and manifest.json.
    #[arg(long)]
    pub out_dir: PathBuf,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 0.72)]
    pub train: f64,
    #[arg(long, default_value_t = 0.17961)]
    pub valid: f64,
    #[arg(long, default_value_t = 0.10036)]
    pub test: f64,
}

pub fn split(args: &SplitArgs) -> anyhow::Result<RunRecord> {
    let spec = SplitSpec::new(args.train, args.valid, args.test, args.seed)
        .map_err(|e| usage(e.to_string()))?;
    let outs = ["train.jsonl", "valid.jsonl", "test.jsonl"].map(|n| args.out_dir.join(n));
    check_outputs(&[&args.corpus], &[&outs[0], &outs[1], &outs[2]])?;
    let parts = split_corpus(load_records(&args.corpus)?, &spec)?;
    write_lines(&outs[0], &parts.train)?;
    write_lines(&outs[1], &parts.valid)?;
    write_lines(&outs[2], &parts.test)?;
    Ok(RunRecord {
        inputs: paths(&[&args.corpus]),
        outputs: outs.to_vec(),
        manifest: args.out_dir.join("manifest.json"),
        seed: Some(args.seed),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    Src,
    Tgt,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct CorruptArgs {
    pub corpus: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    /// Record `i` is corrupted with the `i`-th draw of a generator seeded
    /// with this value.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Probability of masking each word token.
    #[arg(long, default_value_t = 0.15, value_parser = unit_interval)]
    pub rate: f64,
    /// Which side of each record to corrupt.
    #[arg(long, value_enum, default_value_t = Field::Src)]
    pub field: Field,
}

#[derive(Serialize)]
struct CorruptLine<'a> {
    id: &'a str,
    corrupted: String,
    original: String,
    sentence_order: Vec<usize>,
    masked: usize,
}

pub fn corrupt(args: &CorruptArgs) -> anyhow::Result<RunRecord> {
    check_outputs(&[&args.corpus], &[&args.out])?;
    let records = load_records(&args.corpus)?;
    let mut seeds = SplitMix64::new(args.seed);
    let mut lines = Vec::with_capacity(records.len());
    for r in &records {
        let text = match args.field {
            Field::Src => &r.source,
            Field::Tgt => &r.target,
        };
        let c = corrupt_for_pretraining(text, seeds.next_u64(), args.rate)?;
        lines.push(CorruptLine {
            id: &r.id,
            corrupted: c.corrupted,
            original: c.original,
            sentence_order: c.sentence_order,
            masked: c.masked,
        });
    }
    write_lines(&args.out, &lines)?;
    Ok(RunRecord {
        inputs: paths(&[&args.corpus]),
        outputs: paths(&[&args.out]),
        manifest: beside(&args.out),
        seed: Some(args.seed),
    })
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct StatsArgs {
    pub corpus: PathBuf,
    /// JSON report.
    #[arg(long)]
    pub out: PathBuf,
    /// Optional CSV with one row per journal.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// Document-frequency table (`N <count>` header, then `token<TAB>df`).
    #[arg(long)]
    pub familiarity_table: Option<PathBuf>,
}

fn opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn csv_row(journal: &str, g: &GroupStats) -> [String; 8] {
    [
        journal.to_owned(),
        g.records.to_string(),
        g.mean_src_len.to_string(),
        g.mean_tgt_len.to_string(),
        opt(g.mean_src_coleman_liau),
        opt(g.mean_tgt_coleman_liau),
        opt(g.mean_src_familiarity),
        opt(g.mean_tgt_familiarity),
    ]
}

pub fn stats(args: &StatsArgs) -> anyhow::Result<RunRecord> {
    let mut inputs = vec![args.corpus.clone()];
    inputs.extend(args.familiarity_table.clone());
    let mut outputs = vec![args.out.clone()];
    outputs.extend(args.csv.clone());
    check_outputs(
        &inputs.iter().map(PathBuf::as_path).collect::<Vec<_>>(),
        &outputs.iter().map(PathBuf::as_path).collect::<Vec<_>>(),
    )?;
    let table = args
        .familiarity_table
        .as_ref()
        .map(|p| FrequencyTable::load(p).with_context(|| format!("reading {}", p.display())))
        .transpose()?;
    let records = load_records(&args.corpus)?;
    let stats = corpus_statistics(&records, table.as_ref())?;
    write_json(&args.out, &stats)?;
    if let Some(path) = &args.csv {
        let mut w = csv::Writer::from_writer(create(path)?);
        w.write_record([
            "journal",
            "records",
            "mean_src_len",
            "mean_tgt_len",
            "mean_src_coleman_liau",
            "mean_tgt_coleman_liau",
            "mean_src_familiarity",
            "mean_tgt_familiarity",
        ])?;
        for (journal, g) in &stats.journals {
            w.write_record(csv_row(journal, g))?;
        }
        w.flush()?;
    }
    Ok(RunRecord {
        inputs,
        outputs,
        manifest: beside(&args.out),
        seed: None,
    })
}
