//! Per-journal and overall corpus statistics.
//!
//! Lengths are word-token counts. Coleman-Liau and familiarity means skip
//! texts without word tokens. Float aggregates are summed over sorted values
//! so the result does not depend on record order.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{CorpusError, ParallelRecord};
use crate::metrics::{coleman_liau, paired_t_test, word_familiarity, FrequencyTable, TTest};
use crate::text::{text_counts, tokenize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupStats {
    pub records: usize,
    pub mean_src_len: f64,
    pub mean_tgt_len: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mean_src_coleman_liau: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mean_tgt_coleman_liau: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mean_src_familiarity: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mean_tgt_familiarity: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusStats {
    pub journals: BTreeMap<String, GroupStats>,
    pub overall: GroupStats,
    /// Paired t-test of source vs target Coleman-Liau; absent when fewer
    /// than two records are scorable or the differences are constant.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub readability_test: Option<TTest>,
}

#[derive(Debug, Clone, Copy)]
struct RecordMeasures {
    src_len: usize,
    tgt_len: usize,
    src_cli: Option<f64>,
    tgt_cli: Option<f64>,
    src_fam: Option<f64>,
    tgt_fam: Option<f64>,
}

fn measure(record: &ParallelRecord, table: Option<&FrequencyTable>) -> RecordMeasures {
    let src = text_counts(&record.source);
    let tgt = text_counts(&record.target);
    let fam = |text: &str| table.and_then(|t| word_familiarity(&tokenize(text), t).ok());
    RecordMeasures {
        src_len: src.word_count,
        tgt_len: tgt.word_count,
        src_cli: coleman_liau(&src).ok(),
        tgt_cli: coleman_liau(&tgt).ok(),
        src_fam: fam(&record.source),
        tgt_fam: fam(&record.target),
    }
}

fn sorted_mean(values: impl Iterator<Item = f64>) -> Option<f64> {
    let mut v: Vec<f64> = values.collect();
    if v.is_empty() {
        return None;
    }
    v.sort_by(f64::total_cmp);
    Some(v.iter().sum::<f64>() / v.len() as f64)
}

fn aggregate(group: &[RecordMeasures]) -> GroupStats {
    let n = group.len();
    let total = |f: fn(&RecordMeasures) -> usize| group.iter().map(f).sum::<usize>() as f64;
    GroupStats {
        records: n,
        mean_src_len: total(|m| m.src_len) / n as f64,
        mean_tgt_len: total(|m| m.tgt_len) / n as f64,
        mean_src_coleman_liau: sorted_mean(group.iter().filter_map(|m| m.src_cli)),
        mean_tgt_coleman_liau: sorted_mean(group.iter().filter_map(|m| m.tgt_cli)),
        mean_src_familiarity: sorted_mean(group.iter().filter_map(|m| m.src_fam)),
        mean_tgt_familiarity: sorted_mean(group.iter().filter_map(|m| m.tgt_fam)),
    }
}

pub fn corpus_statistics(
    records: &[ParallelRecord],
    familiarity: Option<&FrequencyTable>,
) -> Result<CorpusStats, CorpusError> {
    if records.is_empty() {
        return Err(CorpusError::EmptyCorpus);
    }
    let measures: Vec<RecordMeasures> = records.iter().map(|r| measure(r, familiarity)).collect();
    let mut by_journal: BTreeMap<&str, Vec<RecordMeasures>> = BTreeMap::new();
    for (r, m) in records.iter().zip(&measures) {
        by_journal.entry(r.journal.as_str()).or_default().push(*m);
    }
    let journals = by_journal
        .into_iter()
        .map(|(j, group)| (j.to_owned(), aggregate(&group)))
        .collect();

    let mut cli_pairs: Vec<(f64, f64)> = measures
        .iter()
        .filter_map(|m| Some((m.src_cli?, m.tgt_cli?)))
        .collect();
    cli_pairs.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    let (src_cli, tgt_cli): (Vec<f64>, Vec<f64>) = cli_pairs.into_iter().unzip();
    let readability_test = paired_t_test(&src_cli, &tgt_cli).ok();

    Ok(CorpusStats {
        journals,
        overall: aggregate(&measures),
        readability_test,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_record() {
        let r = ParallelRecord::new("a", "PNAS", "The cat sat.", "A dog ran far.");
        let s = corpus_statistics(&[r], None).unwrap();
        let g = &s.journals["PNAS"];
        assert_eq!(g.records, 1);
        assert_eq!(g.mean_src_len, 3.0);
        assert_eq!(g.mean_tgt_len, 4.0);
        assert_eq!(g, &s.overall);
        assert!((g.mean_src_coleman_liau.unwrap() + 8.026_666_666_666_667).abs() < 1e-9);
        assert!(g.mean_src_familiarity.is_none());
        assert!(s.readability_test.is_none());
    }

    #[test]
    fn empty_corpus_errors() {
        assert!(matches!(corpus_statistics(&[], None), Err(CorpusError::EmptyCorpus)));
    }

    #[test]
    fn order_independent() {
        let recs: Vec<ParallelRecord> = (0..7)
            .map(|i| {
                ParallelRecord::new(
                    format!("r{i}"),
                    if i % 2 == 0 { "A" } else { "B" },
                    "Molecular mechanisms were characterized extensively. ".repeat(i + 1),
                    format!("Cells do {} things.", "many ".repeat(i)),
                )
            })
            .collect();
        let forward = corpus_statistics(&recs, None).unwrap();
        let mut rev = recs.clone();
        rev.reverse();
        assert_eq!(forward, corpus_statistics(&rev, None).unwrap());
        let weighted: f64 = forward
            .journals
            .values()
            .map(|g| g.records as f64 * g.mean_src_len)
            .sum::<f64>()
            / recs.len() as f64;
        assert!((weighted - forward.overall.mean_src_len).abs() < 1e-9);
        assert!(forward.readability_test.is_some());
    }
}
