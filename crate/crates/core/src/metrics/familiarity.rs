use std::collections::HashMap;
use std::io::BufRead;
use std::path::Path;

use super::MetricError;

/// Document frequencies from a reference corpus.
///
/// On disk: first line `N <doc_count>`, then one `<token>\t<df>` line per
/// token. Tokens are looked up lowercased.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyTable {
    doc_count: u64,
    df: HashMap<String, u64>,
}

impl FrequencyTable {
    pub fn new(
        doc_count: u64,
        df: impl IntoIterator<Item = (String, u64)>,
    ) -> Result<Self, MetricError> {
        if doc_count == 0 {
            return Err(MetricError::TableFormat {
                line: 1,
                message: "doc count must be positive".into(),
            });
        }
        let mut map = HashMap::new();
        for (i, (token, count)) in df.into_iter().enumerate() {
            if count == 0 || count > doc_count {
                return Err(MetricError::TableFormat {
                    line: i + 2,
                    message: format!("df {count} for {token:?} outside [1, {doc_count}]"),
                });
            }
            map.insert(token.to_lowercase(), count);
        }
        Ok(Self {
            doc_count,
            df: map,
        })
    }

    pub fn from_reader(reader: impl BufRead) -> Result<Self, MetricError> {
        let mut lines = reader.lines();
        let header = lines.next().transpose()?.ok_or(MetricError::TableFormat {
            line: 1,
            message: "missing header".into(),
        })?;
        let doc_count = header
            .strip_prefix("N ")
            .and_then(|n| n.trim().parse::<u64>().ok())
            .ok_or_else(|| MetricError::TableFormat {
                line: 1,
                message: format!("expected `N <doc_count>`, found {header:?}"),
            })?;
        let mut entries = Vec::new();
        for (i, line) in lines.enumerate() {
            let line = line?;
            let line_no = i + 2;
            if line.is_empty() {
                continue;
            }
            let (token, count) = line.split_once('\t').ok_or_else(|| MetricError::TableFormat {
                line: line_no,
                message: "expected `<token>\\t<df>`".into(),
            })?;
            let count = count.trim().parse::<u64>().map_err(|e| MetricError::TableFormat {
                line: line_no,
                message: e.to_string(),
            })?;
            if count == 0 || count > doc_count {
                return Err(MetricError::TableFormat {
                    line: line_no,
                    message: format!("df {count} outside [1, {doc_count}]"),
                });
            }
            entries.push((token.to_owned(), count));
        }
        Self::new(doc_count, entries)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, MetricError> {
        let file = std::fs::File::open(path)?;
        Self::from_reader(std::io::BufReader::new(file))
    }

    pub fn doc_count(&self) -> u64 {
        self.doc_count
    }

    /// Document frequency, with unseen tokens counted as 1.
    pub fn df(&self, token: &str) -> u64 {
        self.df.get(token).copied().unwrap_or(1)
    }

    pub fn idf(&self, token: &str) -> f64 {
        (self.doc_count as f64 / self.df(token) as f64).ln()
    }
}

/// Mean `ln(N / df)` over the word tokens of `tokens`. Lower means more
/// familiar.
pub fn word_familiarity(
    tokens: &[crate::text::Token],
    table: &FrequencyTable,
) -> Result<f64, MetricError> {
    let (sum, n) = tokens
        .iter()
        .filter(|t| t.is_word)
        .fold((0.0, 0usize), |(sum, n), t| (sum + table.idf(&t.text), n + 1));
    if n == 0 {
        return Err(MetricError::EmptyText);
    }
    Ok(sum / n as f64)
}
