use std::collections::HashSet;
use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::CorpusError;

/// One abstract / lay-summary pair.
///
/// JSONL keys are `id`, `journal`, `src` and `tgt`. Any other keys are kept
/// in `extra` and written back out unchanged.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParallelRecord {
    pub id: String,
    pub journal: String,
    #[serde(rename = "src")]
    pub source: String,
    #[serde(rename = "tgt")]
    pub target: String,
    #[serde(flatten)]
    pub extra: serde_json::Map<String, serde_json::Value>,
}

impl ParallelRecord {
    pub fn new(
        id: impl Into<String>,
        journal: impl Into<String>,
        source: impl Into<String>,
        target: impl Into<String>,
    ) -> Self {
        Self {
            id: id.into(),
            journal: journal.into(),
            source: source.into(),
            target: target.into(),
            extra: serde_json::Map::new(),
        }
    }

    fn check(&self, line: usize) -> Result<(), CorpusError> {
        let invalid = |message: &str| CorpusError::InvalidRecord {
            line,
            id: self.id.clone(),
            message: message.to_owned(),
        };
        if self.id.is_empty() {
            return Err(invalid("empty id"));
        }
        if self.source.trim().is_empty() {
            return Err(invalid("empty src"));
        }
        if self.target.trim().is_empty() {
            return Err(invalid("empty tgt"));
        }
        Ok(())
    }
}

/// Streams validated records from JSONL, in file order. Blank lines are
/// skipped; line numbers in errors are 1-based.
pub struct CorpusReader<R> {
    lines: std::io::Lines<R>,
    line: usize,
    seen: HashSet<String>,
}

impl<R: BufRead> Iterator for CorpusReader<R> {
    type Item = Result<ParallelRecord, CorpusError>;

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            let raw = match self.lines.next()? {
                Ok(raw) => raw,
                Err(e) => return Some(Err(e.into())),
            };
            self.line += 1;
            if raw.trim().is_empty() {
                continue;
            }
            return Some(self.parse(&raw));
        }
    }
}

impl<R: BufRead> CorpusReader<R> {
    fn parse(&mut self, raw: &str) -> Result<ParallelRecord, CorpusError> {
        let line = self.line;
        let record: ParallelRecord =
            serde_json::from_str(raw).map_err(|e| CorpusError::Parse {
                line,
                message: e.to_string(),
            })?;
        record.check(line)?;
        if !self.seen.insert(record.id.clone()) {
            return Err(CorpusError::DuplicateId {
                line,
                id: record.id,
            });
        }
        Ok(record)
    }
}

pub fn read_corpus<R: BufRead>(reader: R) -> CorpusReader<R> {
    CorpusReader {
        lines: reader.lines(),
        line: 0,
        seen: HashSet::new(),
    }
}

pub fn load_corpus(path: impl AsRef<Path>) -> Result<CorpusReader<BufReader<File>>, CorpusError> {
    Ok(read_corpus(BufReader::new(File::open(path)?)))
}

/// Loads a whole corpus, stopping at the first bad line.
pub fn read_corpus_file(path: impl AsRef<Path>) -> Result<Vec<ParallelRecord>, CorpusError> {
    load_corpus(path)?.collect()
}

/// Writes one JSON object per line.
pub fn write_jsonl<T: Serialize>(
    mut out: impl Write,
    items: impl IntoIterator<Item = T>,
) -> std::io::Result<()> {
    for item in items {
        serde_json::to_writer(&mut out, &item)?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn read(src: &str) -> Result<Vec<ParallelRecord>, CorpusError> {
        read_corpus(src.as_bytes()).collect()
    }

    #[test]
    fn empty_input() {
        assert!(read("").unwrap().is_empty());
    }

    #[test]
    fn keeps_order() {
        let src = r#"{"id":"a","journal":"J","src":"x.","tgt":"y."}
{"id":"b","journal":"J","src":"x.","tgt":"y."}

{"id":"c","journal":"K","src":"x.","tgt":"y."}
"#;
        let ids: Vec<_> = read(src).unwrap().into_iter().map(|r| r.id).collect();
        assert_eq!(ids, ["a", "b", "c"]);
    }

    #[test]
    fn missing_field_names_line() {
        let src = "{\"id\":\"a\",\"journal\":\"J\",\"src\":\"x\",\"tgt\":\"y\"}\n{\"id\":\"b\",\"journal\":\"J\",\"src\":\"x\"}\n";
        match read(src) {
            Err(CorpusError::Parse { line, message }) => {
                assert_eq!(line, 2);
                assert!(message.contains("tgt"), "{message}");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn duplicate_and_empty_rejected() {
        let dup = "{\"id\":\"a\",\"journal\":\"J\",\"src\":\"x\",\"tgt\":\"y\"}\n{\"id\":\"a\",\"journal\":\"J\",\"src\":\"x\",\"tgt\":\"y\"}\n";
        assert!(matches!(read(dup), Err(CorpusError::DuplicateId { line: 2, .. })));
        let blank = "{\"id\":\"a\",\"journal\":\"J\",\"src\":\"  \",\"tgt\":\"y\"}\n";
        assert!(matches!(read(blank), Err(CorpusError::InvalidRecord { line: 1, .. })));
        assert!(matches!(read("not json\n"), Err(CorpusError::Parse { line: 1, .. })));
    }

    #[test]
    fn unknown_keys_pass_through() {
        let src = "{\"id\":\"a\",\"journal\":\"J\",\"src\":\"x\",\"tgt\":\"y\",\"doi\":\"10.1/2\"}\n";
        let recs = read(src).unwrap();
        assert_eq!(recs[0].extra["doi"], "10.1/2");
        let mut out = Vec::new();
        write_jsonl(&mut out, &recs).unwrap();
        assert_eq!(String::from_utf8(out).unwrap(), src);
    }
}
