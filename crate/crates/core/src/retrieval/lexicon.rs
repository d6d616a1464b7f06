use std::collections::HashMap;
use std::io::BufRead;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::RetrievalError;
use crate::text::word_tokens;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LexiconEntry {
    pub entity: String,
    pub definition: String,
}

impl LexiconEntry {
    pub fn new(entity: impl Into<String>, definition: impl Into<String>) -> Self {
        Self {
            entity: entity.into(),
            definition: definition.into(),
        }
    }
}

/// Term/definition pairs, keyed by the entity's lowercased word tokens.
#[derive(Debug, Clone, Default)]
pub struct Lexicon {
    entries: Vec<LexiconEntry>,
    by_tokens: HashMap<Vec<String>, usize>,
    longest: usize,
}

impl Lexicon {
    pub fn new(entries: impl IntoIterator<Item = LexiconEntry>) -> Result<Self, RetrievalError> {
        let mut lexicon = Self::default();
        for entry in entries {
            lexicon.insert(entry, None)?;
        }
        Ok(lexicon)
    }

    fn insert(&mut self, entry: LexiconEntry, line: Option<usize>) -> Result<(), RetrievalError> {
        let fail = |message: &str| match line {
            Some(line) => RetrievalError::Lexicon {
                line,
                message: message.to_owned(),
            },
            None => RetrievalError::InvalidParameter(message.to_owned()),
        };
        if entry.definition.trim().is_empty() {
            return Err(fail("empty definition"));
        }
        let key = word_tokens(&entry.entity);
        if key.is_empty() {
            return Err(fail("entity has no word tokens"));
        }
        if self.by_tokens.contains_key(&key) {
            return Err(RetrievalError::DuplicateEntity(entry.entity));
        }
        self.longest = self.longest.max(key.len());
        self.by_tokens.insert(key, self.entries.len());
        self.entries.push(entry);
        Ok(())
    }

    /// Reads `<entity>\t<definition>` lines. Empty lines are skipped.
    pub fn from_reader(reader: impl BufRead) -> Result<Self, RetrievalError> {
        let mut lexicon = Self::default();
        for (i, line) in reader.lines().enumerate() {
            let line = line?;
            if line.is_empty() {
                continue;
            }
            let (entity, definition) =
                line.split_once('\t').ok_or_else(|| RetrievalError::Lexicon {
                    line: i + 1,
                    message: "expected `<entity>\\t<definition>`".into(),
                })?;
            lexicon.insert(LexiconEntry::new(entity, definition), Some(i + 1))?;
        }
        Ok(lexicon)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, RetrievalError> {
        let file = std::fs::File::open(path)?;
        Self::from_reader(std::io::BufReader::new(file))
    }

    /// Case-insensitive lookup by entity text.
    pub fn get(&self, entity: &str) -> Option<&LexiconEntry> {
        self.by_tokens
            .get(&word_tokens(entity))
            .map(|&i| &self.entries[i])
    }

    pub fn entries(&self) -> &[LexiconEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Finds lexicon entities in `source` by longest match over word tokens,
/// scanning left to right. Matched spans never overlap and each entity is
/// reported once, in order of first occurrence.
pub fn match_terms(source: &str, lexicon: &Lexicon) -> Vec<LexiconEntry> {
    let words = word_tokens(source);
    let mut found = Vec::new();
    let mut seen = vec![false; lexicon.entries.len()];
    let mut pos = 0;
    while pos < words.len() {
        let max_len = lexicon.longest.min(words.len() - pos);
        let hit = (1..=max_len)
            .rev()
            .find_map(|len| lexicon.by_tokens.get(&words[pos..pos + len]).map(|&i| (i, len)));
        match hit {
            Some((i, len)) => {
                if !seen[i] {
                    seen[i] = true;
                    found.push(lexicon.entries[i].clone());
                }
                pos += len;
            }
            None => pos += 1,
        }
    }
    found
}
