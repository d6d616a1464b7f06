use serde::{Deserialize, Serialize};

use super::{LexiconEntry, RetrievalError};
use crate::text::word_count;

/// Input limit of the downstream BART-style generator, in word tokens.
pub const DEFAULT_TOKEN_BUDGET: usize = 1024;

const SOURCE_SEPARATOR: &str = " | ";
const DEFINITION_SEPARATOR: &str = " ; ";

/// A source text with definitions appended.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AugmentedSource {
    pub original: String,
    /// The definitions that fit, in order.
    pub additions: Vec<LexiconEntry>,
    pub rendered: String,
    pub token_budget: usize,
}

fn segment(entry: &LexiconEntry) -> String {
    format!("{}: {}", entry.entity, entry.definition)
}

/// Renders `source | e1: d1 ; e2: d2 ; ...`, keeping the longest prefix of
/// whole definitions whose total word count stays within `token_budget`.
/// With nothing kept, `rendered` equals `source`.
pub fn augment_with_definitions(
    source: &str,
    additions: &[LexiconEntry],
    token_budget: usize,
) -> Result<AugmentedSource, RetrievalError> {
    let mut used = word_count(source);
    if token_budget <= used {
        return Err(RetrievalError::BudgetTooSmall {
            budget: token_budget,
            source_words: used,
        });
    }
    let mut kept = Vec::new();
    let mut segments = Vec::new();
    for entry in additions {
        let seg = segment(entry);
        let cost = word_count(&seg);
        if used + cost > token_budget {
            break;
        }
        used += cost;
        segments.push(seg);
        kept.push(entry.clone());
    }
    let rendered = if segments.is_empty() {
        source.to_owned()
    } else {
        format!("{source}{SOURCE_SEPARATOR}{}", segments.join(DEFINITION_SEPARATOR))
    };
    Ok(AugmentedSource {
        original: source.to_owned(),
        additions: kept,
        rendered,
        token_budget,
    })
}
