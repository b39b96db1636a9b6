//! Sentence reservoirs and target token lists.

use std::collections::{BTreeSet, HashSet};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::textcore::{tokenize_with, Token, TokenizerConfig};
use crate::{Error, Result};

pub type SentenceId = u64;

/// A reservoir item: raw text plus its cached token list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sentence {
    pub id: SentenceId,
    pub text: String,
    pub tokens: Vec<Token>,
}

impl Sentence {
    pub fn new(id: SentenceId, text: impl Into<String>, config: &TokenizerConfig) -> Self {
        let text = text.into();
        let tokens = tokenize_with(&text, config);
        Sentence { id, text, tokens }
    }
}

/// The on-disk form of a reservoir line, before tokenization.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawSentence {
    pub id: SentenceId,
    pub text: String,
}

impl From<&Sentence> for RawSentence {
    fn from(s: &Sentence) -> Self {
        RawSentence {
            id: s.id,
            text: s.text.clone(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReservoirFormat {
    /// One sentence per line; ids are 1-based line numbers.
    PlainText,
    /// One `{"id": u64, "text": string}` object per line.
    Jsonl,
}

impl ReservoirFormat {
    /// Guess from the extension, falling back to sniffing the first non-blank line.
    pub fn detect(path: &Path, content: &str) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some("jsonl") | Some("json") => ReservoirFormat::Jsonl,
            Some("txt") => ReservoirFormat::PlainText,
            _ => {
                let first = content.lines().find(|l| !l.trim().is_empty());
                if first.is_some_and(|l| l.trim_start().starts_with('{')) {
                    ReservoirFormat::Jsonl
                } else {
                    ReservoirFormat::PlainText
                }
            }
        }
    }
}

/// Parse reservoir content. Blank lines are skipped; duplicate ids are rejected.
pub fn parse_reservoir(
    content: &str,
    format: ReservoirFormat,
    config: &TokenizerConfig,
    origin: &Path,
) -> Result<Vec<Sentence>> {
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    for (idx, line) in content.lines().enumerate() {
        let lineno = idx + 1;
        if line.trim().is_empty() {
            continue;
        }
        let (id, text) = match format {
            ReservoirFormat::PlainText => (lineno as SentenceId, line.to_owned()),
            ReservoirFormat::Jsonl => {
                let parsed: RawSentence = serde_json::from_str(line).map_err(|e| Error::Parse {
                    path: origin.to_path_buf(),
                    line: lineno,
                    message: e.to_string(),
                })?;
                (parsed.id, parsed.text)
            }
        };
        if !seen.insert(id) {
            return Err(Error::Parse {
                path: origin.to_path_buf(),
                line: lineno,
                message: format!("duplicate sentence id {id}"),
            });
        }
        out.push(Sentence::new(id, text, config));
    }
    Ok(out)
}

pub fn load_reservoir(path: &Path, config: &TokenizerConfig) -> Result<Vec<Sentence>> {
    let content = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let format = ReservoirFormat::detect(path, &content);
    parse_reservoir(&content, format, config, path)
}

/// Target tokens, one entry per line. Each line is tokenized with the same
/// configuration as the reservoir so that matching is consistent; multiword
/// entries contribute each of their words.
pub fn parse_targets(content: &str, config: &TokenizerConfig) -> BTreeSet<Token> {
    content
        .lines()
        .flat_map(|line| tokenize_with(line, config))
        .collect()
}

pub fn load_targets(path: &Path, config: &TokenizerConfig) -> Result<BTreeSet<Token>> {
    let content = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    Ok(parse_targets(&content, config))
}
