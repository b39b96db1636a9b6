//! Unicode normalization, logical-word tokenization and n-gram extraction.
//!
//! Everything in here is a pure function over its inputs. Tokens are whitespace
//! delimited "logical words" after NFKC normalization, never subword pieces.

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;

use serde::{Deserialize, Serialize};
use unicode_normalization::char::is_combining_mark;
use unicode_normalization::{is_nfkc_quick, IsNormalized, UnicodeNormalization};

use crate::{Error, Result};

/// NFKC normal form of `text`.
pub fn nfkc_normalize(text: &str) -> String {
    match is_nfkc_quick(text.chars()) {
        IsNormalized::Yes => text.to_owned(),
        _ => text.nfkc().collect(),
    }
}

/// A normalized logical word. Never empty, never contains whitespace.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Token(String);

impl Token {
    pub fn new(text: impl Into<String>) -> Result<Self> {
        let text = text.into();
        if text.is_empty() {
            return Err(Error::InvalidInput("empty token".into()));
        }
        if text.chars().any(char::is_whitespace) {
            return Err(Error::InvalidInput(format!(
                "token {text:?} contains whitespace"
            )));
        }
        Ok(Token(text))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl TryFrom<String> for Token {
    type Error = Error;

    fn try_from(value: String) -> Result<Self> {
        Token::new(value)
    }
}

impl From<Token> for String {
    fn from(token: Token) -> Self {
        token.0
    }
}

impl AsRef<str> for Token {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct TokenizerConfig {
    /// Lowercase tokens. On by default so that coverage does not depend on
    /// sentence-initial capitalization.
    pub lowercase: bool,
    /// Strip leading and trailing punctuation from every token.
    pub strip_punctuation: bool,
}

impl Default for TokenizerConfig {
    fn default() -> Self {
        TokenizerConfig {
            lowercase: true,
            strip_punctuation: true,
        }
    }
}

fn is_word_char(c: char) -> bool {
    c.is_alphanumeric() || is_combining_mark(c)
}

/// Tokenize with the default configuration.
pub fn tokenize(text: &str) -> Vec<Token> {
    tokenize_with(text, &TokenizerConfig::default())
}

/// NFKC-normalize, split on Unicode whitespace, strip edge punctuation and
/// optionally lowercase. Tokens that end up empty are dropped.
pub fn tokenize_with(text: &str, config: &TokenizerConfig) -> Vec<Token> {
    let normalized = nfkc_normalize(text);
    normalized
        .split_whitespace()
        .filter_map(|raw| {
            let piece = if config.strip_punctuation {
                raw.trim_matches(|c: char| !is_word_char(c))
            } else {
                raw
            };
            if piece.is_empty() {
                return None;
            }
            let piece = if config.lowercase {
                // Lowercasing can in principle denormalize (e.g. U+0130), so renormalize.
                nfkc_normalize(&piece.to_lowercase())
            } else {
                piece.to_owned()
            };
            // Normalization never introduces whitespace into a whitespace-free piece,
            // but keep the invariant local rather than assumed.
            if piece.is_empty() || piece.chars().any(char::is_whitespace) {
                None
            } else {
                Some(Token(piece))
            }
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NgramUnit {
    Character,
    Word,
}

/// Sliding-window n-gram counts of one order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NgramProfile<U: Eq + Hash> {
    order: usize,
    unit: NgramUnit,
    counts: HashMap<Vec<U>, usize>,
    total: usize,
}

impl<U: Eq + Hash + Clone> NgramProfile<U> {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn unit(&self) -> NgramUnit {
        self.unit
    }

    pub fn total(&self) -> usize {
        self.total
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    pub fn counts(&self) -> &HashMap<Vec<U>, usize> {
        &self.counts
    }

    pub fn count(&self, gram: &[U]) -> usize {
        self.counts.get(gram).copied().unwrap_or(0)
    }

    pub fn distinct(&self) -> usize {
        self.counts.len()
    }
}

/// Count every contiguous window of `n` units. Inputs shorter than `n` give an
/// empty profile.
pub fn extract_ngrams<U: Eq + Hash + Clone>(
    units: &[U],
    n: usize,
    unit: NgramUnit,
) -> Result<NgramProfile<U>> {
    if n == 0 {
        return Err(Error::InvalidParameter("n-gram order must be >= 1".into()));
    }
    let mut counts: HashMap<Vec<U>, usize> = HashMap::new();
    let mut total = 0;
    for window in units.windows(n) {
        *counts.entry(window.to_vec()).or_insert(0) += 1;
        total += 1;
    }
    Ok(NgramProfile {
        order: n,
        unit,
        counts,
        total,
    })
}

/// Character n-grams of `text` as given (no normalization).
pub fn char_ngrams(text: &str, n: usize) -> Result<NgramProfile<char>> {
    let chars: Vec<char> = text.chars().collect();
    extract_ngrams(&chars, n, NgramUnit::Character)
}

/// Word n-grams over an already tokenized sequence.
pub fn word_ngrams(tokens: &[Token], n: usize) -> Result<NgramProfile<Token>> {
    extract_ngrams(tokens, n, NgramUnit::Word)
}
