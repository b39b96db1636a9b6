//! Codepoint audit against a per-language script profile.

use std::collections::{BTreeSet, HashMap, HashSet};

use serde::{Deserialize, Serialize};
use unicode_normalization::char::is_combining_mark;
use unicode_script::{Script, UnicodeScript};

use crate::{Error, Result};

/// Allowed scripts plus an explicit codepoint denylist. Common and Inherited
/// characters (digits, punctuation, combining marks) are always allowed;
/// private-use codepoints never are.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScriptProfile {
    pub name: String,
    pub allowed: HashSet<Script>,
    pub denylist: BTreeSet<char>,
}

/// On-disk form: `{"name": "ff", "scripts": ["Latn", "Adlm"], "deny": ["U+00F4"]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScriptProfileSpec {
    pub name: String,
    pub scripts: Vec<String>,
    #[serde(default)]
    pub deny: Vec<String>,
}

fn parse_script(code: &str) -> Result<Script> {
    let mut chars = code.trim().chars();
    let canonical: String = match chars.next() {
        Some(first) => first
            .to_uppercase()
            .chain(chars.flat_map(char::to_lowercase))
            .collect(),
        None => String::new(),
    };
    Script::from_short_name(&canonical)
        .or_else(|| Script::from_full_name(code.trim()))
        .ok_or_else(|| Error::InvalidParameter(format!("unknown script {code:?}")))
}

fn parse_codepoint(s: &str) -> Result<char> {
    let t = s.trim();
    let hex = t.strip_prefix("U+").or_else(|| t.strip_prefix("u+"));
    match hex {
        Some(h) => u32::from_str_radix(h, 16)
            .ok()
            .and_then(char::from_u32)
            .ok_or_else(|| Error::InvalidParameter(format!("bad codepoint {s:?}"))),
        None => {
            let mut it = t.chars();
            match (it.next(), it.next()) {
                (Some(c), None) => Ok(c),
                _ => Err(Error::InvalidParameter(format!("bad codepoint {s:?}"))),
            }
        }
    }
}

impl ScriptProfile {
    /// A profile from ISO-15924 codes joined by `+`, e.g. `latn` or `latn+ethi`.
    pub fn from_codes(spec: &str) -> Result<Self> {
        let allowed = spec
            .split('+')
            .map(parse_script)
            .collect::<Result<HashSet<_>>>()?;
        Ok(ScriptProfile {
            name: spec.to_owned(),
            allowed,
            denylist: BTreeSet::new(),
        })
    }

    pub fn from_spec(spec: &ScriptProfileSpec) -> Result<Self> {
        Ok(ScriptProfile {
            name: spec.name.clone(),
            allowed: spec
                .scripts
                .iter()
                .map(|s| parse_script(s))
                .collect::<Result<_>>()?,
            denylist: spec
                .deny
                .iter()
                .map(|s| parse_codepoint(s))
                .collect::<Result<_>>()?,
        })
    }

    pub fn deny(mut self, c: char) -> Self {
        self.denylist.insert(c);
        self
    }

    fn allows(&self, script: Script) -> bool {
        matches!(script, Script::Common | Script::Inherited) || self.allowed.contains(&script)
    }
}

pub fn is_private_use(c: char) -> bool {
    matches!(c as u32, 0xE000..=0xF8FF | 0xF0000..=0xFFFFD | 0x100000..=0x10FFFD)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum IssueKind {
    PrivateUse,
    Denied,
    /// A letter whose script differs from the rest of its whitespace-delimited token.
    MixedScriptToken {
        token_script: String,
        char_script: String,
    },
    OutsideProfile {
        script: String,
    },
    /// A combining mark with no base character to attach to.
    OrphanedCombiner,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodepointIssue {
    /// Char index into the audited text.
    pub position: usize,
    /// `U+XXXX` notation.
    pub codepoint: String,
    #[serde(flatten)]
    pub kind: IssueKind,
}

fn notation(c: char) -> String {
    format!("U+{:04X}", c as u32)
}

fn is_specific(script: Script) -> bool {
    !matches!(script, Script::Common | Script::Inherited | Script::Unknown)
}

/// Codepoints of `text` that do not belong under `profile`. Each position is
/// reported at most once; the most specific finding wins.
pub fn codepoint_audit(text: &str, profile: &ScriptProfile) -> Vec<CodepointIssue> {
    let chars: Vec<char> = text.chars().collect();

    // Dominant specific script per whitespace-delimited token.
    let mut token_script: Vec<Option<Script>> = vec![None; chars.len()];
    let mut start = 0;
    while start < chars.len() {
        if chars[start].is_whitespace() {
            start += 1;
            continue;
        }
        let mut end = start;
        while end < chars.len() && !chars[end].is_whitespace() {
            end += 1;
        }
        let mut tally: HashMap<Script, usize> = HashMap::new();
        for &c in &chars[start..end] {
            let s = c.script();
            if is_specific(s) {
                *tally.entry(s).or_insert(0) += 1;
            }
        }
        // Majority script; ties prefer a script the profile allows.
        let dominant = tally
            .iter()
            .max_by(|a, b| {
                a.1.cmp(b.1)
                    .then(
                        profile
                            .allowed
                            .contains(a.0)
                            .cmp(&profile.allowed.contains(b.0)),
                    )
                    .then(b.0.short_name().cmp(a.0.short_name()))
            })
            .map(|(s, _)| *s);
        if tally.len() > 1 {
            for slot in &mut token_script[start..end] {
                *slot = dominant;
            }
        }
        start = end;
    }

    let mut issues = Vec::new();
    for (i, &c) in chars.iter().enumerate() {
        let kind = if is_private_use(c) {
            Some(IssueKind::PrivateUse)
        } else if profile.denylist.contains(&c) {
            Some(IssueKind::Denied)
        } else if is_combining_mark(c)
            && (i == 0 || {
                let prev = chars[i - 1];
                !(prev.is_alphanumeric() || is_combining_mark(prev))
            })
        {
            Some(IssueKind::OrphanedCombiner)
        } else {
            let script = c.script();
            match token_script[i] {
                Some(dom) if is_specific(script) && script != dom => {
                    Some(IssueKind::MixedScriptToken {
                        token_script: dom.short_name().to_owned(),
                        char_script: script.short_name().to_owned(),
                    })
                }
                _ if !profile.allows(script) => Some(IssueKind::OutsideProfile {
                    script: script.short_name().to_owned(),
                }),
                _ => None,
            }
        };
        if let Some(kind) = kind {
            issues.push(CodepointIssue {
                position: i,
                codepoint: notation(c),
                kind,
            });
        }
    }
    issues
}
