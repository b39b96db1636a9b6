//! Researcher-in-the-loop set cover sessions.
//!
//! The session proposes a batch of high-scoring candidates, the researcher
//! accepts (optionally editing) or discards them, and the cover grows until
//! every target is covered or nothing left can cover what remains.
//!
//! Every mutation is recorded as an [`Action`]. Session state is a pure fold
//! over the initial inputs and that history, so a session can be persisted as
//! an initial-input snapshot plus an append-only JSONL journal and recovered
//! by replay.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fs::{File, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::datamodel::write_atomic;
use crate::reservoir::{RawSentence, Sentence, SentenceId};
use crate::setcover::{CoverState, CoverStats, CoverageMode, Heuristic, ScoringIndex};
use crate::textcore::{tokenize_with, Token, TokenizerConfig};
use crate::{Error, Result};

pub const DEFAULT_BATCH_SIZE: usize = 20;
/// Uncovered tokens listed in a status report.
pub const UNCOVERED_SAMPLE: usize = 20;

const SNAPSHOT_FILE: &str = "session.json";
const JOURNAL_FILE: &str = "history.jsonl";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct RitlConfig {
    /// Top-k taken under each heuristic; a batch holds at most `2k` entries.
    pub k: usize,
    pub mode: CoverageMode,
    pub tokenizer: TokenizerConfig,
}

impl Default for RitlConfig {
    fn default() -> Self {
        RitlConfig {
            k: DEFAULT_BATCH_SIZE,
            mode: CoverageMode::default(),
            tokenizer: TokenizerConfig::default(),
        }
    }
}

/// Everything a session starts from. Together with the history this fully
/// determines session state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SessionInit {
    pub session_id: String,
    pub reservoir: Vec<RawSentence>,
    pub targets: BTreeSet<Token>,
    #[serde(default)]
    pub config: RitlConfig,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "action", rename_all = "snake_case")]
pub enum Action {
    BatchProposed {
        batch: u64,
        ids: Vec<SentenceId>,
    },
    Accept {
        batch: u64,
        id: SentenceId,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        edited_text: Option<String>,
    },
    Discard {
        ids: Vec<SentenceId>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BatchEntry {
    pub id: SentenceId,
    pub text: String,
    /// Generation of the batch this entry belongs to; echoed back on accept.
    pub batch: u64,
    /// Score under each heuristic, keyed by heuristic name.
    pub scores: BTreeMap<String, f64>,
    /// Currently uncovered targets this sentence would cover.
    pub new_tokens: Vec<Token>,
}

#[derive(Debug, Clone, PartialEq)]
struct Batch {
    generation: u64,
    entries: Vec<BatchEntry>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SessionState {
    InProgress,
    Complete,
    /// Targets remain but no remaining sentence covers any of them.
    Stalled,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SessionStatus {
    pub state: SessionState,
    pub cover_stats: CoverStats,
    pub reservoir_size: usize,
    pub n_uncovered: usize,
    pub uncovered_sample: Vec<Token>,
    /// Generation of the current batch, if one is open.
    pub batch: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AcceptOutcome {
    pub cover_stats: CoverStats,
    pub new_tokens: Vec<Token>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscardError {
    pub id: SentenceId,
    pub message: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscardOutcome {
    pub removed: Vec<SentenceId>,
    pub errors: Vec<DiscardError>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SessionExport {
    pub session_id: String,
    pub state: SessionState,
    pub cover: CoverState,
    pub history: Vec<Action>,
}

#[derive(Debug)]
struct Journal {
    path: PathBuf,
    file: File,
}

impl Journal {
    fn append(&mut self, action: &Action) -> Result<()> {
        let mut line = serde_json::to_vec(action).expect("actions always serialize");
        line.push(b'\n');
        self.file
            .write_all(&line)
            .and_then(|_| self.file.sync_data())
            .map_err(|e| Error::io(&self.path, e))
    }
}

#[derive(Debug)]
pub struct RitlSession {
    init: SessionInit,
    sentences: Vec<Sentence>,
    position: HashMap<SentenceId, usize>,
    in_reservoir: Vec<bool>,
    reservoir_size: usize,
    index: ScoringIndex,
    cover: CoverState,
    batch: Option<Batch>,
    generation: u64,
    history: Vec<Action>,
    journal: Option<Journal>,
}

impl RitlSession {
    pub fn create(init: SessionInit) -> Result<Self> {
        if init.targets.is_empty() {
            return Err(Error::InvalidInput("target set is empty".into()));
        }
        if init.reservoir.is_empty() {
            return Err(Error::InvalidInput("reservoir is empty".into()));
        }
        if init.config.k == 0 {
            return Err(Error::InvalidParameter(
                "batch size k must be at least 1".into(),
            ));
        }
        let sentences: Vec<Sentence> = init
            .reservoir
            .iter()
            .map(|r| Sentence::new(r.id, r.text.clone(), &init.config.tokenizer))
            .collect();
        let mut position = HashMap::with_capacity(sentences.len());
        for (pos, s) in sentences.iter().enumerate() {
            if position.insert(s.id, pos).is_some() {
                return Err(Error::InvalidInput(format!(
                    "duplicate sentence id {}",
                    s.id
                )));
            }
        }
        let index = ScoringIndex::new(&sentences, &init.targets, &init.targets, init.config.mode);
        Ok(RitlSession {
            in_reservoir: vec![true; sentences.len()],
            reservoir_size: sentences.len(),
            cover: CoverState::new(init.targets.clone()),
            sentences,
            position,
            index,
            batch: None,
            generation: 0,
            history: Vec::new(),
            journal: None,
            init,
        })
    }

    /// Rebuild a session by folding `history` over its initial inputs.
    pub fn replay(init: SessionInit, history: &[Action]) -> Result<Self> {
        let mut session = RitlSession::create(init)?;
        for action in history {
            session.apply(action)?;
        }
        Ok(session)
    }

    fn apply(&mut self, action: &Action) -> Result<()> {
        match action {
            Action::BatchProposed { batch, ids } => {
                let proposed = self.propose_batch()?;
                let got: Vec<SentenceId> = proposed.iter().map(|e| e.id).collect();
                if *batch != self.generation || got != *ids {
                    return Err(Error::InvalidState(format!(
                        "history diverges at batch {batch}: recorded {ids:?}, recomputed {got:?}"
                    )));
                }
            }
            Action::Accept {
                batch,
                id,
                edited_text,
            } => {
                self.accept(*id, edited_text.clone(), Some(*batch))?;
            }
            Action::Discard { ids } => {
                let out = self.discard(ids)?;
                if !out.errors.is_empty() {
                    return Err(Error::InvalidState(format!(
                        "history diverges: discard of {ids:?} failed: {:?}",
                        out.errors
                    )));
                }
            }
        }
        Ok(())
    }

    /// Create a session persisted under `dir`: an initial snapshot plus an
    /// empty journal that every later action is appended to.
    pub fn create_persistent(dir: &Path, init: SessionInit) -> Result<Self> {
        let mut session = RitlSession::create(init)?;
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        let snapshot = serde_json::to_vec_pretty(&session.init).expect("init always serializes");
        write_atomic(&dir.join(SNAPSHOT_FILE), &snapshot)?;
        let path = dir.join(JOURNAL_FILE);
        let file = File::create(&path).map_err(|e| Error::io(&path, e))?;
        session.journal = Some(Journal { path, file });
        Ok(session)
    }

    /// Recover a persisted session by replaying its journal. A torn final
    /// journal line (from a crash mid-append) is dropped.
    pub fn open(dir: &Path) -> Result<Self> {
        let snap_path = dir.join(SNAPSHOT_FILE);
        let raw = std::fs::read(&snap_path).map_err(|e| Error::io(&snap_path, e))?;
        let init: SessionInit = serde_json::from_slice(&raw).map_err(|e| Error::Parse {
            path: snap_path.clone(),
            line: e.line(),
            message: e.to_string(),
        })?;
        let path = dir.join(JOURNAL_FILE);
        let content = std::fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
        let (history, valid_len) = parse_history(&content, &path)?;
        let mut session = RitlSession::replay(init, &history)?;
        let file = OpenOptions::new()
            .append(true)
            .open(&path)
            .map_err(|e| Error::io(&path, e))?;
        if valid_len < content.len() {
            log::warn!("{}: dropping torn final journal line", path.display());
            file.set_len(valid_len as u64)
                .map_err(|e| Error::io(&path, e))?;
        }
        session.journal = Some(Journal { path, file });
        Ok(session)
    }

    fn record(&mut self, action: Action) -> Result<()> {
        if let Some(j) = &mut self.journal {
            j.append(&action)?;
        }
        self.history.push(action);
        Ok(())
    }

    fn entry_for(&self, pos: usize, generation: u64) -> Option<BatchEntry> {
        let scores = self.index.scores_for(pos)?;
        let s = &self.sentences[pos];
        let uncovered = self.cover.uncovered();
        let new_tokens: BTreeSet<Token> = s
            .tokens
            .iter()
            .filter(|t| uncovered.contains(*t))
            .cloned()
            .collect();
        Some(BatchEntry {
            id: s.id,
            text: s.text.clone(),
            batch: generation,
            scores: scores
                .into_iter()
                .map(|(h, v)| (h.name().to_owned(), v))
                .collect(),
            new_tokens: new_tokens.into_iter().collect(),
        })
    }

    /// Propose a fresh batch: the top-k under each heuristic, interleaved
    /// best-first and deduplicated. An empty batch means the session is
    /// complete or stalled.
    pub fn propose_batch(&mut self) -> Result<Vec<BatchEntry>> {
        let k = self.init.config.k;
        let generation = self.generation + 1;
        let tops: Vec<Vec<usize>> = Heuristic::ALL
            .iter()
            .map(|&h| {
                self.index
                    .ranked(h)
                    .into_iter()
                    .take(k)
                    .map(|(pos, _)| pos)
                    .collect()
            })
            .collect();
        let mut seen = HashSet::new();
        let mut entries = Vec::new();
        for rank in 0..k {
            for top in &tops {
                if let Some(&pos) = top.get(rank) {
                    if seen.insert(pos) {
                        entries.extend(self.entry_for(pos, generation));
                    }
                }
            }
        }
        self.record(Action::BatchProposed {
            batch: generation,
            ids: entries.iter().map(|e| e.id).collect(),
        })?;
        self.generation = generation;
        self.batch = Some(Batch {
            generation,
            entries: entries.clone(),
        });
        Ok(entries)
    }

    /// The open batch, proposing one first if there is none.
    pub fn batch(&mut self) -> Result<Vec<BatchEntry>> {
        match &self.batch {
            Some(b) => Ok(b.entries.clone()),
            None => self.propose_batch(),
        }
    }

    pub fn current_batch(&self) -> Option<&[BatchEntry]> {
        self.batch.as_ref().map(|b| b.entries.as_slice())
    }

    /// Add a batch member to the cover, optionally replacing its text. An edit
    /// is honored even when it covers less than the original; the lost tokens
    /// are reported as a warning. Any accept closes the batch.
    pub fn accept(
        &mut self,
        id: SentenceId,
        edited_text: Option<String>,
        expected_batch: Option<u64>,
    ) -> Result<AcceptOutcome> {
        let batch = self
            .batch
            .as_ref()
            .ok_or_else(|| Error::StaleBatch("no batch is open; propose one first".into()))?;
        if let Some(g) = expected_batch {
            if g != batch.generation {
                return Err(Error::StaleBatch(format!(
                    "batch {g} is stale; the current batch is {}",
                    batch.generation
                )));
            }
        }
        let entry = batch.entries.iter().find(|e| e.id == id).ok_or_else(|| {
            Error::StaleBatch(format!(
                "sentence {id} is not in batch {}",
                batch.generation
            ))
        })?;
        let generation = batch.generation;
        let promised = entry.new_tokens.clone();
        let pos = self.position[&id];

        let edited_tokens = edited_text
            .as_deref()
            .map(|t| tokenize_with(t, &self.init.config.tokenizer));
        let mut warnings = Vec::new();
        if let Some(tokens) = &edited_tokens {
            let kept: HashSet<&Token> = tokens.iter().collect();
            let lost: Vec<&str> = promised
                .iter()
                .filter(|t| !kept.contains(t))
                .map(Token::as_str)
                .collect();
            if !lost.is_empty() {
                warnings.push(format!(
                    "edit of sentence {id} no longer covers: {}",
                    lost.join(", ")
                ));
            }
        }

        self.record(Action::Accept {
            batch: generation,
            id,
            edited_text: edited_text.clone(),
        })?;
        let sentence = &self.sentences[pos];
        let text = edited_text.as_deref().unwrap_or(&sentence.text);
        let tokens = edited_tokens.as_deref().unwrap_or(&sentence.tokens);
        let new_tokens = self.cover.add(id, text, tokens);
        self.index.mark_covered(tokens);
        self.index.remove(pos);
        self.in_reservoir[pos] = false;
        self.reservoir_size -= 1;
        self.batch = None;
        for w in &warnings {
            log::warn!("{}: {w}", self.init.session_id);
        }
        Ok(AcceptOutcome {
            cover_stats: self.cover.stats(),
            new_tokens,
            warnings,
        })
    }

    /// Permanently remove sentences from the reservoir. Unknown or already
    /// removed ids are reported individually; the rest are still processed.
    pub fn discard(&mut self, ids: &[SentenceId]) -> Result<DiscardOutcome> {
        let mut out = DiscardOutcome::default();
        let mut removing = HashSet::new();
        for &id in ids {
            let message = match self.position.get(&id) {
                None => Some("unknown sentence id"),
                Some(&pos) if !self.in_reservoir[pos] || !removing.insert(id) => {
                    Some("sentence is no longer in the reservoir")
                }
                Some(_) => None,
            };
            match message {
                Some(m) => out.errors.push(DiscardError {
                    id,
                    message: m.to_owned(),
                }),
                None => out.removed.push(id),
            }
        }
        if out.removed.is_empty() {
            return Ok(out);
        }
        self.record(Action::Discard {
            ids: out.removed.clone(),
        })?;
        for id in &out.removed {
            let pos = self.position[id];
            self.in_reservoir[pos] = false;
            self.index.remove(pos);
        }
        self.reservoir_size -= out.removed.len();
        if let Some(batch) = &mut self.batch {
            batch.entries.retain(|e| !removing.contains(&e.id));
            if batch.entries.is_empty() {
                self.batch = None;
            }
        }
        Ok(out)
    }

    pub fn state(&self) -> SessionState {
        if self.index.n_uncovered() == 0 {
            SessionState::Complete
        } else if self.index.has_any_hit() {
            SessionState::InProgress
        } else {
            SessionState::Stalled
        }
    }

    pub fn status(&self) -> SessionStatus {
        let uncovered = self.cover.uncovered();
        SessionStatus {
            state: self.state(),
            cover_stats: self.cover.stats(),
            reservoir_size: self.reservoir_size,
            n_uncovered: uncovered.len(),
            uncovered_sample: uncovered.iter().take(UNCOVERED_SAMPLE).cloned().collect(),
            batch: self.batch.as_ref().map(|b| b.generation),
        }
    }

    pub fn export(&self) -> SessionExport {
        SessionExport {
            session_id: self.init.session_id.clone(),
            state: self.state(),
            cover: self.cover.clone(),
            history: self.history.clone(),
        }
    }

    pub fn session_id(&self) -> &str {
        &self.init.session_id
    }

    pub fn init(&self) -> &SessionInit {
        &self.init
    }

    pub fn cover(&self) -> &CoverState {
        &self.cover
    }

    pub fn history(&self) -> &[Action] {
        &self.history
    }

    /// Ids still in the reservoir, in input order.
    pub fn reservoir_ids(&self) -> Vec<SentenceId> {
        self.sentences
            .iter()
            .zip(&self.in_reservoir)
            .filter(|(_, live)| **live)
            .map(|(s, _)| s.id)
            .collect()
    }
}

/// Parse a session journal. Returns the actions and the byte length of the
/// well-formed prefix; an unterminated, unparsable final line is treated as a
/// torn write and excluded.
pub fn parse_history(content: &str, origin: &Path) -> Result<(Vec<Action>, usize)> {
    let mut actions = Vec::new();
    let mut offset = 0;
    for (idx, line) in content.split_inclusive('\n').enumerate() {
        let terminated = line.ends_with('\n');
        let body = line.trim();
        if !body.is_empty() {
            match serde_json::from_str::<Action>(body) {
                Ok(a) => actions.push(a),
                Err(_) if !terminated => break,
                Err(e) => {
                    return Err(Error::Parse {
                        path: origin.to_path_buf(),
                        line: idx + 1,
                        message: e.to_string(),
                    })
                }
            }
        }
        offset += line.len();
    }
    Ok((actions, offset))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn init(texts: &[&str], targets: &str, k: usize) -> SessionInit {
        SessionInit {
            session_id: "t".into(),
            reservoir: texts
                .iter()
                .enumerate()
                .map(|(i, t)| RawSentence {
                    id: i as u64 + 1,
                    text: t.to_string(),
                })
                .collect(),
            targets: targets
                .split_whitespace()
                .map(|t| Token::new(t).unwrap())
                .collect(),
            config: RitlConfig {
                k,
                ..Default::default()
            },
        }
    }

    fn toks(v: &[Token]) -> Vec<&str> {
        v.iter().map(Token::as_str).collect()
    }

    #[test]
    fn create_examples() {
        let s = RitlSession::create(init(&["a b", "c", "d x"], "a b c d", 20)).unwrap();
        assert_eq!(s.status().cover_stats.coverage_pct, 0.0);
        assert_eq!(s.status().state, SessionState::InProgress);
        assert!(s.current_batch().is_none());
        assert_eq!(RitlConfig::default().k, 20);
        assert!(matches!(
            RitlSession::create(init(&["a"], "", 20)),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn small_reservoir_returns_everything_eligible() {
        let mut s = RitlSession::create(init(&["a b", "c", "zzz"], "a b c", 20)).unwrap();
        let batch = s.propose_batch().unwrap();
        let ids: BTreeSet<u64> = batch.iter().map(|e| e.id).collect();
        assert_eq!(ids, BTreeSet::from([1, 2]));
        assert!(batch.iter().all(|e| e.scores.len() == 2));
    }

    #[test]
    fn both_heuristics_contribute() {
        // coverage: 0.5 vs 0.6 -> sentence 2; log: ln(0.5)*1 = -0.69 vs ln(0.6)*3 = -1.53 -> sentence 1
        let texts = ["a x", "b c d x y", "q r s"];
        let mut s = RitlSession::create(init(&texts, "a b c d", 1)).unwrap();
        let batch = s.propose_batch().unwrap();
        let ids: Vec<u64> = batch.iter().map(|e| e.id).collect();
        assert_eq!(ids, vec![2, 1]);
        assert_eq!(toks(&batch[0].new_tokens), ["b", "c", "d"]);
    }

    #[test]
    fn accept_and_edit() {
        let mut s = RitlSession::create(init(&["a b", "c"], "a b c", 20)).unwrap();
        s.propose_batch().unwrap();
        let out = s.accept(1, None, None).unwrap();
        assert_eq!(toks(&out.new_tokens), ["a", "b"]);
        assert_eq!(
            toks(&s.cover().uncovered().iter().cloned().collect::<Vec<_>>()),
            ["c"]
        );
        // batch is closed after an accept
        assert!(matches!(s.accept(2, None, None), Err(Error::StaleBatch(_))));

        s.propose_batch().unwrap();
        let out = s.accept(2, Some("no target here".into()), None).unwrap();
        assert!(out.new_tokens.is_empty());
        assert_eq!(out.warnings.len(), 1);
        assert_eq!(s.cover().selected().len(), 2);
        assert_eq!(s.cover().uncovered().len(), 1);
        assert_eq!(s.status().state, SessionState::Stalled);
    }

    #[test]
    fn stale_generation_is_rejected() {
        let mut s = RitlSession::create(init(&["a", "b"], "a b", 20)).unwrap();
        s.propose_batch().unwrap();
        s.propose_batch().unwrap();
        assert!(matches!(
            s.accept(1, None, Some(1)),
            Err(Error::StaleBatch(_))
        ));
        assert!(s.accept(1, None, Some(2)).is_ok());
    }

    #[test]
    fn discard_examples() {
        let mut s = RitlSession::create(init(&["t x", "t y", "u"], "t u", 20)).unwrap();
        s.propose_batch().unwrap();
        assert_eq!(s.discard(&[]).unwrap(), DiscardOutcome::default());
        let out = s.discard(&[1, 99, 1]).unwrap();
        assert_eq!(out.removed, vec![1]);
        assert_eq!(out.errors.len(), 2);
        assert!(s.current_batch().unwrap().iter().all(|e| e.id != 1));
        s.discard(&[2]).unwrap();
        let batch = s.propose_batch().unwrap();
        assert_eq!(batch.iter().map(|e| e.id).collect::<Vec<_>>(), vec![3]);
        s.accept(3, None, None).unwrap();
        assert_eq!(s.status().state, SessionState::Stalled);
        assert!(s.propose_batch().unwrap().is_empty());
        assert_eq!(toks(&s.status().uncovered_sample), ["t"]);
    }

    #[test]
    fn complete_and_replay() {
        let mut s = RitlSession::create(init(&["a b", "c d", "a c", "e"], "a b c d", 2)).unwrap();
        s.propose_batch().unwrap();
        s.discard(&[4]).unwrap();
        let first = s.current_batch().unwrap()[0].id;
        s.accept(first, None, None).unwrap();
        while s.status().state == SessionState::InProgress {
            let id = s.batch().unwrap()[0].id;
            s.accept(
                id,
                Some(format!("{} extra", s.sentences[s.position[&id]].text)),
                None,
            )
            .unwrap();
        }
        assert_eq!(s.status().state, SessionState::Complete);
        let export = s.export();
        let replayed = RitlSession::replay(s.init().clone(), &export.history).unwrap();
        assert_eq!(replayed.export(), export);
        assert_eq!(replayed.reservoir_ids(), s.reservoir_ids());
        assert_eq!(replayed.status(), s.status());
    }

    #[test]
    fn divergent_history_is_rejected() {
        let i = init(&["a", "b"], "a b", 20);
        let bad = [Action::BatchProposed {
            batch: 1,
            ids: vec![2],
        }];
        assert!(matches!(
            RitlSession::replay(i, &bad),
            Err(Error::InvalidState(_))
        ));
    }

    #[test]
    fn persistence_recovers_by_replay() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("s1");
        let mut s =
            RitlSession::create_persistent(&path, init(&["a b", "c", "d"], "a b c d", 20)).unwrap();
        s.propose_batch().unwrap();
        s.accept(1, Some("a b!".into()), None).unwrap();
        s.propose_batch().unwrap();
        s.discard(&[3]).unwrap();
        let before = s.export();
        drop(s);

        // simulate a torn write
        let journal = path.join(JOURNAL_FILE);
        let mut f = OpenOptions::new().append(true).open(&journal).unwrap();
        f.write_all(b"{\"action\":\"acc").unwrap();
        drop(f);

        let mut back = RitlSession::open(&path).unwrap();
        assert_eq!(back.export(), before);
        back.accept(2, None, None).unwrap();
        drop(back);
        let again = RitlSession::open(&path).unwrap();
        assert_eq!(again.cover().selected_ids(), vec![1, 2]);
    }

    #[test]
    fn history_parse_errors_cite_line() {
        let content = "{\"action\":\"discard\",\"ids\":[1]}\nnot json\n";
        let err = parse_history(content, Path::new("h.jsonl")).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let (a, n) = parse_history(
            "{\"action\":\"discard\",\"ids\":[1]}\n{\"ac",
            Path::new("h"),
        )
        .unwrap();
        assert_eq!(a.len(), 1);
        assert_eq!(n, 31);
    }
}
