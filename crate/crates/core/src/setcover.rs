//! Greedy token set cover.
//!
//! A reservoir of sentences is searched for a small subset whose tokens cover a
//! target token set. Candidates are scored against the *current* uncovered set,
//! so scores shrink as the cover grows.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::reservoir::{Sentence, SentenceId};
use crate::textcore::Token;
use crate::{Error, Result};

/// Floor applied to coverage before taking its logarithm.
pub const LOG_EPSILON: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Heuristic {
    /// Fraction of the sentence's tokens that are still uncovered targets.
    CoveragePercent,
    /// `ln(max(coverage, eps)) * n_hits`; offsets the short-sentence bias of plain coverage.
    LogCovTimesHits,
}

impl Heuristic {
    pub const ALL: [Heuristic; 2] = [Heuristic::CoveragePercent, Heuristic::LogCovTimesHits];

    pub fn name(self) -> &'static str {
        match self {
            Heuristic::CoveragePercent => "coverage_percent",
            Heuristic::LogCovTimesHits => "log_cov_times_hits",
        }
    }

    pub fn score(self, coverage: f64, n_hits: usize) -> f64 {
        match self {
            Heuristic::CoveragePercent => coverage,
            Heuristic::LogCovTimesHits => coverage.max(LOG_EPSILON).ln() * n_hits as f64,
        }
    }
}

impl std::str::FromStr for Heuristic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "coverage_percent" | "coverage-percent" => Ok(Heuristic::CoveragePercent),
            "log_cov_times_hits" | "log-cov-times-hits" => Ok(Heuristic::LogCovTimesHits),
            other => Err(Error::InvalidParameter(format!(
                "unknown heuristic {other:?}"
            ))),
        }
    }
}

/// Whether coverage counts token occurrences or distinct token types.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoverageMode {
    #[default]
    Occurrences,
    Types,
}

/// Fraction of `sentence_tokens` whose type is in `uncovered`.
pub fn coverage_percent(
    sentence_tokens: &[Token],
    uncovered: &BTreeSet<Token>,
    mode: CoverageMode,
) -> Result<f64> {
    if sentence_tokens.is_empty() {
        return Err(Error::InvalidInput("coverage of an empty sentence".into()));
    }
    Ok(match mode {
        CoverageMode::Occurrences => {
            let hits = sentence_tokens
                .iter()
                .filter(|t| uncovered.contains(*t))
                .count();
            hits as f64 / sentence_tokens.len() as f64
        }
        CoverageMode::Types => {
            let types: HashSet<&Token> = sentence_tokens.iter().collect();
            let hits = types.iter().filter(|t| uncovered.contains(**t)).count();
            hits as f64 / types.len() as f64
        }
    })
}

/// Number of distinct uncovered targets present in the sentence.
pub fn n_hits(sentence_tokens: &[Token], uncovered: &BTreeSet<Token>) -> usize {
    sentence_tokens
        .iter()
        .filter(|t| uncovered.contains(*t))
        .collect::<HashSet<_>>()
        .len()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TargetTokenSet {
    original: BTreeSet<Token>,
    uncovered: BTreeSet<Token>,
    covered_by: BTreeMap<Token, SentenceId>,
}

impl TargetTokenSet {
    pub fn new(original: BTreeSet<Token>) -> Self {
        TargetTokenSet {
            uncovered: original.clone(),
            original,
            covered_by: BTreeMap::new(),
        }
    }

    pub fn original(&self) -> &BTreeSet<Token> {
        &self.original
    }

    pub fn uncovered(&self) -> &BTreeSet<Token> {
        &self.uncovered
    }

    pub fn covered_by(&self) -> &BTreeMap<Token, SentenceId> {
        &self.covered_by
    }

    pub fn n_covered(&self) -> usize {
        self.covered_by.len()
    }

    /// Mark every uncovered target among `tokens` as covered by `id` and return
    /// the newly covered tokens in sorted order.
    fn cover_with(&mut self, id: SentenceId, tokens: &[Token]) -> Vec<Token> {
        let mut fresh = Vec::new();
        for t in tokens {
            if self.uncovered.remove(t) {
                self.covered_by.insert(t.clone(), id);
                fresh.push(t.clone());
            }
        }
        fresh.sort();
        fresh
    }
}

/// One selected sentence as it appears in the cover output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverEntry {
    pub id: SentenceId,
    pub text: String,
    pub new_tokens: Vec<Token>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoverState {
    targets: TargetTokenSet,
    selected: Vec<CoverEntry>,
    distinct_tokens_in_cover: BTreeSet<Token>,
    n_tokens: usize,
}

impl CoverState {
    pub fn new(targets: BTreeSet<Token>) -> Self {
        CoverState {
            targets: TargetTokenSet::new(targets),
            selected: Vec::new(),
            distinct_tokens_in_cover: BTreeSet::new(),
            n_tokens: 0,
        }
    }

    /// Append a sentence. Returns the targets it newly covered.
    pub fn add(&mut self, id: SentenceId, text: &str, tokens: &[Token]) -> Vec<Token> {
        let fresh = self.targets.cover_with(id, tokens);
        self.distinct_tokens_in_cover.extend(tokens.iter().cloned());
        self.n_tokens += tokens.len();
        self.selected.push(CoverEntry {
            id,
            text: text.to_owned(),
            new_tokens: fresh.clone(),
        });
        fresh
    }

    /// Rebuild a cover from sentences in selection order.
    pub fn replay<'a>(
        targets: BTreeSet<Token>,
        sentences: impl IntoIterator<Item = &'a Sentence>,
    ) -> Self {
        let mut state = CoverState::new(targets);
        for s in sentences {
            state.add(s.id, &s.text, &s.tokens);
        }
        state
    }

    pub fn targets(&self) -> &TargetTokenSet {
        &self.targets
    }

    pub fn uncovered(&self) -> &BTreeSet<Token> {
        &self.targets.uncovered
    }

    pub fn selected(&self) -> &[CoverEntry] {
        &self.selected
    }

    pub fn selected_ids(&self) -> Vec<SentenceId> {
        self.selected.iter().map(|e| e.id).collect()
    }

    pub fn distinct_tokens(&self) -> &BTreeSet<Token> {
        &self.distinct_tokens_in_cover
    }

    pub fn n_tokens(&self) -> usize {
        self.n_tokens
    }

    pub fn stats(&self) -> CoverStats {
        cover_stats(self)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoverStats {
    /// Distinct tokens in the cover over covered targets; absent when nothing is covered.
    pub xi: Option<f64>,
    pub coverage_pct: f64,
    pub n_sentences: usize,
    pub n_tokens: usize,
    pub n_types: usize,
    pub n_targets: usize,
    pub n_covered: usize,
}

/// Summary statistics. An empty target set reports 0% coverage.
pub fn cover_stats(cover: &CoverState) -> CoverStats {
    let n_targets = cover.targets.original.len();
    let n_covered = cover.targets.n_covered();
    let n_types = cover.distinct_tokens_in_cover.len();
    CoverStats {
        xi: (n_covered > 0).then(|| n_types as f64 / n_covered as f64),
        coverage_pct: if n_targets == 0 {
            0.0
        } else {
            100.0 * n_covered as f64 / n_targets as f64
        },
        n_sentences: cover.selected.len(),
        n_tokens: cover.n_tokens,
        n_types,
        n_targets,
        n_covered,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoredCandidate {
    pub id: SentenceId,
    pub score: f64,
    pub coverage: f64,
    pub n_hits: usize,
    pub n_tokens: usize,
}

/// Best-first order: score desc, then more hits, then fewer tokens, then lower id.
pub fn rank_order(a: &ScoredCandidate, b: &ScoredCandidate) -> Ordering {
    b.score
        .total_cmp(&a.score)
        .then(b.n_hits.cmp(&a.n_hits))
        .then(a.n_tokens.cmp(&b.n_tokens))
        .then(a.id.cmp(&b.id))
}

/// Interned view of a reservoir keyed to one target set. Only target types are
/// tracked per sentence, which is all that scoring needs.
#[derive(Debug, Clone)]
pub(crate) struct ScoringIndex {
    target_ids: HashMap<Token, u32>,
    uncovered: Vec<bool>,
    n_uncovered: usize,
    sentences: Vec<IndexedSentence>,
    mode: CoverageMode,
}

#[derive(Debug, Clone)]
struct IndexedSentence {
    id: SentenceId,
    n_tokens: usize,
    n_types: usize,
    targets: Vec<(u32, u32)>,
    alive: bool,
}

impl ScoringIndex {
    pub(crate) fn new(
        reservoir: &[Sentence],
        targets: &BTreeSet<Token>,
        uncovered: &BTreeSet<Token>,
        mode: CoverageMode,
    ) -> Self {
        let target_ids: HashMap<Token, u32> = targets
            .iter()
            .enumerate()
            .map(|(i, t)| (t.clone(), i as u32))
            .collect();
        let mut flags = vec![false; targets.len()];
        for t in uncovered {
            if let Some(&i) = target_ids.get(t) {
                flags[i as usize] = true;
            }
        }
        let sentences = reservoir
            .par_iter()
            .map(|s| {
                let mut counts: HashMap<u32, u32> = HashMap::new();
                for t in &s.tokens {
                    if let Some(&i) = target_ids.get(t) {
                        *counts.entry(i).or_insert(0) += 1;
                    }
                }
                let mut targets: Vec<(u32, u32)> = counts.into_iter().collect();
                targets.sort_unstable();
                IndexedSentence {
                    id: s.id,
                    n_tokens: s.tokens.len(),
                    n_types: s.tokens.iter().collect::<HashSet<_>>().len(),
                    targets,
                    alive: !s.tokens.is_empty(),
                }
            })
            .collect();
        let n_uncovered = flags.iter().filter(|f| **f).count();
        ScoringIndex {
            target_ids,
            uncovered: flags,
            n_uncovered,
            sentences,
            mode,
        }
    }

    pub(crate) fn n_uncovered(&self) -> usize {
        self.n_uncovered
    }

    fn score_at(&self, pos: usize, heuristic: Heuristic) -> Option<ScoredCandidate> {
        let s = &self.sentences[pos];
        if !s.alive {
            return None;
        }
        let mut hits = 0usize;
        let mut occ = 0usize;
        for &(tid, count) in &s.targets {
            if self.uncovered[tid as usize] {
                hits += 1;
                occ += count as usize;
            }
        }
        if hits == 0 {
            return None;
        }
        let coverage = match self.mode {
            CoverageMode::Occurrences => occ as f64 / s.n_tokens as f64,
            CoverageMode::Types => hits as f64 / s.n_types as f64,
        };
        Some(ScoredCandidate {
            id: s.id,
            score: heuristic.score(coverage, hits),
            coverage,
            n_hits: hits,
            n_tokens: s.n_tokens,
        })
    }

    /// All live sentences with at least one hit, best first.
    pub(crate) fn ranked(&self, heuristic: Heuristic) -> Vec<(usize, ScoredCandidate)> {
        let mut scored: Vec<(usize, ScoredCandidate)> = (0..self.sentences.len())
            .into_par_iter()
            .filter_map(|pos| self.score_at(pos, heuristic).map(|c| (pos, c)))
            .collect();
        scored.par_sort_unstable_by(|a, b| rank_order(&a.1, &b.1));
        scored
    }

    /// Score a single position under every heuristic.
    pub(crate) fn scores_for(&self, pos: usize) -> Option<BTreeMap<Heuristic, f64>> {
        let mut out = BTreeMap::new();
        for h in Heuristic::ALL {
            out.insert(h, self.score_at(pos, h)?.score);
        }
        Some(out)
    }

    fn best(&self, live: &[usize], heuristic: Heuristic) -> Option<(usize, ScoredCandidate)> {
        live.par_iter()
            .filter_map(|&pos| self.score_at(pos, heuristic).map(|c| (pos, c)))
            .min_by(|a, b| rank_order(&a.1, &b.1))
    }

    pub(crate) fn has_any_hit(&self) -> bool {
        (0..self.sentences.len())
            .into_par_iter()
            .any(|pos| self.score_at(pos, Heuristic::CoveragePercent).is_some())
    }

    pub(crate) fn remove(&mut self, pos: usize) {
        self.sentences[pos].alive = false;
    }

    pub(crate) fn mark_covered(&mut self, tokens: &[Token]) {
        for t in tokens {
            if let Some(&i) = self.target_ids.get(t) {
                if std::mem::replace(&mut self.uncovered[i as usize], false) {
                    self.n_uncovered -= 1;
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GreedyConfig {
    pub heuristic: Heuristic,
    pub mode: CoverageMode,
    /// Stop after this many sentences; `None` runs to full cover or exhaustion.
    pub max_sentences: Option<usize>,
}

impl Default for GreedyConfig {
    fn default() -> Self {
        GreedyConfig {
            heuristic: Heuristic::CoveragePercent,
            mode: CoverageMode::Occurrences,
            max_sentences: None,
        }
    }
}

/// Score every reservoir sentence against `uncovered`, best first. Sentences
/// with no uncovered target are left out.
pub fn score_candidates(
    reservoir: &[Sentence],
    uncovered: &BTreeSet<Token>,
    heuristic: Heuristic,
    mode: CoverageMode,
) -> Vec<ScoredCandidate> {
    ScoringIndex::new(reservoir, uncovered, uncovered, mode)
        .ranked(heuristic)
        .into_iter()
        .map(|(_, c)| c)
        .collect()
}

/// Repeatedly take the best-scoring sentence until every target is covered,
/// nothing left hits an uncovered target, or the sentence budget is spent.
pub fn greedy_cover(
    reservoir: &[Sentence],
    targets: &BTreeSet<Token>,
    config: &GreedyConfig,
) -> CoverState {
    let mut state = CoverState::new(targets.clone());
    let mut index = ScoringIndex::new(reservoir, targets, targets, config.mode);
    let mut live: Vec<usize> = (0..reservoir.len()).collect();
    loop {
        if index.n_uncovered() == 0 {
            break;
        }
        if config
            .max_sentences
            .is_some_and(|m| state.selected.len() >= m)
        {
            break;
        }
        // Hits never grow, so sentences that stop hitting are dropped for good.
        live.retain(|&pos| index.score_at(pos, Heuristic::CoveragePercent).is_some());
        let Some((pos, _)) = index.best(&live, config.heuristic) else {
            break;
        };
        let sentence = &reservoir[pos];
        state.add(sentence.id, &sentence.text, &sentence.tokens);
        index.mark_covered(&sentence.tokens);
        index.remove(pos);
    }
    state
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BaselineMode {
    /// Random sentences until the token count matches the reference.
    Sametoks,
    /// Random sentences until target coverage matches the reference.
    Samecov,
}

impl std::str::FromStr for BaselineMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sametoks" => Ok(BaselineMode::Sametoks),
            "samecov" => Ok(BaselineMode::Samecov),
            other => Err(Error::InvalidParameter(format!(
                "unknown baseline {other:?}"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BaselineCover {
    pub cover: CoverState,
    /// False when the reservoir ran out before the matching criterion was met.
    pub complete: bool,
}

/// Random selection matched to `reference` by token count or by coverage.
/// Sentences already in the reference are not eligible. Deterministic for a seed.
pub fn random_baseline(
    reservoir: &[Sentence],
    targets: &BTreeSet<Token>,
    mode: BaselineMode,
    reference: &CoverState,
    seed: u64,
) -> BaselineCover {
    let taken: HashSet<SentenceId> = reference.selected.iter().map(|e| e.id).collect();
    let mut pool: Vec<&Sentence> = reservoir
        .iter()
        .filter(|s| !taken.contains(&s.id))
        .collect();
    pool.sort_by_key(|s| s.id);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    pool.shuffle(&mut rng);

    let mut cover = CoverState::new(targets.clone());
    let ref_tokens = reference.n_tokens;
    let ref_covered = reference.targets.n_covered();
    let ref_total = reference.targets.original.len();
    let n_targets = targets.len();
    // covered / n_targets >= ref_covered / ref_total, in integers.
    let reached = |c: &CoverState| match mode {
        BaselineMode::Sametoks => c.n_tokens >= ref_tokens,
        BaselineMode::Samecov => {
            ref_covered == 0 || c.targets.n_covered() * ref_total >= ref_covered * n_targets
        }
    };

    let mut complete = reached(&cover);
    for s in pool {
        if complete {
            break;
        }
        cover.add(s.id, &s.text, &s.tokens);
        complete = reached(&cover);
    }
    BaselineCover { cover, complete }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::textcore::TokenizerConfig;

    fn toks(s: &str) -> Vec<Token> {
        s.split_whitespace()
            .map(|t| Token::new(t).unwrap())
            .collect()
    }

    fn set(s: &str) -> BTreeSet<Token> {
        toks(s).into_iter().collect()
    }

    fn reservoir(texts: &[&str]) -> Vec<Sentence> {
        let cfg = TokenizerConfig::default();
        texts
            .iter()
            .enumerate()
            .map(|(i, t)| Sentence::new(i as u64 + 1, *t, &cfg))
            .collect()
    }

    #[test]
    fn coverage_percent_examples() {
        let m = CoverageMode::Occurrences;
        assert_eq!(
            coverage_percent(&toks("a b c d"), &set("a b"), m).unwrap(),
            0.5
        );
        assert!(
            (coverage_percent(&toks("a a b"), &set("a"), m).unwrap() - 2.0 / 3.0).abs() < 1e-15
        );
        assert_eq!(coverage_percent(&toks("x y"), &set("a"), m).unwrap(), 0.0);
        assert!(coverage_percent(&[], &set("a"), m).is_err());
        // types mode counts each type once
        assert_eq!(
            coverage_percent(&toks("a a b"), &set("a"), CoverageMode::Types).unwrap(),
            0.5
        );
    }

    #[test]
    fn score_candidates_examples() {
        let r = reservoir(&["a b", "a x y"]);
        let unc = set("a b");
        let ranked = score_candidates(
            &r,
            &unc,
            Heuristic::CoveragePercent,
            CoverageMode::Occurrences,
        );
        assert_eq!(ranked.len(), 2);
        assert_eq!((ranked[0].id, ranked[0].score), (1, 1.0));
        assert_eq!(ranked[1].id, 2);
        assert!((ranked[1].score - 1.0 / 3.0).abs() < 1e-15);

        let ranked = score_candidates(
            &r,
            &unc,
            Heuristic::LogCovTimesHits,
            CoverageMode::Occurrences,
        );
        assert_eq!(ranked[0].id, 1);
        assert_eq!(ranked[0].score, 0.0);
        // ln(1/3) * 1
        assert!((ranked[1].score - (-1.0986122886681098)).abs() < 1e-12);

        assert!(score_candidates(
            &r,
            &BTreeSet::new(),
            Heuristic::CoveragePercent,
            CoverageMode::Occurrences
        )
        .is_empty());
        assert!(score_candidates(
            &[],
            &unc,
            Heuristic::CoveragePercent,
            CoverageMode::Occurrences
        )
        .is_empty());
    }

    #[test]
    fn log_heuristic_floors_coverage() {
        assert_eq!(
            Heuristic::LogCovTimesHits.score(0.0, 2),
            LOG_EPSILON.ln() * 2.0
        );
    }

    /// Smallest number of sentences whose union covers `targets`, by enumeration.
    fn brute_force_min_cover(r: &[Sentence], targets: &BTreeSet<Token>) -> Option<usize> {
        let n = r.len();
        (0u32..1 << n)
            .filter(|mask| {
                let mut got = BTreeSet::new();
                for (i, s) in r.iter().enumerate() {
                    if mask & (1 << i) != 0 {
                        got.extend(s.tokens.iter().cloned());
                    }
                }
                targets.is_subset(&got)
            })
            .map(|mask| mask.count_ones() as usize)
            .min()
    }

    #[test]
    fn greedy_prefers_more_hits_on_ties() {
        let r = reservoir(&["a b", "c d", "a b c"]);
        let targets = set("a b c d");
        let cover = greedy_cover(&r, &targets, &GreedyConfig::default());
        assert_eq!(cover.selected_ids(), vec![3, 2]);
        assert!(cover.uncovered().is_empty());
        assert_eq!(brute_force_min_cover(&r, &targets), Some(2));
        assert_eq!(cover.selected()[0].new_tokens, toks("a b c"));
        assert_eq!(cover.selected()[1].new_tokens, toks("d"));
    }

    #[test]
    fn greedy_edge_cases() {
        let r = reservoir(&["a b", "c d"]);
        let cover = greedy_cover(&r, &BTreeSet::new(), &GreedyConfig::default());
        assert!(cover.selected().is_empty());

        let cover = greedy_cover(&r, &set("zz"), &GreedyConfig::default());
        assert!(cover.selected().is_empty());
        assert_eq!(cover.stats().coverage_pct, 0.0);
        assert_eq!(cover.stats().xi, None);

        let cfg = GreedyConfig {
            max_sentences: Some(1),
            ..Default::default()
        };
        let cover = greedy_cover(&r, &set("a c"), &cfg);
        assert_eq!(cover.selected().len(), 1);
    }

    #[test]
    fn greedy_tie_break_length_then_id() {
        // all three score 0.5 with one hit; the shorter sentence wins, then the lower id
        let r = reservoir(&["a a x x", "b y", "c z"]);
        let cover = greedy_cover(&r, &set("a b c"), &GreedyConfig::default());
        assert_eq!(cover.selected_ids(), vec![2, 3, 1]);
    }

    #[test]
    fn stats_examples() {
        let mut c = CoverState::new(set("a b c"));
        c.add(1, "a b c x y z", &toks("a b c x y z"));
        let s = cover_stats(&c);
        assert_eq!(s.xi, Some(2.0));
        assert_eq!(s.coverage_pct, 100.0);
        assert_eq!(s.n_types, 6);
        assert_eq!(s.n_tokens, 6);

        let mut c = CoverState::new(set("a b"));
        c.add(1, "a b", &toks("a b"));
        assert_eq!(cover_stats(&c).xi, Some(1.0));
    }

    #[test]
    fn baseline_is_deterministic_and_respects_reference() {
        let r = reservoir(&["a b", "c d", "e f", "a c", "b d", "x y", "q r"]);
        let targets = set("a b c d");
        let reference = greedy_cover(&r, &targets, &GreedyConfig::default());
        let one = random_baseline(&r, &targets, BaselineMode::Samecov, &reference, 7);
        let two = random_baseline(&r, &targets, BaselineMode::Samecov, &reference, 7);
        assert_eq!(one, two);
        let ref_ids: HashSet<_> = reference.selected_ids().into_iter().collect();
        assert!(one
            .cover
            .selected_ids()
            .iter()
            .all(|id| !ref_ids.contains(id)));

        let empty = CoverState::new(targets.clone());
        let b = random_baseline(&r, &targets, BaselineMode::Sametoks, &empty, 1);
        assert!(b.cover.selected().is_empty());
        assert!(b.complete);

        let b = random_baseline(&r, &targets, BaselineMode::Sametoks, &reference, 3);
        assert!(b.cover.n_tokens() >= reference.n_tokens());
    }

    #[test]
    fn samecov_flags_unreachable_coverage() {
        // Reference covers all 5 targets; the rest of the reservoir only reaches 4 of 5 (80%).
        let r = reservoir(&["a b c d e", "a b", "c d", "x y"]);
        let targets = set("a b c d e");
        let reference = greedy_cover(&r, &targets, &GreedyConfig::default());
        assert_eq!(reference.selected_ids(), vec![1]);
        let b = random_baseline(&r, &targets, BaselineMode::Samecov, &reference, 0);
        assert!(!b.complete);
        assert_eq!(b.cover.stats().coverage_pct, 80.0);
        assert_eq!(b.cover.selected().len(), 3);
    }
}
