//! Character n-gram F-score and counterweighted few-shot exemplar selection.
//!
//! [`chrf`] is plain chrF (character n-grams only, no word n-grams). The
//! counterweighted variant scales each matched n-gram by `(1 + c)^-alpha`, where
//! `c` is how often that n-gram already occurs among chosen exemplars, so a
//! greedy selector built on it favours exemplars that cover new parts of the
//! evaluation sentence.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::textcore::nfkc_normalize;
use crate::{Error, Result};

pub const DEFAULT_ALPHA: f64 = 2.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ChrfParams {
    pub max_char_n: usize,
    pub beta: f64,
    pub normalize_nfkc: bool,
    pub strip_whitespace: bool,
}

impl Default for ChrfParams {
    fn default() -> Self {
        ChrfParams {
            max_char_n: 6,
            beta: 2.0,
            normalize_nfkc: true,
            strip_whitespace: true,
        }
    }
}

impl ChrfParams {
    pub fn validate(&self) -> Result<()> {
        if self.max_char_n == 0 {
            return Err(Error::InvalidParameter("max_char_n must be >= 1".into()));
        }
        if self.beta <= 0.0 || !self.beta.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "beta must be > 0, got {}",
                self.beta
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChrfResult {
    /// Score in `[0, 100]`.
    pub score: f64,
    /// Both sides were empty after preprocessing; the score is 100 by convention.
    pub both_empty: bool,
}

/// Character n-gram counts of one text for orders `1..=max_char_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChrfProfile {
    orders: Vec<HashMap<Vec<char>, usize>>,
    totals: Vec<usize>,
}

impl ChrfProfile {
    pub fn new(text: &str, params: &ChrfParams) -> Self {
        let normalized;
        let text = if params.normalize_nfkc {
            normalized = nfkc_normalize(text);
            normalized.as_str()
        } else {
            text
        };
        let chars: Vec<char> = if params.strip_whitespace {
            text.chars().filter(|c| !c.is_whitespace()).collect()
        } else {
            text.chars().collect()
        };
        let mut orders = Vec::with_capacity(params.max_char_n);
        let mut totals = Vec::with_capacity(params.max_char_n);
        for n in 1..=params.max_char_n {
            let mut counts: HashMap<Vec<char>, usize> = HashMap::new();
            for w in chars.windows(n) {
                *counts.entry(w.to_vec()).or_insert(0) += 1;
            }
            totals.push(chars.len().saturating_sub(n - 1));
            orders.push(counts);
        }
        ChrfProfile { orders, totals }
    }

    fn is_empty(&self) -> bool {
        self.totals.first().is_none_or(|&t| t == 0)
    }

    fn grams(&self) -> impl Iterator<Item = (&Vec<char>, usize)> {
        self.orders
            .iter()
            .flat_map(|m| m.iter().map(|(g, &c)| (g, c)))
    }
}

/// chrF over precomputed profiles; `weight` scales the true-positive mass of a
/// matched n-gram.
fn chrf_profiles(
    hyp: &ChrfProfile,
    reference: &ChrfProfile,
    beta: f64,
    weight: impl Fn(&[char]) -> f64,
) -> ChrfResult {
    if reference.is_empty() {
        let both_empty = hyp.is_empty();
        return ChrfResult {
            score: if both_empty { 100.0 } else { 0.0 },
            both_empty,
        };
    }
    let beta2 = beta * beta;
    let mut sum = 0.0;
    let mut counted = 0usize;
    for (i, ref_counts) in reference.orders.iter().enumerate() {
        let ref_total = reference.totals[i];
        if ref_total == 0 {
            continue;
        }
        counted += 1;
        let hyp_total = hyp.totals.get(i).copied().unwrap_or(0);
        if hyp_total == 0 {
            continue;
        }
        let hyp_counts = &hyp.orders[i];
        // iterate the smaller side
        let (small, large) = if hyp_counts.len() <= ref_counts.len() {
            (hyp_counts, ref_counts)
        } else {
            (ref_counts, hyp_counts)
        };
        let mut matched = 0.0;
        for (gram, &a) in small {
            if let Some(&b) = large.get(gram) {
                matched += a.min(b) as f64 * weight(gram);
            }
        }
        let precision = matched / hyp_total as f64;
        let recall = matched / ref_total as f64;
        if precision + recall > 0.0 {
            sum += (1.0 + beta2) * precision * recall / (beta2 * precision + recall);
        }
    }
    ChrfResult {
        score: 100.0 * sum / counted as f64,
        both_empty: false,
    }
}

pub fn chrf(hypothesis: &str, reference: &str, params: &ChrfParams) -> Result<ChrfResult> {
    params.validate()?;
    Ok(chrf_profiles(
        &ChrfProfile::new(hypothesis, params),
        &ChrfProfile::new(reference, params),
        params.beta,
        |_| 1.0,
    ))
}

/// How the seen-count of an n-gram grows when an exemplar is chosen.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeenCountMode {
    /// By its number of occurrences in the exemplar source.
    #[default]
    Occurrences,
    /// By one per exemplar containing it.
    Distinct,
}

/// Exemplars chosen so far and the n-gram seen-counts derived from them.
#[derive(Debug, Clone, PartialEq)]
pub struct ExemplarSelectionState {
    chosen: Vec<String>,
    seen_counts: HashMap<Vec<char>, u64>,
    alpha: f64,
    mode: SeenCountMode,
}

impl ExemplarSelectionState {
    pub fn new(alpha: f64, mode: SeenCountMode) -> Result<Self> {
        if alpha < 0.0 || !alpha.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "alpha must be >= 0, got {alpha}"
            )));
        }
        Ok(ExemplarSelectionState {
            chosen: Vec::new(),
            seen_counts: HashMap::new(),
            alpha,
            mode,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn chosen(&self) -> &[String] {
        &self.chosen
    }

    pub fn seen_count(&self, gram: &str) -> u64 {
        let key: Vec<char> = gram.chars().collect();
        self.seen_counts.get(&key).copied().unwrap_or(0)
    }

    /// Record `source` as chosen.
    pub fn add(&mut self, id: impl Into<String>, source: &str, params: &ChrfParams) {
        self.add_profile(id.into(), &ChrfProfile::new(source, params));
    }

    fn add_profile(&mut self, id: String, profile: &ChrfProfile) {
        for (gram, count) in profile.grams() {
            let inc = match self.mode {
                SeenCountMode::Occurrences => count as u64,
                SeenCountMode::Distinct => 1,
            };
            *self.seen_counts.entry(gram.clone()).or_insert(0) += inc;
        }
        self.chosen.push(id);
    }

    fn weight(&self, gram: &[char]) -> f64 {
        match self.seen_counts.get(gram) {
            None | Some(0) => 1.0,
            Some(&c) => (1.0 + c as f64).powf(-self.alpha),
        }
    }
}

/// chrF of `candidate_source` against `eval_source` with true positives
/// down-weighted by the state's seen-counts. Denominators are unweighted.
pub fn counterweighted_chrf(
    candidate_source: &str,
    eval_source: &str,
    state: &ExemplarSelectionState,
    params: &ChrfParams,
) -> Result<ChrfResult> {
    params.validate()?;
    Ok(chrf_profiles(
        &ChrfProfile::new(candidate_source, params),
        &ChrfProfile::new(eval_source, params),
        params.beta,
        |g| state.weight(g),
    ))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Exemplar {
    pub id: String,
    pub source: String,
    pub target: String,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Objective {
    /// Pick the exemplar with the highest counterweighted score.
    #[default]
    Max,
    /// Pick the lowest instead.
    Min,
}

impl std::str::FromStr for Objective {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "max" => Ok(Objective::Max),
            "min" => Ok(Objective::Min),
            other => Err(Error::InvalidParameter(format!(
                "unknown objective {other:?}"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SelectionConfig {
    pub k: usize,
    pub alpha: f64,
    pub objective: Objective,
    pub seen_count_mode: SeenCountMode,
    pub params: ChrfParams,
}

impl Default for SelectionConfig {
    fn default() -> Self {
        SelectionConfig {
            k: 10,
            alpha: DEFAULT_ALPHA,
            objective: Objective::Max,
            seen_count_mode: SeenCountMode::Occurrences,
            params: ChrfParams::default(),
        }
    }
}

/// Output record for one evaluation sentence.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExemplarSelection {
    pub eval_id: String,
    pub exemplars: Vec<String>,
    /// Counterweighted score of each exemplar at the round it was picked.
    pub scores: Vec<f64>,
}

/// Exemplar pool with precomputed source profiles, reusable across many
/// evaluation sentences.
#[derive(Debug, Clone)]
pub struct ExemplarPool {
    items: Vec<(Exemplar, ChrfProfile)>,
    params: ChrfParams,
}

impl ExemplarPool {
    pub fn new(pool: Vec<Exemplar>, params: ChrfParams) -> Result<Self> {
        params.validate()?;
        let items = pool
            .into_par_iter()
            .map(|e| {
                let p = ChrfProfile::new(&e.source, &params);
                (e, p)
            })
            .collect();
        Ok(ExemplarPool { items, params })
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn get(&self, id: &str) -> Option<&Exemplar> {
        self.items.iter().map(|(e, _)| e).find(|e| e.id == id)
    }

    /// Greedy counterweighted selection of `config.k` distinct exemplars.
    /// Ties go to the lower id.
    pub fn select(
        &self,
        eval_id: &str,
        eval_source: &str,
        config: &SelectionConfig,
    ) -> Result<ExemplarSelection> {
        if config.params != self.params {
            return Err(Error::InvalidParameter(
                "selection params differ from the pool's precomputed params".into(),
            ));
        }
        if config.k > 0 && self.items.is_empty() {
            return Err(Error::InvalidInput("empty exemplar pool".into()));
        }
        if config.k > self.items.len() {
            return Err(Error::InvalidInput(format!(
                "k = {} exceeds pool size {}",
                config.k,
                self.items.len()
            )));
        }
        let eval = ChrfProfile::new(eval_source, &self.params);
        let mut state = ExemplarSelectionState::new(config.alpha, config.seen_count_mode)?;
        let mut taken = vec![false; self.items.len()];
        let mut out = ExemplarSelection {
            eval_id: eval_id.to_owned(),
            exemplars: Vec::with_capacity(config.k),
            scores: Vec::with_capacity(config.k),
        };
        for _ in 0..config.k {
            let best = self
                .items
                .par_iter()
                .enumerate()
                .filter(|(i, _)| !taken[*i])
                .map(|(i, (e, p))| {
                    let s = chrf_profiles(p, &eval, self.params.beta, |g| state.weight(g)).score;
                    (i, e.id.as_str(), s)
                })
                .min_by(|a, b| {
                    let by_score = match config.objective {
                        Objective::Max => b.2.total_cmp(&a.2),
                        Objective::Min => a.2.total_cmp(&b.2),
                    };
                    by_score.then_with(|| a.1.cmp(b.1))
                })
                .expect("k <= pool size");
            let (i, _, score) = best;
            taken[i] = true;
            let (e, p) = &self.items[i];
            state.add_profile(e.id.clone(), p);
            out.exemplars.push(e.id.clone());
            out.scores.push(score);
        }
        Ok(out)
    }
}

/// One-shot convenience over [`ExemplarPool::select`].
pub fn select_exemplars(
    pool: &[Exemplar],
    eval_source: &str,
    config: &SelectionConfig,
) -> Result<Vec<(String, f64)>> {
    let pool = ExemplarPool::new(pool.to_vec(), config.params)?;
    let sel = pool.select("", eval_source, config)?;
    Ok(sel.exemplars.into_iter().zip(sel.scores).collect())
}

/// Minimal finetuned-model prompt: a `Translate from SL to TL:` header, then
/// the exemplar pairs and the input, one `LANG: text` line each.
pub fn format_minimal_prompt(
    source_lang: &str,
    target_lang: &str,
    exemplars: &[(&str, &str)],
    input: &str,
) -> String {
    let mut out = format!("Translate from {source_lang} to {target_lang}:\n");
    for (src, tgt) in exemplars {
        out.push_str(&format!("{source_lang}: {src}\n{target_lang}: {tgt}\n"));
    }
    out.push_str(&format!("{source_lang}: {input}\n{target_lang}:"));
    out
}
