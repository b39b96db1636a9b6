//! Reservoirs with a planted cover: `m` sentences that together contain every
//! target, hidden among distractors that each carry only part of the targets.

use rand::seq::SliceRandom;
use rand::Rng;

use maxlev::reservoir::RawSentence;

pub struct PlantedConfig {
    pub n_sentences: usize,
    pub n_targets: usize,
    /// Planted cover size is drawn from this range.
    pub m_range: (usize, usize),
    /// Filler words added to each planted sentence, relative to its targets.
    pub filler_fraction: f64,
    pub distractor_len: (usize, usize),
    /// Upper bound on the share of a distractor's words that are targets.
    pub max_target_fraction: f64,
    pub n_fillers: usize,
}

impl Default for PlantedConfig {
    fn default() -> Self {
        PlantedConfig {
            n_sentences: 1000,
            n_targets: 200,
            m_range: (5, 20),
            filler_fraction: 0.25,
            distractor_len: (5, 15),
            max_target_fraction: 0.6,
            n_fillers: 5000,
        }
    }
}

pub struct PlantedInstance {
    pub sentences: Vec<RawSentence>,
    pub targets: Vec<String>,
    pub m: usize,
    pub planted_ids: Vec<u64>,
}

impl PlantedInstance {
    pub fn targets_text(&self) -> String {
        self.targets.join("\n")
    }
}

pub fn target_word(i: usize) -> String {
    format!("tgt{i}")
}

pub fn filler_word(i: usize) -> String {
    format!("fil{i}")
}

/// Draw one instance. Every target also occurs in at least one distractor,
/// so the planted cover is never the only way to reach full coverage.
pub fn generate(config: &PlantedConfig, rng: &mut impl Rng) -> PlantedInstance {
    let targets: Vec<String> = (0..config.n_targets).map(target_word).collect();
    let m = rng.gen_range(config.m_range.0..=config.m_range.1);

    let mut order: Vec<usize> = (0..config.n_targets).collect();
    order.shuffle(rng);
    let mut texts: Vec<(bool, String)> = Vec::with_capacity(config.n_sentences);
    for g in 0..m {
        let mut words: Vec<String> = order
            .iter()
            .skip(g)
            .step_by(m)
            .map(|&t| targets[t].clone())
            .collect();
        let n_fill = (words.len() as f64 * config.filler_fraction).round() as usize;
        words.extend((0..n_fill).map(|_| filler_word(rng.gen_range(0..config.n_fillers))));
        words.shuffle(rng);
        texts.push((true, words.join(" ")));
    }

    let n_distractors = config.n_sentences - m;
    for d in 0..n_distractors {
        let len = rng.gen_range(config.distractor_len.0..=config.distractor_len.1);
        let frac = rng.gen_range(0.0..config.max_target_fraction);
        let n_target =
            ((len as f64 * frac).floor() as usize).max(usize::from(d < config.n_targets));
        let mut words: Vec<String> = Vec::with_capacity(len);
        if d < config.n_targets {
            words.push(targets[d].clone());
        }
        while words.len() < n_target {
            words.push(targets[rng.gen_range(0..config.n_targets)].clone());
        }
        while words.len() < len {
            words.push(filler_word(rng.gen_range(0..config.n_fillers)));
        }
        words.shuffle(rng);
        texts.push((false, words.join(" ")));
    }

    texts.shuffle(rng);
    let mut planted_ids = Vec::with_capacity(m);
    let sentences = texts
        .into_iter()
        .enumerate()
        .map(|(i, (planted, text))| {
            let id = i as u64 + 1;
            if planted {
                planted_ids.push(id);
            }
            RawSentence { id, text }
        })
        .collect();
    PlantedInstance {
        sentences,
        targets,
        m,
        planted_ids,
    }
}
