//! Prompt generation from a mesh of independently sampled elements, and
//! token-density ranking of the generated responses.
//!
//! The language model itself sits behind [`ResponseGenerator`]; everything
//! else here is deterministic under a seed.

use std::collections::{BTreeMap, HashSet};

use rand::distributions::WeightedIndex;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::textcore::tokenize;
use crate::{Error, Result};

pub const DEFAULT_TEMPLATE: &str = "{style} Write a {modality} about {topic}. {tone}";
pub const MAX_WORDS: usize = 3;

/// A family of extra prompt templates (web domains, sentence continuations,
/// current events, dialogues, recipes). `{item}` draws from `items`,
/// `{topic}` from the mesh topics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtraSource {
    pub family: String,
    #[serde(default = "one")]
    pub weight: f64,
    pub templates: Vec<String>,
    #[serde(default)]
    pub items: Vec<String>,
}

fn one() -> f64 {
    1.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeshElements {
    pub topics: Vec<String>,
    pub tones: Vec<String>,
    pub styles: Vec<String>,
    pub modalities: Vec<String>,
    pub word_bank: Vec<String>,
    #[serde(default)]
    pub extra_sources: Vec<ExtraSource>,
    /// Sampling weight of the main mesh relative to the extra families.
    #[serde(default = "one")]
    pub mesh_weight: f64,
    /// Placeholders: `{style}`, `{modality}`, `{topic}`, `{tone}`.
    #[serde(default)]
    pub template: Option<String>,
}

impl MeshElements {
    pub fn validate(&self) -> Result<()> {
        let axes = [
            ("topics", &self.topics),
            ("tones", &self.tones),
            ("styles", &self.styles),
            ("modalities", &self.modalities),
            ("word_bank", &self.word_bank),
        ];
        for (name, list) in axes {
            if list.is_empty() {
                return Err(Error::InvalidParameter(format!(
                    "element list {name} is empty"
                )));
            }
        }
        let weights =
            std::iter::once(self.mesh_weight).chain(self.extra_sources.iter().map(|s| s.weight));
        for w in weights {
            if !(w.is_finite() && w >= 0.0) {
                return Err(Error::InvalidParameter(format!("bad sampling weight {w}")));
            }
        }
        if self.mesh_weight + self.extra_sources.iter().map(|s| s.weight).sum::<f64>() <= 0.0 {
            return Err(Error::InvalidParameter(
                "all sampling weights are zero".into(),
            ));
        }
        for s in &self.extra_sources {
            if s.weight > 0.0 && s.templates.is_empty() {
                return Err(Error::InvalidParameter(format!(
                    "source family {} has no templates",
                    s.family
                )));
            }
            if s.items.is_empty() && s.templates.iter().any(|t| t.contains("{item}")) {
                return Err(Error::InvalidParameter(format!(
                    "source family {} uses {{item}} but has no items",
                    s.family
                )));
            }
        }
        Ok(())
    }

    fn product(&self) -> Option<usize> {
        self.topics
            .len()
            .checked_mul(self.tones.len())?
            .checked_mul(self.styles.len())?
            .checked_mul(self.modalities.len())
    }

    fn tuple_at(&self, mut index: usize) -> MeshTuple {
        let mut next = |len: usize| {
            let i = index % len;
            index /= len;
            i
        };
        MeshTuple {
            topic: next(self.topics.len()),
            tone: next(self.tones.len()),
            style: next(self.styles.len()),
            modality: next(self.modalities.len()),
        }
    }
}

/// Indices into the four mesh axes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MeshTuple {
    pub topic: usize,
    pub tone: usize,
    pub style: usize,
    pub modality: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Prompt {
    pub index: usize,
    /// `mesh` or the extra family name.
    pub source: String,
    pub text: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tuple: Option<MeshTuple>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub words: Vec<String>,
}

/// `Try to include the words "a", "b" and "c".`
pub fn render_words(words: &[String]) -> Option<String> {
    let quoted: Vec<String> = words.iter().map(|w| format!("\"{w}\"")).collect();
    match quoted.as_slice() {
        [] => None,
        [one] => Some(format!("Try to include the word {one}.")),
        [init @ .., last] => Some(format!(
            "Try to include the words {} and {last}.",
            init.join(", ")
        )),
    }
}

fn fill(template: &str, pairs: &[(&str, &str)]) -> String {
    let mut out = template.to_owned();
    for (key, value) in pairs {
        out = out.replace(&format!("{{{key}}}"), value);
    }
    out.split_whitespace().collect::<Vec<_>>().join(" ")
}

/// Distinct mesh tuples for `n` prompts; once every tuple has been used the
/// sequence starts over with a fresh permutation.
fn sample_tuples(elements: &MeshElements, n: usize, rng: &mut ChaCha8Rng) -> Vec<MeshTuple> {
    let mut out = Vec::with_capacity(n);
    match elements.product() {
        Some(product) if n.saturating_mul(4) >= product => {
            while out.len() < n {
                let take = (n - out.len()).min(product);
                out.extend(
                    rand::seq::index::sample(rng, product, take)
                        .into_iter()
                        .map(|i| elements.tuple_at(i)),
                );
            }
        }
        // Sparse relative to the mesh: rejection sampling terminates quickly.
        _ => {
            let mut seen = HashSet::with_capacity(n);
            while out.len() < n {
                let t = MeshTuple {
                    topic: rng.gen_range(0..elements.topics.len()),
                    tone: rng.gen_range(0..elements.tones.len()),
                    style: rng.gen_range(0..elements.styles.len()),
                    modality: rng.gen_range(0..elements.modalities.len()),
                };
                if seen.insert(t) {
                    out.push(t);
                }
            }
        }
    }
    out
}

/// Generate `n` prompts. Each prompt first draws its source (the mesh or an
/// extra family) by weight; mesh prompts never repeat a tuple while the mesh
/// has unused ones.
pub fn generate_prompts(elements: &MeshElements, n: usize, seed: u64) -> Result<Vec<Prompt>> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    elements.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let sources: Vec<Option<usize>> = if elements.extra_sources.is_empty() {
        vec![None; n]
    } else {
        let weights = std::iter::once(elements.mesh_weight)
            .chain(elements.extra_sources.iter().map(|s| s.weight));
        let dist =
            WeightedIndex::new(weights).map_err(|e| Error::InvalidParameter(e.to_string()))?;
        (0..n)
            .map(|_| dist.sample(&mut rng).checked_sub(1))
            .collect()
    };
    let n_mesh = sources.iter().filter(|s| s.is_none()).count();
    let mut tuples = sample_tuples(elements, n_mesh, &mut rng).into_iter();
    let template = elements.template.as_deref().unwrap_or(DEFAULT_TEMPLATE);

    let mut prompts = Vec::with_capacity(n);
    for (index, source) in sources.into_iter().enumerate() {
        let prompt = match source {
            None => {
                let t = tuples.next().expect("one tuple per mesh prompt");
                let n_words = rng.gen_range(0..=MAX_WORDS.min(elements.word_bank.len()));
                let words: Vec<String> = elements
                    .word_bank
                    .choose_multiple(&mut rng, n_words)
                    .cloned()
                    .collect();
                let mut text = fill(
                    template,
                    &[
                        ("style", &elements.styles[t.style]),
                        ("modality", &elements.modalities[t.modality]),
                        ("topic", &elements.topics[t.topic]),
                        ("tone", &elements.tones[t.tone]),
                    ],
                );
                if let Some(w) = render_words(&words) {
                    text.push(' ');
                    text.push_str(&w);
                }
                Prompt {
                    index,
                    source: "mesh".into(),
                    text,
                    tuple: Some(t),
                    words,
                }
            }
            Some(f) => {
                let family = &elements.extra_sources[f];
                let template = family
                    .templates
                    .choose(&mut rng)
                    .expect("validated non-empty");
                let item = family.items.choose(&mut rng).map_or("", String::as_str);
                let topic = elements
                    .topics
                    .choose(&mut rng)
                    .expect("validated non-empty");
                Prompt {
                    index,
                    source: family.family.clone(),
                    text: fill(template, &[("item", item), ("topic", topic)]),
                    tuple: None,
                    words: Vec::new(),
                }
            }
        };
        prompts.push(prompt);
    }
    Ok(prompts)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct GenerationConfig {
    pub responses_per_prompt: usize,
    pub temperature: f64,
    pub keep_top: usize,
}

impl Default for GenerationConfig {
    fn default() -> Self {
        GenerationConfig {
            responses_per_prompt: 8,
            temperature: 0.7,
            keep_top: 2,
        }
    }
}

impl GenerationConfig {
    pub fn validate(&self) -> Result<()> {
        if self.keep_top > self.responses_per_prompt {
            return Err(Error::InvalidParameter(format!(
                "keep_top {} exceeds responses_per_prompt {}",
                self.keep_top, self.responses_per_prompt
            )));
        }
        if !(self.temperature.is_finite() && self.temperature >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "bad temperature {}",
                self.temperature
            )));
        }
        Ok(())
    }
}

/// Distinct tokens over total tokens.
pub fn token_density(text: &str) -> Result<f64> {
    let tokens = tokenize(text);
    if tokens.is_empty() {
        return Err(Error::InvalidInput("text has no tokens".into()));
    }
    let distinct: HashSet<_> = tokens.iter().collect();
    Ok(distinct.len() as f64 / tokens.len() as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Review {
    Accept,
    Reject,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Response {
    pub prompt_index: usize,
    pub text: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub density: Option<f64>,
    /// Manual reviewer verdict; never set automatically.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub review: Option<Review>,
}

/// Indices of the `keep_top` responses by descending density; ties go to the
/// longer text, then to input order. Token-less responses rank last.
pub fn rank_responses<S: AsRef<str>>(responses: &[S], config: &GenerationConfig) -> Vec<usize> {
    let keyed: Vec<(usize, f64, usize)> = responses
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let r = r.as_ref();
            (i, token_density(r).unwrap_or(0.0), r.chars().count())
        })
        .collect();
    let mut order = keyed;
    order.sort_by(|a, b| b.1.total_cmp(&a.1).then(b.2.cmp(&a.2)));
    order
        .into_iter()
        .take(config.keep_top)
        .map(|k| k.0)
        .collect()
}

/// Produces candidate responses for a prompt.
pub trait ResponseGenerator: Send + Sync {
    fn generate(&self, prompt: &Prompt, n: usize, temperature: f64) -> Result<Vec<String>>;
}

/// Serves fixed responses: per prompt text if present, otherwise the fallback
/// list. Used in tests and for replaying recorded generations.
#[derive(Debug, Clone, Default)]
pub struct CannedGenerator {
    pub by_prompt: BTreeMap<String, Vec<String>>,
    pub fallback: Vec<String>,
}

impl ResponseGenerator for CannedGenerator {
    fn generate(&self, prompt: &Prompt, n: usize, _temperature: f64) -> Result<Vec<String>> {
        let pool = self.by_prompt.get(&prompt.text).unwrap_or(&self.fallback);
        if pool.is_empty() {
            return Err(Error::NotFound(format!(
                "no canned responses for prompt {}",
                prompt.index
            )));
        }
        Ok(pool.iter().cycle().take(n).cloned().collect())
    }
}

/// Generate responses for every prompt (concurrently) and keep the densest.
/// Output follows prompt order, then rank order within a prompt.
pub fn generate_and_rank(
    prompts: &[Prompt],
    generator: &dyn ResponseGenerator,
    config: &GenerationConfig,
) -> Result<Vec<Response>> {
    config.validate()?;
    let per_prompt: Vec<Vec<Response>> = prompts
        .par_iter()
        .map(|p| {
            let texts = generator.generate(p, config.responses_per_prompt, config.temperature)?;
            Ok(rank_responses(&texts, config)
                .into_iter()
                .map(|i| Response {
                    prompt_index: p.index,
                    density: token_density(&texts[i]).ok(),
                    text: texts[i].clone(),
                    review: None,
                })
                .collect())
        })
        .collect::<Result<_>>()?;
    Ok(per_prompt.into_iter().flatten().collect())
}
