//! Language identification behind a plug-in trait, with a small built-in
//! character-trigram classifier.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::textcore::nfkc_normalize;

/// Maps text to a predicted language code and a confidence.
pub trait LanguageClassifier: Send + Sync {
    fn classify(&self, text: &str) -> Option<(String, f64)>;

    /// Whether the classifier can ever predict `lang`.
    fn supports(&self, lang: &str) -> bool;
}

/// Language subtag of a BCP-47 code: `ff-Adlm` -> `ff`.
pub fn base_language(code: &str) -> &str {
    code.split(['-', '_']).next().unwrap_or(code)
}

pub const DEFAULT_MAX_FEATURES: usize = 1000;

/// Relative-frequency trigram profiles per language; prediction is the
/// profile with the highest cosine similarity.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct TrigramClassifier {
    profiles: BTreeMap<String, BTreeMap<String, f64>>,
}

fn trigram_counts(text: &str) -> HashMap<String, usize> {
    let normalized = nfkc_normalize(text).to_lowercase();
    let mut counts = HashMap::new();
    for word in normalized.split_whitespace() {
        let padded: Vec<char> = std::iter::once(' ')
            .chain(word.chars())
            .chain(std::iter::once(' '))
            .collect();
        for w in padded.windows(3) {
            *counts.entry(w.iter().collect::<String>()).or_insert(0) += 1;
        }
    }
    counts
}

fn norm(v: &BTreeMap<String, f64>) -> f64 {
    v.values().map(|x| x * x).sum::<f64>().sqrt()
}

impl TrigramClassifier {
    /// Build profiles from training texts, keeping the `max_features` most
    /// frequent trigrams per language.
    pub fn train<'a, I, T>(training: I, max_features: usize) -> Self
    where
        I: IntoIterator<Item = (&'a str, T)>,
        T: IntoIterator<Item = &'a str>,
    {
        let mut profiles = BTreeMap::new();
        for (lang, texts) in training {
            let mut counts: HashMap<String, usize> = HashMap::new();
            for text in texts {
                for (g, c) in trigram_counts(text) {
                    *counts.entry(g).or_insert(0) += c;
                }
            }
            let mut ranked: Vec<(String, usize)> = counts.into_iter().collect();
            ranked.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
            ranked.truncate(max_features);
            let total: usize = ranked.iter().map(|r| r.1).sum();
            if total == 0 {
                continue;
            }
            let profile = ranked
                .into_iter()
                .map(|(g, c)| (g, c as f64 / total as f64))
                .collect();
            profiles.insert(lang.to_owned(), profile);
        }
        TrigramClassifier { profiles }
    }

    pub fn languages(&self) -> impl Iterator<Item = &str> {
        self.profiles.keys().map(String::as_str)
    }
}

impl LanguageClassifier for TrigramClassifier {
    fn classify(&self, text: &str) -> Option<(String, f64)> {
        let counts = trigram_counts(text);
        let total: usize = counts.values().sum();
        if total == 0 {
            return None;
        }
        let query: BTreeMap<String, f64> = counts
            .into_iter()
            .map(|(g, c)| (g, c as f64 / total as f64))
            .collect();
        let qn = norm(&query);
        let mut best: Option<(&str, f64)> = None;
        for (lang, profile) in &self.profiles {
            let dot: f64 = query
                .iter()
                .filter_map(|(g, q)| profile.get(g).map(|p| p * q))
                .sum();
            let sim = dot / (qn * norm(profile));
            // strict > keeps the lexicographically first language on ties
            if best.is_none_or(|(_, s)| sim > s) {
                best = Some((lang, sim));
            }
        }
        best.map(|(l, s)| (l.to_owned(), s))
    }

    fn supports(&self, lang: &str) -> bool {
        self.profiles.contains_key(lang) || self.profiles.contains_key(base_language(lang))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn picks_closest_profile() {
        let clf = TrigramClassifier::train(
            [
                (
                    "en",
                    vec!["the cat and the dog went to the market with the other animals"],
                ),
                (
                    "sw",
                    vec!["paka na mbwa walikwenda sokoni pamoja na wanyama wengine wengi"],
                ),
            ],
            DEFAULT_MAX_FEATURES,
        );
        assert_eq!(clf.classify("the dog and the cat").unwrap().0, "en");
        assert_eq!(clf.classify("mbwa na paka wengi").unwrap().0, "sw");
        assert!(clf.classify("   ").is_none());
        assert!(clf.supports("sw-Latn"));
        assert!(!clf.supports("am"));
    }

    #[test]
    fn profiles_round_trip_through_json() {
        let clf = TrigramClassifier::train([("xx", vec!["abc abd"])], 10);
        let json = serde_json::to_string(&clf).unwrap();
        let back: TrigramClassifier = serde_json::from_str(&json).unwrap();
        assert_eq!(back, clf);
    }

    #[test]
    fn base_language_strips_subtags() {
        assert_eq!(base_language("ff-Adlm"), "ff");
        assert_eq!(base_language("bm"), "bm");
    }
}
