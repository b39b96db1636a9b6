//! Synthetic languages: words are 1–4 syllables from a per-language inventory.
//! Inventories share letters but not syllable shapes.

use rand::Rng;

pub struct SyntheticLanguage {
    pub code: &'static str,
    syllables: Vec<String>,
}

fn product(onsets: &str, nuclei: &str, codas: &str) -> Vec<String> {
    let mut out = Vec::new();
    for o in onsets.chars() {
        for n in nuclei.chars() {
            if codas.is_empty() {
                out.push(format!("{o}{n}"));
            }
            for c in codas.chars() {
                out.push(format!("{o}{n}{c}"));
            }
        }
    }
    out
}

impl SyntheticLanguage {
    pub fn word(&self, rng: &mut impl Rng) -> String {
        let n = rng.gen_range(1..=4);
        (0..n)
            .map(|_| self.syllables[rng.gen_range(0..self.syllables.len())].as_str())
            .collect()
    }

    pub fn sentence(&self, n_words: usize, rng: &mut impl Rng) -> String {
        (0..n_words)
            .map(|_| self.word(rng))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Three languages: open CV syllables, closed CVC syllables and
/// vowel-initial VC syllables.
pub fn languages() -> Vec<SyntheticLanguage> {
    vec![
        SyntheticLanguage {
            code: "xa",
            syllables: product("ptks", "aiu", ""),
        },
        SyntheticLanguage {
            code: "xb",
            syllables: product("mnr", "eo", "ns"),
        },
        SyntheticLanguage {
            code: "xc",
            syllables: product("aeou", "lrk", ""),
        },
    ]
}
