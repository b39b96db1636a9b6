//! Brute-force chrF: n-grams as owned strings, clipped counts by linear scan.

use unicode_normalization::UnicodeNormalization;

fn chars(text: &str) -> Vec<char> {
    text.nfkc().filter(|c| !c.is_whitespace()).collect()
}

fn grams(chars: &[char], n: usize) -> Vec<String> {
    if chars.len() < n {
        return Vec::new();
    }
    (0..=chars.len() - n)
        .map(|i| chars[i..i + n].iter().collect())
        .collect()
}

fn occurrences(list: &[String], gram: &str) -> usize {
    list.iter().filter(|g| g.as_str() == gram).count()
}

/// chrF in `[0, 100]` with character orders `1..=max_n`. Orders where the
/// reference has no n-gram are left out of the average.
pub fn chrf(hypothesis: &str, reference: &str, beta: f64, max_n: usize) -> f64 {
    let hyp = chars(hypothesis);
    let reference = chars(reference);
    if reference.is_empty() {
        return if hyp.is_empty() { 100.0 } else { 0.0 };
    }
    let b2 = beta * beta;
    let mut sum = 0.0;
    let mut orders = 0usize;
    for n in 1..=max_n {
        let r = grams(&reference, n);
        if r.is_empty() {
            continue;
        }
        orders += 1;
        let h = grams(&hyp, n);
        if h.is_empty() {
            continue;
        }
        let mut distinct = h.clone();
        distinct.sort();
        distinct.dedup();
        let matched: usize = distinct
            .iter()
            .map(|g| occurrences(&h, g).min(occurrences(&r, g)))
            .sum();
        let p = matched as f64 / h.len() as f64;
        let rc = matched as f64 / r.len() as f64;
        if p + rc > 0.0 {
            sum += (1.0 + b2) * p * rc / (b2 * p + rc);
        }
    }
    100.0 * sum / orders as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hand_computed() {
        assert_eq!(chrf("abc", "abc", 2.0, 6), 100.0);
        assert_eq!(chrf("", "", 2.0, 6), 100.0);
        assert_eq!(chrf("x", "", 2.0, 6), 0.0);
        assert_eq!(chrf("a b", "ab", 2.0, 6), 100.0);
        // one reference order; unigrams P = 1/2, R = 1
        let f1 = 5.0 * 0.5 / (4.0 * 0.5 + 1.0);
        assert!((chrf("ab", "a", 2.0, 6) - 100.0 * f1).abs() < 1e-12);
        // two reference orders; unigrams P = R = 1/2, bigrams nothing matches
        assert!((chrf("ac", "ab", 2.0, 6) - 25.0).abs() < 1e-12);
    }
}
