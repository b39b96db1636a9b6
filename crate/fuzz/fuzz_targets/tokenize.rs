#![no_main]

use libfuzzer_sys::fuzz_target;
use maxlev::textcore::{char_ngrams, tokenize, word_ngrams};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let tokens = tokenize(text);
    for t in &tokens {
        assert!(!t.as_str().is_empty());
        assert!(!t.as_str().chars().any(char::is_whitespace));
    }
    for n in 1..=3 {
        let _ = char_ngrams(text, n);
        let _ = word_ngrams(&tokens, n);
    }
});
