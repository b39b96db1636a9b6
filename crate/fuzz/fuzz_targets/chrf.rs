#![no_main]

use libfuzzer_sys::fuzz_target;
use maxlev::chrf::{chrf, ChrfParams};

// Hypothesis and reference are separated by the first NUL byte.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let (hyp, reference) = text.split_once('\0').unwrap_or((text, ""));
    let result = chrf(hyp, reference, &ChrfParams::default()).unwrap();
    assert!((0.0..=100.0).contains(&result.score), "{}", result.score);
});
