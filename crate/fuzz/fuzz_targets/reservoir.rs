#![no_main]

use std::path::Path;

use libfuzzer_sys::fuzz_target;
use maxlev::reservoir::{parse_reservoir, parse_targets, ReservoirFormat};
use maxlev::textcore::TokenizerConfig;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let config = TokenizerConfig::default();
    for format in [ReservoirFormat::PlainText, ReservoirFormat::Jsonl] {
        let _ = parse_reservoir(text, format, &config, Path::new("fuzz"));
    }
    let _ = parse_targets(text, &config);
});
