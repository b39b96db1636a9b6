#![no_main]

use std::path::Path;

use libfuzzer_sys::fuzz_target;
use maxlev::datamodel::{aggregate_by_record, parse_jsonl, FactualityRating};

fuzz_target!(|data: &[u8]| {
    if let Ok(ratings) = parse_jsonl::<FactualityRating>(data, Path::new("ratings.jsonl")) {
        let _ = aggregate_by_record(&ratings);
    }
});
