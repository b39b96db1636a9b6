#![no_main]

use std::path::Path;

use libfuzzer_sys::fuzz_target;
use maxlev::datamodel::{parse_records, split_documents, SchemaMap};

fuzz_target!(|data: &[u8]| {
    let Ok(records) = parse_records(data, Path::new("fuzz.jsonl"), &SchemaMap::default()) else {
        return;
    };
    for r in &records {
        let _ = r.validate();
    }
    let _ = split_documents(&records);
});
