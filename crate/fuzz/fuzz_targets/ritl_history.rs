#![no_main]

use std::path::Path;

use libfuzzer_sys::fuzz_target;
use maxlev::ritl::parse_history;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok((_, valid)) = parse_history(text, Path::new("history.jsonl")) {
        assert!(valid <= text.len());
        assert!(text.is_char_boundary(valid));
    }
});
