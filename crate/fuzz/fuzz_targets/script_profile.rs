#![no_main]

use libfuzzer_sys::fuzz_target;
use maxlev::qc::{codepoint_audit, ScriptProfile, ScriptProfileSpec};

// Profile spec and audited text are separated by the first newline.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let (spec, body) = text.split_once('\n').unwrap_or((text, ""));
    let profile = match serde_json::from_str::<ScriptProfileSpec>(spec) {
        Ok(s) => ScriptProfile::from_spec(&s),
        Err(_) => ScriptProfile::from_codes(spec),
    };
    if let Ok(profile) = profile {
        let _ = codepoint_audit(body, &profile);
    }
});
