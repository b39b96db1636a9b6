#![no_main]

use libfuzzer_sys::fuzz_target;
use maxlev::promptmesh::{generate_prompts, MeshElements};

fuzz_target!(|data: &[u8]| {
    let Ok(elements) = serde_json::from_slice::<MeshElements>(data) else { return };
    if elements.validate().is_ok() {
        let prompts = generate_prompts(&elements, 4, 0).unwrap();
        assert_eq!(prompts.len(), 4);
    }
});
