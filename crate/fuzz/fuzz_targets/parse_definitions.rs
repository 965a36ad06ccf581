#![no_main]

use finepoints_core::defs::parse_definitions;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        let _ = parse_definitions(text);
    }
});
