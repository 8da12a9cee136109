#![no_main]

use libfuzzer_sys::fuzz_target;
use plycover::format::{parse_instance, write_instance};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(file) = parse_instance(text) {
        let again = parse_instance(&write_instance(&file)).expect("written instances parse");
        assert_eq!(again, file);
    }
});
