#![no_main]

use libfuzzer_sys::fuzz_target;
use plycover::format::{parse_solution, write_solution};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(sol) = parse_solution(text) {
        let again = parse_solution(&write_solution(&sol)).expect("written solutions parse");
        assert_eq!(again, sol);
    }
});
