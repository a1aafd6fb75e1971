#![no_main]

use libfuzzer_sys::fuzz_target;
use trunk_match::dimacs::{parse_dimacs, write_dimacs};

fuzz_target!(|data: &[u8]| {
    if let Ok(g) = parse_dimacs(data) {
        let text = write_dimacs(&g);
        let back = parse_dimacs(text.as_bytes()).expect("reparse");
        assert_eq!(write_dimacs(&back), text);
    }
});
