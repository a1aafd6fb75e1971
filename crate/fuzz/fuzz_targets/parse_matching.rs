#![no_main]

use libfuzzer_sys::fuzz_target;
use trunk_match::dimacs::{parse_dimacs, parse_matching, write_matching};

// input is a graph and a matching separated by a line holding a single `%`
fuzz_target!(|data: &[u8]| {
    let split = data.windows(3).position(|w| w == b"\n%\n");
    let Some(at) = split else { return };
    let Ok(g) = parse_dimacs(&data[..at + 1]) else { return };
    if let Ok(m) = parse_matching(&data[at + 3..], &g) {
        m.validate(&g).expect("parsed matching is valid");
        let text = write_matching(&m);
        assert_eq!(parse_matching(text.as_bytes(), &g).expect("reparse"), m);
    }
});
