#![no_main]

use libfuzzer_sys::fuzz_target;
use nilpair::rational::{format_rational, parse_rational};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(r) = parse_rational(text) else { return };
    assert_eq!(parse_rational(&format_rational(&r)).expect("printed rational parses"), r);
});
