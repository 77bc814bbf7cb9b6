#![no_main]

use libfuzzer_sys::fuzz_target;
use nilpair::skewgraph::{parse_graph_json, to_json_string};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(g) = parse_graph_json(text) else { return };
    assert_eq!(parse_graph_json(&to_json_string(&g)).expect("printed graph parses"), g);
});
