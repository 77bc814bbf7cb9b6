#![no_main]

use libfuzzer_sys::fuzz_target;
use nilpair::skewgraph::{parse_graphs_text, to_text};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(graphs) = parse_graphs_text(text) else { return };
    for g in graphs {
        let again = parse_graphs_text(&to_text(&g)).expect("printed graph parses");
        assert_eq!(again, vec![g]);
    }
});
