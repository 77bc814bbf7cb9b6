#![no_main]

use libfuzzer_sys::fuzz_target;
use nilpair::matrix::MatrixFormat;
use nilpair::PairRealization;

// Parsing and re-encoding only; the centralizer computation is not fuzzed.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(r) = PairRealization::from_json_str(text) else { return };
    for format in [MatrixFormat::Dense, MatrixFormat::Sparse] {
        let again = PairRealization::from_json_str(&r.to_json_string(format)).expect("printed pair parses");
        assert_eq!(again, r);
    }
});
