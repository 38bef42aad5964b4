#![no_main]

use libfuzzer_sys::fuzz_target;
use noisemetrics::io::{parse_solution_csv, parse_solution_json, write_solution_csv};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(set) = parse_solution_json(text) {
        assert!(set.solutions().iter().all(|s| s.true_values.dim() == set.dimension()));
        // CSV trims fields, so only ids without edge whitespace can round-trip
        let representable = set.solutions().iter().all(|s| !s.id.is_empty() && s.id.trim() == s.id);
        if representable {
            let written = write_solution_csv(&set).expect("accepted sets are writable");
            assert_eq!(parse_solution_csv(&written).expect("round trip"), set);
        }
    }
});
