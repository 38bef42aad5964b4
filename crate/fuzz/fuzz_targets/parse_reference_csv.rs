#![no_main]

use libfuzzer_sys::fuzz_target;
use noisemetrics::dominates;
use noisemetrics::io::{parse_reference_csv, write_reference_csv};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(reference) = parse_reference_csv(text) {
        let targets = reference.targets();
        for a in targets {
            for b in targets {
                assert!(!dominates(a, b).unwrap());
            }
        }
        let again = parse_reference_csv(&write_reference_csv(&reference)).expect("round trip");
        assert_eq!(again.targets(), targets);
    }
});
