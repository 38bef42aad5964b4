#![no_main]

use libfuzzer_sys::fuzz_target;
use noisemetrics::io::{parse_solution_csv, write_solution_csv};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(set) = parse_solution_csv(text) {
        // anything accepted must survive a write/parse round trip
        let written = write_solution_csv(&set).expect("accepted sets are writable");
        assert_eq!(parse_solution_csv(&written).expect("round trip"), set);
    }
});
