#![no_main]

use libfuzzer_sys::fuzz_target;
use noisemetrics::io::{parse_weights_csv, write_weights_csv};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(weights) = parse_weights_csv(text) {
        for w in weights.samples() {
            assert!(w.values().iter().all(|&x| x >= 0.0));
            assert!((w.values().iter().sum::<f64>() - 1.0).abs() <= 1e-9);
        }
        let again = parse_weights_csv(&write_weights_csv(&weights)).expect("round trip");
        assert_eq!(again.samples(), weights.samples());
    }
});
