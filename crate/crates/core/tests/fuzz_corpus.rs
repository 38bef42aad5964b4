//! Replays the checked-in fuzz seeds through the invariants the fuzz targets
//! assert, so the corpus is exercised on stable toolchains too.

use std::fs;
use std::path::PathBuf;

use noisemetrics::dominates;
use noisemetrics::experiment::ExperimentConfig;
use noisemetrics::io::{
    parse_reference_csv, parse_solution_csv, parse_solution_json, parse_weights_csv,
    write_reference_csv, write_solution_csv, write_weights_csv,
};

fn seeds(target: &str) -> Vec<(String, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<(String, String)> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|entry| {
            let path = entry.unwrap().path();
            let name = path.file_name().unwrap().to_string_lossy().into_owned();
            (name, fs::read_to_string(&path).unwrap())
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

/// Each target's corpus holds both accepted and rejected inputs.
fn split<T, E>(results: Vec<(String, Result<T, E>)>) -> (Vec<(String, T)>, usize) {
    let mut ok = Vec::new();
    let mut rejected = 0;
    for (name, r) in results {
        match r {
            Ok(v) => ok.push((name, v)),
            Err(_) => rejected += 1,
        }
    }
    (ok, rejected)
}

#[test]
fn solution_csv_seeds() {
    let results = seeds("parse_solution_csv")
        .into_iter()
        .map(|(n, t)| (n, parse_solution_csv(&t)))
        .collect();
    let (ok, rejected) = split(results);
    assert!(ok.len() >= 2 && rejected >= 2);
    for (name, set) in ok {
        let written = write_solution_csv(&set).unwrap();
        assert_eq!(parse_solution_csv(&written).unwrap(), set, "{name}");
    }
}

#[test]
fn quoted_and_padded_ids_are_read_as_written() {
    let text = &seeds("parse_solution_csv")
        .into_iter()
        .find(|(n, _)| n == "three_objectives.csv")
        .unwrap()
        .1;
    let set = parse_solution_csv(text).unwrap();
    assert_eq!(set.id(0), "x,1");
    assert_eq!(set.id(1), "y");
    assert_eq!(set.len(), 3);
}

#[test]
fn solution_json_seeds() {
    let results = seeds("parse_solution_json")
        .into_iter()
        .map(|(n, t)| (n, parse_solution_json(&t)))
        .collect();
    let (ok, rejected) = split(results);
    assert!(ok.len() >= 2 && rejected >= 2);
    for (name, set) in ok {
        let written = write_solution_csv(&set).unwrap();
        assert_eq!(parse_solution_csv(&written).unwrap(), set, "{name}");
    }
}

#[test]
fn reference_seeds() {
    let results = seeds("parse_reference_csv")
        .into_iter()
        .map(|(n, t)| (n, parse_reference_csv(&t)))
        .collect();
    let (ok, rejected) = split(results);
    assert!(ok.len() >= 2 && rejected >= 1);
    for (name, reference) in ok {
        for a in reference.targets() {
            for b in reference.targets() {
                assert!(!dominates(a, b).unwrap(), "{name}");
            }
        }
        let again = parse_reference_csv(&write_reference_csv(&reference)).unwrap();
        assert_eq!(again.targets(), reference.targets(), "{name}");
    }
}

#[test]
fn weight_seeds() {
    let results = seeds("parse_weights_csv")
        .into_iter()
        .map(|(n, t)| (n, parse_weights_csv(&t)))
        .collect();
    let (ok, rejected) = split(results);
    assert!(ok.len() >= 2 && rejected >= 2);
    for (name, weights) in ok {
        let again = parse_weights_csv(&write_weights_csv(&weights)).unwrap();
        assert_eq!(again.samples(), weights.samples(), "{name}");
    }
}

#[test]
fn sweep_config_seeds() {
    let results = seeds("parse_sweep_config")
        .into_iter()
        .map(|(n, t)| (n, ExperimentConfig::from_json(&t)))
        .collect();
    let (ok, rejected) = split(results);
    assert!(ok.len() >= 3 && rejected >= 2);
    for (name, config) in ok {
        config.validate().unwrap_or_else(|e| panic!("{name}: {e}"));
    }
    let default = ExperimentConfig::from_json(&fs::read_to_string(
        PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus/parse_sweep_config/default.json"),
    ).unwrap())
    .unwrap();
    assert_eq!(default, ExperimentConfig::default());
}
