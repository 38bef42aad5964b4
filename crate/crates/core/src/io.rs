//! File formats.
//!
//! * Solution sets: CSV with header `id,t1..tD,r1..rD`, or JSON
//!   `{"dimension": D, "solutions": [{"id", "true", "estimated"}]}`.
//! * Reference sets: CSV with header `a1..aD`.
//! * Weight sets: CSV with header `l1..lD`.
//!
//! Row numbers in parse errors are 1-based file lines (the header is line 1)
//! for CSV, and 1-based solution positions for JSON. Floats are written in
//! shortest round-trip form, so written files parse back bit-exactly.

use std::fmt::Write as _;
use std::path::Path;

use serde::Deserialize;

use crate::error::{MetricError, Result};
use crate::objective::{EvaluatedSolution, ObjectiveVector, ReferenceSet, SolutionSet};
use crate::utility::{WeightSampleSet, WeightVector};

struct Table {
    header: Vec<String>,
    /// (file line, fields)
    rows: Vec<(usize, Vec<String>)>,
}

fn read_table(text: &str) -> Result<Table> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let header: Vec<String> = reader
        .headers()
        .map_err(|e| MetricError::parse(1, e.to_string()))?
        .iter()
        .map(str::to_owned)
        .collect();
    if header.iter().all(String::is_empty) {
        return Err(MetricError::parse(1, "missing header"));
    }
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line() as usize);
            MetricError::parse(line, e.to_string())
        })?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        if record.iter().all(str::is_empty) {
            continue;
        }
        rows.push((line, record.iter().map(str::to_owned).collect()));
    }
    Ok(Table { header, rows })
}

fn expect_columns(header: &[String], prefix: &str, dim: usize, offset: usize) -> Result<()> {
    for k in 0..dim {
        let want = format!("{prefix}{}", k + 1);
        let got = &header[offset + k];
        if *got != want {
            return Err(MetricError::parse(
                1,
                format!("expected column `{want}`, found `{got}`"),
            ));
        }
    }
    Ok(())
}

fn check_width(line: usize, fields: &[String], width: usize) -> Result<()> {
    if fields.len() != width {
        return Err(MetricError::parse(
            line,
            format!("expected {width} columns, found {}", fields.len()),
        ));
    }
    Ok(())
}

fn parse_vector(line: usize, fields: &[String]) -> Result<ObjectiveVector> {
    let values = fields
        .iter()
        .map(|f| {
            f.parse::<f64>()
                .map_err(|_| MetricError::parse(line, format!("`{f}` is not a number")))
        })
        .collect::<Result<Vec<_>>>()?;
    ObjectiveVector::new(values).map_err(|e| MetricError::parse(line, e.to_string()))
}

/// Parses a solution set from CSV text.
pub fn parse_solution_csv(text: &str) -> Result<SolutionSet> {
    let table = read_table(text)?;
    let width = table.header.len();
    if width < 3 || width % 2 == 0 || table.header[0] != "id" {
        return Err(MetricError::parse(1, "header must be `id,t1..tD,r1..rD`"));
    }
    let dim = (width - 1) / 2;
    expect_columns(&table.header, "t", dim, 1)?;
    expect_columns(&table.header, "r", dim, 1 + dim)?;

    let mut solutions = Vec::with_capacity(table.rows.len());
    for (line, fields) in &table.rows {
        check_width(*line, fields, width)?;
        if fields[0].is_empty() {
            return Err(MetricError::parse(*line, "empty id"));
        }
        let t = parse_vector(*line, &fields[1..=dim])?;
        let r = parse_vector(*line, &fields[1 + dim..])?;
        solutions.push(EvaluatedSolution::new(fields[0].clone(), t, r)?);
    }
    SolutionSet::new(solutions)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SolutionFile {
    dimension: usize,
    solutions: Vec<SolutionRecord>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SolutionRecord {
    id: String,
    #[serde(rename = "true")]
    true_values: Vec<f64>,
    estimated: Vec<f64>,
}

/// Parses a solution set from JSON text.
pub fn parse_solution_json(text: &str) -> Result<SolutionSet> {
    let file: SolutionFile =
        serde_json::from_str(text).map_err(|e| MetricError::parse(e.line(), e.to_string()))?;
    if file.dimension == 0 {
        return Err(MetricError::parse(0, "dimension must be at least 1"));
    }
    let mut solutions = Vec::with_capacity(file.solutions.len());
    for (k, rec) in file.solutions.into_iter().enumerate() {
        let row = k + 1;
        for (name, v) in [("true", &rec.true_values), ("estimated", &rec.estimated)] {
            if v.len() != file.dimension {
                return Err(MetricError::parse(
                    row,
                    format!(
                        "`{name}` has {} values, dimension is {}",
                        v.len(),
                        file.dimension
                    ),
                ));
            }
        }
        let t = ObjectiveVector::new(rec.true_values)
            .map_err(|e| MetricError::parse(row, e.to_string()))?;
        let r = ObjectiveVector::new(rec.estimated)
            .map_err(|e| MetricError::parse(row, e.to_string()))?;
        solutions.push(EvaluatedSolution::new(rec.id, t, r)?);
    }
    SolutionSet::new(solutions)
}

/// Parses a reference set from CSV text and validates mutual non-dominance.
pub fn parse_reference_csv(text: &str) -> Result<ReferenceSet> {
    let targets = parse_prefixed_rows(text, "a")?;
    ReferenceSet::new(targets)
}

fn parse_prefixed_rows(text: &str, prefix: &str) -> Result<Vec<ObjectiveVector>> {
    let table = read_table(text)?;
    let dim = table.header.len();
    expect_columns(&table.header, prefix, dim, 0)?;
    table
        .rows
        .iter()
        .map(|(line, fields)| {
            check_width(*line, fields, dim)?;
            parse_vector(*line, fields)
        })
        .collect()
}

/// Parses an explicit weight set from CSV text.
pub fn parse_weights_csv(text: &str) -> Result<WeightSampleSet> {
    let table = read_table(text)?;
    let dim = table.header.len();
    expect_columns(&table.header, "l", dim, 0)?;
    let samples = table
        .rows
        .iter()
        .map(|(line, fields)| {
            check_width(*line, fields, dim)?;
            let values = parse_vector(*line, fields)?;
            WeightVector::new(values.into())
                .map_err(|e| MetricError::parse(*line, e.to_string()))
        })
        .collect::<Result<Vec<_>>>()?;
    WeightSampleSet::new(samples)
}

fn header(prefix: &str, dim: usize) -> String {
    (1..=dim)
        .map(|k| format!("{prefix}{k}"))
        .collect::<Vec<_>>()
        .join(",")
}

fn join(values: &[f64]) -> String {
    values
        .iter()
        .map(|v| format!("{v:?}"))
        .collect::<Vec<_>>()
        .join(",")
}

pub fn write_weights_csv(weights: &WeightSampleSet) -> String {
    let mut out = header("l", weights.dim());
    out.push('\n');
    for w in weights.samples() {
        let _ = writeln!(out, "{}", join(w.values()));
    }
    out
}

pub fn write_reference_csv(reference: &ReferenceSet) -> String {
    let mut out = header("a", reference.dimension());
    out.push('\n');
    for a in reference.targets() {
        let _ = writeln!(out, "{}", join(a.values()));
    }
    out
}

pub fn write_solution_csv(set: &SolutionSet) -> Result<String> {
    let d = set.dimension();
    let mut writer = csv::Writer::from_writer(Vec::new());
    let mut head = vec!["id".to_owned()];
    head.extend((1..=d).map(|k| format!("t{k}")));
    head.extend((1..=d).map(|k| format!("r{k}")));
    let to_io = |e: csv::Error| MetricError::Io(e.to_string());
    writer.write_record(&head).map_err(to_io)?;
    for s in set.solutions() {
        let mut row = vec![s.id.clone()];
        row.extend(s.true_values.iter().map(|v| format!("{v:?}")));
        row.extend(s.estimated_values.iter().map(|v| format!("{v:?}")));
        writer.write_record(&row).map_err(to_io)?;
    }
    let bytes = writer
        .into_inner()
        .map_err(|e| MetricError::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| MetricError::Io(e.to_string()))
}

/// Loads a solution set, choosing JSON for `.json` files and CSV otherwise.
pub fn load_solution_set(path: &Path) -> Result<SolutionSet> {
    let text = std::fs::read_to_string(path)?;
    match path.extension().and_then(|e| e.to_str()) {
        Some(ext) if ext.eq_ignore_ascii_case("json") => parse_solution_json(&text),
        _ => parse_solution_csv(&text),
    }
}

pub fn load_reference_set(path: &Path) -> Result<ReferenceSet> {
    parse_reference_csv(&std::fs::read_to_string(path)?)
}

pub fn load_weights(path: &Path) -> Result<WeightSampleSet> {
    parse_weights_csv(&std::fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::utility::sample_weights;

    #[test]
    fn solution_csv() {
        let set = parse_solution_csv("id, t1, t2, r1, r2\na,0,2,3,3\nb,5,5,1,1\n").unwrap();
        assert_eq!(set.len(), 2);
        assert_eq!(set.dimension(), 2);
        assert_eq!(set.id(1), "b");
        assert_eq!(set.solutions()[0].estimated_values.values(), &[3.0, 3.0]);
    }

    #[test]
    fn solution_csv_errors_name_the_row() {
        let err = parse_solution_csv("id,t1,t2,r1,r2\na,0,2,3,3\nb,5,x,1,1\n").unwrap_err();
        assert!(matches!(err, MetricError::Parse { row: 3, .. }), "{err:?}");
        let err = parse_solution_csv("id,t1,t2,r1,r2\na,0,2,3\n").unwrap_err();
        assert!(matches!(err, MetricError::Parse { row: 2, .. }), "{err:?}");
        let err = parse_solution_csv("id,t1,t2,r1,r2\na,0,2,3,inf\n").unwrap_err();
        assert!(matches!(err, MetricError::Parse { row: 2, .. }), "{err:?}");
        assert!(matches!(
            parse_solution_csv("id,t1,r2\n"),
            Err(MetricError::Parse { row: 1, .. })
        ));
        assert!(matches!(
            parse_solution_csv("id,t1,t2,r1\n"),
            Err(MetricError::Parse { row: 1, .. })
        ));
        assert!(parse_solution_csv("").is_err());
        assert_eq!(
            parse_solution_csv("id,t1,r1\n").unwrap_err(),
            MetricError::Empty("solution set")
        );
        assert_eq!(
            parse_solution_csv("id,t1,r1\na,1,1\na,2,2\n").unwrap_err(),
            MetricError::DuplicateId("a".into())
        );
    }

    #[test]
    fn solution_json() {
        let text = r#"{"dimension": 2, "solutions": [
            {"id": "a", "true": [0, 2], "estimated": [3, 3]},
            {"id": "b", "true": [5, 5], "estimated": [1, 1]}]}"#;
        let set = parse_solution_json(text).unwrap();
        assert_eq!(set, parse_solution_csv("id,t1,t2,r1,r2\na,0,2,3,3\nb,5,5,1,1\n").unwrap());

        let short = r#"{"dimension": 2, "solutions": [{"id": "a", "true": [0], "estimated": [3, 3]}]}"#;
        assert!(matches!(
            parse_solution_json(short),
            Err(MetricError::Parse { row: 1, .. })
        ));
        assert!(parse_solution_json("{").is_err());
        assert!(parse_solution_json(r#"{"dimension": 0, "solutions": []}"#).is_err());
    }

    #[test]
    fn reference_csv() {
        let a = parse_reference_csv("a1,a2\n0,1\n1,0\n").unwrap();
        assert_eq!(a.len(), 2);
        assert_eq!(
            parse_reference_csv("a1,a2\n0,0\n1,1\n").unwrap_err(),
            MetricError::DominatedReference {
                dominating: 0,
                dominated: 1
            }
        );
        assert!(matches!(
            parse_reference_csv("a1,b2\n0,1\n"),
            Err(MetricError::Parse { row: 1, .. })
        ));
    }

    #[test]
    fn weights_round_trip_bit_exactly() {
        let w = sample_weights(3, 100, 17).unwrap();
        let text = write_weights_csv(&w);
        let back = parse_weights_csv(&text).unwrap();
        assert_eq!(back.samples(), w.samples());
        assert!(parse_weights_csv("l1,l2\n0.5,0.6\n").is_err());
    }

    #[test]
    fn reference_and_solution_writers_round_trip() {
        let a = parse_reference_csv("a1,a2\n0.1,0.9\n0.7,0.2\n").unwrap();
        assert_eq!(parse_reference_csv(&write_reference_csv(&a)).unwrap(), a);
        let s = parse_solution_csv("id,t1,t2,r1,r2\n\"x,y\",0.1,0.3,-2.5,1e-9\n").unwrap();
        assert_eq!(parse_solution_csv(&write_solution_csv(&s).unwrap()).unwrap(), s);
    }

    #[test]
    fn loads_by_extension() {
        let dir = tempfile::tempdir().unwrap();
        let json = dir.path().join("s.json");
        std::fs::write(&json, r#"{"dimension":1,"solutions":[{"id":"a","true":[1],"estimated":[2]}]}"#).unwrap();
        assert_eq!(load_solution_set(&json).unwrap().len(), 1);
        let csv = dir.path().join("s.csv");
        std::fs::write(&csv, "id,t1,r1\na,1,2\n").unwrap();
        assert_eq!(load_solution_set(&json).unwrap(), load_solution_set(&csv).unwrap());
        assert!(matches!(
            load_solution_set(&dir.path().join("missing.csv")),
            Err(MetricError::Io(_))
        ));
    }
}
