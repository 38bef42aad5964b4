use std::io::Write;
use std::path::Path;

use noisemetrics::MetricError;

use crate::CliError;

/// Writes `contents` to `path` via a temporary file in the same directory so
/// readers never observe a partial file. Without a path, prints to stdout.
pub fn emit(path: Option<&Path>, contents: &str) -> Result<(), CliError> {
    let Some(path) = path else {
        print!("{contents}");
        return Ok(());
    };
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let io = |e: std::io::Error| CliError::Metric(MetricError::Io(format!("{}: {e}", path.display())));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(contents.as_bytes()).map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

/// Named scalar results rendered as JSON (full precision), CSV or a table.
pub fn metrics_csv(rows: &[(String, f64)]) -> String {
    let mut out = String::from("metric,value\n");
    for (name, value) in rows {
        out.push_str(&format!("{name},{value:?}\n"));
    }
    out
}

pub fn metrics_table(rows: &[(String, f64)]) -> String {
    let width = rows.iter().map(|(n, _)| n.len()).max().unwrap_or(0).max(6);
    let mut out = format!("{:<width$}  value\n", "metric");
    for (name, value) in rows {
        out.push_str(&format!("{name:<width$}  {value:.4}\n"));
    }
    out
}

pub fn json(value: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("json values always serialise");
    s.push('\n');
    s
}
