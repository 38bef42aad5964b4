//! Plot-ready data describing how each indicator was computed for one set:
//! true/observed pairs, per-weight selections, the linear-utility hull,
//! Chebycheff rays and target-to-solution matchings.
//!
//! Only data is produced; rendering is left to external tools.

use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;

use crate::error::{MetricError, Result};
use crate::igd::{igd_plus, n_igd_plus, IgdResult};
use crate::objective::{ObjectiveVector, ReferenceSet, SolutionSet};
use crate::r2::{linear_envelope_2d, n_r2, r2, EnvelopePiece, R2Result};
use crate::utility::{default_ideal_point, UtilityModel, WeightSampleSet};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FigureFile {
    pub name: String,
    pub description: String,
    #[serde(skip)]
    pub contents: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FigureBundle {
    pub files: Vec<FigureFile>,
    pub metrics: Vec<(String, f64)>,
}

impl FigureBundle {
    pub fn file(&self, name: &str) -> Option<&FigureFile> {
        self.files.iter().find(|f| f.name == name)
    }

    pub fn manifest_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("manifest is always serialisable")
    }

    /// Writes every file plus `manifest.json` into `dir`, creating it if needed.
    pub fn write_to(&self, dir: &Path) -> Result<()> {
        std::fs::create_dir_all(dir)?;
        for f in &self.files {
            std::fs::write(dir.join(&f.name), &f.contents)?;
        }
        std::fs::write(dir.join("manifest.json"), self.manifest_json())?;
        Ok(())
    }
}

fn num(v: f64) -> String {
    format!("{v:?}")
}

fn cols(prefix: &str, dim: usize) -> String {
    (1..=dim).map(|k| format!(",{prefix}{k}")).collect()
}

fn vals(v: &[f64]) -> String {
    v.iter().map(|x| format!(",{}", num(*x))).collect()
}

struct Results {
    linear_observed: R2Result,
    linear_noisy: R2Result,
    linear_true: R2Result,
    cheb_observed: R2Result,
    cheb_noisy: R2Result,
    ideal: ObjectiveVector,
    igd_observed: IgdResult,
    igd_noisy: IgdResult,
}

/// Computes R2/nR2 (linear and Chebycheff) and IGD+/nIGD+ for one set and
/// exports the geometry behind them. The Chebycheff ideal point defaults to
/// the shifted minimum over true, estimated and reference vectors.
pub fn export_figure_data(
    set: &SolutionSet,
    reference: &ReferenceSet,
    weights: &WeightSampleSet,
    ideal: Option<ObjectiveVector>,
) -> Result<FigureBundle> {
    let dim = set.dimension();
    if reference.dimension() != dim || weights.dim() != dim {
        return Err(MetricError::DimensionMismatch {
            expected: dim,
            found: if reference.dimension() != dim {
                reference.dimension()
            } else {
                weights.dim()
            },
        });
    }
    let truths = set.true_values();
    let estimates = set.estimated_values();
    let ideal = match ideal {
        Some(z) => {
            z.check_dim(dim)?;
            z
        }
        None => default_ideal_point(truths.iter().chain(&estimates).chain(reference.targets()))?,
    };
    let cheb = UtilityModel::chebycheff(ideal.clone());
    let lin = UtilityModel::linear();
    let results = Results {
        linear_observed: r2(&estimates, weights, &lin)?,
        linear_noisy: n_r2(set, weights, &lin)?,
        linear_true: r2(&truths, weights, &lin)?,
        cheb_observed: r2(&estimates, weights, &cheb)?,
        cheb_noisy: n_r2(set, weights, &cheb)?,
        ideal,
        igd_observed: igd_plus(&estimates, reference)?,
        igd_noisy: n_igd_plus(set, reference)?,
    };

    let mut files = vec![
        points_file(set),
        linear_selection_file(set, weights, &results),
    ];
    if dim == 2 {
        files.push(hull_file("linear_hull_observed.csv", "Lower-left hull of observed values; each vertex is optimal for weights (l, 1-l) with l in [lambda_from, lambda_to]", set, &estimates)?);
        files.push(hull_file("linear_hull_true.csv", "Lower-left hull of true values", set, &truths)?);
    }
    files.push(chebycheff_file(set, weights, &results));
    files.push(igd_file("igd_plus_pairs.csv", "IGD+ on observed values: target to nearest observed point", set, reference, &results.igd_observed, false));
    files.push(igd_file("nigd_plus_pairs.csv", "nIGD+: target to the true point of the solution nearest by estimate", set, reference, &results.igd_noisy, true));

    let metrics = vec![
        ("r2_observed".to_owned(), results.linear_observed.value),
        ("r2_true".to_owned(), results.linear_true.value),
        ("nr2".to_owned(), results.linear_noisy.value),
        ("r2c_observed".to_owned(), results.cheb_observed.value),
        ("nr2c".to_owned(), results.cheb_noisy.value),
        ("igd_plus_observed".to_owned(), results.igd_observed.value),
        ("nigd_plus".to_owned(), results.igd_noisy.value),
    ];
    Ok(FigureBundle { files, metrics })
}

fn points_file(set: &SolutionSet) -> FigureFile {
    let d = set.dimension();
    let mut out = format!("id{}{},segment_length\n", cols("t", d), cols("r", d));
    for s in set.solutions() {
        let len = s.true_values.euclidean(&s.estimated_values);
        let _ = writeln!(
            out,
            "{}{}{},{}",
            s.id,
            vals(s.true_values.values()),
            vals(s.estimated_values.values()),
            num(len)
        );
    }
    FigureFile {
        name: "points.csv".into(),
        description: "True and observed vectors per solution, joined by a segment".into(),
        contents: out,
    }
}

fn linear_selection_file(set: &SolutionSet, weights: &WeightSampleSet, res: &Results) -> FigureFile {
    let mut out = format!(
        "weight_index{},selected_id,observed_utility,true_utility,true_best_id,true_best_utility\n",
        cols("l", weights.dim())
    );
    for ((obs, noisy), best) in res
        .linear_observed
        .per_sample
        .iter()
        .zip(&res.linear_noisy.per_sample)
        .zip(&res.linear_true.per_sample)
    {
        let w = &weights.samples()[obs.weight_index];
        let _ = writeln!(
            out,
            "{}{},{},{},{},{},{}",
            obs.weight_index,
            vals(w.values()),
            set.id(obs.selected),
            num(obs.utility),
            num(noisy.utility),
            set.id(best.selected),
            num(best.utility)
        );
    }
    FigureFile {
        name: "linear_selection.csv".into(),
        description: "Per weight vector: the solution picked on observed values, its observed and true utility, and the truly best solution".into(),
        contents: out,
    }
}

fn hull_file(
    name: &str,
    description: &str,
    set: &SolutionSet,
    points: &[ObjectiveVector],
) -> Result<FigureFile> {
    let pieces: Vec<EnvelopePiece> = linear_envelope_2d(points)?;
    // iso-utility lines of weights (l, 1-l) have slope -l / (1 - l) in (f1, f2)
    let slope = |l: f64| if l < 1.0 { -l / (1.0 - l) } else { f64::NEG_INFINITY };
    let mut out = String::from("id,f1,f2,lambda_from,lambda_to,slope_from,slope_to\n");
    for p in &pieces {
        let v = &points[p.index];
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            set.id(p.index),
            num(v[0]),
            num(v[1]),
            num(p.lambda_from),
            num(p.lambda_to),
            num(slope(p.lambda_from)),
            num(slope(p.lambda_to))
        );
    }
    Ok(FigureFile {
        name: name.into(),
        description: description.into(),
        contents: out,
    })
}

/// Direction of the Chebycheff ray for `w`, proportional to `1 / w_k` and
/// normalised to unit sum; zero weights get the whole ray.
fn ray_direction(w: &[f64]) -> Vec<f64> {
    let raw: Vec<f64> = (0..w.len())
        .map(|k| w.iter().enumerate().filter(|(j, _)| *j != k).map(|(_, v)| v).product())
        .collect();
    let total: f64 = raw.iter().sum();
    if total > 0.0 {
        raw.iter().map(|r| r / total).collect()
    } else {
        raw
    }
}

fn chebycheff_file(set: &SolutionSet, weights: &WeightSampleSet, res: &Results) -> FigureFile {
    let d = weights.dim();
    let mut out = format!(
        "weight_index{}{}{},selected_id,observed_utility,true_utility\n",
        cols("l", d),
        cols("z", d),
        cols("dir", d)
    );
    for (obs, noisy) in res.cheb_observed.per_sample.iter().zip(&res.cheb_noisy.per_sample) {
        let w = weights.samples()[obs.weight_index].values();
        let _ = writeln!(
            out,
            "{}{}{}{},{},{},{}",
            obs.weight_index,
            vals(w),
            vals(res.ideal.values()),
            vals(&ray_direction(w)),
            set.id(obs.selected),
            num(obs.utility),
            num(noisy.utility)
        );
    }
    FigureFile {
        name: "chebycheff_rays.csv".into(),
        description: "Chebycheff rays from the ideal point and the solution picked on observed values".into(),
        contents: out,
    }
}

fn igd_file(
    name: &str,
    description: &str,
    set: &SolutionSet,
    reference: &ReferenceSet,
    result: &IgdResult,
    use_true: bool,
) -> FigureFile {
    let d = reference.dimension();
    let mut out = format!("target_index{},selected_id{},distance\n", cols("a", d), cols("p", d));
    for m in &result.per_target {
        let s = &set.solutions()[m.selected];
        let p = if use_true { &s.true_values } else { &s.estimated_values };
        let _ = writeln!(
            out,
            "{}{},{}{},{}",
            m.target_index,
            vals(reference.targets()[m.target_index].values()),
            s.id,
            vals(p.values()),
            num(m.distance)
        );
    }
    FigureFile {
        name: name.into(),
        description: description.into(),
        contents: out,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiment::{apply_noise, generate_test_front, NoiseModel};
    use crate::utility::sample_weights;

    fn noisy_set(eta: f64) -> (SolutionSet, ReferenceSet) {
        let front = generate_test_front(12, 4).unwrap();
        let est = apply_noise(&front.truths, NoiseModel { eta, seed: 1 }).unwrap();
        (SolutionSet::from_pairs(front.truths, est).unwrap(), front.reference)
    }

    fn data_rows(f: &FigureFile) -> Vec<Vec<String>> {
        f.contents
            .lines()
            .skip(1)
            .map(|l| l.split(',').map(str::to_owned).collect())
            .collect()
    }

    #[test]
    fn matching_files_have_one_row_per_target() {
        let (set, a) = noisy_set(0.1);
        let bundle = export_figure_data(&set, &a, &sample_weights(2, 100, 0).unwrap(), None).unwrap();
        for name in ["igd_plus_pairs.csv", "nigd_plus_pairs.csv"] {
            assert_eq!(data_rows(bundle.file(name).unwrap()).len(), a.len());
        }
    }

    #[test]
    fn noise_free_segments_have_zero_length() {
        let (set, a) = noisy_set(0.0);
        let bundle = export_figure_data(&set, &a, &sample_weights(2, 10, 0).unwrap(), None).unwrap();
        for row in data_rows(bundle.file("points.csv").unwrap()) {
            assert_eq!(row.last().unwrap(), "0.0");
        }
    }

    #[test]
    fn linear_selections_match_r2_argmins() {
        let (set, a) = noisy_set(0.1);
        let w = sample_weights(2, 300, 5).unwrap();
        let bundle = export_figure_data(&set, &a, &w, None).unwrap();
        let res = r2(&set.estimated_values(), &w, &UtilityModel::linear()).unwrap();
        let rows = data_rows(bundle.file("linear_selection.csv").unwrap());
        assert_eq!(rows.len(), res.per_sample.len());
        for (row, sel) in rows.iter().zip(&res.per_sample) {
            assert_eq!(row[3], set.id(sel.selected));
        }
    }

    #[test]
    fn hull_vertices_come_from_envelope() {
        let (set, a) = noisy_set(0.05);
        let bundle = export_figure_data(&set, &a, &sample_weights(2, 10, 0).unwrap(), None).unwrap();
        let rows = data_rows(bundle.file("linear_hull_true.csv").unwrap());
        assert_eq!(rows.first().unwrap()[3], "0.0");
        assert_eq!(rows.last().unwrap()[4], "1.0");
        assert_eq!(rows.last().unwrap()[6], "-inf");
    }

    #[test]
    fn ray_directions() {
        assert_eq!(ray_direction(&[0.5, 0.5]), vec![0.5, 0.5]);
        assert_eq!(ray_direction(&[0.0, 1.0]), vec![1.0, 0.0]);
        let d = ray_direction(&[0.25, 0.75]);
        assert!((d[0] / d[1] - 3.0).abs() < 1e-12);
    }

    #[test]
    fn writes_manifest_and_files() {
        let (set, a) = noisy_set(0.1);
        let bundle = export_figure_data(&set, &a, &sample_weights(2, 10, 0).unwrap(), None).unwrap();
        let dir = tempfile::tempdir().unwrap();
        bundle.write_to(dir.path()).unwrap();
        let manifest: serde_json::Value =
            serde_json::from_str(&std::fs::read_to_string(dir.path().join("manifest.json")).unwrap()).unwrap();
        let names: Vec<_> = manifest["files"].as_array().unwrap().iter().map(|f| f["name"].as_str().unwrap().to_owned()).collect();
        for n in &names {
            assert!(dir.path().join(n).exists());
        }
        assert_eq!(names.len(), 7);
    }

    #[test]
    fn rejects_inconsistent_dimensions() {
        let (set, a) = noisy_set(0.1);
        assert!(export_figure_data(&set, &a, &sample_weights(3, 10, 0).unwrap(), None).is_err());
    }
}
