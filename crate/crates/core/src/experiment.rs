//! Noise-sweep experiment: synthetic fronts, uniform box noise, and a
//! replicated comparison of classical and noise-aware indicators.
//!
//! Every random stream is seeded by [`derive_seed`] from the base seed, a
//! stream tag, the noise-level index and the replication index, so any cell
//! of a report can be recomputed on its own with [`run_replication`].

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{MetricError, Result};
use crate::igd::{igd, igd_plus, n_igd, n_igd_plus};
use crate::objective::{true_nondominated_fraction, ObjectiveVector, ReferenceSet, SolutionSet};
use crate::r2::{n_r2, r2};
use crate::utility::{default_ideal_point, sample_weights, UtilityKind, UtilityModel};
use crate::diagnostics::noise_misinformation;

/// Additive noise uniform on `[-eta, eta]^D`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseModel {
    pub eta: f64,
    pub seed: u64,
}

impl NoiseModel {
    pub fn uniform_box(eta: f64, seed: u64) -> Result<Self> {
        if !(eta >= 0.0 && eta.is_finite()) {
            return Err(MetricError::config("eta", format!("{eta} is not a finite non-negative number")));
        }
        Ok(NoiseModel { eta, seed })
    }
}

/// Perturbs every coordinate with independent uniform noise. `eta == 0`
/// returns the input unchanged.
pub fn apply_noise(truth: &[ObjectiveVector], model: NoiseModel) -> Result<Vec<ObjectiveVector>> {
    let NoiseModel { eta, seed } = NoiseModel::uniform_box(model.eta, model.seed)?;
    if eta == 0.0 {
        return Ok(truth.to_vec());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    truth
        .iter()
        .map(|t| ObjectiveVector::new(t.iter().map(|v| v + rng.random_range(-eta..=eta)).collect()))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FrontShape {
    /// `f2 = 1 - sqrt(f1)`
    #[default]
    Convex,
    /// `f2 = 1 - f1^2`
    Concave,
}

impl FrontShape {
    pub fn f2(self, f1: f64) -> f64 {
        match self {
            FrontShape::Convex => 1.0 - f1.sqrt(),
            FrontShape::Concave => 1.0 - f1 * f1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrontConfig {
    pub shape: FrontShape,
    /// Multiplies both objectives.
    pub scale: f64,
    pub reference_size: usize,
    /// Probability that a solution is pushed off the front.
    pub offset_probability: f64,
    /// Upper bound of the (unscaled) offset added to f2.
    pub max_offset: f64,
}

impl Default for FrontConfig {
    fn default() -> Self {
        FrontConfig {
            shape: FrontShape::Convex,
            scale: 1.0,
            reference_size: 50,
            offset_probability: 0.3,
            max_offset: 0.05,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TestFront {
    pub truths: Vec<ObjectiveVector>,
    pub reference: ReferenceSet,
}

/// Synthetic front with `n` true solutions, default shape and scale.
pub fn generate_test_front(n: usize, seed: u64) -> Result<TestFront> {
    generate_test_front_with(n, seed, &FrontConfig::default())
}

/// Solutions spread over the front by stratified sampling of f1; some get a
/// positive f2 offset. The reference set is `reference_size` evenly spaced
/// front points including both extremes.
pub fn generate_test_front_with(n: usize, seed: u64, config: &FrontConfig) -> Result<TestFront> {
    if n < 2 {
        return Err(MetricError::config("n_solutions", "need at least 2 solutions"));
    }
    if config.reference_size < 2 {
        return Err(MetricError::config("reference_set_size", "need at least 2 targets"));
    }
    if !(config.scale > 0.0 && config.scale.is_finite()) {
        return Err(MetricError::config("scale", "must be positive"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let s = config.scale;
    let truths = (0..n)
        .map(|j| {
            let f1 = (j as f64 + rng.random::<f64>()) / n as f64;
            let offset = if rng.random::<f64>() < config.offset_probability {
                rng.random::<f64>() * config.max_offset
            } else {
                0.0
            };
            ObjectiveVector::new(vec![s * f1, s * (config.shape.f2(f1) + offset)])
        })
        .collect::<Result<Vec<_>>>()?;
    let k = config.reference_size;
    let targets = (0..k)
        .map(|i| {
            let f1 = i as f64 / (k - 1) as f64;
            ObjectiveVector::new(vec![s * f1, s * config.shape.f2(f1)])
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TestFront {
        truths,
        reference: ReferenceSet::new(targets)?,
    })
}

/// Independent random streams of one replication.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stream {
    Front = 1,
    Weights = 2,
    Noise = 3,
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// `splitmix64(base ^ splitmix64(stream ^ splitmix64(eta_index ^ splitmix64(replication))))`.
///
/// The front and weight streams are drawn with `eta_index = 0` so every noise
/// level of a replication sees the same truths and weights.
pub fn derive_seed(base: u64, stream: Stream, eta_index: usize, replication: usize) -> u64 {
    let inner = splitmix64(eta_index as u64 ^ splitmix64(replication as u64));
    splitmix64(base ^ splitmix64(stream as u64 ^ inner))
}

fn default_utilities() -> Vec<UtilityKind> {
    vec![UtilityKind::Linear, UtilityKind::Chebycheff]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub eta_values: Vec<f64>,
    pub replications: usize,
    pub n_solutions: usize,
    pub m_weights: usize,
    pub reference_set_size: usize,
    pub base_seed: u64,
    #[serde(default = "default_utilities")]
    pub utilities: Vec<UtilityKind>,
    pub front_shape: FrontShape,
    pub scale: f64,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            eta_values: vec![0.01, 0.05, 0.1, 0.2],
            replications: 100,
            n_solutions: 40,
            m_weights: crate::r2::DEFAULT_SAMPLES,
            reference_set_size: 50,
            base_seed: 0,
            utilities: default_utilities(),
            front_shape: FrontShape::Convex,
            scale: 1.0,
        }
    }
}

impl ExperimentConfig {
    /// Parses the flat JSON config format; absent fields take defaults.
    pub fn from_json(text: &str) -> Result<Self> {
        let value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| MetricError::config("config", e.to_string()))?;
        let config: ExperimentConfig = serde_json::from_value(value.clone()).map_err(|e| {
            // blame the first field that fails on its own
            let field = value
                .as_object()
                .into_iter()
                .flatten()
                .find(|(k, v)| {
                    let single = serde_json::Value::Object([((*k).clone(), (*v).clone())].into_iter().collect());
                    serde_json::from_value::<ExperimentConfig>(single).is_err()
                })
                .and_then(|(k, _)| CONFIG_FIELDS.iter().find(|f| **f == k.as_str()))
                .copied()
                .unwrap_or("config");
            MetricError::config(field, e.to_string())
        })?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        if self.eta_values.is_empty() {
            return Err(MetricError::config("eta_values", "must not be empty"));
        }
        if let Some(eta) = self.eta_values.iter().find(|e| !(**e >= 0.0 && e.is_finite())) {
            return Err(MetricError::config("eta_values", format!("{eta} is not a finite non-negative number")));
        }
        if self.eta_values.windows(2).any(|w| w[0] >= w[1]) {
            return Err(MetricError::config("eta_values", "must be strictly increasing"));
        }
        for (field, value, min) in [
            ("replications", self.replications, 1),
            ("n_solutions", self.n_solutions, 2),
            ("m_weights", self.m_weights, 1),
            ("reference_set_size", self.reference_set_size, 2),
        ] {
            if value < min {
                return Err(MetricError::config(field, format!("must be at least {min}")));
            }
        }
        if self.utilities.is_empty() {
            return Err(MetricError::config("utilities", "must not be empty"));
        }
        if !(self.scale > 0.0 && self.scale.is_finite()) {
            return Err(MetricError::config("scale", "must be positive"));
        }
        Ok(())
    }

    fn front_config(&self) -> FrontConfig {
        FrontConfig {
            shape: self.front_shape,
            scale: self.scale,
            reference_size: self.reference_set_size,
            ..FrontConfig::default()
        }
    }

    fn includes(&self, kind: UtilityKind) -> bool {
        self.utilities.contains(&kind)
    }
}

const CONFIG_FIELDS: [&str; 9] = [
    "eta_values",
    "replications",
    "n_solutions",
    "m_weights",
    "reference_set_size",
    "base_seed",
    "utilities",
    "front_shape",
    "scale",
];

/// All indicator values of one (noise level, replication) cell.
///
/// `*_est` are classical indicators applied to the estimated values, `*_true`
/// to the true values. Chebycheff entries are `None` when that utility is not
/// part of the configuration, likewise for linear ones.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReplicationMetrics {
    pub eta: f64,
    pub replication: usize,
    pub r2_est: Option<f64>,
    pub r2_true: Option<f64>,
    pub nr2: Option<f64>,
    pub r2c_est: Option<f64>,
    pub r2c_true: Option<f64>,
    pub nr2c: Option<f64>,
    pub igd_plus_est: f64,
    pub igd_plus_true: f64,
    pub nigd_plus: f64,
    pub igd_true: f64,
    pub nigd: f64,
    pub misinformation: f64,
    pub nd_fraction: f64,
}

/// The evaluated set of one cell, with the shared reference and weights.
pub struct ReplicationData {
    pub set: SolutionSet,
    pub reference: ReferenceSet,
    pub weights: crate::utility::WeightSampleSet,
    /// Ideal point for the Chebycheff utilities: the shifted componentwise
    /// minimum of the true values and the reference set.
    pub ideal: ObjectiveVector,
}

/// Rebuilds the inputs of one cell from the configuration alone.
pub fn replication_data(
    config: &ExperimentConfig,
    eta_index: usize,
    replication: usize,
) -> Result<ReplicationData> {
    let eta = *config
        .eta_values
        .get(eta_index)
        .ok_or_else(|| MetricError::config("eta_values", format!("no noise level at index {eta_index}")))?;
    let base = config.base_seed;
    let front = generate_test_front_with(
        config.n_solutions,
        derive_seed(base, Stream::Front, 0, replication),
        &config.front_config(),
    )?;
    let noise = NoiseModel::uniform_box(eta, derive_seed(base, Stream::Noise, eta_index, replication))?;
    let estimated = apply_noise(&front.truths, noise)?;
    let weights = sample_weights(2, config.m_weights, derive_seed(base, Stream::Weights, 0, replication))?;
    let ideal = default_ideal_point(front.truths.iter().chain(front.reference.targets()))?;
    Ok(ReplicationData {
        set: SolutionSet::from_pairs(front.truths, estimated)?,
        reference: front.reference,
        weights,
        ideal,
    })
}

/// Computes every indicator for one cell.
pub fn run_replication(
    config: &ExperimentConfig,
    eta_index: usize,
    replication: usize,
) -> Result<ReplicationMetrics> {
    let data = replication_data(config, eta_index, replication)?;
    let (set, reference, weights) = (&data.set, &data.reference, &data.weights);
    let truths = set.true_values();
    let estimates = set.estimated_values();

    let r2_triple = |model: UtilityModel| -> Result<(f64, f64, f64)> {
        Ok((
            r2(&estimates, weights, &model)?.value,
            r2(&truths, weights, &model)?.value,
            n_r2(set, weights, &model)?.value,
        ))
    };
    let linear = config
        .includes(UtilityKind::Linear)
        .then(|| r2_triple(UtilityModel::linear()))
        .transpose()?;
    let cheb = config
        .includes(UtilityKind::Chebycheff)
        .then(|| r2_triple(UtilityModel::chebycheff(data.ideal.clone())))
        .transpose()?;

    Ok(ReplicationMetrics {
        eta: config.eta_values[eta_index],
        replication,
        r2_est: linear.map(|v| v.0),
        r2_true: linear.map(|v| v.1),
        nr2: linear.map(|v| v.2),
        r2c_est: cheb.map(|v| v.0),
        r2c_true: cheb.map(|v| v.1),
        nr2c: cheb.map(|v| v.2),
        igd_plus_est: igd_plus(&estimates, reference)?.value,
        igd_plus_true: igd_plus(&truths, reference)?.value,
        nigd_plus: n_igd_plus(set, reference)?.value,
        igd_true: igd(&truths, reference)?.value,
        nigd: n_igd(set, reference)?.value,
        misinformation: noise_misinformation(set),
        nd_fraction: true_nondominated_fraction(set),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Stat {
    pub mean: f64,
    /// Sample standard deviation; 0 for a single replication.
    pub std: f64,
}

impl Stat {
    fn of(values: &[f64]) -> Stat {
        let n = values.len() as f64;
        let mean = values.iter().sum::<f64>() / n;
        let std = if values.len() > 1 {
            (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
        } else {
            0.0
        };
        Stat { mean, std }
    }

    fn of_optional(values: impl Iterator<Item = Option<f64>>) -> Option<Stat> {
        let values: Option<Vec<f64>> = values.collect();
        values.map(|v| Stat::of(&v))
    }
}

/// One noise level of a report. R2, R2c and IGD+ are the classical
/// indicators on estimated values.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportRow {
    pub eta: f64,
    pub r2: Option<Stat>,
    pub nr2: Option<Stat>,
    pub r2c: Option<Stat>,
    pub nr2c: Option<Stat>,
    pub igd_plus: Stat,
    pub nigd_plus: Stat,
    pub misinformation: Stat,
    pub nd_fraction: Stat,
}

impl ReportRow {
    fn aggregate(eta: f64, cells: &[ReplicationMetrics]) -> Self {
        let column = |f: fn(&ReplicationMetrics) -> f64| Stat::of(&cells.iter().map(f).collect::<Vec<_>>());
        let optional =
            |f: fn(&ReplicationMetrics) -> Option<f64>| Stat::of_optional(cells.iter().map(f));
        ReportRow {
            eta,
            r2: optional(|c| c.r2_est),
            nr2: optional(|c| c.nr2),
            r2c: optional(|c| c.r2c_est),
            nr2c: optional(|c| c.nr2c),
            igd_plus: column(|c| c.igd_plus_est),
            nigd_plus: column(|c| c.nigd_plus),
            misinformation: column(|c| c.misinformation),
            nd_fraction: column(|c| c.nd_fraction),
        }
    }

    fn columns(&self) -> [(&'static str, Option<Stat>); 8] {
        [
            ("r2", self.r2),
            ("nr2", self.nr2),
            ("r2c", self.r2c),
            ("nr2c", self.nr2c),
            ("igd_plus", Some(self.igd_plus)),
            ("nigd_plus", Some(self.nigd_plus)),
            ("misinformation", Some(self.misinformation)),
            ("nd_fraction", Some(self.nd_fraction)),
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MetricReport {
    pub rows: Vec<ReportRow>,
}

impl MetricReport {
    /// CSV with `eta` followed by `<metric>_mean,<metric>_std` pairs. Absent
    /// utilities leave empty cells. Floats use shortest round-trip form.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("eta");
        if let Some(row) = self.rows.first() {
            for (name, _) in row.columns() {
                let _ = write!(out, ",{name}_mean,{name}_std");
            }
        }
        out.push('\n');
        for row in &self.rows {
            let _ = write!(out, "{:?}", row.eta);
            for (_, stat) in row.columns() {
                match stat {
                    Some(s) => {
                        let _ = write!(out, ",{:?},{:?}", s.mean, s.std);
                    }
                    None => out.push_str(",,"),
                }
            }
            out.push('\n');
        }
        out
    }

    /// Fixed-width table of means with four decimals.
    pub fn to_table(&self) -> String {
        let mut out = format!(
            "{:>6} {:>10} {:>10} {:>10} {:>10} {:>10} {:>10} {:>10} {:>10}\n",
            "eta", "R2", "nR2", "R2c", "nR2c", "IGD+", "nIGD+", "misinfo", "ndfrac"
        );
        for row in &self.rows {
            let _ = write!(out, "{:>6}", row.eta);
            for (_, stat) in row.columns() {
                match stat {
                    Some(s) => {
                        let _ = write!(out, " {:>10.4}", s.mean);
                    }
                    None => {
                        let _ = write!(out, " {:>10}", "-");
                    }
                }
            }
            out.push('\n');
        }
        out
    }
}

/// Runs every (noise level, replication) cell and aggregates per noise level.
/// Cells run in parallel; aggregation order is fixed so output is identical
/// regardless of scheduling.
pub fn run_noise_sweep(config: &ExperimentConfig) -> Result<MetricReport> {
    run_cells(config).map(|cells| aggregate(config, &cells))
}

/// All cells, grouped by noise level in configuration order.
pub fn run_cells(config: &ExperimentConfig) -> Result<Vec<Vec<ReplicationMetrics>>> {
    config.validate()?;
    (0..config.eta_values.len())
        .map(|e| {
            (0..config.replications)
                .into_par_iter()
                .map(|r| {
                    run_replication(config, e, r).map_err(|source| MetricError::Replication {
                        eta: config.eta_values[e],
                        replication: r,
                        source: Box::new(source),
                    })
                })
                .collect()
        })
        .collect()
}

fn aggregate(config: &ExperimentConfig, cells: &[Vec<ReplicationMetrics>]) -> MetricReport {
    MetricReport {
        rows: config
            .eta_values
            .iter()
            .zip(cells)
            .map(|(&eta, c)| ReportRow::aggregate(eta, c))
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_config() -> ExperimentConfig {
        ExperimentConfig {
            replications: 4,
            m_weights: 200,
            ..ExperimentConfig::default()
        }
    }

    #[test]
    fn zero_noise_is_identity() {
        let front = generate_test_front(10, 3).unwrap();
        let out = apply_noise(&front.truths, NoiseModel { eta: 0.0, seed: 9 }).unwrap();
        assert_eq!(out, front.truths);
    }

    #[test]
    fn noise_is_deterministic_and_bounded() {
        let zeros: Vec<_> = (0..100_000).map(|_| ObjectiveVector::new(vec![0.0]).unwrap()).collect();
        let model = NoiseModel::uniform_box(0.1, 42).unwrap();
        let a = apply_noise(&zeros, model).unwrap();
        assert_eq!(a, apply_noise(&zeros, model).unwrap());
        let draws: Vec<f64> = a.iter().map(|v| v[0]).collect();
        let mean = draws.iter().sum::<f64>() / draws.len() as f64;
        assert!(mean.abs() < 0.002, "mean {mean}");
        assert!(draws.iter().all(|d| (-0.1..=0.1).contains(d)));
        assert!(draws.iter().any(|d| *d < -0.099) && draws.iter().any(|d| *d > 0.099));
    }

    #[test]
    fn negative_noise_is_rejected() {
        let pts = vec![ObjectiveVector::new(vec![1.0]).unwrap()];
        let err = apply_noise(&pts, NoiseModel { eta: -0.1, seed: 0 }).unwrap_err();
        assert!(matches!(err, MetricError::InvalidConfig { field: "eta", .. }));
    }

    #[test]
    fn test_front_properties() {
        for seed in 0..20 {
            let config = FrontConfig {
                scale: 3.0,
                ..FrontConfig::default()
            };
            let front = generate_test_front_with(25, seed, &config).unwrap();
            let targets = front.reference.targets();
            assert_eq!(targets.first().unwrap().values(), &[0.0, 3.0]);
            assert_eq!(targets.last().unwrap().values(), &[3.0, 0.0]);
            for t in &front.truths {
                let f1 = t[0] / 3.0;
                assert!((0.0..=1.0).contains(&f1));
                assert!(t[1] / 3.0 >= 1.0 - f1.sqrt() - 1e-12);
            }
            assert_eq!(front, generate_test_front_with(25, seed, &config).unwrap());
        }
        assert!(generate_test_front(1, 0).is_err());
    }

    #[test]
    fn concave_front_stays_on_its_curve() {
        let config = FrontConfig {
            shape: FrontShape::Concave,
            offset_probability: 0.0,
            ..FrontConfig::default()
        };
        let front = generate_test_front_with(10, 1, &config).unwrap();
        for t in &front.truths {
            assert!((t[1] - (1.0 - t[0] * t[0])).abs() < 1e-12);
        }
    }

    #[test]
    fn seeds_are_distinct_per_stream_and_cell() {
        let mut seen = std::collections::HashSet::new();
        for stream in [Stream::Front, Stream::Weights, Stream::Noise] {
            for e in 0..4 {
                for r in 0..50 {
                    assert!(seen.insert(derive_seed(7, stream, e, r)));
                }
            }
        }
    }

    #[test]
    fn config_validation_names_the_field() {
        let field = |c: ExperimentConfig| match c.validate() {
            Err(MetricError::InvalidConfig { field, .. }) => field,
            other => panic!("expected config error, got {other:?}"),
        };
        let base = ExperimentConfig::default();
        assert!(base.validate().is_ok());
        assert_eq!(field(ExperimentConfig { eta_values: vec![0.1, 0.05], ..base.clone() }), "eta_values");
        assert_eq!(field(ExperimentConfig { eta_values: vec![-0.1], ..base.clone() }), "eta_values");
        assert_eq!(field(ExperimentConfig { replications: 0, ..base.clone() }), "replications");
        assert_eq!(field(ExperimentConfig { m_weights: 0, ..base.clone() }), "m_weights");
        assert_eq!(field(ExperimentConfig { utilities: vec![], ..base.clone() }), "utilities");
    }

    #[test]
    fn config_json() {
        let c = ExperimentConfig::from_json(r#"{"eta_values": [0, 0.1], "replications": 3}"#).unwrap();
        assert_eq!(c.eta_values, vec![0.0, 0.1]);
        assert_eq!(c.replications, 3);
        assert_eq!(c.m_weights, ExperimentConfig::default().m_weights);
        assert_eq!(c.utilities, default_utilities());

        let err = ExperimentConfig::from_json(r#"{"eta_values": [0.1], "replications": -1}"#).unwrap_err();
        assert!(matches!(err, MetricError::InvalidConfig { field: "replications", .. }), "{err:?}");
        let err = ExperimentConfig::from_json(r#"{"replication": 3}"#).unwrap_err();
        assert!(err.to_string().contains("replication"), "{err}");
        assert!(ExperimentConfig::from_json("[1, 2]").is_err());
        assert!(ExperimentConfig::from_json("{").is_err());
        let err = ExperimentConfig::from_json(r#"{"eta_values": [0.2, 0.1]}"#).unwrap_err();
        assert!(matches!(err, MetricError::InvalidConfig { field: "eta_values", .. }));
    }

    #[test]
    fn zero_noise_row_collapses() {
        let config = ExperimentConfig {
            eta_values: vec![0.0, 0.1],
            ..small_config()
        };
        let report = run_noise_sweep(&config).unwrap();
        let row = &report.rows[0];
        assert_eq!(row.nr2, row.r2);
        assert_eq!(row.nr2c, row.r2c);
        assert_eq!(row.nigd_plus, row.igd_plus);
        assert_eq!(row.misinformation.mean, 0.0);
    }

    #[test]
    fn true_value_metrics_ignore_noise() {
        let config = small_config();
        let cells = run_cells(&config).unwrap();
        for r in 0..config.replications {
            let first = &cells[0][r];
            for level in &cells[1..] {
                assert_eq!(level[r].r2_true, first.r2_true);
                assert_eq!(level[r].r2c_true, first.r2c_true);
                assert_eq!(level[r].igd_plus_true, first.igd_plus_true);
                assert_eq!(level[r].nd_fraction, first.nd_fraction);
            }
        }
    }

    #[test]
    fn cells_are_recomputable_in_isolation() {
        let config = small_config();
        let cells = run_cells(&config).unwrap();
        assert_eq!(run_replication(&config, 2, 3).unwrap(), cells[2][3]);
    }

    #[test]
    fn sweep_is_deterministic_and_ordered() {
        let config = small_config();
        let a = run_noise_sweep(&config).unwrap();
        assert_eq!(a.to_csv(), run_noise_sweep(&config).unwrap().to_csv());
        let etas: Vec<f64> = a.rows.iter().map(|r| r.eta).collect();
        assert_eq!(etas, config.eta_values);
        let other_seed = ExperimentConfig { base_seed: 1, ..config };
        assert_ne!(a.to_csv(), run_noise_sweep(&other_seed).unwrap().to_csv());
    }

    #[test]
    fn linear_only_sweep_leaves_chebycheff_cells_empty() {
        let config = ExperimentConfig {
            utilities: vec![UtilityKind::Linear],
            ..small_config()
        };
        let report = run_noise_sweep(&config).unwrap();
        assert!(report.rows.iter().all(|r| r.r2c.is_none() && r.r2.is_some()));
        let csv = report.to_csv();
        let second = csv.lines().nth(1).unwrap();
        assert_eq!(second.split(',').count(), 17);
        assert!(second.contains(",,,,"));
    }

    #[test]
    fn stat_uses_sample_deviation() {
        let s = Stat::of(&[1.0, 2.0, 3.0]);
        assert_eq!(s.mean, 2.0);
        assert_eq!(s.std, 1.0);
        assert_eq!(Stat::of(&[4.0]).std, 0.0);
    }
}
