//! Scalarising utility functions and weight-vector generation for the R2
//! family. Lower utility is better.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Exp1;
use serde::{Deserialize, Serialize};

use crate::error::{MetricError, Result};
use crate::objective::ObjectiveVector;

/// Tolerance on the unit-sum constraint of a weight vector.
pub const WEIGHT_SUM_TOLERANCE: f64 = 1e-9;

/// Margin subtracted from the componentwise minimum when an ideal point is
/// derived from data.
pub const IDEAL_MARGIN: f64 = 1e-6;

/// A point on the probability simplex.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeightVector(Vec<f64>);

impl WeightVector {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(MetricError::Empty("weight vector"));
        }
        if let Some(w) = weights.iter().find(|w| !w.is_finite() || **w < 0.0) {
            return Err(MetricError::InvalidWeight(format!(
                "entry {w} is negative or not finite"
            )));
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > WEIGHT_SUM_TOLERANCE {
            return Err(MetricError::InvalidWeight(format!(
                "entries sum to {sum}, expected 1"
            )));
        }
        Ok(WeightVector(weights))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }
}

/// The sampled utility parameters. `seed` is 0 for explicit sets.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeightSampleSet {
    samples: Vec<WeightVector>,
    seed: u64,
}

impl WeightSampleSet {
    pub fn new(samples: Vec<WeightVector>) -> Result<Self> {
        Self::with_seed(samples, 0)
    }

    fn with_seed(samples: Vec<WeightVector>, seed: u64) -> Result<Self> {
        let dim = samples
            .first()
            .ok_or(MetricError::Empty("weight sample set"))?
            .dim();
        if let Some(w) = samples.iter().find(|w| w.dim() != dim) {
            return Err(MetricError::DimensionMismatch {
                expected: dim,
                found: w.dim(),
            });
        }
        Ok(WeightSampleSet { samples, seed })
    }

    pub fn samples(&self) -> &[WeightVector] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn dim(&self) -> usize {
        self.samples[0].dim()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum UtilityKind {
    Linear,
    Chebycheff,
}

/// A utility family plus, for Chebycheff, its ideal point.
#[derive(Debug, Clone, PartialEq)]
pub struct UtilityModel {
    pub kind: UtilityKind,
    pub ideal_point: Option<ObjectiveVector>,
}

impl UtilityModel {
    pub fn linear() -> Self {
        UtilityModel {
            kind: UtilityKind::Linear,
            ideal_point: None,
        }
    }

    pub fn chebycheff(ideal_point: ObjectiveVector) -> Self {
        UtilityModel {
            kind: UtilityKind::Chebycheff,
            ideal_point: Some(ideal_point),
        }
    }

    /// Chebycheff model whose ideal point is derived from the data of each
    /// metric call.
    pub fn chebycheff_auto() -> Self {
        UtilityModel {
            kind: UtilityKind::Chebycheff,
            ideal_point: None,
        }
    }

    /// Fills in a missing Chebycheff ideal point from `points`. Linear models
    /// and models with an explicit ideal point are returned unchanged.
    pub fn resolved<'a>(
        &self,
        points: impl IntoIterator<Item = &'a ObjectiveVector>,
    ) -> Result<UtilityModel> {
        match (self.kind, &self.ideal_point) {
            (UtilityKind::Chebycheff, None) => {
                Ok(UtilityModel::chebycheff(default_ideal_point(points)?))
            }
            _ => Ok(self.clone()),
        }
    }

    /// Validates dimensions once so hot loops can skip the checks.
    pub(crate) fn scalariser(&self, dim: usize) -> Result<Scalariser<'_>> {
        match self.kind {
            UtilityKind::Linear => Ok(Scalariser::Linear),
            UtilityKind::Chebycheff => {
                let ideal = self
                    .ideal_point
                    .as_ref()
                    .ok_or(MetricError::MissingIdealPoint)?;
                ideal.check_dim(dim)?;
                Ok(Scalariser::Chebycheff(ideal.values()))
            }
        }
    }
}

/// Componentwise minimum of `points` minus [`IDEAL_MARGIN`].
pub fn default_ideal_point<'a>(
    points: impl IntoIterator<Item = &'a ObjectiveVector>,
) -> Result<ObjectiveVector> {
    let mut iter = points.into_iter();
    let first = iter.next().ok_or(MetricError::Empty("ideal point input"))?;
    let mut ideal = first.values().to_vec();
    for p in iter {
        p.check_dim(ideal.len())?;
        for (z, &v) in ideal.iter_mut().zip(p.values()) {
            *z = z.min(v);
        }
    }
    ideal.iter_mut().for_each(|z| *z -= IDEAL_MARGIN);
    ObjectiveVector::new(ideal)
}

#[derive(Debug, Clone, Copy)]
pub(crate) enum Scalariser<'a> {
    Linear,
    Chebycheff(&'a [f64]),
}

impl Scalariser<'_> {
    #[inline]
    pub(crate) fn eval(&self, f: &[f64], weights: &[f64]) -> f64 {
        match self {
            Scalariser::Linear => f.iter().zip(weights).map(|(v, w)| v * w).sum(),
            Scalariser::Chebycheff(ideal) => f
                .iter()
                .zip(weights)
                .zip(ideal.iter())
                .map(|((v, w), z)| w * (v - z).max(0.0))
                .fold(0.0, f64::max),
        }
    }
}

/// Evaluates `model` at `f` with weights `lambda`.
///
/// Linear: `sum_k lambda_k f_k`. Chebycheff: `max_k lambda_k max(f_k - z_k, 0)`
/// where `z` is the model's ideal point.
pub fn utility(model: &UtilityModel, f: &ObjectiveVector, lambda: &WeightVector) -> Result<f64> {
    lambda.check_dim(f.dim())?;
    Ok(model.scalariser(f.dim())?.eval(f.values(), lambda.values()))
}

impl WeightVector {
    pub(crate) fn check_dim(&self, expected: usize) -> Result<()> {
        if self.dim() != expected {
            return Err(MetricError::DimensionMismatch {
                expected,
                found: self.dim(),
            });
        }
        Ok(())
    }
}

/// Draws `m` weight vectors uniformly from the simplex in `dim` dimensions
/// (Dirichlet(1, ..., 1) via normalised unit-exponential draws).
pub fn sample_weights(dim: usize, m: usize, seed: u64) -> Result<WeightSampleSet> {
    if dim < 2 {
        return Err(MetricError::config("dimension", "weight sampling needs at least 2 objectives"));
    }
    if m == 0 {
        return Err(MetricError::Empty("weight sample set"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let samples = (0..m)
        .map(|_| {
            let draws: Vec<f64> = (0..dim).map(|_| rng.sample::<f64, _>(Exp1)).collect();
            WeightVector(simplex_normalise(&draws))
        })
        .collect();
    WeightSampleSet::with_seed(samples, seed)
}

/// Scales positive draws onto the simplex. The last entry absorbs the
/// rounding so the sum is 1 up to one ulp.
fn simplex_normalise(draws: &[f64]) -> Vec<f64> {
    let total: f64 = draws.iter().sum();
    let head = &draws[..draws.len() - 1];
    let mut weights: Vec<f64> = head.iter().map(|d| d / total).collect();
    let rest = 1.0 - weights.iter().sum::<f64>();
    weights.push(rest.max(0.0));
    weights
}

/// Simplex-lattice design: every vector with entries `i / divisions` summing
/// to one, in lexicographic order.
pub fn weight_grid(dim: usize, divisions: usize) -> Result<WeightSampleSet> {
    if dim < 2 {
        return Err(MetricError::config("dimension", "weight grid needs at least 2 objectives"));
    }
    if divisions == 0 {
        return Err(MetricError::config("divisions", "must be at least 1"));
    }
    let mut samples = Vec::new();
    let mut counts = vec![0usize; dim];
    compositions(&mut counts, 0, divisions, &mut |c| {
        let w = c.iter().map(|&i| i as f64 / divisions as f64).collect();
        samples.push(WeightVector(w));
    });
    WeightSampleSet::with_seed(samples, 0)
}

fn compositions(counts: &mut [usize], pos: usize, remaining: usize, emit: &mut impl FnMut(&[usize])) {
    if pos + 1 == counts.len() {
        counts[pos] = remaining;
        emit(counts);
        return;
    }
    for i in 0..=remaining {
        counts[pos] = i;
        compositions(counts, pos + 1, remaining - i, emit);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::objective::dominates;
    use crate::objective::tests::ov;

    fn wv(w: &[f64]) -> WeightVector {
        WeightVector::new(w.to_vec()).unwrap()
    }

    #[test]
    fn linear_examples() {
        let m = UtilityModel::linear();
        assert_eq!(utility(&m, &ov(&[1.0, 2.0]), &wv(&[0.5, 0.5])).unwrap(), 1.5);
        assert_eq!(utility(&m, &ov(&[3.0, 7.0]), &wv(&[1.0, 0.0])).unwrap(), 3.0);
    }

    #[test]
    fn chebycheff_examples() {
        let m = UtilityModel::chebycheff(ov(&[0.0, 0.0]));
        // max(0.5 * 2, 0.5 * 5)
        assert_eq!(utility(&m, &ov(&[2.0, 5.0]), &wv(&[0.5, 0.5])).unwrap(), 2.5);
        // below the ideal point clamps to zero
        assert_eq!(utility(&m, &ov(&[-1.0, -3.0]), &wv(&[0.5, 0.5])).unwrap(), 0.0);
    }

    #[test]
    fn utility_errors() {
        let lam = wv(&[0.5, 0.5]);
        assert_eq!(
            utility(&UtilityModel::chebycheff_auto(), &ov(&[1.0, 1.0]), &lam).unwrap_err(),
            MetricError::MissingIdealPoint
        );
        assert!(matches!(
            utility(&UtilityModel::linear(), &ov(&[1.0, 1.0, 1.0]), &lam),
            Err(MetricError::DimensionMismatch { .. })
        ));
        let bad_ideal = UtilityModel::chebycheff(ov(&[0.0]));
        assert!(utility(&bad_ideal, &ov(&[1.0, 1.0]), &lam).is_err());
    }

    #[test]
    fn weight_vector_validation() {
        assert!(WeightVector::new(vec![0.3, 0.7]).is_ok());
        assert!(WeightVector::new(vec![0.3, 0.6]).is_err());
        assert!(WeightVector::new(vec![-0.1, 1.1]).is_err());
        assert!(WeightVector::new(vec![f64::NAN, 1.0]).is_err());
        assert!(WeightVector::new(vec![]).is_err());
    }

    #[test]
    fn default_ideal_is_shifted_minimum() {
        let pts = [ov(&[1.0, 5.0]), ov(&[3.0, 2.0])];
        let z = default_ideal_point(&pts).unwrap();
        assert_eq!(z.values(), &[1.0 - IDEAL_MARGIN, 2.0 - IDEAL_MARGIN]);
        let resolved = UtilityModel::chebycheff_auto().resolved(&pts).unwrap();
        assert_eq!(resolved.ideal_point, Some(z));
        assert_eq!(UtilityModel::linear().resolved(&pts).unwrap(), UtilityModel::linear());
    }

    #[test]
    fn two_dimensional_samples_lie_on_segment() {
        for seed in [0, 1, 99] {
            let set = sample_weights(2, 500, seed).unwrap();
            for w in set.samples() {
                let [a, b] = [w.values()[0], w.values()[1]];
                assert!((0.0..=1.0).contains(&a));
                assert!((b - (1.0 - a)).abs() <= 1e-15);
            }
        }
    }

    #[test]
    fn simplex_samples_have_uniform_means() {
        let set = sample_weights(3, 100_000, 42).unwrap();
        for k in 0..3 {
            let mean = set.samples().iter().map(|w| w.values()[k]).sum::<f64>() / 1e5;
            assert!((mean - 1.0 / 3.0).abs() < 0.01, "coordinate {k} mean {mean}");
        }
    }

    #[test]
    fn sampling_is_deterministic_and_valid() {
        let a = sample_weights(4, 200, 5).unwrap();
        let b = sample_weights(4, 200, 5).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.seed(), 5);
        assert_ne!(a, sample_weights(4, 200, 6).unwrap());
        for w in a.samples() {
            assert!(WeightVector::new(w.values().to_vec()).is_ok());
        }
        assert!(sample_weights(1, 10, 0).is_err());
        assert!(sample_weights(2, 0, 0).is_err());
    }

    fn binomial(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn grid_examples() {
        let g = weight_grid(2, 2).unwrap();
        let got: Vec<_> = g.samples().iter().map(|w| w.values().to_vec()).collect();
        assert_eq!(got, vec![vec![0.0, 1.0], vec![0.5, 0.5], vec![1.0, 0.0]]);
        assert_eq!(weight_grid(2, 4).unwrap().len(), 5);

        // enumeration oracle: count integer triples summing to 3
        let mut count = 0;
        for i in 0..=3 {
            for j in 0..=3 {
                for k in 0..=3 {
                    if i + j + k == 3 {
                        count += 1;
                    }
                }
            }
        }
        assert_eq!(weight_grid(3, 3).unwrap().len(), count);
        assert_eq!(count, binomial(5, 2));
        assert_eq!(weight_grid(4, 6).unwrap().len(), binomial(9, 3));
    }

    #[test]
    fn grid_is_lexicographic() {
        let g = weight_grid(3, 4).unwrap();
        let rows: Vec<_> = g.samples().iter().map(|w| w.values().to_vec()).collect();
        for pair in rows.windows(2) {
            assert!(pair[0] < pair[1]);
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn weight2() -> impl Strategy<Value = WeightVector> {
            (0.0f64..=1.0).prop_map(|a| WeightVector::new(vec![a, 1.0 - a]).unwrap())
        }

        fn point2() -> impl Strategy<Value = ObjectiveVector> {
            prop::collection::vec(-10.0f64..10.0, 2).prop_map(|v| ObjectiveVector::new(v).unwrap())
        }

        proptest! {
            #[test]
            fn linear_is_homogeneous(f in point2(), w in weight2(), c in 0.0f64..10.0) {
                let m = UtilityModel::linear();
                let scaled = ObjectiveVector::new(f.iter().map(|v| c * v).collect()).unwrap();
                let lhs = utility(&m, &scaled, &w).unwrap();
                let rhs = c * utility(&m, &f, &w).unwrap();
                prop_assert!((lhs - rhs).abs() <= 1e-9 * (1.0 + rhs.abs()));
            }

            #[test]
            fn utilities_are_weakly_monotone(u in point2(), v in point2(), w in weight2()) {
                if dominates(&u, &v).unwrap() {
                    let cheb = UtilityModel::chebycheff(ObjectiveVector::new(vec![-3.0, 2.0]).unwrap());
                    for m in [UtilityModel::linear(), cheb] {
                        prop_assert!(utility(&m, &u, &w).unwrap() <= utility(&m, &v, &w).unwrap());
                    }
                }
            }

            #[test]
            fn samples_are_valid_weights(dim in 2usize..6, m in 1usize..50, seed in any::<u64>()) {
                let set = sample_weights(dim, m, seed).unwrap();
                prop_assert_eq!(set.len(), m);
                for w in set.samples() {
                    prop_assert!(WeightVector::new(w.values().to_vec()).is_ok());
                }
            }
        }
    }
}
