//! Objective-space primitives: vectors, Pareto dominance, evaluated solution
//! sets and reference fronts.
//!
//! Every objective is minimised. Callers holding maximisation objectives must
//! negate them before building vectors.

use std::collections::HashSet;
use std::ops::Index;

use serde::{Deserialize, Serialize};

use crate::error::{MetricError, Result};

/// A point in D-dimensional objective space with finite coordinates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct ObjectiveVector(Vec<f64>);

impl ObjectiveVector {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(MetricError::Empty("objective vector"));
        }
        if let Some((position, &value)) = values.iter().enumerate().find(|(_, v)| !v.is_finite())
        {
            return Err(MetricError::NonFinite { position, value });
        }
        Ok(ObjectiveVector(values))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, f64> {
        self.0.iter()
    }

    pub(crate) fn check_dim(&self, expected: usize) -> Result<()> {
        if self.dim() != expected {
            return Err(MetricError::DimensionMismatch {
                expected,
                found: self.dim(),
            });
        }
        Ok(())
    }

    /// Euclidean distance to `other`. Dimensions must already agree.
    pub(crate) fn euclidean(&self, other: &ObjectiveVector) -> f64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }
}

impl TryFrom<Vec<f64>> for ObjectiveVector {
    type Error = MetricError;

    fn try_from(values: Vec<f64>) -> Result<Self> {
        ObjectiveVector::new(values)
    }
}

impl From<ObjectiveVector> for Vec<f64> {
    fn from(v: ObjectiveVector) -> Self {
        v.0
    }
}

impl Index<usize> for ObjectiveVector {
    type Output = f64;

    fn index(&self, k: usize) -> &f64 {
        &self.0[k]
    }
}

/// Checks that every vector has dimension `expected`.
pub(crate) fn check_uniform<'a>(
    points: impl IntoIterator<Item = &'a ObjectiveVector>,
    expected: usize,
) -> Result<()> {
    points.into_iter().try_for_each(|p| p.check_dim(expected))
}

/// Pareto dominance under minimisation: `u` is no worse than `v` in every
/// objective and differs from it somewhere.
pub fn dominates(u: &ObjectiveVector, v: &ObjectiveVector) -> Result<bool> {
    v.check_dim(u.dim())?;
    Ok(dominates_unchecked(u.values(), v.values()))
}

pub(crate) fn dominates_unchecked(u: &[f64], v: &[f64]) -> bool {
    let mut strictly_better = false;
    for (&a, &b) in u.iter().zip(v) {
        if a > b {
            return false;
        }
        if a < b {
            strictly_better = true;
        }
    }
    strictly_better
}

/// Indices of the points not dominated by any other point, in input order.
/// Duplicated vectors do not dominate each other, so all copies are kept.
pub fn nondominated_filter(points: &[ObjectiveVector]) -> Result<Vec<usize>> {
    let first = points.first().ok_or(MetricError::Empty("point list"))?;
    check_uniform(points, first.dim())?;
    Ok(nondominated_indices(points.iter().map(ObjectiveVector::values)))
}

pub(crate) fn nondominated_indices<'a>(points: impl Iterator<Item = &'a [f64]>) -> Vec<usize> {
    let points: Vec<&[f64]> = points.collect();
    (0..points.len())
        .filter(|&i| !points.iter().any(|q| dominates_unchecked(q, points[i])))
        .collect()
}

/// A returned solution with its true and estimated objective vectors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvaluatedSolution {
    pub id: String,
    #[serde(rename = "true")]
    pub true_values: ObjectiveVector,
    #[serde(rename = "estimated")]
    pub estimated_values: ObjectiveVector,
}

impl EvaluatedSolution {
    pub fn new(
        id: impl Into<String>,
        true_values: ObjectiveVector,
        estimated_values: ObjectiveVector,
    ) -> Result<Self> {
        estimated_values.check_dim(true_values.dim())?;
        Ok(EvaluatedSolution {
            id: id.into(),
            true_values,
            estimated_values,
        })
    }

    /// A solution whose estimate equals its true value.
    pub fn noise_free(id: impl Into<String>, values: ObjectiveVector) -> Self {
        EvaluatedSolution {
            id: id.into(),
            estimated_values: values.clone(),
            true_values: values,
        }
    }
}

/// The non-empty set returned by an optimiser. Ids are unique and all vectors
/// share one dimension.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolutionSet {
    dimension: usize,
    solutions: Vec<EvaluatedSolution>,
}

impl SolutionSet {
    pub fn new(solutions: Vec<EvaluatedSolution>) -> Result<Self> {
        let dimension = solutions
            .first()
            .ok_or(MetricError::Empty("solution set"))?
            .true_values
            .dim();
        let mut seen = HashSet::with_capacity(solutions.len());
        for s in &solutions {
            s.true_values.check_dim(dimension)?;
            s.estimated_values.check_dim(dimension)?;
            if !seen.insert(s.id.as_str()) {
                return Err(MetricError::DuplicateId(s.id.clone()));
            }
        }
        Ok(SolutionSet {
            dimension,
            solutions,
        })
    }

    /// Pairs true and estimated vectors by position, naming solutions `s0`, `s1`, ...
    pub fn from_pairs(
        true_values: Vec<ObjectiveVector>,
        estimated_values: Vec<ObjectiveVector>,
    ) -> Result<Self> {
        if true_values.len() != estimated_values.len() {
            return Err(MetricError::DimensionMismatch {
                expected: true_values.len(),
                found: estimated_values.len(),
            });
        }
        let solutions = true_values
            .into_iter()
            .zip(estimated_values)
            .enumerate()
            .map(|(i, (t, r))| EvaluatedSolution::new(format!("s{i}"), t, r))
            .collect::<Result<Vec<_>>>()?;
        SolutionSet::new(solutions)
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn len(&self) -> usize {
        self.solutions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.solutions.is_empty()
    }

    pub fn solutions(&self) -> &[EvaluatedSolution] {
        &self.solutions
    }

    pub fn id(&self, index: usize) -> &str {
        &self.solutions[index].id
    }

    pub fn true_values(&self) -> Vec<ObjectiveVector> {
        self.solutions.iter().map(|s| s.true_values.clone()).collect()
    }

    pub fn estimated_values(&self) -> Vec<ObjectiveVector> {
        self.solutions
            .iter()
            .map(|s| s.estimated_values.clone())
            .collect()
    }

    pub(crate) fn true_slices(&self) -> impl Iterator<Item = &[f64]> {
        self.solutions.iter().map(|s| s.true_values.values())
    }

    pub(crate) fn estimated_slices(&self) -> impl Iterator<Item = &[f64]> {
        self.solutions.iter().map(|s| s.estimated_values.values())
    }
}

/// Target approximation of the Pareto front. Targets are validated to be
/// mutually non-dominated on construction.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReferenceSet {
    dimension: usize,
    targets: Vec<ObjectiveVector>,
}

impl ReferenceSet {
    pub fn new(targets: Vec<ObjectiveVector>) -> Result<Self> {
        let dimension = targets
            .first()
            .ok_or(MetricError::Empty("reference set"))?
            .dim();
        check_uniform(&targets, dimension)?;
        for (i, a) in targets.iter().enumerate() {
            for (j, b) in targets.iter().enumerate() {
                if i != j && dominates_unchecked(a.values(), b.values()) {
                    return Err(MetricError::DominatedReference {
                        dominating: i,
                        dominated: j,
                    });
                }
            }
        }
        Ok(ReferenceSet { dimension, targets })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn len(&self) -> usize {
        self.targets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.targets.is_empty()
    }

    pub fn targets(&self) -> &[ObjectiveVector] {
        &self.targets
    }
}

/// Share of the set whose true vectors are non-dominated within the set.
pub fn true_nondominated_fraction(set: &SolutionSet) -> f64 {
    let kept = nondominated_indices(set.true_slices()).len();
    kept as f64 / set.len() as f64
}
