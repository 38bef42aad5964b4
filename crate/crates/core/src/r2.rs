//! R2 and the noise-aware nR2 indicator.
//!
//! R2 averages, over sampled utility functions, the best utility found in a
//! set. nR2 models a decision maker who picks by estimated values: for each
//! weight vector the solution with the lowest estimated utility is selected,
//! and its true utility is what counts.
//!
//! Argmin ties resolve to the lowest solution index.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{MetricError, Result};
use crate::objective::{check_uniform, ObjectiveVector, SolutionSet};
use crate::utility::{Scalariser, UtilityModel, WeightSampleSet};

/// Monte Carlo sample count used when callers do not choose one.
pub const DEFAULT_SAMPLES: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampleSelection {
    pub weight_index: usize,
    /// Index into the evaluated point list (or solution set).
    pub selected: usize,
    /// Utility realised by the selection, on true values.
    pub utility: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct R2Result {
    pub value: f64,
    pub per_sample: Vec<SampleSelection>,
}

impl R2Result {
    fn from_selections(per_sample: Vec<SampleSelection>) -> Self {
        // sequential sum keeps the value independent of thread scheduling
        let total: f64 = per_sample.iter().map(|s| s.utility).sum();
        R2Result {
            value: total / per_sample.len() as f64,
            per_sample,
        }
    }
}

#[inline]
pub(crate) fn argmin_utility<'a>(
    points: impl Iterator<Item = &'a [f64]>,
    scalariser: Scalariser<'_>,
    weights: &[f64],
) -> (usize, f64) {
    let mut best = (0, f64::INFINITY);
    for (j, p) in points.enumerate() {
        let u = scalariser.eval(p, weights);
        if u < best.1 {
            best = (j, u);
        }
    }
    best
}

fn check_inputs<'a>(
    points: impl IntoIterator<Item = &'a ObjectiveVector>,
    dim: usize,
    weights: &WeightSampleSet,
) -> Result<()> {
    check_uniform(points, dim)?;
    if weights.dim() != dim {
        return Err(MetricError::DimensionMismatch {
            expected: dim,
            found: weights.dim(),
        });
    }
    Ok(())
}

/// Classical R2 of `values`: mean over weight samples of the minimum utility.
///
/// A Chebycheff model without an ideal point uses the default ideal of
/// `values`.
pub fn r2(
    values: &[ObjectiveVector],
    weights: &WeightSampleSet,
    model: &UtilityModel,
) -> Result<R2Result> {
    let dim = values.first().ok_or(MetricError::Empty("point list"))?.dim();
    check_inputs(values, dim, weights)?;
    let model = model.resolved(values)?;
    let scalariser = model.scalariser(dim)?;
    let per_sample = weights
        .samples()
        .par_iter()
        .enumerate()
        .map(|(i, w)| {
            let (selected, utility) =
                argmin_utility(values.iter().map(|v| v.values()), scalariser, w.values());
            SampleSelection {
                weight_index: i,
                selected,
                utility,
            }
        })
        .collect();
    Ok(R2Result::from_selections(per_sample))
}

/// Noise-aware R2: select on estimated values, score on true values.
///
/// A Chebycheff model without an ideal point uses the default ideal of the
/// union of true and estimated values.
pub fn n_r2(set: &SolutionSet, weights: &WeightSampleSet, model: &UtilityModel) -> Result<R2Result> {
    let dim = set.dimension();
    check_inputs(std::iter::empty(), dim, weights)?;
    let model = resolve_for_set(model, set)?;
    let scalariser = model.scalariser(dim)?;
    let per_sample = weights
        .samples()
        .par_iter()
        .enumerate()
        .map(|(i, w)| {
            let (selected, _) = argmin_utility(set.estimated_slices(), scalariser, w.values());
            let truth = set.solutions()[selected].true_values.values();
            SampleSelection {
                weight_index: i,
                selected,
                utility: scalariser.eval(truth, w.values()),
            }
        })
        .collect();
    Ok(R2Result::from_selections(per_sample))
}

pub(crate) fn resolve_for_set(model: &UtilityModel, set: &SolutionSet) -> Result<UtilityModel> {
    model.resolved(
        set.solutions()
            .iter()
            .flat_map(|s| [&s.true_values, &s.estimated_values]),
    )
}

/// Number of weight samples whose minimum utility over `values` is attained
/// by more than one point.
pub fn count_ties(
    values: &[ObjectiveVector],
    weights: &WeightSampleSet,
    model: &UtilityModel,
) -> Result<usize> {
    let dim = values.first().ok_or(MetricError::Empty("point list"))?.dim();
    check_inputs(values, dim, weights)?;
    let model = model.resolved(values)?;
    let scalariser = model.scalariser(dim)?;
    Ok(weights
        .samples()
        .iter()
        .filter(|w| {
            let utilities: Vec<f64> = values
                .iter()
                .map(|v| scalariser.eval(v.values(), w.values()))
                .collect();
            let best = utilities.iter().copied().fold(f64::INFINITY, f64::min);
            utilities.iter().filter(|&&u| u == best).count() > 1
        })
        .count())
}

/// A linear piece of the lower envelope of `g_j(l) = l f1_j + (1 - l) f2_j`
/// on `l` in [0, 1]: point `index` is optimal for weights `(l, 1 - l)` with
/// `l` in `[lambda_from, lambda_to]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnvelopePiece {
    pub index: usize,
    pub lambda_from: f64,
    pub lambda_to: f64,
}

struct Line {
    slope: f64,
    intercept: f64,
    index: usize,
}

impl Line {
    fn at(&self, l: f64) -> f64 {
        self.intercept + self.slope * l
    }
}

/// Lower envelope, over l in [0, 1], of the linear utilities of 2-objective
/// points. Pieces are ordered by increasing l and correspond to the vertices
/// of the lower-left convex hull of the point set.
pub fn linear_envelope_2d(values: &[ObjectiveVector]) -> Result<Vec<EnvelopePiece>> {
    if values.is_empty() {
        return Err(MetricError::Empty("point list"));
    }
    check_uniform(values, 2)?;

    let mut lines: Vec<Line> = values
        .iter()
        .enumerate()
        .map(|(index, v)| Line {
            slope: v[0] - v[1],
            intercept: v[1],
            index,
        })
        .collect();
    // steepest first; among parallel lines the lowest, then the earliest
    lines.sort_by(|a, b| {
        b.slope
            .total_cmp(&a.slope)
            .then(a.intercept.total_cmp(&b.intercept))
            .then(a.index.cmp(&b.index))
    });
    lines.dedup_by(|later, kept| later.slope == kept.slope);

    let mut hull: Vec<Line> = Vec::with_capacity(lines.len());
    for line in lines {
        while hull.len() >= 2 {
            let (first, mid) = (&hull[hull.len() - 2], &hull[hull.len() - 1]);
            // mid never strictly wins if line overtakes first no later than mid does
            let lhs = (line.intercept - first.intercept) * (first.slope - mid.slope);
            let rhs = (mid.intercept - first.intercept) * (first.slope - line.slope);
            if lhs <= rhs {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(line);
    }

    let mut pieces = Vec::with_capacity(hull.len());
    let mut start = 0.0;
    for (k, line) in hull.iter().enumerate() {
        let end = match hull.get(k + 1) {
            Some(next) => ((next.intercept - line.intercept) / (line.slope - next.slope)).min(1.0),
            None => 1.0,
        };
        if end > start || (k + 1 == hull.len() && pieces.is_empty()) {
            pieces.push(EnvelopePiece {
                index: line.index,
                lambda_from: start,
                lambda_to: end.max(start),
            });
        }
        start = start.max(end);
        if start >= 1.0 {
            break;
        }
    }
    Ok(pieces)
}

/// Exact R2 for two objectives and linear utilities with weights `(l, 1 - l)`,
/// `l` uniform on [0, 1]: the integral of the lower envelope, evaluated piece
/// by piece in closed form.
pub fn analytic_r2_linear_2d(values: &[ObjectiveVector]) -> Result<f64> {
    let pieces = linear_envelope_2d(values)?;
    Ok(pieces
        .iter()
        .map(|p| {
            let v = &values[p.index];
            let line = Line {
                slope: v[0] - v[1],
                intercept: v[1],
                index: p.index,
            };
            // trapezoid is exact for a linear integrand
            0.5 * (line.at(p.lambda_from) + line.at(p.lambda_to)) * (p.lambda_to - p.lambda_from)
        })
        .sum())
}
