//! IGD, IGD+ and the noise-aware nIGD, nIGD+.
//!
//! Each reference target stands for a decision maker who picks the solution
//! whose estimated vector is closest to the target. The noise-aware variants
//! then charge the distance from the target to that solution's true vector.
//!
//! Values are plain sums over targets unless [`Normalise::Mean`] is chosen.
//! Argmin ties resolve to the lowest solution index. Nearest-neighbour search
//! is exhaustive.

use serde::{Deserialize, Serialize};

use crate::error::{MetricError, Result};
use crate::objective::{check_uniform, ObjectiveVector, ReferenceSet, SolutionSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Normalise {
    #[default]
    Sum,
    Mean,
}

/// Distance used to pick the solution for each target in nIGD+. The default
/// selects with the IGD+ distance itself, so nIGD+ equals IGD+ on true
/// values when estimates are exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SelectionDistance {
    Euclidean,
    #[default]
    IgdPlus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct IgdOptions {
    pub normalise: Normalise,
    /// Only consulted by [`n_igd_plus_with`].
    pub selection: SelectionDistance,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TargetMatch {
    pub target_index: usize,
    pub selected: usize,
    pub distance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IgdResult {
    pub value: f64,
    pub per_target: Vec<TargetMatch>,
}

impl IgdResult {
    fn new(per_target: Vec<TargetMatch>, normalise: Normalise) -> Self {
        let total: f64 = per_target.iter().map(|m| m.distance).sum();
        let value = match normalise {
            Normalise::Sum => total,
            Normalise::Mean => total / per_target.len() as f64,
        };
        IgdResult { value, per_target }
    }
}

#[inline]
pub(crate) fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// One-sided distance: only the amount by which `t` is worse than `a` counts.
#[inline]
pub(crate) fn igd_plus_slices(a: &[f64], t: &[f64]) -> f64 {
    a.iter()
        .zip(t)
        .map(|(ak, tk)| (tk - ak).max(0.0).powi(2))
        .sum::<f64>()
        .sqrt()
}

/// IGD+ distance from target `a` to point `t`.
pub fn igd_plus_distance(a: &ObjectiveVector, t: &ObjectiveVector) -> Result<f64> {
    t.check_dim(a.dim())?;
    Ok(igd_plus_slices(a.values(), t.values()))
}

#[inline]
pub(crate) fn nearest<'a>(
    target: &[f64],
    points: impl Iterator<Item = &'a [f64]>,
    distance: fn(&[f64], &[f64]) -> f64,
) -> (usize, f64) {
    let mut best = (0, f64::INFINITY);
    for (j, p) in points.enumerate() {
        let d = distance(target, p);
        if d < best.1 {
            best = (j, d);
        }
    }
    best
}

fn classical(
    points: &[ObjectiveVector],
    reference: &ReferenceSet,
    distance: fn(&[f64], &[f64]) -> f64,
    normalise: Normalise,
) -> Result<IgdResult> {
    if points.is_empty() {
        return Err(MetricError::Empty("point list"));
    }
    check_uniform(points, reference.dimension())?;
    let per_target = reference
        .targets()
        .iter()
        .enumerate()
        .map(|(i, a)| {
            let (selected, distance) = nearest(a.values(), points.iter().map(|p| p.values()), distance);
            TargetMatch {
                target_index: i,
                selected,
                distance,
            }
        })
        .collect();
    Ok(IgdResult::new(per_target, normalise))
}

fn noisy(
    set: &SolutionSet,
    reference: &ReferenceSet,
    select_by: fn(&[f64], &[f64]) -> f64,
    score_by: fn(&[f64], &[f64]) -> f64,
    normalise: Normalise,
) -> Result<IgdResult> {
    if set.dimension() != reference.dimension() {
        return Err(MetricError::DimensionMismatch {
            expected: reference.dimension(),
            found: set.dimension(),
        });
    }
    let per_target = reference
        .targets()
        .iter()
        .enumerate()
        .map(|(i, a)| {
            let (selected, _) = nearest(a.values(), set.estimated_slices(), select_by);
            let truth = set.solutions()[selected].true_values.values();
            TargetMatch {
                target_index: i,
                selected,
                distance: score_by(a.values(), truth),
            }
        })
        .collect();
    Ok(IgdResult::new(per_target, normalise))
}

/// Classical IGD: sum over targets of the Euclidean distance to the nearest point.
pub fn igd(points: &[ObjectiveVector], reference: &ReferenceSet) -> Result<IgdResult> {
    igd_with(points, reference, IgdOptions::default())
}

pub fn igd_with(
    points: &[ObjectiveVector],
    reference: &ReferenceSet,
    options: IgdOptions,
) -> Result<IgdResult> {
    classical(points, reference, euclidean, options.normalise)
}

/// Classical IGD+: nearest point under the one-sided IGD+ distance.
pub fn igd_plus(points: &[ObjectiveVector], reference: &ReferenceSet) -> Result<IgdResult> {
    igd_plus_with(points, reference, IgdOptions::default())
}

pub fn igd_plus_with(
    points: &[ObjectiveVector],
    reference: &ReferenceSet,
    options: IgdOptions,
) -> Result<IgdResult> {
    classical(points, reference, igd_plus_slices, options.normalise)
}

/// nIGD: select by Euclidean distance to estimated vectors, score the true
/// vector of the selection.
pub fn n_igd(set: &SolutionSet, reference: &ReferenceSet) -> Result<IgdResult> {
    n_igd_with(set, reference, IgdOptions::default())
}

pub fn n_igd_with(
    set: &SolutionSet,
    reference: &ReferenceSet,
    options: IgdOptions,
) -> Result<IgdResult> {
    noisy(set, reference, euclidean, euclidean, options.normalise)
}

/// nIGD+: select by IGD+ distance to estimated vectors (see
/// [`SelectionDistance`]), score the IGD+ distance of the true vector.
pub fn n_igd_plus(set: &SolutionSet, reference: &ReferenceSet) -> Result<IgdResult> {
    n_igd_plus_with(set, reference, IgdOptions::default())
}

pub fn n_igd_plus_with(
    set: &SolutionSet,
    reference: &ReferenceSet,
    options: IgdOptions,
) -> Result<IgdResult> {
    let select_by = match options.selection {
        SelectionDistance::Euclidean => euclidean,
        SelectionDistance::IgdPlus => igd_plus_slices,
    };
    noisy(set, reference, select_by, igd_plus_slices, options.normalise)
}
