//! Noise-induced error taxonomy for a returned set: solutions wrongly
//! excluded or included by the estimated dominance relation, decision-maker
//! selection errors, and noise misinformation.
//!
//! Dominance is judged within the returned set only.

use serde::Serialize;

use crate::error::{MetricError, Result};
use crate::igd::{euclidean, nearest};
use crate::objective::{nondominated_indices, ReferenceSet, SolutionSet};
use crate::r2::{argmin_utility, resolve_for_set};
use crate::utility::{UtilityModel, WeightSampleSet};

/// A case where the decision maker, choosing on estimates, picked a solution
/// that is truly worse than the best one in the set.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SelectionError {
    /// Weight-sample index (utility view) or target index (distance view).
    pub index: usize,
    pub picked: usize,
    pub true_best: usize,
    /// Realised minus optimal utility or distance; always positive.
    pub regret: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ErrorReport {
    pub excluded_ids: Vec<String>,
    pub included_ids: Vec<String>,
    pub selection_errors: Vec<SelectionError>,
    /// Number of weight samples the selection errors were drawn from.
    pub samples: usize,
    /// Sum of regrets divided by `samples`.
    pub mean_regret: f64,
    pub misinformation: f64,
}

fn true_and_estimated_fronts(set: &SolutionSet) -> (Vec<bool>, Vec<bool>) {
    let mark = |kept: Vec<usize>| {
        let mut flags = vec![false; set.len()];
        kept.into_iter().for_each(|i| flags[i] = true);
        flags
    };
    (
        mark(nondominated_indices(set.true_slices())),
        mark(nondominated_indices(set.estimated_slices())),
    )
}

/// Ids that are truly non-dominated but whose estimates appear dominated.
pub fn error_by_exclusion(set: &SolutionSet) -> Vec<String> {
    let (truly, apparently) = true_and_estimated_fronts(set);
    (0..set.len())
        .filter(|&i| truly[i] && !apparently[i])
        .map(|i| set.id(i).to_owned())
        .collect()
}

/// Ids whose estimates appear non-dominated but that are truly dominated.
pub fn error_by_inclusion(set: &SolutionSet) -> Vec<String> {
    let (truly, apparently) = true_and_estimated_fronts(set);
    (0..set.len())
        .filter(|&i| !truly[i] && apparently[i])
        .map(|i| set.id(i).to_owned())
        .collect()
}

/// Per weight sample, compares the estimate-based pick with the truly best
/// solution. Only strictly positive regrets are reported, so the regret sum
/// divided by the sample count equals nR2 minus R2 on true values.
///
/// A Chebycheff model without an ideal point resolves it exactly as
/// [`crate::r2::n_r2`] does.
pub fn selection_errors(
    set: &SolutionSet,
    weights: &WeightSampleSet,
    model: &UtilityModel,
) -> Result<Vec<SelectionError>> {
    if weights.dim() != set.dimension() {
        return Err(MetricError::DimensionMismatch {
            expected: set.dimension(),
            found: weights.dim(),
        });
    }
    let model = resolve_for_set(model, set)?;
    let scalariser = model.scalariser(set.dimension())?;
    let mut errors = Vec::new();
    for (i, w) in weights.samples().iter().enumerate() {
        let (picked, _) = argmin_utility(set.estimated_slices(), scalariser, w.values());
        let (true_best, optimum) = argmin_utility(set.true_slices(), scalariser, w.values());
        let realised = scalariser.eval(set.solutions()[picked].true_values.values(), w.values());
        if picked != true_best && realised > optimum {
            errors.push(SelectionError {
                index: i,
                picked,
                true_best,
                regret: realised - optimum,
            });
        }
    }
    Ok(errors)
}

/// Distance view of selection errors: per reference target, the solution
/// nearest by estimate against the one nearest by true value.
pub fn distance_selection_errors(
    set: &SolutionSet,
    reference: &ReferenceSet,
) -> Result<Vec<SelectionError>> {
    if set.dimension() != reference.dimension() {
        return Err(MetricError::DimensionMismatch {
            expected: reference.dimension(),
            found: set.dimension(),
        });
    }
    let mut errors = Vec::new();
    for (i, a) in reference.targets().iter().enumerate() {
        let (picked, _) = nearest(a.values(), set.estimated_slices(), euclidean);
        let (true_best, optimum) = nearest(a.values(), set.true_slices(), euclidean);
        let realised = euclidean(a.values(), set.solutions()[picked].true_values.values());
        if picked != true_best && realised > optimum {
            errors.push(SelectionError {
                index: i,
                picked,
                true_best,
                regret: realised - optimum,
            });
        }
    }
    Ok(errors)
}

/// Mean Euclidean distance between each solution's estimate and truth.
pub fn noise_misinformation(set: &SolutionSet) -> f64 {
    let total: f64 = set
        .solutions()
        .iter()
        .map(|s| s.true_values.euclidean(&s.estimated_values))
        .sum();
    total / set.len() as f64
}

/// Collects the full taxonomy for one set under one utility model.
pub fn diagnose(
    set: &SolutionSet,
    weights: &WeightSampleSet,
    model: &UtilityModel,
) -> Result<ErrorReport> {
    let selection_errors = selection_errors(set, weights, model)?;
    let mean_regret =
        selection_errors.iter().map(|e| e.regret).sum::<f64>() / weights.len() as f64;
    Ok(ErrorReport {
        excluded_ids: error_by_exclusion(set),
        included_ids: error_by_inclusion(set),
        samples: weights.len(),
        mean_regret,
        selection_errors,
        misinformation: noise_misinformation(set),
    })
}
