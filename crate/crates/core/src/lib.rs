//! Quality indicators for multi-objective optimisation under noisy
//! evaluation.
//!
//! An optimiser returns a set of solutions with *estimated* objective vectors
//! while their *true* vectors are known to the benchmark. Classical
//! indicators (R2, IGD, IGD+) look at one of the two. The noise-aware
//! variants (nR2, nIGD, nIGD+) simulate a decision maker who chooses on the
//! estimates and is charged the true quality of that choice.
//!
//! ```
//! use noisemetrics::{ObjectiveVector, SolutionSet, ReferenceSet};
//! use noisemetrics::igd::n_igd;
//!
//! let v = |x: &[f64]| ObjectiveVector::new(x.to_vec()).unwrap();
//! let set = SolutionSet::from_pairs(
//!     vec![v(&[0.0, 2.0]), v(&[5.0, 5.0])],
//!     vec![v(&[3.0, 3.0]), v(&[1.0, 1.0])],
//! ).unwrap();
//! let reference = ReferenceSet::new(vec![v(&[0.0, 0.0])]).unwrap();
//! let res = n_igd(&set, &reference).unwrap();
//! assert_eq!(res.per_target[0].selected, 1);
//! assert!((res.value - 50f64.sqrt()).abs() < 1e-12);
//! ```
//!
//! All objectives are minimised.

pub mod diagnostics;
pub mod error;
pub mod experiment;
pub mod figure;
pub mod igd;
pub mod io;
pub mod objective;
pub mod r2;
pub mod utility;

pub use error::{ErrorKind, MetricError, Result};
pub use objective::{
    dominates, nondominated_filter, true_nondominated_fraction, EvaluatedSolution,
    ObjectiveVector, ReferenceSet, SolutionSet,
};
pub use utility::{UtilityKind, UtilityModel, WeightSampleSet, WeightVector};
