use std::path::Path;

use noisemetrics::diagnostics::{self, SelectionError};
use noisemetrics::experiment::{run_noise_sweep, ExperimentConfig};
use noisemetrics::figure::export_figure_data;
use noisemetrics::igd::{self, IgdOptions};
use noisemetrics::io::{load_reference_set, load_solution_set, load_weights};
use noisemetrics::r2::{self, count_ties};
use noisemetrics::utility::{default_ideal_point, sample_weights};
use noisemetrics::{
    true_nondominated_fraction, MetricError, ReferenceSet, SolutionSet, UtilityKind, UtilityModel,
    WeightSampleSet,
};
use serde_json::{json, Map, Value};

use crate::output::{emit, json, metrics_csv, metrics_table};
use crate::{
    CliError, ComputeArgs, DiagnoseArgs, FigureArgs, Format, Metric, SweepArgs, ValidateArgs,
    WeightArgs,
};

fn weights_for(args: &WeightArgs, dim: usize) -> Result<WeightSampleSet, CliError> {
    let weights = match &args.file {
        Some(path) => load_weights(path)?,
        None => sample_weights(dim, args.m, args.seed)?,
    };
    if weights.dim() != dim {
        return Err(MetricError::DimensionMismatch {
            expected: dim,
            found: weights.dim(),
        }
        .into());
    }
    Ok(weights)
}

fn check_reference(set: &SolutionSet, reference: &ReferenceSet) -> Result<(), CliError> {
    if reference.dimension() != set.dimension() {
        return Err(MetricError::DimensionMismatch {
            expected: set.dimension(),
            found: reference.dimension(),
        }
        .into());
    }
    Ok(())
}

/// Chebycheff ideal point shared by every indicator in one invocation: the
/// shifted minimum over true, estimated and (if given) reference vectors.
fn model_for(
    kind: UtilityKind,
    set: &SolutionSet,
    reference: Option<&ReferenceSet>,
) -> Result<UtilityModel, CliError> {
    Ok(match kind {
        UtilityKind::Linear => UtilityModel::linear(),
        UtilityKind::Chebycheff => {
            let points = set
                .solutions()
                .iter()
                .flat_map(|s| [&s.true_values, &s.estimated_values])
                .chain(reference.into_iter().flat_map(|r| r.targets()));
            UtilityModel::chebycheff(default_ideal_point(points)?)
        }
    })
}

fn kind_name(kind: UtilityKind) -> &'static str {
    match kind {
        UtilityKind::Linear => "linear",
        UtilityKind::Chebycheff => "chebycheff",
    }
}

pub fn compute(args: &ComputeArgs) -> Result<(), CliError> {
    let all = args.metric.contains(&Metric::All);
    let wants = |m: Metric| all || args.metric.contains(&m);
    let explicit_igd = args.metric.iter().any(|m| m.needs_reference());
    if explicit_igd && args.reference.is_none() {
        return Err(CliError::Usage(
            "the IGD family needs a reference set (--reference)".into(),
        ));
    }

    let set = load_solution_set(&args.solutions)?;
    let reference = args.reference.as_deref().map(load_reference_set).transpose()?;
    if let Some(r) = &reference {
        check_reference(&set, r)?;
    }
    let kind = UtilityKind::from(args.utility);
    let model = model_for(kind, &set, reference.as_ref())?;
    let needs_weights = wants(Metric::R2) || wants(Metric::Nr2) || args.audit_ties;
    let weights = if needs_weights {
        Some(weights_for(&args.weights, set.dimension())?)
    } else {
        None
    };

    let truths = set.true_values();
    let estimates = set.estimated_values();
    let mut rows: Vec<(String, f64)> = Vec::new();
    if let Some(w) = &weights {
        if wants(Metric::R2) {
            rows.push(("r2_true".into(), r2::r2(&truths, w, &model)?.value));
            rows.push(("r2_est".into(), r2::r2(&estimates, w, &model)?.value));
        }
        if wants(Metric::Nr2) {
            rows.push(("nr2".into(), r2::n_r2(&set, w, &model)?.value));
        }
        if args.audit_ties {
            rows.push(("ties_true".into(), count_ties(&truths, w, &model)? as f64));
            rows.push(("ties_est".into(), count_ties(&estimates, w, &model)? as f64));
        }
    }
    if let Some(reference) = &reference {
        let options = IgdOptions {
            normalise: args.normalise.into(),
            selection: args.nigd_plus_selection.into(),
        };
        if wants(Metric::Igd) {
            rows.push(("igd_true".into(), igd::igd_with(&truths, reference, options)?.value));
            rows.push(("igd_est".into(), igd::igd_with(&estimates, reference, options)?.value));
        }
        if wants(Metric::IgdPlus) {
            rows.push(("igd_plus_true".into(), igd::igd_plus_with(&truths, reference, options)?.value));
            rows.push(("igd_plus_est".into(), igd::igd_plus_with(&estimates, reference, options)?.value));
        }
        if wants(Metric::Nigd) {
            rows.push(("nigd".into(), igd::n_igd_with(&set, reference, options)?.value));
        }
        if wants(Metric::NigdPlus) {
            rows.push(("nigd_plus".into(), igd::n_igd_plus_with(&set, reference, options)?.value));
        }
    }
    if wants(Metric::Misinfo) {
        rows.push(("misinformation".into(), diagnostics::noise_misinformation(&set)));
    }
    if wants(Metric::Ndfrac) {
        rows.push(("nd_fraction".into(), true_nondominated_fraction(&set)));
    }

    let text = match args.format {
        Format::Json => {
            let metrics: Map<String, Value> =
                rows.iter().map(|(k, v)| (k.clone(), json!(v))).collect();
            json(&json!({
                "solutions": set.len(),
                "dimension": set.dimension(),
                "utility": kind_name(kind),
                "ideal_point": model.ideal_point.as_ref().map(|z| z.values().to_vec()),
                "weights": weights.as_ref().map(|w| w.len()),
                "metrics": metrics,
            }))
        }
        Format::Csv => metrics_csv(&rows),
        Format::Table => metrics_table(&rows),
    };
    emit(args.out.as_deref(), &text)
}

fn selection_json(set: &SolutionSet, errors: &[SelectionError]) -> Value {
    errors
        .iter()
        .map(|e| {
            json!({
                "index": e.index,
                "picked": set.id(e.picked),
                "true_best": set.id(e.true_best),
                "regret": e.regret,
            })
        })
        .collect()
}

pub fn diagnose(args: &DiagnoseArgs) -> Result<(), CliError> {
    let set = load_solution_set(&args.solutions)?;
    let reference = args.reference.as_deref().map(load_reference_set).transpose()?;
    if let Some(r) = &reference {
        check_reference(&set, r)?;
    }
    let kind = UtilityKind::from(args.utility);
    let model = model_for(kind, &set, reference.as_ref())?;
    let weights = weights_for(&args.weights, set.dimension())?;
    let report = diagnostics::diagnose(&set, &weights, &model)?;
    let distance_errors = reference
        .as_ref()
        .map(|r| diagnostics::distance_selection_errors(&set, r))
        .transpose()?;
    let regret_sum: f64 = report.selection_errors.iter().map(|e| e.regret).sum();

    let text = match args.format {
        Format::Json => json(&json!({
            "utility": kind_name(kind),
            "excluded_ids": report.excluded_ids,
            "included_ids": report.included_ids,
            "samples": report.samples,
            "selection_errors": selection_json(&set, &report.selection_errors),
            "regret_sum": regret_sum,
            "mean_regret": report.mean_regret,
            "distance_selection_errors": distance_errors.as_ref().map(|e| selection_json(&set, e)),
            "misinformation": report.misinformation,
        })),
        Format::Csv => {
            return Err(CliError::Usage("diagnose supports --format json or table".into()));
        }
        Format::Table => {
            let list = |ids: &[String]| {
                if ids.is_empty() {
                    "-".to_string()
                } else {
                    ids.join(", ")
                }
            };
            let mut out = String::new();
            out.push_str(&format!(
                "exclusion errors ({}): {}\n",
                report.excluded_ids.len(),
                list(&report.excluded_ids)
            ));
            out.push_str(&format!(
                "inclusion errors ({}): {}\n",
                report.included_ids.len(),
                list(&report.included_ids)
            ));
            out.push_str(&format!(
                "selection errors: {} of {} weight samples\n",
                report.selection_errors.len(),
                report.samples
            ));
            out.push_str(&format!("regret sum: {regret_sum:.4}\n"));
            out.push_str(&format!("mean regret (nR2 - R2 true): {:.4}\n", report.mean_regret));
            if let Some(errors) = &distance_errors {
                out.push_str(&format!("distance selection errors: {} targets\n", errors.len()));
                for e in errors {
                    out.push_str(&format!(
                        "  target {}: picked {} instead of {} (+{:.4})\n",
                        e.index,
                        set.id(e.picked),
                        set.id(e.true_best),
                        e.regret
                    ));
                }
            }
            out.push_str(&format!("misinformation: {:.4}\n", report.misinformation));
            out
        }
    };
    emit(args.out.as_deref(), &text)
}

pub fn sweep(args: &SweepArgs) -> Result<(), CliError> {
    let mut config = match &args.config {
        Some(path) => ExperimentConfig::from_json(&read(path)?)?,
        None => ExperimentConfig::default(),
    };
    if let Some(eta) = &args.eta {
        config.eta_values = eta.clone();
    }
    if let Some(reps) = args.reps {
        config.replications = reps;
    }
    if let Some(seed) = args.seed {
        config.base_seed = seed;
    }
    if let Some(m) = args.weights_m {
        config.m_weights = m;
    }
    if let Some(n) = args.n_solutions {
        config.n_solutions = n;
    }
    config.validate()?;
    let report = run_noise_sweep(&config)?;
    let text = match args.format {
        Format::Csv => report.to_csv(),
        Format::Table => report.to_table(),
        Format::Json => json(&json!({ "config": config, "rows": report.rows })),
    };
    emit(args.out.as_deref(), &text)
}

pub fn figure_data(args: &FigureArgs) -> Result<(), CliError> {
    let set = load_solution_set(&args.solutions)?;
    let reference = load_reference_set(&args.reference)?;
    check_reference(&set, &reference)?;
    let weights = weights_for(&args.weights, set.dimension())?;
    let bundle = export_figure_data(&set, &reference, &weights, None)?;
    bundle.write_to(&args.out)?;
    for file in &bundle.files {
        println!("{}", args.out.join(&file.name).display());
    }
    Ok(())
}

pub fn validate(args: &ValidateArgs) -> Result<(), CliError> {
    if args.solutions.is_none() && args.reference.is_none() && args.weights_file.is_none() {
        return Err(CliError::Usage(
            "nothing to validate; pass --solutions, --reference or --weights-file".into(),
        ));
    }
    let mut dim = None;
    let mut agree = |d: usize| -> Result<(), CliError> {
        match dim {
            Some(expected) if expected != d => Err(MetricError::DimensionMismatch {
                expected,
                found: d,
            }
            .into()),
            _ => {
                dim = Some(d);
                Ok(())
            }
        }
    };
    if let Some(path) = &args.solutions {
        let set = load_solution_set(path)?;
        agree(set.dimension())?;
        println!(
            "solutions: {} in {} objectives, {} excluded, {} included",
            set.len(),
            set.dimension(),
            diagnostics::error_by_exclusion(&set).len(),
            diagnostics::error_by_inclusion(&set).len()
        );
    }
    if let Some(path) = &args.reference {
        let reference = load_reference_set(path)?;
        agree(reference.dimension())?;
        println!(
            "reference: {} mutually non-dominated targets in {} objectives",
            reference.len(),
            reference.dimension()
        );
    }
    if let Some(path) = &args.weights_file {
        let weights = load_weights(path)?;
        agree(weights.dim())?;
        println!("weights: {} vectors in {} objectives", weights.len(), weights.dim());
    }
    Ok(())
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| MetricError::Io(format!("{}: {e}", path.display())).into())
}
