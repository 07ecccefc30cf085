//! Cross-check of the oracle's valid runs against the decoded stable models.

use std::collections::{BTreeSet, HashSet};

use serde::Serialize;

use super::{build_edb, model_to_run, run_to_model, EncodingError, EncodingInstance};
use crate::logic::{GroundAtom, GroundProgram};
use crate::solver::{enumerate_stable_models, ModelSet, SolveLimits};
use crate::text::format_run;
use crate::turing::{enumerate_valid_runs, is_valid_run, Machine, Run, RuntimePolynomial, SymbolId, DEFAULT_RUN_BOUND};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BijectionReport {
    pub runs: usize,
    pub models: usize,
    pub bijection: bool,
    pub counterexample: Option<String>,
}

/// Enumerates the valid runs with the oracle and the stable models of the
/// relationally grounded program, then compares them.
pub fn verify_bijection(
    m: &Machine,
    p: &RuntimePolynomial,
    input: &[SymbolId],
) -> Result<BijectionReport, EncodingError> {
    let inst = build_edb(m, p, input)?;
    let runs = enumerate_valid_runs(inst.machine(), p, input, DEFAULT_RUN_BOUND)?;
    let pg = inst.ground()?;
    let models = enumerate_stable_models(&pg, SolveLimits::unlimited());
    Ok(compare_runs_and_models(&inst, &runs, &pg, &models))
}

/// Checks that decoding is a bijection from `models` onto `runs`: every model
/// decodes to a valid run, the decoded set equals the oracle's set, and both
/// round trips are identities.
pub fn compare_runs_and_models(
    inst: &EncodingInstance,
    runs: &[Run],
    pg: &GroundProgram,
    models: &ModelSet,
) -> BijectionReport {
    let counterexample = find_counterexample(inst, runs, pg, models).err();
    BijectionReport { runs: runs.len(), models: models.len(), bijection: counterexample.is_none(), counterexample }
}

fn find_counterexample(
    inst: &EncodingInstance,
    runs: &[Run],
    pg: &GroundProgram,
    models: &ModelSet,
) -> Result<(), String> {
    let m = inst.machine();
    if !models.complete {
        return Err("stable model enumeration was cut short".into());
    }
    let symbolic: Vec<BTreeSet<GroundAtom>> = models.models.iter().map(|s| pg.to_symbolic(s)).collect();
    let mut decoded = BTreeSet::new();
    for (k, s) in symbolic.iter().enumerate() {
        let run = model_to_run(inst, s).map_err(|e| format!("stable model {} does not decode: {e}", k + 1))?;
        if !is_valid_run(m, inst.poly(), inst.input(), &run) {
            return Err(format!("stable model {} decodes to an invalid run:\n{}", k + 1, format_run(m, &run)));
        }
        let back = run_to_model(inst, &run).map_err(|e| format!("stable model {} round trip failed: {e}", k + 1))?;
        if back != *s {
            return Err(format!(
                "stable model {} is not the model of its decoded run:\n{}",
                k + 1,
                format_run(m, &run)
            ));
        }
        decoded.insert(run);
    }
    if decoded.len() != symbolic.len() {
        return Err("two stable models decode to the same run".into());
    }
    let oracle: BTreeSet<Run> = runs.iter().cloned().collect();
    if let Some(r) = oracle.difference(&decoded).next() {
        return Err(format!("valid run without a stable model:\n{}", format_run(m, r)));
    }
    if let Some(r) = decoded.difference(&oracle).next() {
        return Err(format!("stable model whose run the oracle does not list:\n{}", format_run(m, r)));
    }
    let known: HashSet<&BTreeSet<GroundAtom>> = symbolic.iter().collect();
    let mut images = HashSet::new();
    for r in &oracle {
        let model = run_to_model(inst, r).map_err(|e| format!("{e}:\n{}", format_run(m, r)))?;
        if !known.contains(&model) {
            return Err(format!("the model of this run is not among the stable models:\n{}", format_run(m, r)));
        }
        if model_to_run(inst, &model).as_ref() != Ok(r) {
            return Err(format!("run does not survive the round trip:\n{}", format_run(m, r)));
        }
        if !images.insert(model) {
            return Err(format!("two runs share a model:\n{}", format_run(m, r)));
        }
    }
    Ok(())
}
