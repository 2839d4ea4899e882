use rayon::prelude::*;

use crate::fis::{FisDocument, ObsDocument};
use crate::fuzzy::EPS;

use super::{
    crf_interpolate, gm_interpolate, imul_interpolate, kh_interpolate, khstab_interpolate,
    maci_interpolate, scalemove_interpolate, select_flanking_pair, vkk_interpolate, Conclusion,
    InterpolationConfig, Method, MethodError, Observation, OutputConclusion, RuleView,
};

pub fn observation_from(obs: &ObsDocument) -> Result<Observation, MethodError> {
    let sets = obs
        .observations
        .iter()
        .map(|d| d.to_fuzzy_set().map_err(MethodError::from))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Observation::new(sets))
}

/// Resolves the rules concluding on output `output` (0-based). Rules whose
/// consequent index for that output is 0 are skipped; an antecedent index
/// of 0 is an error.
pub fn rule_views(fis: &FisDocument, output: usize) -> Result<Vec<RuleView>, MethodError> {
    let var = &fis.outputs[output];
    let mut views = Vec::with_capacity(fis.rules.len());
    for (i, rule) in fis.rules.iter().enumerate() {
        let cons = rule.consequents[output];
        if cons == 0 {
            continue;
        }
        let mut antecedents = Vec::with_capacity(rule.antecedents.len());
        for (d, &a) in rule.antecedents.iter().enumerate() {
            if a == 0 {
                return Err(MethodError::IncompleteAntecedent { rule: i + 1 });
            }
            antecedents.push(fis.inputs[d].mfs[a - 1].to_fuzzy_set()?);
        }
        views.push(RuleView {
            index: i + 1,
            antecedents,
            consequent: var.mfs[cons - 1].to_fuzzy_set()?,
            weight: rule.weight,
        });
    }
    Ok(views)
}

/// Runs the configured method on one rule base for one output.
pub fn interpolate(
    rules: &[RuleView],
    obs: &Observation,
    cfg: &InterpolationConfig,
) -> Result<OutputConclusion, MethodError> {
    cfg.validate()?;
    match cfg.method {
        Method::KhStab => khstab_interpolate(rules, obs, cfg),
        Method::ScaleMove => scalemove_interpolate(rules, obs, cfg),
        m => {
            let pair = select_flanking_pair(rules, obs, cfg)?;
            match m {
                Method::Kh => kh_interpolate(&pair, obs, cfg),
                Method::Vkk => vkk_interpolate(&pair, obs, cfg),
                Method::Maci => maci_interpolate(&pair, obs, cfg),
                Method::Crf => crf_interpolate(&pair, obs, cfg),
                Method::Imul => imul_interpolate(&pair, obs, cfg),
                Method::Gm => gm_interpolate(&pair, obs, cfg),
                Method::KhStab | Method::ScaleMove => unreachable!(),
            }
        }
    }
}

/// Interpolates a conclusion for every output of `fis`.
pub fn evaluate(
    fis: &FisDocument,
    obs: &ObsDocument,
    cfg: &InterpolationConfig,
) -> Result<Conclusion, MethodError> {
    cfg.validate()?;
    if obs.num_inputs != fis.num_inputs || obs.observations.len() != fis.num_inputs {
        return Err(MethodError::DimensionMismatch {
            expected: fis.num_inputs,
            found: obs.observations.len(),
        });
    }
    let observation = observation_from(obs)?;
    let mut diagnostics = Vec::new();
    for (i, r) in fis.rules.iter().enumerate() {
        if (r.weight - 1.0).abs() > EPS {
            diagnostics.push(format!(
                "rule {} has weight {}; rule weights are ignored by interpolation",
                i + 1,
                r.weight
            ));
        }
    }

    let mut outputs = Vec::with_capacity(fis.outputs.len());
    for (k, var) in fis.outputs.iter().enumerate() {
        let result = rule_views(fis, k).and_then(|views| interpolate(&views, &observation, cfg));
        let mut out = match result {
            Ok(o) => o,
            Err(e) if fis.outputs.len() > 1 => {
                return Err(MethodError::InOutput {
                    output: var.name.clone(),
                    source: Box::new(e),
                })
            }
            Err(e) => return Err(e),
        };
        let (lo, hi) = var.range;
        if out.crisp < lo - EPS || out.crisp > hi + EPS {
            out.diagnostics.push(format!(
                "crisp value {} lies outside the range [{lo}, {hi}] of output '{}'",
                out.crisp, var.name
            ));
        }
        out.fuzzy = out.fuzzy.with_label(format!("{}*", var.name));
        outputs.push(out);
    }
    Ok(Conclusion {
        method: cfg.method,
        outputs,
        diagnostics,
    })
}

/// Evaluates every observation in parallel; results keep the input order.
pub fn evaluate_batch(
    fis: &FisDocument,
    observations: &[ObsDocument],
    cfg: &InterpolationConfig,
) -> Vec<Result<Conclusion, MethodError>> {
    observations
        .par_iter()
        .map(|obs| evaluate(fis, obs, cfg))
        .collect()
}
