use crate::fuzzy::{
    cog_defuzzify, cog_from_samples, generate_levels, minkowski_distance, set_from_alpha_cuts,
    AlphaCut, PiecewiseLinearFuzzySet, ReferencePointKind, EPS,
};

use super::{InterpolationConfig, Method, MethodError, Observation, OutputConclusion, RuleView};

/// Distances at or below this count as coincidence in reciprocal weighting.
pub(crate) const ZERO_DISTANCE: f64 = 1e-12;

pub(crate) fn check_dims(rules: &[&RuleView], obs: &Observation) -> Result<(), MethodError> {
    for r in rules {
        if r.antecedents.len() != obs.dims() {
            return Err(MethodError::DimensionMismatch {
                expected: r.antecedents.len(),
                found: obs.dims(),
            });
        }
    }
    Ok(())
}

/// Levels from the configured scheme over the observation and every set of
/// the given rules.
pub(crate) fn levels_for(
    cfg: &InterpolationConfig,
    rules: &[&RuleView],
    obs: &Observation,
) -> Result<Vec<f64>, MethodError> {
    let sets = obs.sets.iter().chain(
        rules
            .iter()
            .flat_map(|r| r.antecedents.iter().chain(std::iter::once(&r.consequent))),
    );
    Ok(generate_levels(cfg.alpha_levels, sets)?)
}

pub(crate) fn cuts_at(
    set: &PiecewiseLinearFuzzySet,
    levels: &[f64],
) -> Result<Vec<AlphaCut>, MethodError> {
    levels
        .iter()
        .map(|&l| set.alpha_cut(l).map_err(MethodError::from))
        .collect()
}

/// `Σ v_i / d_i^p / Σ 1 / d_i^p`. A zero distance returns the value at that
/// distance (the mean when several coincide).
pub(crate) fn reciprocal_blend(values: &[f64], dists: &[f64], power: f64) -> f64 {
    let zeros: Vec<f64> = values
        .iter()
        .zip(dists)
        .filter(|(_, &d)| d <= ZERO_DISTANCE)
        .map(|(&v, _)| v)
        .collect();
    if !zeros.is_empty() {
        return zeros.iter().sum::<f64>() / zeros.len() as f64;
    }
    let mut num = 0.0;
    let mut den = 0.0;
    for (&v, &d) in values.iter().zip(dists) {
        let wgt = d.powf(-power);
        num += v * wgt;
        den += wgt;
    }
    num / den
}

pub(crate) fn lerp(a: f64, b: f64, t: f64) -> f64 {
    a + t * (b - a)
}

pub(crate) fn blend_cut(a: &AlphaCut, b: &AlphaCut, t: f64) -> AlphaCut {
    AlphaCut::new(
        a.level,
        lerp(a.lower, b.lower, t),
        lerp(a.upper, b.upper, t),
    )
}

pub(crate) fn blend_cuts(a: &[AlphaCut], b: &[AlphaCut], t: f64) -> Vec<AlphaCut> {
    a.iter().zip(b).map(|(x, y)| blend_cut(x, y, t)).collect()
}

pub(crate) fn reference_points(
    sets: &[PiecewiseLinearFuzzySet],
    kind: ReferencePointKind,
) -> Vec<f64> {
    sets.iter().map(|s| s.representative_value(kind)).collect()
}

/// `‖p − p1‖ / ‖p2 − p1‖`. Coincident `p1`, `p2` give 0 when `p` coincides
/// too and an error otherwise.
pub(crate) fn distance_ratio(
    p: &[f64],
    p1: &[f64],
    p2: &[f64],
    w: f64,
) -> Result<f64, MethodError> {
    let num = minkowski_distance(p, p1, w)?;
    let den = minkowski_distance(p2, p1, w)?;
    if den <= EPS {
        if num <= EPS {
            return Ok(0.0);
        }
        return Err(MethodError::Degenerate(
            "flanking rules share a reference point that differs from the observation's".into(),
        ));
    }
    Ok(num / den)
}

/// `num / den` with `0 / 0 = 1`; `None` for a non-zero numerator over zero.
pub(crate) fn ratio_or_one(num: f64, den: f64) -> Option<f64> {
    if den.abs() <= EPS {
        (num.abs() <= EPS).then_some(1.0)
    } else {
        Some(num / den)
    }
}

/// Least-squares projection onto non-decreasing sequences (pool adjacent
/// violators, unit weights).
pub(crate) fn isotonic(values: &mut [f64]) {
    let mut blocks: Vec<(f64, usize)> = Vec::with_capacity(values.len());
    for &v in values.iter() {
        blocks.push((v, 1));
        while blocks.len() > 1 {
            let (m2, n2) = blocks[blocks.len() - 1];
            let (m1, n1) = blocks[blocks.len() - 2];
            if m1 <= m2 {
                break;
            }
            blocks.pop();
            let n = n1 + n2;
            *blocks.last_mut().unwrap() = ((m1 * n1 as f64 + m2 * n2 as f64) / n as f64, n);
        }
    }
    let mut i = 0;
    for (m, n) in blocks {
        for v in &mut values[i..i + n] {
            *v = m;
        }
        i += n;
    }
}

/// Projects cut endpoints onto the nearest nested, non-inverted family:
/// `[L_0 .. L_m, R_m .. R_0]` is made non-decreasing.
pub(crate) fn project_cuts(cuts: &[AlphaCut]) -> Vec<AlphaCut> {
    let m = cuts.len();
    let mut seq: Vec<f64> = cuts.iter().map(|c| c.lower).collect();
    seq.extend(cuts.iter().rev().map(|c| c.upper));
    isotonic(&mut seq);
    cuts.iter()
        .enumerate()
        .map(|(i, c)| AlphaCut::new(c.level, seq[i], seq[2 * m - 1 - i]))
        .collect()
}

/// Restores nesting by widening every cut to contain the cut above it,
/// leaving the top cut unchanged. Falls back to [`project_cuts`] when the
/// top cut is inverted.
pub(crate) fn widen_to_nest(cuts: &[AlphaCut]) -> Vec<AlphaCut> {
    match cuts.last() {
        Some(top) if top.lower > top.upper + EPS => return project_cuts(cuts),
        None => return Vec::new(),
        _ => {}
    }
    let mut out = cuts.to_vec();
    for j in (0..out.len().saturating_sub(1)).rev() {
        out[j].lower = out[j].lower.min(out[j + 1].lower);
        out[j].upper = out[j].upper.max(out[j + 1].upper);
    }
    out
}

/// Assembles the conclusion and defuzzifies it.
pub(crate) fn finish(
    method: Method,
    cuts: Vec<AlphaCut>,
    cfg: &InterpolationConfig,
) -> Result<OutputConclusion, MethodError> {
    if cuts
        .iter()
        .any(|c| !c.lower.is_finite() || !c.upper.is_finite())
    {
        return Err(MethodError::Degenerate(format!(
            "{method} produced a non-finite α-cut endpoint"
        )));
    }
    let assembled = set_from_alpha_cuts(&cuts)?;
    let mut diagnostics = Vec::new();
    let crisp = if assembled.abnormal {
        diagnostics.push(format!(
            "{method} conclusion is abnormal (inverted or non-nested α-cuts)"
        ));
        cog_from_samples(assembled.set.points())
            .filter(|c| c.is_finite())
            .unwrap_or_else(|| cuts.last().map(AlphaCut::midpoint).unwrap_or(f64::NAN))
    } else {
        cog_defuzzify(&assembled.set, cfg.num_points)?
    };
    Ok(OutputConclusion {
        fuzzy: assembled.set,
        cuts,
        crisp,
        abnormal: assembled.abnormal,
        diagnostics,
    })
}
