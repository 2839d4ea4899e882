use crate::fuzzy::{power_mean, AlphaCut, ReferencePointKind};

use super::common::{
    blend_cuts, check_dims, cuts_at, distance_ratio, finish, lerp, levels_for, ratio_or_one,
    reference_points,
};
use super::{
    FlankingPair, InterpolationConfig, Method, MethodError, Observation, OutputConclusion,
};

/// Conserves relative fuzziness: the conclusion's core width and the left
/// and right fuzziness at every level keep the observation's proportion to
/// the interpolated antecedent.
pub fn crf_interpolate(
    pair: &FlankingPair,
    obs: &Observation,
    cfg: &InterpolationConfig,
) -> Result<OutputConclusion, MethodError> {
    let rules = [&pair.lower, &pair.upper];
    check_dims(&rules, obs)?;
    let kind = ReferencePointKind::CoreCentre;
    let lambda = distance_ratio(
        &reference_points(&obs.sets, kind),
        &reference_points(&pair.lower.antecedents, kind),
        &reference_points(&pair.upper.antecedents, kind),
        cfg.minkowski_w,
    )?;
    let levels = levels_for(cfg, &rules, obs)?;
    let top = levels.len() - 1;

    let b = blend_cuts(
        &cuts_at(&pair.lower.consequent, &levels)?,
        &cuts_at(&pair.upper.consequent, &levels)?,
        lambda,
    );
    let mut a = Vec::with_capacity(obs.dims());
    let mut star = Vec::with_capacity(obs.dims());
    for d in 0..obs.dims() {
        a.push(blend_cuts(
            &cuts_at(&pair.lower.antecedents[d], &levels)?,
            &cuts_at(&pair.upper.antecedents[d], &levels)?,
            lambda,
        ));
        star.push(cuts_at(&obs.sets[d], &levels)?);
    }

    let aggregate = |level: f64, f: &dyn Fn(&[AlphaCut]) -> f64| -> Result<f64, MethodError> {
        let mut ratios = Vec::with_capacity(a.len());
        for d in 0..a.len() {
            let r = ratio_or_one(f(&star[d]), f(&a[d]))
                .ok_or(MethodError::RelativeFuzzinessUndefined { level })?;
            ratios.push(r);
        }
        Ok(power_mean(&ratios, cfg.minkowski_w))
    };

    let centre = lerp(
        pair.lower.consequent.core().midpoint(),
        pair.upper.consequent.core().midpoint(),
        lambda,
    );
    let core_w = b[top].width() * aggregate(1.0, &|c| c[top].width())?;
    let core_lo = centre - 0.5 * core_w;
    let core_hi = centre + 0.5 * core_w;

    let mut out = Vec::with_capacity(levels.len());
    for (j, &level) in levels.iter().enumerate() {
        if j == top {
            out.push(AlphaCut::new(level, core_lo, core_hi));
            continue;
        }
        let left = (b[top].lower - b[j].lower) * aggregate(level, &|c| c[top].lower - c[j].lower)?;
        let right = (b[j].upper - b[top].upper) * aggregate(level, &|c| c[j].upper - c[top].upper)?;
        out.push(AlphaCut::new(level, core_lo - left, core_hi + right));
    }
    finish(Method::Crf, out, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fuzzy::PiecewiseLinearFuzzySet as S;
    use crate::methods::{select_flanking_pair, RuleView};

    #[test]
    fn crf_single_input_example() {
        let a1 = S::triangle(5.0, 10.0, 15.0).unwrap();
        let a2 = S::triangle(37.0, 42.0, 47.0).unwrap();
        let rules = vec![
            RuleView::new(1, vec![a1.clone()], a1),
            RuleView::new(2, vec![a2.clone()], a2),
        ];
        let obs = Observation::new(vec![S::triangle(17.0, 27.0, 37.0).unwrap()]);
        let cfg = InterpolationConfig::new(Method::Crf);
        let pair = select_flanking_pair(&rules, &obs, &cfg).unwrap();
        let out = crf_interpolate(&pair, &obs, &cfg).unwrap();
        // λ = 17/32, core at 27, flanks doubled like the observation's
        assert!((out.cuts[0].lower - 17.0).abs() < 1e-9);
        assert!((out.cuts[0].upper - 37.0).abs() < 1e-9);
        assert!((out.cuts[1].lower - 27.0).abs() < 1e-9);
    }

    #[test]
    fn crisp_antecedent_with_fuzzy_observation_errors() {
        let rules = vec![
            RuleView::new(
                1,
                vec![S::singleton(0.0).unwrap()],
                S::triangle(0.0, 1.0, 2.0).unwrap(),
            ),
            RuleView::new(
                2,
                vec![S::singleton(20.0).unwrap()],
                S::triangle(10.0, 11.0, 12.0).unwrap(),
            ),
        ];
        let obs = Observation::new(vec![S::triangle(8.0, 10.0, 12.0).unwrap()]);
        let cfg = InterpolationConfig::new(Method::Crf);
        let pair = select_flanking_pair(&rules, &obs, &cfg).unwrap();
        assert!(matches!(
            crf_interpolate(&pair, &obs, &cfg),
            Err(MethodError::RelativeFuzzinessUndefined { .. })
        ));
    }
}
