use crate::fuzzy::{minkowski_distance, AlphaCut};

use super::common::{check_dims, cuts_at, finish, levels_for, reciprocal_blend};
use super::{
    FlankingPair, InterpolationConfig, Method, MethodError, Observation, OutputConclusion, RuleView,
};

/// Linear interpolation of α-cut endpoints between the flanking rules,
/// weighted by reciprocal lower and upper distances.
pub fn kh_interpolate(
    pair: &FlankingPair,
    obs: &Observation,
    cfg: &InterpolationConfig,
) -> Result<OutputConclusion, MethodError> {
    endpoint_blend(&[&pair.lower, &pair.upper], obs, cfg, 1.0, Method::Kh)
}

/// Endpoint blending over the whole rule base with weights `1 / d^N`,
/// `N` the number of inputs.
pub fn khstab_interpolate(
    rules: &[RuleView],
    obs: &Observation,
    cfg: &InterpolationConfig,
) -> Result<OutputConclusion, MethodError> {
    if rules.len() < 2 {
        return Err(MethodError::TooFewRules {
            method: Method::KhStab,
            found: rules.len(),
        });
    }
    let refs: Vec<&RuleView> = rules.iter().collect();
    endpoint_blend(&refs, obs, cfg, obs.dims() as f64, Method::KhStab)
}

fn endpoint_blend(
    rules: &[&RuleView],
    obs: &Observation,
    cfg: &InterpolationConfig,
    power: f64,
    method: Method,
) -> Result<OutputConclusion, MethodError> {
    check_dims(rules, obs)?;
    let levels = levels_for(cfg, rules, obs)?;
    let obs_cuts = obs
        .sets
        .iter()
        .map(|s| cuts_at(s, &levels))
        .collect::<Result<Vec<_>, _>>()?;
    let mut ante_cuts = Vec::with_capacity(rules.len());
    let mut cons_cuts = Vec::with_capacity(rules.len());
    for r in rules {
        ante_cuts.push(
            r.antecedents
                .iter()
                .map(|s| cuts_at(s, &levels))
                .collect::<Result<Vec<_>, _>>()?,
        );
        cons_cuts.push(cuts_at(&r.consequent, &levels)?);
    }

    let mut out = Vec::with_capacity(levels.len());
    for (j, &level) in levels.iter().enumerate() {
        let star_lo: Vec<f64> = obs_cuts.iter().map(|c| c[j].lower).collect();
        let star_hi: Vec<f64> = obs_cuts.iter().map(|c| c[j].upper).collect();
        let mut dl = Vec::with_capacity(rules.len());
        let mut du = Vec::with_capacity(rules.len());
        for a in &ante_cuts {
            let lo: Vec<f64> = a.iter().map(|c| c[j].lower).collect();
            let hi: Vec<f64> = a.iter().map(|c| c[j].upper).collect();
            dl.push(minkowski_distance(&star_lo, &lo, cfg.minkowski_w)?);
            du.push(minkowski_distance(&star_hi, &hi, cfg.minkowski_w)?);
        }
        let b_lo: Vec<f64> = cons_cuts.iter().map(|c| c[j].lower).collect();
        let b_hi: Vec<f64> = cons_cuts.iter().map(|c| c[j].upper).collect();
        out.push(AlphaCut::new(
            level,
            reciprocal_blend(&b_lo, &dl, power),
            reciprocal_blend(&b_hi, &du, power),
        ));
    }
    finish(method, out, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fuzzy::PiecewiseLinearFuzzySet as S;
    use crate::methods::select_flanking_pair;

    fn fis1() -> (Vec<RuleView>, Observation) {
        let a1 = S::triangle(5.0, 10.0, 15.0).unwrap();
        let a2 = S::triangle(37.0, 42.0, 47.0).unwrap();
        let rules = vec![
            RuleView::new(1, vec![a1.clone()], a1),
            RuleView::new(2, vec![a2.clone()], a2),
        ];
        let obs = Observation::new(vec![S::triangle(17.0, 27.0, 37.0).unwrap()]);
        (rules, obs)
    }

    #[test]
    fn kh_on_single_input_example() {
        let (rules, obs) = fis1();
        let cfg = InterpolationConfig::new(Method::Kh);
        let pair = select_flanking_pair(&rules, &obs, &cfg).unwrap();
        let out = kh_interpolate(&pair, &obs, &cfg).unwrap();
        assert!(!out.abnormal);
        assert_eq!(out.cuts[0].lower, 17.0);
        assert_eq!(out.cuts[0].upper, 37.0);
        assert_eq!(out.cuts[1].lower, 27.0);
        assert_eq!(out.cuts[1].upper, 27.0);
        assert!((out.crisp - 27.0).abs() < 1e-9);
    }

    #[test]
    fn khstab_matches_kh_with_two_rules_one_input() {
        let (rules, obs) = fis1();
        let cfg = InterpolationConfig::new(Method::Kh);
        let pair = select_flanking_pair(&rules, &obs, &cfg).unwrap();
        let a = kh_interpolate(&pair, &obs, &cfg).unwrap();
        let b = khstab_interpolate(&rules, &obs, &cfg).unwrap();
        assert_eq!(a.cuts, b.cuts);
    }

    #[test]
    fn khstab_needs_two_rules() {
        let (rules, obs) = fis1();
        let cfg = InterpolationConfig::new(Method::KhStab);
        assert!(matches!(
            khstab_interpolate(&rules[..1], &obs, &cfg),
            Err(MethodError::TooFewRules { .. })
        ));
    }
}
