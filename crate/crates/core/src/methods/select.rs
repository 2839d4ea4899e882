use crate::fuzzy::{minkowski_distance, ReferencePointKind, EPS};

use super::common::reference_points;
use super::{InterpolationConfig, MethodError, Observation, RuleView};

/// The two rules that surround an observation.
#[derive(Debug, Clone, PartialEq)]
pub struct FlankingPair {
    pub lower: RuleView,
    pub upper: RuleView,
    /// Per-dimension position of the observation's reference point between
    /// the two antecedents: `(RP* − RP1) / (RP2 − RP1)`, 0 where they coincide.
    pub lambdas: Vec<f64>,
}

/// Selects the flanking pair using the configured reference point and
/// Minkowski exponent.
pub fn select_flanking_pair(
    rules: &[RuleView],
    obs: &Observation,
    cfg: &InterpolationConfig,
) -> Result<FlankingPair, MethodError> {
    select_flanking_pair_with(rules, obs, cfg.rp_type, cfg.minkowski_w)
}

/// The lower rule is the nearest rule whose reference point lies at or below
/// the observation's in every dimension; the upper rule is the nearest at or
/// above. Ties go to the earlier rule, and the two rules always differ.
pub fn select_flanking_pair_with(
    rules: &[RuleView],
    obs: &Observation,
    kind: ReferencePointKind,
    w: f64,
) -> Result<FlankingPair, MethodError> {
    if rules.len() < 2 {
        return Err(MethodError::NotSurrounded(format!(
            "need at least 2 rules, got {}",
            rules.len()
        )));
    }
    for r in rules {
        if r.antecedents.len() != obs.dims() {
            return Err(MethodError::DimensionMismatch {
                expected: r.antecedents.len(),
                found: obs.dims(),
            });
        }
    }
    let star = reference_points(&obs.sets, kind);
    let rps: Vec<Vec<f64>> = rules
        .iter()
        .map(|r| reference_points(&r.antecedents, kind))
        .collect();
    select_by_reference_points(rules, &rps, &star, w)
}

/// Selection on precomputed reference points, one vector per rule.
pub(crate) fn select_by_reference_points(
    rules: &[RuleView],
    rps: &[Vec<f64>],
    star: &[f64],
    w: f64,
) -> Result<FlankingPair, MethodError> {
    let mut dists = Vec::with_capacity(rules.len());
    for rp in rps {
        dists.push(minkowski_distance(rp, star, w)?);
    }
    let below: Vec<bool> = rps
        .iter()
        .map(|rp| rp.iter().zip(star).all(|(r, s)| *r <= s + EPS))
        .collect();
    let above: Vec<bool> = rps
        .iter()
        .map(|rp| rp.iter().zip(star).all(|(r, s)| *r >= s - EPS))
        .collect();

    let nearest = |mask: &[bool], skip: Option<usize>| -> Option<usize> {
        let mut best: Option<usize> = None;
        for i in 0..rules.len() {
            if !mask[i] || Some(i) == skip {
                continue;
            }
            if best.is_none_or(|b| dists[i] < dists[b]) {
                best = Some(i);
            }
        }
        best
    };

    let first = nearest(&below, None).and_then(|lo| nearest(&above, Some(lo)).map(|hi| (lo, hi)));
    let pair = first.or_else(|| {
        nearest(&above, None).and_then(|hi| nearest(&below, Some(hi)).map(|lo| (lo, hi)))
    });
    let (lo, hi) = pair.ok_or_else(|| {
        MethodError::NotSurrounded(format!(
            "no rule pair brackets the observation's reference point {star:?}"
        ))
    })?;

    let lambdas = star
        .iter()
        .zip(&rps[lo])
        .zip(&rps[hi])
        .map(|((s, a), b)| {
            let den = b - a;
            if den.abs() <= EPS {
                0.0
            } else {
                (s - a) / den
            }
        })
        .collect();
    Ok(FlankingPair {
        lower: rules[lo].clone(),
        upper: rules[hi].clone(),
        lambdas,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fuzzy::PiecewiseLinearFuzzySet as S;

    fn tri_rule(i: usize, c: f64) -> RuleView {
        RuleView::new(
            i,
            vec![S::triangle(c - 5.0, c, c + 5.0).unwrap()],
            S::triangle(c - 5.0, c, c + 5.0).unwrap(),
        )
    }

    #[test]
    fn picks_nearest_bracketing_rules() {
        let rules = vec![tri_rule(1, 10.0), tri_rule(2, 42.0), tri_rule(3, 30.0)];
        let obs = Observation::new(vec![S::triangle(17.0, 27.0, 37.0).unwrap()]);
        let p =
            select_flanking_pair_with(&rules, &obs, ReferencePointKind::CoreCentre, 2.0).unwrap();
        assert_eq!(p.lower.index, 1);
        assert_eq!(p.upper.index, 3);
        assert!((p.lambdas[0] - 17.0 / 20.0).abs() < 1e-12);
    }

    #[test]
    fn outside_is_not_surrounded() {
        let rules = vec![tri_rule(1, 10.0), tri_rule(2, 42.0)];
        let obs = Observation::new(vec![S::triangle(40.0, 50.0, 60.0).unwrap()]);
        assert!(matches!(
            select_flanking_pair_with(&rules, &obs, ReferencePointKind::CoreCentre, 2.0),
            Err(MethodError::NotSurrounded(_))
        ));
    }

    #[test]
    fn observation_on_a_rule_still_gets_two_rules() {
        let rules = vec![tri_rule(1, 10.0), tri_rule(2, 42.0)];
        let obs = Observation::new(vec![S::triangle(37.0, 42.0, 47.0).unwrap()]);
        let p =
            select_flanking_pair_with(&rules, &obs, ReferencePointKind::CoreCentre, 2.0).unwrap();
        assert_eq!((p.lower.index, p.upper.index), (1, 2));
        assert_eq!(p.lambdas, vec![1.0]);
    }
}
