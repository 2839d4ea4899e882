use crate::fuzzy::{power_mean, AlphaCut, EPS};

use super::common::{
    blend_cuts, check_dims, cuts_at, distance_ratio, finish, lerp, levels_for, reference_points,
};
use super::{
    FlankingPair, InterpolationConfig, Method, MethodError, Observation, OutputConclusion,
};

/// Interpolates the core endpoints separately, then rebuilds each flank
/// from the interpolated consequent fuzziness corrected by the difference
/// in relative fuzziness between observation and interpolated antecedent.
pub fn imul_interpolate(
    pair: &FlankingPair,
    obs: &Observation,
    cfg: &InterpolationConfig,
) -> Result<OutputConclusion, MethodError> {
    let rules = [&pair.lower, &pair.upper];
    check_dims(&rules, obs)?;
    let w = cfg.minkowski_w;
    let lambda = distance_ratio(
        &reference_points(&obs.sets, cfg.rp_type),
        &reference_points(&pair.lower.antecedents, cfg.rp_type),
        &reference_points(&pair.upper.antecedents, cfg.rp_type),
        w,
    )?;

    let core_ends = |sets: &[crate::fuzzy::PiecewiseLinearFuzzySet], upper: bool| -> Vec<f64> {
        sets.iter()
            .map(|s| {
                if upper {
                    s.core().upper
                } else {
                    s.core().lower
                }
            })
            .collect()
    };
    let side_lambda = |upper: bool| -> f64 {
        distance_ratio(
            &core_ends(&obs.sets, upper),
            &core_ends(&pair.lower.antecedents, upper),
            &core_ends(&pair.upper.antecedents, upper),
            w,
        )
        .unwrap_or(lambda)
        .clamp(0.0, 1.0)
    };
    let lambda_l = side_lambda(false);
    let lambda_r = side_lambda(true);

    let b1 = pair.lower.consequent.core();
    let b2 = pair.upper.consequent.core();
    let core_lo = lerp(b1.lower, b2.lower, lambda_l);
    let core_hi = lerp(b1.upper, b2.upper, lambda_r);

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

    // fuzziness of one side relative to the cut width, 0 for a point cut
    let relative = |c: &[AlphaCut], j: usize, right: bool| -> f64 {
        let width = c[j].width();
        if width <= EPS {
            return 0.0;
        }
        let fuzz = if right {
            c[j].upper - c[top].upper
        } else {
            c[top].lower - c[j].lower
        };
        fuzz / width
    };

    let mut out = Vec::with_capacity(levels.len());
    for (j, &level) in levels.iter().enumerate() {
        if j == top {
            out.push(AlphaCut::new(level, core_lo, core_hi));
            continue;
        }
        let dev = |right: bool| -> f64 {
            let diffs: Vec<f64> = (0..a.len())
                .map(|d| (relative(&star[d], j, right) - relative(&a[d], j, right)).abs())
                .collect();
            power_mean(&diffs, w)
        };
        let left = (b[top].lower - b[j].lower) * (1.0 + dev(false));
        let right = (b[j].upper - b[top].upper) * (1.0 + dev(true));
        if !left.is_finite() || !right.is_finite() {
            return Err(MethodError::RelativeFuzzinessUndefined { level });
        }
        out.push(AlphaCut::new(level, core_lo - left, core_hi + right));
    }
    finish(Method::Imul, out, cfg)
}
