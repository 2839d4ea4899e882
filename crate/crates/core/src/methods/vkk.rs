use crate::fuzzy::{minkowski_distance, power_mean, AlphaCut};

use super::common::{check_dims, cuts_at, finish, levels_for, ratio_or_one, reciprocal_blend};
use super::{
    FlankingPair, InterpolationConfig, Method, MethodError, Observation, OutputConclusion,
};

/// Interpolates α-cut centres by reciprocal centre distance and scales the
/// interpolated consequent width by the observation's relative width.
pub fn vkk_interpolate(
    pair: &FlankingPair,
    obs: &Observation,
    cfg: &InterpolationConfig,
) -> Result<OutputConclusion, MethodError> {
    let rules = [&pair.lower, &pair.upper];
    check_dims(&rules, obs)?;
    let levels = levels_for(cfg, &rules, obs)?;
    let obs_cuts = obs
        .sets
        .iter()
        .map(|s| cuts_at(s, &levels))
        .collect::<Result<Vec<_>, _>>()?;
    let mut ante = Vec::new();
    let mut cons = Vec::new();
    for r in rules {
        ante.push(
            r.antecedents
                .iter()
                .map(|s| cuts_at(s, &levels))
                .collect::<Result<Vec<_>, _>>()?,
        );
        cons.push(cuts_at(&r.consequent, &levels)?);
    }

    let mut out = Vec::with_capacity(levels.len());
    for (j, &level) in levels.iter().enumerate() {
        let star_c: Vec<f64> = obs_cuts.iter().map(|c| c[j].midpoint()).collect();
        let mut dc = Vec::with_capacity(2);
        for a in &ante {
            let c: Vec<f64> = a.iter().map(|c| c[j].midpoint()).collect();
            dc.push(minkowski_distance(&star_c, &c, cfg.minkowski_w)?);
        }
        let centre = reciprocal_blend(&[cons[0][j].midpoint(), cons[1][j].midpoint()], &dc, 1.0);
        let width_b = reciprocal_blend(&[cons[0][j].width(), cons[1][j].width()], &dc, 1.0);
        let mut ratios = Vec::with_capacity(obs.dims());
        for d in 0..obs.dims() {
            let width_a =
                reciprocal_blend(&[ante[0][d][j].width(), ante[1][d][j].width()], &dc, 1.0);
            let r = ratio_or_one(obs_cuts[d][j].width(), width_a)
                .ok_or(MethodError::WidthRatioUndefined { level })?;
            ratios.push(r);
        }
        let half = 0.5 * width_b * power_mean(&ratios, cfg.minkowski_w);
        out.push(AlphaCut::new(level, centre - half, centre + half));
    }
    finish(Method::Vkk, out, cfg)
}
