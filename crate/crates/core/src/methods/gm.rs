use crate::fuzzy::{set_from_alpha_cuts, AlphaCut, PiecewiseLinearFuzzySet, EPS};

use super::common::{
    blend_cuts, check_dims, cuts_at, distance_ratio, finish, lerp, levels_for, reference_points,
    widen_to_nest,
};
use super::{
    FlankingPair, InterpolationConfig, Method, MethodError, Observation, OutputConclusion,
};

/// Singletons, triangles and trapezoids: at most 4 breakpoints, all with
/// membership 0 or 1.
pub(crate) fn check_basic_shape(
    set: &PiecewiseLinearFuzzySet,
    method: Method,
) -> Result<(), MethodError> {
    let ok = set.points().len() <= 4 && set.points().iter().all(|p| p.1 <= EPS || p.1 >= 1.0 - EPS);
    if ok {
        Ok(())
    } else {
        Err(MethodError::UnsupportedShape {
            method,
            label: set.label().to_string(),
        })
    }
}

struct Intermediate {
    levels: Vec<f64>,
    antecedents: Vec<Vec<AlphaCut>>,
    consequent: Vec<AlphaCut>,
    /// Reference points of the observation, of each `Ã_d` and of `B̃`.
    star_rp: Vec<f64>,
    ante_rp: Vec<f64>,
    cons_rp: f64,
}

fn intermediate(
    pair: &FlankingPair,
    obs: &Observation,
    cfg: &InterpolationConfig,
) -> Result<Intermediate, MethodError> {
    let rules = [&pair.lower, &pair.upper];
    check_dims(&rules, obs)?;
    for s in obs.sets.iter().chain(
        rules
            .iter()
            .flat_map(|r| r.antecedents.iter().chain([&r.consequent])),
    ) {
        check_basic_shape(s, Method::Gm)?;
    }
    let star = reference_points(&obs.sets, cfg.rp_type);
    let p1 = reference_points(&pair.lower.antecedents, cfg.rp_type);
    let p2 = reference_points(&pair.upper.antecedents, cfg.rp_type);
    let lambda_b = distance_ratio(&star, &p1, &p2, cfg.minkowski_w)?;
    let levels = levels_for(cfg, &rules, obs)?;

    let mut antecedents = Vec::with_capacity(obs.dims());
    let mut ante_rp = Vec::with_capacity(obs.dims());
    for d in 0..obs.dims() {
        let lambda_d = distance_ratio(&star[d..=d], &p1[d..=d], &p2[d..=d], 1.0)?;
        ante_rp.push(lerp(p1[d], p2[d], lambda_d));
        antecedents.push(blend_cuts(
            &cuts_at(&pair.lower.antecedents[d], &levels)?,
            &cuts_at(&pair.upper.antecedents[d], &levels)?,
            lambda_d,
        ));
    }
    let consequent = blend_cuts(
        &cuts_at(&pair.lower.consequent, &levels)?,
        &cuts_at(&pair.upper.consequent, &levels)?,
        lambda_b,
    );
    let cons_rp = lerp(
        pair.lower.consequent.representative_value(cfg.rp_type),
        pair.upper.consequent.representative_value(cfg.rp_type),
        lambda_b,
    );
    Ok(Intermediate {
        levels,
        antecedents,
        consequent,
        star_rp: star,
        ante_rp,
        cons_rp,
    })
}

/// The intermediate rule `Ã ⇒ B̃` built from the flanking pair, one
/// antecedent per input.
pub fn gm_interpolated_rule(
    pair: &FlankingPair,
    obs: &Observation,
    cfg: &InterpolationConfig,
) -> Result<(Vec<PiecewiseLinearFuzzySet>, PiecewiseLinearFuzzySet), MethodError> {
    let im = intermediate(pair, obs, cfg)?;
    let ante = im
        .antecedents
        .iter()
        .map(|c| set_from_alpha_cuts(c).map(|a| a.set))
        .collect::<Result<Vec<_>, _>>()?;
    let cons = set_from_alpha_cuts(&im.consequent)?.set;
    Ok((ante, cons))
}

/// Signed offset of a conclusion endpoint from `B̃`'s reference point:
/// `B̃`'s offset scaled by the observation's offset relative to `Ã`'s.
/// Where `Ã` has no offset the difference is added instead.
fn transfer(b_off: f64, a_off: f64, star_off: f64) -> f64 {
    if a_off.abs() <= EPS {
        b_off + (star_off - a_off)
    } else {
        b_off * star_off / a_off
    }
}

/// Builds the intermediate rule, then carries the observation's shape over
/// to the intermediate consequent: at every α level each cut endpoint keeps
/// its relative offset from the reference point, which stays fixed. Cuts
/// that end up non-nested are widened to contain the cut above them.
pub fn gm_interpolate(
    pair: &FlankingPair,
    obs: &Observation,
    cfg: &InterpolationConfig,
) -> Result<OutputConclusion, MethodError> {
    let im = intermediate(pair, obs, cfg)?;
    let star = obs
        .sets
        .iter()
        .map(|s| cuts_at(s, &im.levels))
        .collect::<Result<Vec<_>, _>>()?;
    let n = obs.dims() as f64;
    let cuts: Vec<AlphaCut> = im
        .levels
        .iter()
        .enumerate()
        .map(|(j, &level)| {
            let b = &im.consequent[j];
            let (bl, bu) = (b.lower - im.cons_rp, b.upper - im.cons_rp);
            let mut lower = 0.0;
            let mut upper = 0.0;
            for (d, star_cuts) in star.iter().enumerate() {
                let a = &im.antecedents[d][j];
                let s = &star_cuts[j];
                let (ra, rs) = (im.ante_rp[d], im.star_rp[d]);
                lower += transfer(bl, a.lower - ra, s.lower - rs);
                upper += transfer(bu, a.upper - ra, s.upper - rs);
            }
            AlphaCut::new(level, im.cons_rp + lower / n, im.cons_rp + upper / n)
        })
        .collect();
    finish(Method::Gm, widen_to_nest(&cuts), cfg)
}
