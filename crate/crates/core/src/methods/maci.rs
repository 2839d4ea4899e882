use super::common::{
    blend_cuts, check_dims, cuts_at, distance_ratio, finish, levels_for, project_cuts,
    reference_points,
};
use super::{
    FlankingPair, InterpolationConfig, Method, MethodError, Observation, OutputConclusion,
};

/// Relative position of the observation between the flanking antecedents,
/// measured on reference points.
pub fn maci_lambda(
    pair: &FlankingPair,
    obs: &Observation,
    cfg: &InterpolationConfig,
) -> Result<f64, MethodError> {
    check_dims(&[&pair.lower, &pair.upper], obs)?;
    let star = reference_points(&obs.sets, cfg.rp_type);
    let p1 = reference_points(&pair.lower.antecedents, cfg.rp_type);
    let p2 = reference_points(&pair.upper.antecedents, cfg.rp_type);
    distance_ratio(&star, &p1, &p2, cfg.minkowski_w)
}

/// Blends the flanking consequents' cut coordinates with the MACI λ and
/// projects the result onto a nested, non-inverted family of cuts.
pub fn maci_interpolate(
    pair: &FlankingPair,
    obs: &Observation,
    cfg: &InterpolationConfig,
) -> Result<OutputConclusion, MethodError> {
    let lambda = maci_lambda(pair, obs, cfg)?;
    let levels = levels_for(cfg, &[&pair.lower, &pair.upper], obs)?;
    let b1 = cuts_at(&pair.lower.consequent, &levels)?;
    let b2 = cuts_at(&pair.upper.consequent, &levels)?;
    let cuts = project_cuts(&blend_cuts(&b1, &b2, lambda));
    finish(Method::Maci, cuts, cfg)
}
