use crate::fuzzy::{AlphaCut, PiecewiseLinearFuzzySet, EPS};

use super::common::{check_dims, finish, lerp, levels_for};
use super::gm::check_basic_shape;
use super::select::select_by_reference_points;
use super::{InterpolationConfig, Method, MethodError, Observation, OutputConclusion, RuleView};

/// Intermediate quantities of a scale-and-move interpolation.
#[derive(Debug, Clone, PartialEq)]
pub struct ScaleMoveTrace {
    /// 1-based indices of the flanking rules.
    pub lower: usize,
    pub upper: usize,
    /// Per-input position of the observation's representative value
    /// between the flanking antecedents.
    pub lambdas: Vec<f64>,
    /// Mean of `lambdas`, used for the consequent.
    pub lambda: f64,
    /// Whether every set of the rule base and the observation is triangular
    /// (zero core width).
    pub triangular: bool,
    /// Blended consequent `B0` as `[left, core left, core right, right]`.
    pub intermediate_consequent: [f64; 4],
    /// Transformed conclusion as `[left, core left, core right, right]`.
    pub consequent: [f64; 4],
    /// Representative value shared by `B0` and the conclusion.
    pub rep: f64,
}

type Quad = [f64; 4];

fn quad(set: &PiecewiseLinearFuzzySet) -> Quad {
    let s = set.support();
    let c = set.core();
    [s.lower, c.lower, c.upper, s.upper]
}

fn rep(q: &Quad, triangular: bool) -> f64 {
    if triangular {
        (q[0] + q[1] + q[3]) / 3.0
    } else {
        q.iter().sum::<f64>() / 4.0
    }
}

fn blend(a: &Quad, b: &Quad, t: f64) -> Quad {
    [0, 1, 2, 3].map(|i| lerp(a[i], b[i], t))
}

fn scale_rate(target: f64, source: f64) -> Result<f64, MethodError> {
    if source <= EPS {
        if target <= EPS {
            Ok(1.0)
        } else {
            Err(MethodError::ScaleUndefined)
        }
    } else {
        Ok(target / source)
    }
}

/// Signed rate moving `from` towards 1 (positive) or towards `-1` / `0`
/// (negative) to reach `to`; `floor` is the lower end of the range.
fn rate(from: f64, to: f64, floor: f64) -> f64 {
    let span = if to >= from { 1.0 - from } else { from - floor };
    if span <= EPS {
        0.0
    } else {
        (to - from) / span
    }
}

fn apply_rate(from: f64, t: f64, floor: f64) -> f64 {
    if t >= 0.0 {
        from + t * (1.0 - from)
    } else {
        from + t * (from - floor)
    }
}

#[derive(Clone, Copy, Default)]
struct Rates {
    scale: f64,
    top: f64,
    shift: f64,
}

fn triangle_rates(a0: &Quad, star: &Quad) -> Result<Rates, MethodError> {
    let r = rep(a0, true);
    let scale = scale_rate(star[3] - star[0], a0[3] - a0[0])?;
    let scaled = a0.map(|x| r + scale * (x - r));
    let l = star[0] - scaled[0];
    let den = if l >= 0.0 {
        (scaled[1] - scaled[0]) / 3.0
    } else {
        (scaled[3] - scaled[1]) / 3.0
    };
    let shift = if den <= EPS { 0.0 } else { l / den };
    Ok(Rates {
        scale,
        top: 0.0,
        shift,
    })
}

fn triangle_apply(b0: &Quad, rates: Rates) -> Quad {
    let r = rep(b0, true);
    let b = b0.map(|x| r + rates.scale * (x - r));
    let l = if rates.shift >= 0.0 {
        rates.shift * (b[1] - b[0]) / 3.0
    } else {
        rates.shift * (b[3] - b[1]) / 3.0
    };
    [b[0] + l, b[1] - 2.0 * l, b[2] - 2.0 * l, b[3] + l]
}

/// Bottom width, top ratio and normalised top offset.
fn trapezoid_params(q: &Quad) -> (f64, f64, f64) {
    let bw = q[3] - q[0];
    let tw = q[2] - q[1];
    let ratio = if bw <= EPS { 1.0 } else { tw / bw };
    let slack = 0.5 * (bw - tw);
    let offset = 0.5 * (q[1] + q[2]) - 0.5 * (q[0] + q[3]);
    let norm = if slack <= EPS { 0.0 } else { offset / slack };
    (bw, ratio, norm)
}

fn trapezoid_rates(a0: &Quad, star: &Quad) -> Result<Rates, MethodError> {
    let (bw0, r0, q0) = trapezoid_params(a0);
    let (bw, r, q) = trapezoid_params(star);
    Ok(Rates {
        scale: scale_rate(bw, bw0)?,
        top: rate(r0, r, 0.0),
        shift: rate(q0, q, -1.0),
    })
}

fn trapezoid_apply(b0: &Quad, rates: Rates) -> Quad {
    let rp = rep(b0, false);
    let (bw0, r0, q0) = trapezoid_params(b0);
    let bw = rates.scale * bw0;
    let tw = apply_rate(r0, rates.top, 0.0) * bw;
    let offset = apply_rate(q0, rates.shift, -1.0) * 0.5 * (bw - tw);
    let bc = rp - 0.5 * offset;
    let tc = rp + 0.5 * offset;
    [bc - 0.5 * bw, tc - 0.5 * tw, tc + 0.5 * tw, bc + 0.5 * bw]
}

/// Selects the flanking rules by class representative value, then runs the
/// scale and move transformations and reports every intermediate.
pub fn scalemove_trace(
    rules: &[RuleView],
    obs: &Observation,
    cfg: &InterpolationConfig,
) -> Result<ScaleMoveTrace, MethodError> {
    let refs: Vec<&RuleView> = rules.iter().collect();
    check_dims(&refs, obs)?;
    let all = obs.sets.iter().chain(
        rules
            .iter()
            .flat_map(|r| r.antecedents.iter().chain([&r.consequent])),
    );
    let mut triangular = true;
    for s in all {
        check_basic_shape(s, Method::ScaleMove)?;
        triangular &= s.core().width() <= EPS;
    }
    let reps = |sets: &[PiecewiseLinearFuzzySet]| -> Vec<f64> {
        sets.iter().map(|s| rep(&quad(s), triangular)).collect()
    };
    let rps: Vec<Vec<f64>> = rules.iter().map(|r| reps(&r.antecedents)).collect();
    let pair = select_by_reference_points(rules, &rps, &reps(&obs.sets), cfg.minkowski_w)?;

    let mut lambdas = Vec::with_capacity(obs.dims());
    let mut per_dim = Vec::with_capacity(obs.dims());
    for d in 0..obs.dims() {
        let a1 = quad(&pair.lower.antecedents[d]);
        let a2 = quad(&pair.upper.antecedents[d]);
        let star = quad(&obs.sets[d]);
        let (r1, r2, rs) = (
            rep(&a1, triangular),
            rep(&a2, triangular),
            rep(&star, triangular),
        );
        let lambda = if (r2 - r1).abs() <= EPS {
            if (rs - r1).abs() <= EPS {
                0.0
            } else {
                return Err(MethodError::Degenerate(format!(
                    "input {} of the flanking antecedents share a representative value",
                    d + 1
                )));
            }
        } else {
            (rs - r1) / (r2 - r1)
        };
        if !(-EPS..=1.0 + EPS).contains(&lambda) {
            return Err(MethodError::NotSurrounded(format!(
                "representative value of input {} lies outside the flanking antecedents (λ = {lambda})",
                d + 1
            )));
        }
        let lambda = lambda.clamp(0.0, 1.0);
        let a0 = blend(&a1, &a2, lambda);
        per_dim.push(if triangular {
            triangle_rates(&a0, &star)?
        } else {
            trapezoid_rates(&a0, &star)?
        });
        lambdas.push(lambda);
    }
    let n = obs.dims() as f64;
    let lambda = lambdas.iter().sum::<f64>() / n;
    let mut rates = Rates::default();
    for r in &per_dim {
        rates.scale += r.scale / n;
        rates.top += r.top / n;
        rates.shift += r.shift / n;
    }

    let b0 = blend(
        &quad(&pair.lower.consequent),
        &quad(&pair.upper.consequent),
        lambda,
    );
    let consequent = if triangular {
        triangle_apply(&b0, rates)
    } else {
        trapezoid_apply(&b0, rates)
    };
    Ok(ScaleMoveTrace {
        lower: pair.lower.index,
        upper: pair.upper.index,
        lambdas,
        lambda,
        triangular,
        intermediate_consequent: b0,
        consequent,
        rep: rep(&b0, triangular),
    })
}

/// Scales and moves the blended consequent by the rates that turn the
/// blended antecedent into the observation.
pub fn scalemove_interpolate(
    rules: &[RuleView],
    obs: &Observation,
    cfg: &InterpolationConfig,
) -> Result<OutputConclusion, MethodError> {
    let trace = scalemove_trace(rules, obs, cfg)?;
    let flanking: Vec<&RuleView> = rules
        .iter()
        .filter(|r| r.index == trace.lower || r.index == trace.upper)
        .collect();
    let levels = levels_for(cfg, &flanking, obs)?;
    let q = trace.consequent;
    let cuts = levels
        .iter()
        .map(|&l| AlphaCut::new(l, lerp(q[0], q[1], l), lerp(q[3], q[2], l)))
        .collect();
    finish(Method::ScaleMove, cuts, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use PiecewiseLinearFuzzySet as S;

    #[test]
    fn single_input_triangles() {
        let a1 = S::triangle(5.0, 10.0, 15.0).unwrap();
        let a2 = S::triangle(37.0, 42.0, 47.0).unwrap();
        let rules = vec![
            RuleView::new(1, vec![a1.clone()], a1),
            RuleView::new(2, vec![a2.clone()], a2),
        ];
        let obs = Observation::new(vec![S::triangle(17.0, 27.0, 37.0).unwrap()]);
        let cfg = InterpolationConfig::new(Method::ScaleMove);
        let t = scalemove_trace(&rules, &obs, &cfg).unwrap();
        assert_eq!(t.lambda, 0.53125);
        assert!(t.triangular);
        for (got, want) in t.consequent.iter().zip([17.0, 27.0, 27.0, 37.0]) {
            assert!((got - want).abs() < 1e-9);
        }
    }

    #[test]
    fn skewed_observation_moves_triangle_and_keeps_rep() {
        let a1 = S::triangle(0.0, 5.0, 10.0).unwrap();
        let a2 = S::triangle(20.0, 25.0, 30.0).unwrap();
        let rules = vec![
            RuleView::new(1, vec![a1.clone()], a1),
            RuleView::new(2, vec![a2.clone()], a2),
        ];
        let obs = Observation::new(vec![S::triangle(10.0, 12.0, 17.0).unwrap()]);
        let cfg = InterpolationConfig::new(Method::ScaleMove);
        let t = scalemove_trace(&rules, &obs, &cfg).unwrap();
        let q = t.consequent;
        // with identical antecedent and consequent partitions the conclusion is the observation
        for (got, want) in q.iter().zip([10.0, 12.0, 12.0, 17.0]) {
            assert!((got - want).abs() < 1e-9, "{q:?}");
        }
        assert!(((q[0] + q[1] + q[3]) / 3.0 - t.rep).abs() < 1e-9);
    }

    #[test]
    fn trapezoid_identity_partition_reproduces_observation() {
        let a1 = S::trapezoid(0.0, 4.0, 6.0, 10.0).unwrap();
        let a2 = S::trapezoid(20.0, 24.0, 26.0, 30.0).unwrap();
        let rules = vec![
            RuleView::new(1, vec![a1.clone()], a1),
            RuleView::new(2, vec![a2.clone()], a2),
        ];
        let obs = Observation::new(vec![S::trapezoid(9.0, 13.0, 14.0, 16.0).unwrap()]);
        let cfg = InterpolationConfig::new(Method::ScaleMove);
        let t = scalemove_trace(&rules, &obs, &cfg).unwrap();
        for (got, want) in t.consequent.iter().zip([9.0, 13.0, 14.0, 16.0]) {
            assert!((got - want).abs() < 1e-9, "{:?}", t.consequent);
        }
    }
}
