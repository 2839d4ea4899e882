mod common;

use common::{basic_shape, diagonal_rules, partition, same_points, triangle};
use fri_core::fuzzy::{ReferencePointKind, EPS};
use fri_core::methods::{
    interpolate, maci_lambda, scalemove_trace, select_flanking_pair, InterpolationConfig, Method,
    Observation, OutputConclusion, RuleView,
};
use fri_core::{AlphaLevelScheme, PiecewiseLinearFuzzySet as S};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn cases(n: u32) -> ProptestConfig {
    ProptestConfig::with_cases(n)
}

fn lerp(a: f64, b: f64, t: f64) -> f64 {
    a + t * (b - a)
}

fn quad(s: &S) -> [f64; 4] {
    [
        s.support().lower,
        s.core().lower,
        s.core().upper,
        s.support().upper,
    ]
}

/// Apex counted once for triangles, twice in the trapezoid class.
fn class_rep(q: &[f64; 4], triangular: bool) -> f64 {
    if triangular {
        (q[0] + q[1] + q[3]) / 3.0
    } else {
        q.iter().sum::<f64>() / 4.0
    }
}

/// Two ordered single-input triangles and an observation whose three
/// characteristic points each lie between the antecedents' points.
fn identity_system() -> impl Strategy<Value = (S, S, S)> {
    (
        triangle(),
        triangle(),
        1.0..60.0f64,
        prop::array::uniform3(0.0..=1.0f64),
    )
        .prop_filter_map("observation must be a triangle", |(a1, a2, gap, t)| {
            let a2 = common::shift(&a2, a1.extent().1 + gap - a2.extent().0);
            let p1: Vec<f64> = a1.points().iter().map(|p| p.0).collect();
            let p2: Vec<f64> = a2.points().iter().map(|p| p.0).collect();
            let q: Vec<f64> = (0..3).map(|i| lerp(p1[i], p2[i], t[i])).collect();
            if q[1] - q[0] > 1e-3 && q[2] - q[1] > 1e-3 {
                Some((a1, a2, S::triangle(q[0], q[1], q[2]).unwrap()))
            } else {
                None
            }
        })
}

fn identity_rules(a1: &S, a2: &S) -> Vec<RuleView> {
    vec![
        RuleView::new(1, vec![a1.clone()], a1.clone()),
        RuleView::new(2, vec![a2.clone()], a2.clone()),
    ]
}

/// A diagonal rule base with `dims` inputs and `n` rules plus an observation
/// placed between rules `k` and `k + 1` in every input.
fn surrounded_system(dims: usize, n: usize) -> impl Strategy<Value = (Vec<RuleView>, Observation)> {
    (
        prop::collection::vec(partition(n), dims),
        partition(n),
        0..n - 1,
        prop::collection::vec((0.05..0.95f64, 0.1..8.0f64, 0.1..8.0f64, 0.0..3.0f64), dims),
    )
        .prop_map(move |(inputs, outputs, k, shapes)| {
            let rules = diagonal_rules(&inputs, &outputs);
            let sets = shapes
                .iter()
                .enumerate()
                .map(|(d, &(t, l, r, top))| {
                    let c = lerp(
                        inputs[d][k].core().midpoint(),
                        inputs[d][k + 1].core().midpoint(),
                        t,
                    );
                    if top < 1.0 {
                        S::triangle(c - l, c, c + r).unwrap()
                    } else {
                        S::trapezoid(
                            c - l - top / 2.0,
                            c - top / 2.0,
                            c + top / 2.0,
                            c + top / 2.0 + r,
                        )
                        .unwrap()
                    }
                })
                .collect();
            (rules, Observation::new(sets))
        })
}

fn run(method: Method, rules: &[RuleView], obs: &Observation) -> OutputConclusion {
    interpolate(rules, obs, &InterpolationConfig::new(method)).unwrap()
}

fn shape_dims() -> impl Strategy<Value = (usize, usize)> {
    (1usize..=2, 2usize..=4)
}

proptest! {
    #![proptest_config(cases(1000))]

    #[test]
    fn kh_reproduces_observation_on_identical_partitions(
        (a1, a2, obs) in identity_system(),
        dense in any::<bool>(),
    ) {
        let rules = identity_rules(&a1, &a2);
        let obs = Observation::new(vec![obs]);
        let mut cfg = InterpolationConfig::new(Method::Kh);
        if dense {
            cfg.alpha_levels = AlphaLevelScheme::UserDefined(11);
        }
        let out = interpolate(&rules, &obs, &cfg).unwrap();
        for cut in &out.cuts {
            let want = obs.sets[0].alpha_cut(cut.level).unwrap();
            prop_assert!((cut.lower - want.lower).abs() <= 1e-9, "{cut:?} vs {want:?}");
            prop_assert!((cut.upper - want.upper).abs() <= 1e-9, "{cut:?} vs {want:?}");
        }
    }

    #[test]
    fn khstab_equals_kh_for_one_input_two_rules(
        (rules, obs) in surrounded_system(1, 2),
        levels in prop_oneof![Just(AlphaLevelScheme::Breakpoints), (2usize..40).prop_map(AlphaLevelScheme::UserDefined)],
    ) {
        let mut cfg = InterpolationConfig::new(Method::Kh);
        cfg.alpha_levels = levels;
        let kh = interpolate(&rules, &obs, &cfg).unwrap();
        cfg.method = Method::KhStab;
        let st = interpolate(&rules, &obs, &cfg).unwrap();
        prop_assert_eq!(kh.cuts.len(), st.cuts.len());
        for (a, b) in kh.cuts.iter().zip(&st.cuts) {
            prop_assert!((a.lower - b.lower).abs() <= 1e-9 && (a.upper - b.upper).abs() <= 1e-9);
        }
    }

    #[test]
    fn observation_on_a_rule_returns_its_consequent(
        (rules, _) in shape_dims().prop_flat_map(|(d, n)| surrounded_system(d, n)),
        pick in any::<prop::sample::Index>(),
    ) {
        let k = pick.index(rules.len());
        let obs = Observation::new(rules[k].antecedents.clone());
        for m in Method::ALL {
            let out = run(m, &rules, &obs);
            prop_assert!(
                same_points(&out.fuzzy, &rules[k].consequent, 1e-9),
                "{m}: {} vs {}", out.fuzzy, rules[k].consequent
            );
        }
    }

    #[test]
    fn conclusion_reference_point_lies_between_flanking_consequents(
        (rules, obs) in shape_dims().prop_flat_map(|(d, n)| surrounded_system(d, n)),
    ) {
        for m in Method::ALL {
            let cfg = InterpolationConfig::new(m);
            let Ok(out) = interpolate(&rules, &obs, &cfg) else { continue };
            let (rp, r1, r2) = if m == Method::ScaleMove {
                // the class representative value, not the plain centroid
                let t = scalemove_trace(&rules, &obs, &cfg).unwrap();
                let rule = |i: usize| &rules.iter().find(|r| r.index == i).unwrap().consequent;
                (
                    class_rep(&t.consequent, t.triangular),
                    class_rep(&quad(rule(t.lower)), t.triangular),
                    class_rep(&quad(rule(t.upper)), t.triangular),
                )
            } else if m == Method::KhStab {
                // blends every rule: bounded by the hull of all consequent cores
                let cores: Vec<_> = rules.iter().map(|r| r.consequent.core()).collect();
                let lo = cores.iter().map(|c| c.lower).fold(f64::INFINITY, f64::min)
                    + cores.iter().map(|c| c.upper).fold(f64::INFINITY, f64::min);
                let hi = cores.iter().map(|c| c.lower).fold(f64::NEG_INFINITY, f64::max)
                    + cores.iter().map(|c| c.upper).fold(f64::NEG_INFINITY, f64::max);
                (out.cuts.last().unwrap().midpoint(), lo / 2.0, hi / 2.0)
            } else {
                let pair = select_flanking_pair(&rules, &obs, &cfg).unwrap();
                let kind = ReferencePointKind::CoreCentre;
                (
                    out.cuts.last().unwrap().midpoint(),
                    pair.lower.consequent.representative_value(kind),
                    pair.upper.consequent.representative_value(kind),
                )
            };
            prop_assert!(
                rp >= r1.min(r2) - 1e-9 && rp <= r1.max(r2) + 1e-9,
                "{m}: {rp} not in [{r1}, {r2}]"
            );
        }
    }

    #[test]
    fn scalemove_preserves_representative_value(
        (rules, obs) in shape_dims().prop_flat_map(|(d, n)| surrounded_system(d, n)),
    ) {
        let cfg = InterpolationConfig::new(Method::ScaleMove);
        // surrounded by core centres, which need not hold for class representative values
        let t = scalemove_trace(&rules, &obs, &cfg);
        prop_assume!(t.is_ok());
        let t = t.unwrap();
        let rep = |q: &[f64; 4]| class_rep(q, t.triangular);
        let rule = |i: usize| &rules.iter().find(|r| r.index == i).unwrap().consequent;
        let want = lerp(rep(&quad(rule(t.lower))), rep(&quad(rule(t.upper))), t.lambda);
        prop_assert!((rep(&t.consequent) - want).abs() <= 1e-9);
        prop_assert!((t.rep - want).abs() <= 1e-9);
    }

    #[test]
    fn lambdas_grow_as_observation_slides(
        a1 in basic_shape(),
        a2 in basic_shape(),
        gap in 1.0..40.0f64,
        half in 0.5..10.0f64,
    ) {
        let a2 = common::shift(&a2, a1.extent().1 + gap - a2.extent().0);
        let rules = identity_rules(&a1, &a2);
        let from = a1.core().midpoint();
        let to = a2.core().midpoint();
        let mut last = (f64::NEG_INFINITY, f64::NEG_INFINITY);
        for i in 0..=40 {
            let c = lerp(from, to, i as f64 / 40.0);
            let obs = Observation::new(vec![S::triangle(c - half, c, c + half).unwrap()]);
            let cfg = InterpolationConfig::new(Method::Maci);
            let pair = select_flanking_pair(&rules, &obs, &cfg).unwrap();
            let core = maci_lambda(&pair, &obs, &cfg).unwrap();
            let rep = scalemove_trace(&rules, &obs, &cfg).map(|t| t.lambda).unwrap_or(last.1);
            prop_assert!(core >= last.0 - 1e-12, "λcore fell at step {i}");
            prop_assert!(rep >= last.1 - 1e-12, "λ_REP fell at step {i}");
            last = (core, rep.max(last.1));
        }
    }

    #[test]
    fn evaluation_is_deterministic(
        (rules, obs) in shape_dims().prop_flat_map(|(d, n)| surrounded_system(d, n)),
    ) {
        for m in Method::ALL {
            let cfg = InterpolationConfig::new(m);
            let a = interpolate(&rules, &obs, &cfg);
            let b = std::thread::scope(|s| s.spawn(|| interpolate(&rules, &obs, &cfg)).join().unwrap());
            match (a, b) {
                (Ok(a), Ok(b)) => {
                    let bits = |o: &OutputConclusion| -> Vec<u64> {
                        o.fuzzy.points().iter().flat_map(|p| [p.0.to_bits(), p.1.to_bits()])
                            .chain([o.crisp.to_bits()]).collect()
                    };
                    prop_assert_eq!(bits(&a), bits(&b));
                }
                (Err(a), Err(b)) => prop_assert_eq!(a, b),
                _ => prop_assert!(false, "{m}: outcome differs between runs"),
            }
        }
    }
}

/// Triangle, trapezoid, crisp-edged or singleton set starting in `[lo, hi)`.
fn random_shape(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> S {
    let left = rng.gen_range(lo..hi);
    let zero_or = |rng: &mut ChaCha8Rng, max: f64| {
        if rng.gen_bool(0.2) {
            0.0
        } else {
            rng.gen_range(0.1..max)
        }
    };
    let l = zero_or(rng, 15.0);
    let top = zero_or(rng, 10.0);
    let r = zero_or(rng, 15.0);
    from_quad([left, left + l, left + l + top, left + l + top + r])
}

/// Folds coincident characteristic points, keeping the higher membership.
fn from_quad(q: [f64; 4]) -> S {
    let mut pts: Vec<(f64, f64)> = Vec::new();
    for (x, mu) in q.into_iter().zip([0.0, 1.0, 1.0, 0.0]) {
        match pts.last_mut() {
            Some(p) if (x - p.0).abs() <= EPS => p.1 = p.1.max(mu),
            _ => pts.push((x, mu)),
        }
    }
    S::new("", pts).unwrap()
}

#[test]
fn maci_conclusions_are_always_valid() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut kh_abnormal = 0;
    let mut checked = 0;
    while checked < 1000 {
        let dims = rng.gen_range(1..=2);
        let mut ante1 = Vec::new();
        let mut ante2 = Vec::new();
        let mut obs = Vec::new();
        for _ in 0..dims {
            let a1 = random_shape(&mut rng, -50.0, 0.0);
            let right = a1.extent().1;
            let a2 = random_shape(&mut rng, right + 0.5, right + 30.0);
            let c = lerp(
                a1.core().midpoint(),
                a2.core().midpoint(),
                rng.gen_range(0.0..=1.0),
            );
            let (l, r) = (rng.gen_range(0.0..25.0), rng.gen_range(0.0..25.0));
            let o = from_quad([c - l, c, c, c + r]);
            ante1.push(a1);
            ante2.push(a2);
            obs.push(o);
        }
        let b1 = random_shape(&mut rng, -50.0, 50.0);
        let b2 = random_shape(&mut rng, -50.0, 50.0);
        let rules = vec![RuleView::new(1, ante1, b1), RuleView::new(2, ante2, b2)];
        let obs = Observation::new(obs);
        let out = interpolate(&rules, &obs, &InterpolationConfig::new(Method::Maci)).unwrap();
        assert!(!out.abnormal && out.fuzzy.is_cnf(), "{}", out.fuzzy);
        if let Ok(kh) = interpolate(&rules, &obs, &InterpolationConfig::new(Method::Kh)) {
            kh_abnormal += kh.abnormal as usize;
        }
        checked += 1;
    }
    assert!(kh_abnormal > 0, "no KH-abnormal instance was generated");
}
