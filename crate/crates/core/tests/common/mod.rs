#![allow(dead_code)]

use fri_core::methods::RuleView;
use fri_core::PiecewiseLinearFuzzySet as S;
use proptest::prelude::*;

/// Builds a CNF set from a left foot position, positive gaps and the
/// membership values of the rising and falling flanks.
pub fn cnf_from_parts(
    start: f64,
    gaps: &[f64],
    left_foot: bool,
    ups: &[f64],
    plateau: bool,
    downs: &[f64],
    right_foot: bool,
) -> S {
    let mut mus = Vec::new();
    if left_foot {
        mus.push(0.0);
    }
    let mut ups = ups.to_vec();
    ups.sort_by(f64::total_cmp);
    ups.dedup();
    mus.extend(ups);
    mus.push(1.0);
    if plateau {
        mus.push(1.0);
    }
    let mut downs = downs.to_vec();
    downs.sort_by(|a, b| b.total_cmp(a));
    downs.dedup();
    mus.extend(downs);
    if right_foot {
        mus.push(0.0);
    }
    let mut x = start;
    let mut points = Vec::with_capacity(mus.len());
    for (i, mu) in mus.into_iter().enumerate() {
        if i > 0 {
            x += gaps[i - 1];
        }
        points.push((x, mu));
    }
    S::new("", points).expect("generator produced an invalid set")
}

pub fn cnf_set() -> impl Strategy<Value = S> {
    (
        -100.0..100.0f64,
        prop::collection::vec(0.05..20.0f64, 12),
        any::<bool>(),
        prop::collection::vec(0.02..0.98f64, 0..3),
        any::<bool>(),
        prop::collection::vec(0.02..0.98f64, 0..3),
        any::<bool>(),
    )
        .prop_map(|(start, gaps, lf, ups, plateau, downs, rf)| {
            cnf_from_parts(start, &gaps, lf, &ups, plateau, &downs, rf)
        })
}

/// Triangle `[a, b, c]` with positive flanks.
pub fn triangle() -> impl Strategy<Value = S> {
    (-100.0..100.0f64, 0.1..20.0f64, 0.1..20.0f64)
        .prop_map(|(a, l, r)| S::triangle(a, a + l, a + l + r).unwrap())
}

/// Triangle or trapezoid with positive flanks.
pub fn basic_shape() -> impl Strategy<Value = S> {
    (-100.0..100.0f64, 0.1..20.0f64, 0.0..10.0f64, 0.1..20.0f64).prop_map(|(a, l, t, r)| {
        if t < 1.0 {
            S::triangle(a, a + l, a + l + r).unwrap()
        } else {
            S::trapezoid(a, a + l, a + l + t, a + l + t + r).unwrap()
        }
    })
}

pub fn shift(set: &S, dx: f64) -> S {
    S::new(
        set.label(),
        set.points().iter().map(|&(x, mu)| (x + dx, mu)).collect(),
    )
    .unwrap()
}

/// An ordered partition of `n` basic shapes: every set lies strictly to the
/// right of the previous one.
pub fn partition(n: usize) -> impl Strategy<Value = Vec<S>> {
    prop::collection::vec((basic_shape(), 1.0..15.0f64), n).prop_map(|items| {
        let mut out: Vec<S> = Vec::with_capacity(items.len());
        let mut right = -200.0;
        for (set, gap) in items {
            let (lo, hi) = set.extent();
            let moved = shift(&set, right + gap - lo);
            right += gap + (hi - lo);
            out.push(moved);
        }
        out
    })
}

/// Rule `i` maps the `i`-th set of every input partition to the `i`-th
/// output set.
pub fn diagonal_rules(inputs: &[Vec<S>], outputs: &[S]) -> Vec<RuleView> {
    outputs
        .iter()
        .enumerate()
        .map(|(i, b)| {
            RuleView::new(
                i + 1,
                inputs.iter().map(|p| p[i].clone()).collect(),
                b.clone(),
            )
        })
        .collect()
}

pub fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

pub fn same_points(a: &S, b: &S, tol: f64) -> bool {
    a.points().len() == b.points().len()
        && a.points()
            .iter()
            .zip(b.points())
            .all(|(p, q)| close(p.0, q.0, tol) && close(p.1, q.1, tol))
}
