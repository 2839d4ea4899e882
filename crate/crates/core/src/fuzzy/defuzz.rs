//! Centre-of-gravity defuzzification.
//!
//! The support is sampled uniformly and the set's own breakpoints are added
//! to the samples, so membership is linear between neighbouring samples.
//! Each segment is then integrated in closed form, which makes the result
//! exact for piecewise-linear sets at any sample count.

use super::{FuzzyError, PiecewiseLinearFuzzySet};

/// Default number of uniform samples over the support.
pub const DEFAULT_NUM_POINTS: usize = 501;

/// `num_points` uniform samples over `[first x, last x]` merged with the
/// breakpoints, as `(x, μ)` pairs in ascending `x`.
///
/// For a breakpoint list whose `x` is not increasing (an abnormal
/// conclusion) the raw breakpoints are returned unchanged.
pub fn sample_points(
    set: &PiecewiseLinearFuzzySet,
    num_points: usize,
) -> Result<Vec<(f64, f64)>, FuzzyError> {
    if num_points < 2 {
        return Err(FuzzyError::TooFewPoints(num_points));
    }
    let pts = set.points();
    if pts.is_empty() {
        return Err(FuzzyError::Empty("fuzzy set has no breakpoints"));
    }
    if pts
        .windows(2)
        .any(|w| w[1].0.partial_cmp(&w[0].0) != Some(std::cmp::Ordering::Greater))
        || pts.len() == 1
    {
        return Ok(pts.to_vec());
    }
    let (lo, hi) = set.extent();
    let step = (hi - lo) / (num_points - 1) as f64;
    let mut xs: Vec<f64> = (0..num_points).map(|i| lo + step * i as f64).collect();
    xs[num_points - 1] = hi;
    xs.extend(pts.iter().map(|p| p.0));
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    Ok(xs.into_iter().map(|x| (x, set.membership(x))).collect())
}

/// Centre of gravity of the polyline through `samples`.
///
/// Between consecutive samples membership is taken as linear, and both
/// `∫μ dx` and `∫x·μ dx` are integrated exactly on each segment. Returns
/// `None` when the enclosed area is not positive.
pub fn cog_from_samples(samples: &[(f64, f64)]) -> Option<f64> {
    if let [(x, _)] = samples {
        return Some(*x);
    }
    let mut area = 0.0;
    let mut moment = 0.0;
    for w in samples.windows(2) {
        let ((a, fa), (b, fb)) = (w[0], w[1]);
        let h = b - a;
        area += 0.5 * h * (fa + fb);
        moment += h / 6.0 * (fa * (2.0 * a + b) + fb * (a + 2.0 * b));
    }
    (area > 0.0).then(|| moment / area)
}

pub fn cog_defuzzify(set: &PiecewiseLinearFuzzySet, num_points: usize) -> Result<f64, FuzzyError> {
    let samples = sample_points(set, num_points)?;
    Ok(cog_from_samples(&samples).unwrap_or_else(|| set.core().midpoint()))
}
