use super::{FuzzyError, PiecewiseLinearFuzzySet};

/// Signed lower and upper distances from `a` to `b` at one α level:
/// `(inf b_α − inf a_α, sup b_α − sup a_α)`.
pub fn lower_upper_distance(
    a: &PiecewiseLinearFuzzySet,
    b: &PiecewiseLinearFuzzySet,
    level: f64,
) -> Result<(f64, f64), FuzzyError> {
    let ca = a.alpha_cut(level)?;
    let cb = b.alpha_cut(level)?;
    Ok((cb.lower - ca.lower, cb.upper - ca.upper))
}

/// `(Σ|a_i − b_i|^w)^(1/w)`; `w = ∞` gives the maximum norm.
pub fn minkowski_distance(a: &[f64], b: &[f64], w: f64) -> Result<f64, FuzzyError> {
    if a.len() != b.len() {
        return Err(FuzzyError::LengthMismatch(a.len(), b.len()));
    }
    if w.is_nan() || w < 1.0 {
        return Err(FuzzyError::InvalidExponent(w));
    }
    let diffs = a.iter().zip(b).map(|(x, y)| (x - y).abs());
    Ok(norm(diffs, w))
}

fn norm(values: impl Iterator<Item = f64>, w: f64) -> f64 {
    if w.is_infinite() {
        return values.fold(0.0, f64::max);
    }
    if w == 1.0 {
        return values.sum();
    }
    values.map(|v| v.powf(w)).sum::<f64>().powf(1.0 / w)
}

/// Normalised Minkowski aggregate of non-negative values,
/// `(Σ v_i^w / n)^(1/w)`. Equal inputs aggregate to themselves.
pub fn power_mean(values: &[f64], w: f64) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    if w.is_infinite() {
        return values.iter().copied().fold(0.0, f64::max);
    }
    if values.len() == 1 {
        return values[0];
    }
    let n = values.len() as f64;
    (values.iter().map(|v| v.abs().powf(w)).sum::<f64>() / n).powf(1.0 / w)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minkowski_examples() {
        assert_eq!(
            minkowski_distance(&[0.0, 0.0], &[3.0, 4.0], 2.0).unwrap(),
            5.0
        );
        assert_eq!(minkowski_distance(&[1.0], &[4.0], 2.0).unwrap(), 3.0);
        assert_eq!(
            minkowski_distance(&[0.0, 0.0], &[3.0, 4.0], 1.0).unwrap(),
            7.0
        );
        assert_eq!(
            minkowski_distance(&[0.0, 0.0], &[3.0, 4.0], f64::INFINITY).unwrap(),
            4.0
        );
    }

    #[test]
    fn minkowski_errors() {
        assert_eq!(
            minkowski_distance(&[0.0], &[3.0, 4.0], 2.0),
            Err(FuzzyError::LengthMismatch(1, 2))
        );
        assert!(minkowski_distance(&[0.0], &[3.0], 0.5).is_err());
        assert!(minkowski_distance(&[0.0], &[3.0], f64::NAN).is_err());
    }

    #[test]
    fn lower_upper_distance_examples() {
        let obs = PiecewiseLinearFuzzySet::triangle(17.0, 27.0, 37.0).unwrap();
        let a1 = PiecewiseLinearFuzzySet::triangle(5.0, 10.0, 15.0).unwrap();
        let a2 = PiecewiseLinearFuzzySet::triangle(37.0, 42.0, 47.0).unwrap();
        assert_eq!(
            lower_upper_distance(&obs, &a1, 0.0).unwrap(),
            (-12.0, -22.0)
        );
        assert_eq!(lower_upper_distance(&obs, &a2, 0.0).unwrap(), (20.0, 10.0));
        assert_eq!(lower_upper_distance(&obs, &obs, 0.3).unwrap(), (0.0, 0.0));
    }

    #[test]
    fn power_mean_of_equal_values() {
        assert!((power_mean(&[0.4, 0.4, 0.4], 2.0) - 0.4).abs() < 1e-15);
        assert_eq!(power_mean(&[0.7], 3.0), 0.7);
        assert_eq!(power_mean(&[], 2.0), 0.0);
    }
}
