use super::set::{drop_collinear, validate_points};
use super::{FuzzyError, PiecewiseLinearFuzzySet, EPS};

/// The crisp interval `[lower, upper]` of a fuzzy set at one membership level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaCut {
    pub level: f64,
    pub lower: f64,
    pub upper: f64,
}

impl AlphaCut {
    pub fn new(level: f64, lower: f64, upper: f64) -> Self {
        Self {
            level,
            lower,
            upper,
        }
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lower + self.upper)
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    /// `self ⊆ outer` up to [`EPS`].
    pub fn is_within(&self, outer: &AlphaCut) -> bool {
        self.lower >= outer.lower - EPS && self.upper <= outer.upper + EPS
    }
}

/// A fuzzy set reassembled from α-cuts.
///
/// When the cuts are inverted (`lower > upper`) or not nested the set is
/// kept exactly as traced and `abnormal` is raised; no repair is attempted.
#[derive(Debug, Clone, PartialEq)]
pub struct AssembledSet {
    pub set: PiecewiseLinearFuzzySet,
    pub abnormal: bool,
}

/// Builds a piecewise-linear set from α-cuts sorted by ascending level.
///
/// Breakpoints are `(lower, α)` for ascending α followed by `(upper, α)` for
/// descending α. Coincident x values are merged keeping the higher
/// membership, and breakpoints collinear with their neighbours are dropped.
pub fn set_from_alpha_cuts(cuts: &[AlphaCut]) -> Result<AssembledSet, FuzzyError> {
    let (first, last) = match (cuts.first(), cuts.last()) {
        (Some(f), Some(l)) => (f, l),
        _ => return Err(FuzzyError::Empty("no α-cuts")),
    };
    if cuts
        .windows(2)
        .any(|w| w[1].level.partial_cmp(&w[0].level) != Some(std::cmp::Ordering::Greater))
    {
        return Err(FuzzyError::UnsortedCuts);
    }
    if first.level.abs() > EPS {
        return Err(FuzzyError::MissingLevel(0.0));
    }
    if (last.level - 1.0).abs() > EPS {
        return Err(FuzzyError::MissingLevel(1.0));
    }

    let inverted = cuts.iter().any(|c| c.lower > c.upper + EPS);
    let non_nested = cuts.windows(2).any(|w| !w[1].is_within(&w[0]));
    let abnormal = inverted || non_nested;

    let mut raw: Vec<(f64, f64)> = Vec::with_capacity(2 * cuts.len());
    raw.extend(cuts.iter().map(|c| (c.lower, c.level)));
    raw.extend(cuts.iter().rev().map(|c| (c.upper, c.level)));

    if abnormal {
        return Ok(AssembledSet {
            set: PiecewiseLinearFuzzySet::from_points_unchecked("", raw),
            abnormal,
        });
    }

    let mut merged: Vec<(f64, f64)> = Vec::with_capacity(raw.len());
    for (x, mu) in raw {
        match merged.last_mut() {
            Some(prev) if (x - prev.0).abs() <= EPS => {
                if mu > prev.1 {
                    *prev = (x, mu);
                }
            }
            _ => merged.push((x, mu)),
        }
    }
    let points = drop_collinear(&merged);
    let abnormal = !validate_points(&points).is_valid();
    Ok(AssembledSet {
        set: PiecewiseLinearFuzzySet::from_points_unchecked("", points),
        abnormal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_level_triangle() {
        let a = set_from_alpha_cuts(&[
            AlphaCut::new(0.0, 17.0, 37.0),
            AlphaCut::new(1.0, 27.0, 27.0),
        ])
        .unwrap();
        assert!(!a.abnormal);
        assert_eq!(a.set.points(), &[(17.0, 0.0), (27.0, 1.0), (37.0, 0.0)]);
    }

    #[test]
    fn two_level_trapezoid() {
        let a =
            set_from_alpha_cuts(&[AlphaCut::new(0.0, 3.0, 17.0), AlphaCut::new(1.0, 8.0, 12.0)])
                .unwrap();
        assert!(!a.abnormal);
        assert_eq!(
            a.set.points(),
            &[(3.0, 0.0), (8.0, 1.0), (12.0, 1.0), (17.0, 0.0)]
        );
    }

    #[test]
    fn non_nested_cuts_are_flagged() {
        let a = set_from_alpha_cuts(&[
            AlphaCut::new(0.0, 10.0, 20.0),
            AlphaCut::new(1.0, 5.0, 25.0),
        ])
        .unwrap();
        assert!(a.abnormal);
        let a = set_from_alpha_cuts(&[
            AlphaCut::new(0.0, 10.0, 20.0),
            AlphaCut::new(1.0, 16.0, 14.0),
        ])
        .unwrap();
        assert!(a.abnormal);
    }

    #[test]
    fn missing_levels_are_errors() {
        assert_eq!(
            set_from_alpha_cuts(&[AlphaCut::new(0.5, 0.0, 1.0), AlphaCut::new(1.0, 0.5, 0.5)]),
            Err(FuzzyError::MissingLevel(0.0))
        );
        assert_eq!(
            set_from_alpha_cuts(&[AlphaCut::new(0.0, 0.0, 1.0), AlphaCut::new(0.5, 0.5, 0.5)]),
            Err(FuzzyError::MissingLevel(1.0))
        );
        assert!(set_from_alpha_cuts(&[]).is_err());
        assert_eq!(
            set_from_alpha_cuts(&[AlphaCut::new(1.0, 0.0, 1.0), AlphaCut::new(0.0, 0.5, 0.5)]),
            Err(FuzzyError::UnsortedCuts)
        );
    }

    #[test]
    fn crisp_edge_merges_vertical_flank() {
        let a = set_from_alpha_cuts(&[
            AlphaCut::new(0.0, 10.0, 20.0),
            AlphaCut::new(0.5, 10.0, 18.0),
            AlphaCut::new(1.0, 10.0, 15.0),
        ])
        .unwrap();
        assert!(!a.abnormal);
        assert_eq!(
            a.set.points(),
            &[(10.0, 1.0), (15.0, 1.0), (18.0, 0.5), (20.0, 0.0)]
        );
    }
}
