use super::{FuzzyError, PiecewiseLinearFuzzySet, EPS};

/// Level count used for [`AlphaLevelScheme::UserDefined`] when the caller
/// does not give one.
pub const DEFAULT_USER_LEVELS: usize = 101;

/// How the α levels evaluated by the α-cut based methods are chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AlphaLevelScheme {
    /// Every membership value that occurs at a breakpoint of the sets
    /// involved, plus 0 and 1.
    #[default]
    Breakpoints,
    /// `n` levels spread uniformly over `[0, 1]`, both ends included.
    UserDefined(usize),
}

/// Sorted, deduplicated union of the breakpoint membership values of `sets`,
/// always starting at exactly 0 and ending at exactly 1.
pub fn breakpoint_levels<'a, I>(sets: I) -> Result<Vec<f64>, FuzzyError>
where
    I: IntoIterator<Item = &'a PiecewiseLinearFuzzySet>,
{
    let mut levels = vec![0.0, 1.0];
    let mut any = false;
    for set in sets {
        any = true;
        levels.extend(set.points().iter().map(|p| p.1.clamp(0.0, 1.0)));
    }
    if !any {
        return Err(FuzzyError::Empty(
            "no fuzzy sets to take breakpoint levels from",
        ));
    }
    levels.sort_by(f64::total_cmp);
    levels.dedup_by(|next, kept| (*next - *kept).abs() <= EPS);
    // the tolerance-based dedup may have kept a near-1 value instead of 1
    if let Some(last) = levels.last_mut() {
        *last = 1.0;
    }
    Ok(levels)
}

pub fn generate_levels<'a, I>(scheme: AlphaLevelScheme, sets: I) -> Result<Vec<f64>, FuzzyError>
where
    I: IntoIterator<Item = &'a PiecewiseLinearFuzzySet>,
{
    match scheme {
        AlphaLevelScheme::Breakpoints => breakpoint_levels(sets),
        AlphaLevelScheme::UserDefined(n) if n < 2 => Err(FuzzyError::TooFewLevels(n)),
        AlphaLevelScheme::UserDefined(n) => {
            let step = (n - 1) as f64;
            let mut levels: Vec<f64> = (0..n).map(|i| i as f64 / step).collect();
            levels[n - 1] = 1.0;
            Ok(levels)
        }
    }
}
