use std::fmt;

use super::{AlphaCut, FuzzyError, EPS};

/// Membership values closer than this to an α level count as reaching it.
const LEVEL_TOL: f64 = 1e-12;

/// How a fuzzy set's position is summarised by a single number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum ReferencePointKind {
    /// Midpoint of the core (the level-1 α-cut).
    #[default]
    CoreCentre,
    /// Arithmetic mean of the x coordinates of all characteristic points.
    CentroidOfCharacteristicPoints,
}

/// A convex, normal fuzzy set with a piecewise-linear membership function.
///
/// The function is given by its breakpoints `(x, μ)` with strictly increasing
/// `x`; membership is interpolated linearly between neighbouring breakpoints
/// and is zero outside `[first x, last x]`. A single breakpoint with `μ = 1`
/// is a singleton.
///
/// Values built through [`new`](Self::new) and the shape constructors always
/// pass [`validate_cnf`](Self::validate_cnf). Interpolation methods may
/// produce abnormal conclusions; those are carried through
/// [`from_points_unchecked`](Self::from_points_unchecked) and flagged by the
/// caller.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseLinearFuzzySet {
    label: String,
    points: Vec<(f64, f64)>,
}

impl PiecewiseLinearFuzzySet {
    pub fn new(label: impl Into<String>, points: Vec<(f64, f64)>) -> Result<Self, FuzzyError> {
        let set = Self::from_points_unchecked(label, points);
        let report = set.validate_cnf();
        if report.is_valid() {
            Ok(set)
        } else {
            Err(FuzzyError::InvalidSet(report))
        }
    }

    /// Wraps a breakpoint list without checking any invariant.
    pub fn from_points_unchecked(label: impl Into<String>, points: Vec<(f64, f64)>) -> Self {
        Self {
            label: label.into(),
            points,
        }
    }

    pub fn singleton(x: f64) -> Result<Self, FuzzyError> {
        Self::new("", vec![(x, 1.0)])
    }

    pub fn triangle(a: f64, b: f64, c: f64) -> Result<Self, FuzzyError> {
        Self::new("", vec![(a, 0.0), (b, 1.0), (c, 0.0)])
    }

    pub fn trapezoid(a: f64, b: f64, c: f64, d: f64) -> Result<Self, FuzzyError> {
        Self::new("", vec![(a, 0.0), (b, 1.0), (c, 1.0), (d, 0.0)])
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }

    pub fn is_singleton(&self) -> bool {
        self.points.len() == 1
    }

    /// The x extent of the breakpoint list, `(first x, last x)`.
    pub fn extent(&self) -> (f64, f64) {
        let first = self.points.first().map_or(f64::NAN, |p| p.0);
        let last = self.points.last().map_or(f64::NAN, |p| p.0);
        (first, last)
    }

    pub fn membership(&self, x: f64) -> f64 {
        let pts = &self.points;
        let (lo, hi) = self.extent();
        if pts.is_empty() || !(lo..=hi).contains(&x) {
            return 0.0;
        }
        if pts.len() == 1 {
            return pts[0].1.clamp(0.0, 1.0);
        }
        // first breakpoint with x_i > x; x lies in [x_{i-1}, x_i]
        let i = pts.partition_point(|p| p.0 <= x).clamp(1, pts.len() - 1);
        let (x0, m0) = pts[i - 1];
        let (x1, m1) = pts[i];
        let mu = if x1 > x0 {
            m0 + (x - x0) / (x1 - x0) * (m1 - m0)
        } else {
            m0.max(m1)
        };
        mu.clamp(0.0, 1.0)
    }

    /// Closure of `{x : μ(x) >= level}`; at level 0 the closure of the
    /// support.
    pub fn alpha_cut(&self, level: f64) -> Result<AlphaCut, FuzzyError> {
        if !(0.0..=1.0).contains(&level) {
            return Err(FuzzyError::LevelOutOfRange(level));
        }
        if self.points.is_empty() {
            return Err(FuzzyError::Empty("fuzzy set has no breakpoints"));
        }
        Ok(AlphaCut {
            level,
            lower: self.cut_endpoint(level, false),
            upper: self.cut_endpoint(level, true),
        })
    }

    /// The level-1 cut.
    pub fn core(&self) -> AlphaCut {
        AlphaCut {
            level: 1.0,
            lower: self.cut_endpoint(1.0, false),
            upper: self.cut_endpoint(1.0, true),
        }
    }

    /// The level-0 cut (closure of the support).
    pub fn support(&self) -> AlphaCut {
        AlphaCut {
            level: 0.0,
            lower: self.cut_endpoint(0.0, false),
            upper: self.cut_endpoint(0.0, true),
        }
    }

    fn cut_endpoint(&self, level: f64, from_right: bool) -> f64 {
        let n = self.points.len();
        let at = |k: usize| {
            if from_right {
                self.points[n - 1 - k]
            } else {
                self.points[k]
            }
        };
        if level <= 0.0 {
            // support closure: the breakpoint just before the first positive μ
            return match (0..n).find(|&k| at(k).1 > 0.0) {
                Some(0) | None => at(0).0,
                Some(k) => at(k - 1).0,
            };
        }
        match (0..n).find(|&k| at(k).1 >= level - LEVEL_TOL) {
            Some(0) => at(0).0,
            Some(k) => {
                let (x0, m0) = at(k - 1);
                let (x1, m1) = at(k);
                if m1 - m0 <= 0.0 {
                    x1
                } else {
                    let t = ((level - m0) / (m1 - m0)).clamp(0.0, 1.0);
                    x0 + t * (x1 - x0)
                }
            }
            // sub-normal input: the cut collapses onto the highest breakpoint
            None => {
                let peak = (0..n)
                    .max_by(|&a, &b| at(a).1.total_cmp(&at(b).1))
                    .unwrap_or(0);
                at(peak).0
            }
        }
    }

    pub fn representative_value(&self, kind: ReferencePointKind) -> f64 {
        match kind {
            ReferencePointKind::CoreCentre => self.core().midpoint(),
            ReferencePointKind::CentroidOfCharacteristicPoints => {
                self.points.iter().map(|p| p.0).sum::<f64>() / self.points.len() as f64
            }
        }
    }

    /// Checks the CNF invariants and reports every violation found.
    pub fn validate_cnf(&self) -> CnfReport {
        validate_points(&self.points)
    }

    pub fn is_cnf(&self) -> bool {
        self.validate_cnf().is_valid()
    }

    /// Drops interior breakpoints lying on the segment between their
    /// neighbours. The membership function is unchanged.
    pub fn simplified(&self) -> Self {
        Self {
            label: self.label.clone(),
            points: drop_collinear(&self.points),
        }
    }
}

impl fmt::Display for PiecewiseLinearFuzzySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.label.is_empty() {
            write!(f, "{}:", self.label)?;
        }
        write!(f, "[")?;
        for (i, (x, mu)) in self.points.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "({x}, {mu})")?;
        }
        write!(f, "]")
    }
}

pub(crate) fn drop_collinear(points: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let mut out: Vec<(f64, f64)> = Vec::with_capacity(points.len());
    for &p in points {
        while out.len() >= 2 {
            let (x0, m0) = out[out.len() - 2];
            let (x1, m1) = out[out.len() - 1];
            let span = p.0 - x0;
            if span <= 0.0 {
                break;
            }
            // vertical offset of the middle point from the chord
            let chord = m0 + (x1 - x0) / span * (p.1 - m0);
            if (chord - m1).abs() <= 1e-12 {
                out.pop();
            } else {
                break;
            }
        }
        out.push(p);
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CnfViolation {
    Empty,
    NonFinite { index: usize },
    NonIncreasingX { index: usize },
    MembershipOutOfRange { index: usize },
    NotNormal { max: f64 },
    NotConvex { index: usize },
}

impl fmt::Display for CnfViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CnfViolation::Empty => write!(f, "no breakpoints"),
            CnfViolation::NonFinite { index } => write!(f, "non-finite value at point {index}"),
            CnfViolation::NonIncreasingX { index } => {
                write!(f, "x not strictly increasing at point {index}")
            }
            CnfViolation::MembershipOutOfRange { index } => {
                write!(f, "membership outside [0, 1] at point {index}")
            }
            CnfViolation::NotNormal { max } => write!(f, "not normal (max membership {max})"),
            CnfViolation::NotConvex { index } => {
                write!(f, "not convex (membership rises again at point {index})")
            }
        }
    }
}

/// Result of [`PiecewiseLinearFuzzySet::validate_cnf`].
#[derive(Debug, Clone, PartialEq, Default)]
pub struct CnfReport {
    pub violations: Vec<CnfViolation>,
}

impl CnfReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn is_normal(&self) -> bool {
        !self
            .violations
            .iter()
            .any(|v| matches!(v, CnfViolation::NotNormal { .. }))
    }

    pub fn is_convex(&self) -> bool {
        !self
            .violations
            .iter()
            .any(|v| matches!(v, CnfViolation::NotConvex { .. }))
    }
}

impl fmt::Display for CnfReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "valid");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

pub(crate) fn validate_points(points: &[(f64, f64)]) -> CnfReport {
    let mut violations = Vec::new();
    if points.is_empty() {
        violations.push(CnfViolation::Empty);
        return CnfReport { violations };
    }
    for (index, &(x, mu)) in points.iter().enumerate() {
        if !x.is_finite() || !mu.is_finite() {
            violations.push(CnfViolation::NonFinite { index });
        } else if !(0.0..=1.0).contains(&mu) {
            violations.push(CnfViolation::MembershipOutOfRange { index });
        }
    }
    for index in 1..points.len() {
        let gap = points[index].0 - points[index - 1].0;
        if gap.is_nan() || gap <= EPS {
            violations.push(CnfViolation::NonIncreasingX { index });
        }
    }
    let max = points.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
    if max.is_nan() || max < 1.0 - EPS {
        violations.push(CnfViolation::NotNormal { max });
    }
    let mut falling = false;
    for index in 1..points.len() {
        let d = points[index].1 - points[index - 1].1;
        if d < -EPS {
            falling = true;
        } else if d > EPS && falling {
            violations.push(CnfViolation::NotConvex { index });
            break;
        }
    }
    CnfReport { violations }
}
