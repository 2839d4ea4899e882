use crate::fuzzy::{FuzzyError, PiecewiseLinearFuzzySet, EPS};

/// Membership-function type keyword of an `MF` line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MfKind {
    Singleton,
    Triangle,
    Trapezoid,
    Polygon,
}

impl MfKind {
    pub fn keyword(self) -> &'static str {
        match self {
            MfKind::Singleton => "singlmf",
            MfKind::Triangle => "trimf",
            MfKind::Trapezoid => "trapmf",
            MfKind::Polygon => "polymf",
        }
    }

    pub fn from_keyword(s: &str) -> Option<Self> {
        match s.to_ascii_lowercase().as_str() {
            "singlmf" => Some(MfKind::Singleton),
            "trimf" => Some(MfKind::Triangle),
            "trapmf" => Some(MfKind::Trapezoid),
            "polymf" => Some(MfKind::Polygon),
            _ => None,
        }
    }

    pub fn arity_matches(self, n: usize) -> bool {
        match self {
            MfKind::Singleton => n == 1,
            MfKind::Triangle => n == 3,
            MfKind::Trapezoid => n == 4,
            MfKind::Polygon => n >= 2,
        }
    }

    pub fn arity_text(self) -> &'static str {
        match self {
            MfKind::Singleton => "1",
            MfKind::Triangle => "3",
            MfKind::Trapezoid => "4",
            MfKind::Polygon => "at least 2",
        }
    }

    /// Membership values assumed when a file omits `paramsy`.
    pub fn default_paramsy(self) -> Option<Vec<f64>> {
        match self {
            MfKind::Singleton => Some(vec![1.0]),
            MfKind::Triangle => Some(vec![0.0, 1.0, 0.0]),
            MfKind::Trapezoid => Some(vec![0.0, 1.0, 1.0, 0.0]),
            MfKind::Polygon => None,
        }
    }
}

/// One `MF<k>=` (or `OBS<k>=`) line: characteristic points and their
/// membership values.
#[derive(Debug, Clone, PartialEq)]
pub struct MembershipDecl {
    pub label: String,
    pub kind: MfKind,
    pub params: Vec<f64>,
    pub paramsy: Vec<f64>,
}

impl MembershipDecl {
    pub fn new(
        label: impl Into<String>,
        kind: MfKind,
        params: Vec<f64>,
        paramsy: Vec<f64>,
    ) -> Self {
        Self {
            label: label.into(),
            kind,
            params,
            paramsy,
        }
    }

    /// Zips `params` with `paramsy` into breakpoints. Repeated x values with
    /// equal membership collapse into one breakpoint.
    pub fn to_fuzzy_set(&self) -> Result<PiecewiseLinearFuzzySet, FuzzyError> {
        if self.params.len() != self.paramsy.len() {
            return Err(FuzzyError::LengthMismatch(
                self.params.len(),
                self.paramsy.len(),
            ));
        }
        let mut points: Vec<(f64, f64)> = Vec::with_capacity(self.params.len());
        for (&x, &mu) in self.params.iter().zip(&self.paramsy) {
            match points.last() {
                Some(&(px, pmu)) if (x - px).abs() <= EPS => {
                    if (mu - pmu).abs() > EPS {
                        return Err(FuzzyError::ConflictingDuplicate {
                            x,
                            first: pmu,
                            second: mu,
                        });
                    }
                }
                _ => points.push((x, mu)),
            }
        }
        PiecewiseLinearFuzzySet::new(self.label.clone(), points)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VariableDecl {
    pub name: String,
    pub range: (f64, f64),
    pub mfs: Vec<MembershipDecl>,
}

/// A `[Rules]` line. Indices are 1-based; 0 marks an unused variable.
#[derive(Debug, Clone, PartialEq)]
pub struct Rule {
    pub antecedents: Vec<usize>,
    pub consequents: Vec<usize>,
    pub weight: f64,
    pub connective: u32,
}

/// Content of a FIS file: a sparse fuzzy rule base.
#[derive(Debug, Clone, PartialEq)]
pub struct FisDocument {
    pub name: String,
    pub system_type: String,
    pub version: String,
    pub num_inputs: usize,
    pub num_outputs: usize,
    pub num_rules: usize,
    pub and_method: Option<String>,
    pub or_method: Option<String>,
    pub imp_method: Option<String>,
    pub agg_method: Option<String>,
    pub defuzz_method: String,
    /// Unrecognised `[System]` entries, kept verbatim in file order.
    pub extra: Vec<(String, String)>,
    pub inputs: Vec<VariableDecl>,
    pub outputs: Vec<VariableDecl>,
    pub rules: Vec<Rule>,
}

/// Content of an OBS file: one fuzzy observation per input.
#[derive(Debug, Clone, PartialEq)]
pub struct ObsDocument {
    pub num_inputs: usize,
    pub name: String,
    pub observations: Vec<MembershipDecl>,
}
