//! Interpolation engines for sparse rule bases.
//!
//! Every method works on [`RuleView`]s (rules with their fuzzy sets
//! resolved) and an [`Observation`], and produces an [`OutputConclusion`]
//! for one output variable. [`evaluate`] does the conversion from parsed
//! documents and runs a method for every output.
//!
//! All methods except KHstab interpolate between the two rules that flank
//! the observation, see [`select_flanking_pair`].

mod common;
mod crf;
mod eval;
mod gm;
mod imul;
mod kh;
mod maci;
mod scalemove;
mod select;
mod vkk;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::fuzzy::{
    AlphaCut, AlphaLevelScheme, FuzzyError, PiecewiseLinearFuzzySet, ReferencePointKind,
    DEFAULT_NUM_POINTS,
};

pub use crf::crf_interpolate;
pub use eval::{evaluate, evaluate_batch, interpolate, observation_from, rule_views};
pub use gm::{gm_interpolate, gm_interpolated_rule};
pub use imul::imul_interpolate;
pub use kh::{kh_interpolate, khstab_interpolate};
pub use maci::{maci_interpolate, maci_lambda};
pub use scalemove::{scalemove_interpolate, scalemove_trace, ScaleMoveTrace};
pub use select::{select_flanking_pair, select_flanking_pair_with, FlankingPair};
pub use vkk::vkk_interpolate;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Kh,
    KhStab,
    Vkk,
    Maci,
    Crf,
    Imul,
    Gm,
    ScaleMove,
}

impl Method {
    pub const ALL: [Method; 8] = [
        Method::Kh,
        Method::KhStab,
        Method::Vkk,
        Method::Maci,
        Method::Crf,
        Method::Imul,
        Method::Gm,
        Method::ScaleMove,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Kh => "KH",
            Method::KhStab => "KHstab",
            Method::Vkk => "VKK",
            Method::Maci => "MACI",
            Method::Crf => "CRF",
            Method::Imul => "IMUL",
            Method::Gm => "GM",
            Method::ScaleMove => "ScaleMove",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown interpolation method '{0}' (expected one of KH, KHstab, VKK, MACI, CRF, IMUL, GM, ScaleMove)")]
pub struct UnknownMethod(pub String);

impl FromStr for Method {
    type Err = UnknownMethod;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "kh" => Ok(Method::Kh),
            "khstab" | "khstabilized" => Ok(Method::KhStab),
            "vkk" => Ok(Method::Vkk),
            "maci" => Ok(Method::Maci),
            "crf" => Ok(Method::Crf),
            "imul" => Ok(Method::Imul),
            "gm" => Ok(Method::Gm),
            "scalemove" => Ok(Method::ScaleMove),
            _ => Err(UnknownMethod(s.to_string())),
        }
    }
}

/// Method selector and its tuning parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct InterpolationConfig {
    pub method: Method,
    pub alpha_levels: AlphaLevelScheme,
    /// Uniform samples over the conclusion's support used for
    /// defuzzification.
    pub num_points: usize,
    pub rp_type: ReferencePointKind,
    /// Exponent of the Minkowski distance combining input dimensions.
    pub minkowski_w: f64,
}

impl InterpolationConfig {
    pub fn new(method: Method) -> Self {
        Self {
            method,
            alpha_levels: AlphaLevelScheme::Breakpoints,
            num_points: DEFAULT_NUM_POINTS,
            rp_type: ReferencePointKind::CoreCentre,
            minkowski_w: 2.0,
        }
    }

    pub fn validate(&self) -> Result<(), MethodError> {
        if self.num_points < 2 {
            return Err(MethodError::InvalidConfig(format!(
                "num_points must be >= 2, got {}",
                self.num_points
            )));
        }
        if self.minkowski_w.is_nan() || self.minkowski_w < 1.0 {
            return Err(MethodError::InvalidConfig(format!(
                "Minkowski exponent must be >= 1, got {}",
                self.minkowski_w
            )));
        }
        if let AlphaLevelScheme::UserDefined(n) = self.alpha_levels {
            if n < 2 {
                return Err(MethodError::InvalidConfig(format!(
                    "user-defined α-level count must be >= 2, got {n}"
                )));
            }
        }
        Ok(())
    }
}

/// One fuzzy set per input dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct Observation {
    pub sets: Vec<PiecewiseLinearFuzzySet>,
}

impl Observation {
    pub fn new(sets: Vec<PiecewiseLinearFuzzySet>) -> Self {
        Self { sets }
    }

    pub fn dims(&self) -> usize {
        self.sets.len()
    }
}

/// A rule with its membership functions resolved for one output.
#[derive(Debug, Clone, PartialEq)]
pub struct RuleView {
    /// 1-based position in the rule base.
    pub index: usize,
    pub antecedents: Vec<PiecewiseLinearFuzzySet>,
    pub consequent: PiecewiseLinearFuzzySet,
    pub weight: f64,
}

impl RuleView {
    pub fn new(
        index: usize,
        antecedents: Vec<PiecewiseLinearFuzzySet>,
        consequent: PiecewiseLinearFuzzySet,
    ) -> Self {
        Self {
            index,
            antecedents,
            consequent,
            weight: 1.0,
        }
    }
}

/// Interpolated conclusion for one output variable.
#[derive(Debug, Clone, PartialEq)]
pub struct OutputConclusion {
    /// The conclusion B*. Only guaranteed to be a valid CNF set when
    /// `abnormal` is false.
    pub fuzzy: PiecewiseLinearFuzzySet,
    /// The α-cuts the conclusion was assembled from.
    pub cuts: Vec<AlphaCut>,
    pub crisp: f64,
    pub abnormal: bool,
    pub diagnostics: Vec<String>,
}

/// Result of [`evaluate`]: one entry per output variable.
#[derive(Debug, Clone, PartialEq)]
pub struct Conclusion {
    pub method: Method,
    pub outputs: Vec<OutputConclusion>,
    pub diagnostics: Vec<String>,
}

impl Conclusion {
    pub fn crisp(&self) -> Vec<f64> {
        self.outputs.iter().map(|o| o.crisp).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MethodError {
    #[error(transparent)]
    Fuzzy(#[from] FuzzyError),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("dimension mismatch: rule base has {expected} inputs, observation has {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("{method} requires >= 2 rules, got {found}")]
    TooFewRules { method: Method, found: usize },
    #[error("rule {rule} does not reference every input (index 0); interpolation needs full antecedents")]
    IncompleteAntecedent { rule: usize },
    #[error("observation not surrounded by the rule base: {0}")]
    NotSurrounded(String),
    #[error("degenerate rules: {0}")]
    Degenerate(String),
    #[error("width ratio undefined at α = {level}: interpolated antecedent width is zero")]
    WidthRatioUndefined { level: f64 },
    #[error("relative fuzziness undefined at α = {level}: antecedent flank has zero width")]
    RelativeFuzzinessUndefined { level: f64 },
    #[error("scale rate undefined: intermediate antecedent has zero support width")]
    ScaleUndefined,
    #[error("{method} does not support the shape of set '{label}'")]
    UnsupportedShape { method: Method, label: String },
    #[error("output '{output}': {source}")]
    InOutput {
        output: String,
        #[source]
        source: Box<MethodError>,
    },
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn method_names_parse_case_insensitively() {
        for m in Method::ALL {
            assert_eq!(m.name().parse::<Method>().unwrap(), m);
            assert_eq!(m.name().to_uppercase().parse::<Method>().unwrap(), m);
        }
        assert_eq!("KHstabilized".parse::<Method>().unwrap(), Method::KhStab);
        assert!("FIVE".parse::<Method>().is_err());
    }

    #[test]
    fn config_defaults() {
        let cfg = InterpolationConfig::new(Method::Kh);
        assert_eq!(cfg.num_points, 501);
        assert_eq!(cfg.minkowski_w, 2.0);
        assert_eq!(cfg.rp_type, ReferencePointKind::CoreCentre);
        assert_eq!(cfg.alpha_levels, AlphaLevelScheme::Breakpoints);
        assert!(cfg.validate().is_ok());
        let bad = InterpolationConfig {
            minkowski_w: 0.5,
            ..cfg.clone()
        };
        assert!(bad.validate().is_err());
        let bad = InterpolationConfig {
            num_points: 1,
            ..cfg
        };
        assert!(bad.validate().is_err());
    }
}
