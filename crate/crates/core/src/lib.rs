//! Fuzzy rule interpolation (FRI) for sparse fuzzy rule bases.
//!
//! The crate is split into three layers:
//!
//! - [`fuzzy`]: convex normal piecewise-linear fuzzy sets, α-cuts, reference
//!   points, distances and centre-of-gravity defuzzification.
//! - [`fis`]: the FIS (rule base) and OBS (observation) text formats.
//! - [`methods`]: the interpolation engines (KH, KHstab, VKK, MACI, CRF,
//!   IMUL, GM, ScaleMove) and the top-level [`evaluate`] entry point.
//!
//! ```
//! use fri_core::{evaluate, fis, InterpolationConfig, Method};
//!
//! let rb = fis::parse_fis(include_str!("../fixtures/fis1.fis")).unwrap();
//! let obs = fis::parse_obs(include_str!("../fixtures/obs1.obs")).unwrap();
//! let out = evaluate(&rb, &obs, &InterpolationConfig::new(Method::Kh)).unwrap();
//! assert!((out.outputs[0].crisp - 27.0).abs() < 1e-6);
//! ```

pub mod fis;
pub mod fuzzy;
pub mod methods;

pub use fis::{FisDocument, ObsDocument};
pub use fuzzy::{
    AlphaCut, AlphaLevelScheme, FuzzyError, PiecewiseLinearFuzzySet, ReferencePointKind,
};
pub use methods::{
    evaluate, evaluate_batch, Conclusion, InterpolationConfig, Method, MethodError, Observation,
    OutputConclusion, RuleView,
};
