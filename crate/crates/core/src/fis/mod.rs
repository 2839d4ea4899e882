//! The FIS (rule base) and OBS (observation) text formats.
//!
//! Both are line oriented `key=value` files split into `[Section]` blocks;
//! `%` starts a comment. A membership function line looks like
//!
//! ```text
//! MF1='A1':trimf,[5 10 15]![0 1 0]
//! ```
//!
//! where the second list gives the membership value at each characteristic
//! point. `([0 1 0])` and a bare `[0 1 0]` are accepted in its place, and it
//! may be left out for `singlmf`, `trimf` and `trapmf`.

mod model;
mod parse;
mod write;

pub use model::{FisDocument, MembershipDecl, MfKind, ObsDocument, Rule, VariableDecl};
pub use parse::{parse_bundle, parse_fis, parse_obs, ParseError, ParseErrorKind};
pub use write::{serialize_fis, serialize_obs};
