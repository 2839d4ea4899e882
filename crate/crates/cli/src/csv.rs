//! Conclusion export: `x,mu` samples, a blank line, then `alpha,lower,upper`.
//!
//! Values use Rust's shortest round-trip formatting so a reader recovers
//! the exact samples the crisp value was computed from.

use std::fmt::Write;

use fri_core::fuzzy::{sample_points, FuzzyError};
use fri_core::OutputConclusion;

pub fn render(out: &OutputConclusion, num_points: usize) -> Result<String, FuzzyError> {
    let samples = sample_points(&out.fuzzy, num_points)?;
    let mut s = String::from("x,mu\n");
    for (x, mu) in samples {
        writeln!(s, "{x},{mu}").unwrap();
    }
    s.push_str("\nalpha,lower,upper\n");
    for c in &out.cuts {
        writeln!(s, "{},{},{}", c.level, c.lower, c.upper).unwrap();
    }
    Ok(s)
}
