#![allow(dead_code)]

use std::path::PathBuf;
use std::process::{Command, Output};

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/fixtures")
        .join(name)
}

pub fn fri(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fri"))
        .args(args)
        .output()
        .expect("failed to start fri")
}

pub fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

pub fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

pub struct Csv {
    pub samples: Vec<(f64, f64)>,
    pub cuts: Vec<(f64, f64, f64)>,
}

pub fn parse_csv(text: &str) -> Csv {
    let (a, b) = text
        .split_once("\n\n")
        .expect("missing blank line between sections");
    let mut a = a.lines();
    assert_eq!(a.next(), Some("x,mu"));
    let samples = a
        .map(|l| {
            let v: Vec<f64> = l.split(',').map(|f| f.parse().unwrap()).collect();
            (v[0], v[1])
        })
        .collect();
    let mut b = b.lines();
    assert_eq!(b.next(), Some("alpha,lower,upper"));
    let cuts = b
        .map(|l| {
            let v: Vec<f64> = l.split(',').map(|f| f.parse().unwrap()).collect();
            (v[0], v[1], v[2])
        })
        .collect();
    Csv { samples, cuts }
}

/// Centre of gravity of the polyline through the samples, by exact
/// integration of each linear segment.
pub fn polyline_cog(samples: &[(f64, f64)]) -> f64 {
    let (mut area, mut moment) = (0.0, 0.0);
    for w in samples.windows(2) {
        let ((x0, m0), (x1, m1)) = (w[0], w[1]);
        let h = x1 - x0;
        let slope = (m1 - m0) / h;
        // ∫ (m0 + slope (x - x0)) dx and ∫ x (m0 + slope (x - x0)) dx over [x0, x1]
        area += h * (m0 + m1) / 2.0;
        moment += m0 * (x1 * x1 - x0 * x0) / 2.0
            + slope * ((x1.powi(3) - x0.powi(3)) / 3.0 - x0 * (x1 * x1 - x0 * x0) / 2.0);
    }
    moment / area
}

/// Rows of a `compare` table as (method, crisp values, status).
pub fn parse_table(text: &str) -> Vec<(String, Vec<f64>, String)> {
    text.lines()
        .skip(1)
        .map(|l| {
            let f: Vec<&str> = l.split('\t').collect();
            let crisp = f[1..f.len() - 1]
                .iter()
                .filter_map(|v| v.parse().ok())
                .collect();
            (f[0].to_string(), crisp, f[f.len() - 1].to_string())
        })
        .collect()
}
