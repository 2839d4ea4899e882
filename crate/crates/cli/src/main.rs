//! `fri`: evaluate sparse fuzzy rule bases from the command line.

mod commands;
mod csv;
mod svg;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use fri_core::{AlphaLevelScheme, InterpolationConfig, Method, ReferencePointKind};

use commands::Failure;

#[derive(Parser)]
#[command(
    name = "fri",
    version,
    about = "Fuzzy rule interpolation on sparse rule bases"
)]
struct Cli {
    /// Suppress warnings on standard error.
    #[arg(long, short, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a rule base and an observation and check they fit together.
    Validate(Files),
    /// Evaluate one method and print one crisp value per output.
    Eval(EvalArgs),
    /// Evaluate several methods side by side.
    Compare(CompareArgs),
}

#[derive(Args)]
struct Files {
    /// FIS file. Without --obs it must hold a combined FIS/OBS listing.
    #[arg(long)]
    fis: PathBuf,
    /// OBS file.
    #[arg(long)]
    obs: Option<PathBuf>,
}

#[derive(Args)]
struct Tuning {
    /// α-levels: breakpoints, userdefined or userdefined:<n>.
    #[arg(long, default_value = "breakpoints", value_parser = parse_alpha)]
    alpha: AlphaLevelScheme,
    /// Samples over the support for COG defuzzification.
    #[arg(long, default_value_t = fri_core::fuzzy::DEFAULT_NUM_POINTS)]
    num_points: usize,
    /// Reference point: corecentre or centroid.
    #[arg(long, default_value = "corecentre", value_parser = parse_rp)]
    rp: ReferencePointKind,
    /// Minkowski exponent for multi-input distances.
    #[arg(long, default_value_t = 2.0)]
    w: f64,
    /// Decimal places for crisp values.
    #[arg(long, default_value_t = 6)]
    precision: usize,
}

impl Tuning {
    fn config(&self, method: Method) -> InterpolationConfig {
        InterpolationConfig {
            method,
            alpha_levels: self.alpha,
            num_points: self.num_points,
            rp_type: self.rp,
            minkowski_w: self.w,
        }
    }
}

#[derive(Args)]
struct EvalArgs {
    #[command(flatten)]
    files: Files,
    #[arg(long, value_parser = parse_method)]
    method: Method,
    #[command(flatten)]
    tuning: Tuning,
    /// Write the conclusion as CSV.
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Write input and output panels as SVG.
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Args)]
struct CompareArgs {
    #[command(flatten)]
    files: Files,
    /// Comma-separated method list.
    #[arg(long, alias = "method", value_delimiter = ',', required = true, value_parser = parse_method)]
    methods: Vec<Method>,
    #[command(flatten)]
    tuning: Tuning,
    /// Directory receiving one `<METHOD>.csv` per method.
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Write the input panels and all conclusions overlaid as SVG.
    #[arg(long)]
    svg: Option<PathBuf>,
}

fn parse_method(s: &str) -> Result<Method, String> {
    s.parse()
        .map_err(|e: fri_core::methods::UnknownMethod| e.to_string())
}

fn parse_alpha(s: &str) -> Result<AlphaLevelScheme, String> {
    let lower = s.trim().to_ascii_lowercase();
    match lower.split_once(':') {
        None if lower == "breakpoints" => Ok(AlphaLevelScheme::Breakpoints),
        None if lower == "userdefined" => Ok(AlphaLevelScheme::UserDefined(
            fri_core::fuzzy::DEFAULT_USER_LEVELS,
        )),
        Some(("userdefined", n)) => n
            .trim()
            .parse()
            .map(AlphaLevelScheme::UserDefined)
            .map_err(|_| format!("bad level count '{n}'")),
        _ => Err(format!(
            "expected breakpoints, userdefined or userdefined:<n>, got '{s}'"
        )),
    }
}

fn parse_rp(s: &str) -> Result<ReferencePointKind, String> {
    match s.trim().to_ascii_lowercase().as_str() {
        "corecentre" | "corecenter" => Ok(ReferencePointKind::CoreCentre),
        "centroid" => Ok(ReferencePointKind::CentroidOfCharacteristicPoints),
        _ => Err(format!("expected corecentre or centroid, got '{s}'")),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() {
                commands::EXIT_USAGE
            } else {
                0
            });
        }
    };
    let quiet = cli.quiet;
    let result = match cli.command {
        Command::Validate(f) => commands::validate(&f.fis, f.obs.as_deref(), quiet),
        Command::Eval(a) => commands::eval(
            &a.files.fis,
            a.files.obs.as_deref(),
            &a.tuning.config(a.method),
            a.tuning.precision,
            a.csv.as_deref(),
            a.svg.as_deref(),
            quiet,
        ),
        Command::Compare(a) => {
            let configs: Vec<_> = a.methods.iter().map(|&m| a.tuning.config(m)).collect();
            commands::compare(
                &a.files.fis,
                a.files.obs.as_deref(),
                &configs,
                a.tuning.precision,
                a.csv.as_deref(),
                a.svg.as_deref(),
                quiet,
            )
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure { code, message }) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}
