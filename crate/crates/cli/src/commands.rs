use std::fs;
use std::path::{Path, PathBuf};

use fri_core::fis::{parse_bundle, parse_fis, parse_obs, FisDocument, ObsDocument, ParseError};
use fri_core::{evaluate, Conclusion, InterpolationConfig, MethodError};

use crate::csv;
use crate::svg::{self, Panel, Style};

pub const EXIT_USAGE: u8 = 2;
pub const EXIT_PARSE: u8 = 3;
pub const EXIT_DIMENSION: u8 = 4;
pub const EXIT_METHOD: u8 = 5;
pub const EXIT_IO: u8 = 6;

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }

    fn io(path: &Path, e: std::io::Error) -> Self {
        Self::new(EXIT_IO, format!("{}: {e}", path.display()))
    }

    fn parse(path: &Path, e: ParseError) -> Self {
        Self::new(EXIT_PARSE, format!("{}: {e}", path.display()))
    }

    fn method(e: &MethodError) -> Self {
        Self::new(method_exit_code(e), e.to_string())
    }
}

fn method_exit_code(e: &MethodError) -> u8 {
    match e {
        MethodError::DimensionMismatch { .. } => EXIT_DIMENSION,
        MethodError::InvalidConfig(_) => EXIT_USAGE,
        MethodError::InOutput { source, .. } => method_exit_code(source),
        _ => EXIT_METHOD,
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::io(path, e))
}

fn load(fis: &Path, obs: Option<&Path>) -> Result<(FisDocument, ObsDocument), Failure> {
    let fis_text = read(fis)?;
    match obs {
        Some(obs) => {
            let obs_text = read(obs)?;
            let f = parse_fis(&fis_text).map_err(|e| Failure::parse(fis, e))?;
            let o = parse_obs(&obs_text).map_err(|e| Failure::parse(obs, e))?;
            Ok((f, o))
        }
        None => parse_bundle(&fis_text).map_err(|e| Failure::parse(fis, e)),
    }
}

fn check_dimensions(fis: &FisDocument, obs: &ObsDocument) -> Result<(), Failure> {
    if fis.num_inputs != obs.num_inputs {
        return Err(Failure::method(&MethodError::DimensionMismatch {
            expected: fis.num_inputs,
            found: obs.num_inputs,
        }));
    }
    Ok(())
}

fn warn(quiet: bool, prefix: &str, messages: impl IntoIterator<Item = impl AsRef<str>>) {
    if quiet {
        return;
    }
    for m in messages {
        eprintln!("{prefix}warning: {}", m.as_ref());
    }
}

fn weight_warnings(fis: &FisDocument) -> Vec<String> {
    fis.rules
        .iter()
        .enumerate()
        .filter(|(_, r)| r.weight != 1.0)
        .map(|(i, r)| {
            format!(
                "rule {} has weight {}; interpolation ignores rule weights",
                i + 1,
                r.weight
            )
        })
        .collect()
}

pub fn validate(fis_path: &Path, obs_path: Option<&Path>, quiet: bool) -> Result<(), Failure> {
    let (fis, obs) = load(fis_path, obs_path)?;
    check_dimensions(&fis, &obs)?;
    warn(quiet, "", weight_warnings(&fis));
    println!(
        "ok: rule base '{}' ({} inputs, {} outputs, {} rules), observation '{}'",
        fis.name, fis.num_inputs, fis.num_outputs, fis.num_rules, obs.name
    );
    Ok(())
}

fn conclusion_warnings(c: &Conclusion) -> Vec<String> {
    c.diagnostics
        .iter()
        .chain(c.outputs.iter().flat_map(|o| o.diagnostics.iter()))
        .cloned()
        .collect()
}

fn status(c: &Conclusion) -> &'static str {
    if c.outputs.iter().any(|o| o.abnormal) {
        "abnormal"
    } else {
        "valid"
    }
}

/// One CSV per output: `base` itself for a single output, otherwise
/// `<stem>_<output name>.<ext>` next to it.
fn csv_targets(base: &Path, fis: &FisDocument) -> Vec<PathBuf> {
    if fis.outputs.len() == 1 {
        return vec![base.to_path_buf()];
    }
    let stem = base
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("conclusion");
    let ext = base.extension().and_then(|s| s.to_str()).unwrap_or("csv");
    fis.outputs
        .iter()
        .map(|o| base.with_file_name(format!("{stem}_{}.{ext}", o.name)))
        .collect()
}

fn write_csvs(
    base: &Path,
    fis: &FisDocument,
    c: &Conclusion,
    cfg: &InterpolationConfig,
) -> Result<(), Failure> {
    for (path, out) in csv_targets(base, fis).iter().zip(&c.outputs) {
        let text = csv::render(out, cfg.num_points)
            .map_err(|e| Failure::new(EXIT_METHOD, e.to_string()))?;
        fs::write(path, text).map_err(|e| Failure::io(path, e))?;
    }
    Ok(())
}

fn input_panels(fis: &FisDocument, obs: &ObsDocument) -> Result<Vec<Panel>, Failure> {
    let mut panels = Vec::with_capacity(fis.inputs.len());
    for (var, o) in fis.inputs.iter().zip(&obs.observations) {
        let mut panel = Panel::new(&var.name, var.range);
        for mf in &var.mfs {
            let set = mf.to_fuzzy_set().map_err(|e| Failure::method(&e.into()))?;
            panel.add(&mf.label, set.points(), Style::Partition);
        }
        let set = o.to_fuzzy_set().map_err(|e| Failure::method(&e.into()))?;
        panel.add(&o.label, set.points(), Style::Observation);
        panels.push(panel);
    }
    Ok(panels)
}

fn output_panels(fis: &FisDocument) -> Result<Vec<Panel>, Failure> {
    let mut panels = Vec::with_capacity(fis.outputs.len());
    for var in &fis.outputs {
        let mut panel = Panel::new(&var.name, var.range);
        for mf in &var.mfs {
            let set = mf.to_fuzzy_set().map_err(|e| Failure::method(&e.into()))?;
            panel.add(&mf.label, set.points(), Style::Partition);
        }
        panels.push(panel);
    }
    Ok(panels)
}

fn write_svg(
    path: &Path,
    fis: &FisDocument,
    obs: &ObsDocument,
    conclusions: &[&Conclusion],
) -> Result<(), Failure> {
    let inputs = input_panels(fis, obs)?;
    let mut outputs = output_panels(fis)?;
    for (k, c) in conclusions.iter().enumerate() {
        for (panel, out) in outputs.iter_mut().zip(&c.outputs) {
            let label = format!("{} ({})", out.fuzzy.label(), c.method);
            panel.add(&label, out.fuzzy.points(), Style::Conclusion(k));
        }
    }
    fs::write(path, svg::render(&inputs, &outputs)).map_err(|e| Failure::io(path, e))
}

pub fn eval(
    fis_path: &Path,
    obs_path: Option<&Path>,
    cfg: &InterpolationConfig,
    precision: usize,
    csv_path: Option<&Path>,
    svg_path: Option<&Path>,
    quiet: bool,
) -> Result<(), Failure> {
    let (fis, obs) = load(fis_path, obs_path)?;
    let c = evaluate(&fis, &obs, cfg).map_err(|e| Failure::method(&e))?;
    warn(quiet, "", conclusion_warnings(&c));
    for (var, out) in fis.outputs.iter().zip(&c.outputs) {
        let flag = if out.abnormal { "abnormal" } else { "valid" };
        println!("{}\t{:.*}\t{flag}", var.name, precision, out.crisp);
    }
    if let Some(p) = csv_path {
        write_csvs(p, &fis, &c, cfg)?;
    }
    if let Some(p) = svg_path {
        write_svg(p, &fis, &obs, &[&c])?;
    }
    Ok(())
}

/// Prints a tab-separated table with one row per method. A failing method
/// gets an error row; the others still run and the exit code reports the
/// failure afterwards.
pub fn compare(
    fis_path: &Path,
    obs_path: Option<&Path>,
    configs: &[InterpolationConfig],
    precision: usize,
    csv_dir: Option<&Path>,
    svg_path: Option<&Path>,
    quiet: bool,
) -> Result<(), Failure> {
    let (fis, obs) = load(fis_path, obs_path)?;
    check_dimensions(&fis, &obs)?;
    let results: Vec<Result<Conclusion, MethodError>> = std::thread::scope(|s| {
        let handles: Vec<_> = configs
            .iter()
            .map(|cfg| s.spawn(|| evaluate(&fis, &obs, cfg)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("evaluation thread panicked"))
            .collect()
    });

    let mut header = vec!["method".to_string()];
    header.extend(fis.outputs.iter().map(|o| o.name.clone()));
    header.push("status".into());
    println!("{}", header.join("\t"));
    let mut failed = Vec::new();
    for (cfg, r) in configs.iter().zip(&results) {
        let mut row = vec![cfg.method.to_string()];
        match r {
            Ok(c) => {
                row.extend(
                    c.outputs
                        .iter()
                        .map(|o| format!("{:.*}", precision, o.crisp)),
                );
                row.push(status(c).into());
                warn(quiet, &format!("{}: ", cfg.method), conclusion_warnings(c));
            }
            Err(e) => {
                row.extend(fis.outputs.iter().map(|_| "-".to_string()));
                row.push(format!("error: {e}"));
                failed.push((cfg.method, method_exit_code(e)));
            }
        }
        println!("{}", row.join("\t"));
    }

    if let Some(dir) = csv_dir {
        fs::create_dir_all(dir).map_err(|e| Failure::io(dir, e))?;
        for (cfg, r) in configs.iter().zip(&results) {
            if let Ok(c) = r {
                let base = dir.join(format!("{}.csv", cfg.method));
                write_csvs(&base, &fis, c, cfg)?;
            }
        }
    }
    if let Some(p) = svg_path {
        let ok: Vec<&Conclusion> = results.iter().filter_map(|r| r.as_ref().ok()).collect();
        write_svg(p, &fis, &obs, &ok)?;
    }

    match failed.first() {
        None => Ok(()),
        Some(&(_, code)) => {
            let names: Vec<String> = failed.iter().map(|(m, _)| m.to_string()).collect();
            Err(Failure::new(code, format!("{} failed", names.join(", "))))
        }
    }
}
