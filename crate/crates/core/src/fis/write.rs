use std::fmt::Write;

use super::model::{FisDocument, MembershipDecl, ObsDocument, Rule, VariableDecl};

fn quote(s: &str) -> String {
    if s.contains('\'') {
        format!("\"{s}\"")
    } else {
        format!("'{s}'")
    }
}

fn list(values: &[f64]) -> String {
    let parts: Vec<String> = values.iter().map(|v| v.to_string()).collect();
    format!("[{}]", parts.join(" "))
}

fn mf_value(d: &MembershipDecl) -> String {
    format!(
        "{}:{},{}!{}",
        quote(&d.label),
        d.kind.keyword(),
        list(&d.params),
        list(&d.paramsy)
    )
}

fn write_variable(out: &mut String, header: &str, var: &VariableDecl) {
    let _ = writeln!(out, "[{header}]");
    let _ = writeln!(out, "Name={}", quote(&var.name));
    let _ = writeln!(out, "Range={}", list(&[var.range.0, var.range.1]));
    let _ = writeln!(out, "NumMFs={}", var.mfs.len());
    for (k, mf) in var.mfs.iter().enumerate() {
        let _ = writeln!(out, "MF{}={}", k + 1, mf_value(mf));
    }
    out.push('\n');
}

fn rule_line(rule: &Rule) -> String {
    let join = |v: &[usize]| {
        v.iter()
            .map(|i| i.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    };
    format!(
        "{}, {} ({}) : {}",
        join(&rule.antecedents),
        join(&rule.consequents),
        rule.weight,
        rule.connective
    )
}

/// Canonical FIS text; membership values use the `![...]` form.
pub fn serialize_fis(doc: &FisDocument) -> String {
    let mut out = String::new();
    out.push_str("[System]\n");
    let _ = writeln!(out, "Name={}", quote(&doc.name));
    let _ = writeln!(out, "Type={}", quote(&doc.system_type));
    let _ = writeln!(out, "Version={}", doc.version);
    let _ = writeln!(out, "NumInputs={}", doc.num_inputs);
    let _ = writeln!(out, "NumOutputs={}", doc.num_outputs);
    let _ = writeln!(out, "NumRules={}", doc.num_rules);
    let methods = [
        ("AndMethod", &doc.and_method),
        ("OrMethod", &doc.or_method),
        ("ImpMethod", &doc.imp_method),
        ("AggMethod", &doc.agg_method),
    ];
    for (key, value) in methods {
        if let Some(v) = value {
            let _ = writeln!(out, "{key}={}", quote(v));
        }
    }
    for (key, raw) in &doc.extra {
        let _ = writeln!(out, "{key}={raw}");
    }
    let _ = writeln!(out, "DefuzzMethod={}", quote(&doc.defuzz_method));
    out.push('\n');
    for (k, var) in doc.inputs.iter().enumerate() {
        write_variable(&mut out, &format!("Input{}", k + 1), var);
    }
    for (k, var) in doc.outputs.iter().enumerate() {
        write_variable(&mut out, &format!("Output{}", k + 1), var);
    }
    out.push_str("[Rules]\n");
    for rule in &doc.rules {
        out.push_str(&rule_line(rule));
        out.push('\n');
    }
    out
}

pub fn serialize_obs(doc: &ObsDocument) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "NumInputs={}", doc.num_inputs);
    let _ = writeln!(out, "ObsName={}", quote(&doc.name));
    out.push_str("[Observation]\n");
    for (k, obs) in doc.observations.iter().enumerate() {
        let _ = writeln!(out, "OBS{}={}", k + 1, mf_value(obs));
    }
    out
}
