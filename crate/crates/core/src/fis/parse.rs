use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use super::model::{FisDocument, MembershipDecl, MfKind, ObsDocument, Rule, VariableDecl};
use crate::fuzzy::{FuzzyError, EPS};

/// A parse or validation failure, tied to the 1-based line it was found on
/// when there is one.
#[derive(Debug, Clone, PartialEq, Error)]
pub struct ParseError {
    pub line: Option<usize>,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(line) => write!(f, "line {line}: {}", self.kind),
            None => write!(f, "{}", self.kind),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseErrorKind {
    #[error("unknown section [{0}]")]
    UnknownSection(String),
    #[error("section [{0}] appears twice")]
    DuplicateSection(String),
    #[error("section [{0}] is not allowed in this file")]
    UnexpectedSection(String),
    #[error("missing section [{0}]")]
    MissingSection(String),
    #[error("entry outside of any section")]
    EntryOutsideSection,
    #[error("unexpected '*****' separator (combined FIS/OBS text needs parse_bundle)")]
    UnexpectedSeparator,
    #[error("expected key=value")]
    ExpectedKeyValue,
    #[error("unknown key '{key}' in [{section}]")]
    UnknownKey { section: String, key: String },
    #[error("key '{0}' given twice")]
    DuplicateKey(String),
    #[error("missing key '{key}' in [{section}]")]
    MissingKey { section: String, key: String },
    #[error("bad value for '{key}': {message}")]
    BadValue { key: String, message: String },
    #[error("malformed membership function: {0}")]
    MalformedMf(String),
    #[error("unknown membership function type '{0}'")]
    UnknownMfKind(String),
    #[error("{kind} needs {expected} characteristic points, got {found}")]
    Arity {
        kind: &'static str,
        expected: &'static str,
        found: usize,
    },
    #[error("params has {params} values but paramsy has {paramsy}")]
    ParamsyLength { params: usize, paramsy: usize },
    #[error("{0} requires explicit paramsy membership values")]
    MissingParamsy(&'static str),
    #[error("{what}: declared {declared}, found {found}")]
    CountMismatch {
        what: String,
        declared: usize,
        found: usize,
    },
    #[error("membership function '{label}' has point {x} outside range [{lo} {hi}]")]
    MfOutOfRange {
        label: String,
        x: f64,
        lo: f64,
        hi: f64,
    },
    #[error("membership function '{label}' is not a convex normal fuzzy set: {reason}")]
    NotCnf { label: String, reason: FuzzyError },
    #[error("range [{0} {1}] is empty")]
    EmptyRange(f64, f64),
    #[error("malformed rule: {0}")]
    MalformedRule(String),
    #[error(
        "rule {rule}: {side} index {index} out of range (variable has {max} membership functions)"
    )]
    RuleIndex {
        rule: usize,
        side: &'static str,
        index: usize,
        max: usize,
    },
    #[error("rule {rule}: weight {weight} is outside (0, 1]")]
    RuleWeight { rule: usize, weight: f64 },
}

fn err(line: usize, kind: ParseErrorKind) -> ParseError {
    ParseError {
        line: Some(line),
        kind,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum SectionId {
    System,
    Input(Option<usize>),
    Output(Option<usize>),
    Rules,
    Observation,
}

impl SectionId {
    fn parse(name: &str) -> Option<Self> {
        let lower = name.trim().to_ascii_lowercase();
        let indexed = |prefix: &str| -> Option<Option<usize>> {
            let rest = lower.strip_prefix(prefix)?;
            if rest.is_empty() {
                Some(None)
            } else {
                rest.parse::<usize>().ok().filter(|&k| k >= 1).map(Some)
            }
        };
        match lower.as_str() {
            "system" => Some(SectionId::System),
            "rules" => Some(SectionId::Rules),
            "observation" => Some(SectionId::Observation),
            _ => indexed("input")
                .map(SectionId::Input)
                .or_else(|| indexed("output").map(SectionId::Output)),
        }
    }

    fn is_fis(self) -> bool {
        !matches!(self, SectionId::Observation)
    }
}

#[derive(Debug)]
struct Block<'a> {
    /// `None` for lines before the first section header.
    header: Option<(usize, SectionId, &'a str)>,
    entries: Vec<(usize, &'a str)>,
}

#[derive(Debug)]
struct Lexed<'a> {
    /// Blocks before the separator, then blocks after it.
    parts: Vec<Vec<Block<'a>>>,
}

fn strip_comment(line: &str) -> &str {
    let mut quote: Option<char> = None;
    for (i, c) in line.char_indices() {
        match quote {
            Some(q) if c == q => quote = None,
            Some(_) => {}
            None if c == '\'' || c == '"' => quote = Some(c),
            None if c == '%' => return &line[..i],
            None => {}
        }
    }
    line
}

fn lex(text: &str) -> Result<Lexed<'_>, ParseError> {
    let mut parts = vec![vec![Block {
        header: None,
        entries: Vec::new(),
    }]];
    for (idx, raw) in text.split('\n').enumerate() {
        let no = idx + 1;
        let line = strip_comment(raw.trim_end_matches('\r')).trim();
        if line.is_empty() {
            continue;
        }
        if line.len() >= 3 && line.chars().all(|c| c == '*') {
            if parts.len() > 1 {
                return Err(err(no, ParseErrorKind::UnexpectedSeparator));
            }
            parts.push(vec![Block {
                header: None,
                entries: Vec::new(),
            }]);
            continue;
        }
        let part = parts.last_mut().expect("at least one part");
        if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
            if !name.contains('[') && !name.contains('=') {
                let id = SectionId::parse(name).ok_or_else(|| {
                    err(no, ParseErrorKind::UnknownSection(name.trim().to_string()))
                })?;
                part.push(Block {
                    header: Some((no, id, name.trim())),
                    entries: Vec::new(),
                });
                continue;
            }
        }
        part.last_mut()
            .expect("at least one block")
            .entries
            .push((no, line));
    }
    Ok(Lexed { parts })
}

fn split_key_value(no: usize, line: &str) -> Result<(&str, &str), ParseError> {
    let (k, v) = line
        .split_once('=')
        .ok_or_else(|| err(no, ParseErrorKind::ExpectedKeyValue))?;
    let k = k.trim();
    if k.is_empty() {
        return Err(err(no, ParseErrorKind::ExpectedKeyValue));
    }
    Ok((k, v.trim()))
}

fn unquote(v: &str) -> &str {
    let v = v.trim();
    for q in ['\'', '"'] {
        if v.len() >= 2 && v.starts_with(q) && v.ends_with(q) {
            return &v[1..v.len() - 1];
        }
    }
    v
}

fn bad_value(no: usize, key: &str, message: impl Into<String>) -> ParseError {
    err(
        no,
        ParseErrorKind::BadValue {
            key: key.to_string(),
            message: message.into(),
        },
    )
}

fn parse_count(no: usize, key: &str, v: &str) -> Result<usize, ParseError> {
    unquote(v).trim().parse::<usize>().map_err(|_| {
        bad_value(
            no,
            key,
            format!("expected a non-negative integer, got '{v}'"),
        )
    })
}

fn parse_number(tok: &str) -> Option<f64> {
    tok.parse::<f64>().ok().filter(|x| x.is_finite())
}

/// Numbers separated by whitespace and/or commas.
fn parse_number_list(inner: &str) -> Result<Vec<f64>, String> {
    inner
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| parse_number(t).ok_or_else(|| format!("'{t}' is not a finite number")))
        .collect()
}

fn parse_range(no: usize, key: &str, v: &str) -> Result<(f64, f64), ParseError> {
    let inner = v
        .trim()
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| bad_value(no, key, "expected [lo hi]"))?;
    let nums = parse_number_list(inner).map_err(|m| bad_value(no, key, m))?;
    match nums.as_slice() {
        [lo, hi] if lo < hi => Ok((*lo, *hi)),
        [lo, hi] => Err(err(no, ParseErrorKind::EmptyRange(*lo, *hi))),
        _ => Err(bad_value(no, key, "expected exactly two numbers")),
    }
}

/// Minimal cursor for the MF value grammar.
struct Cursor<'a> {
    s: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(s: &'a str) -> Self {
        Self { s, pos: 0 }
    }

    fn rest(&self) -> &'a str {
        &self.s[self.pos..]
    }

    fn skip_ws(&mut self) {
        let rest = self.rest();
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), String> {
        self.skip_ws();
        if self.eat(c) {
            Ok(())
        } else {
            Err(format!("expected '{c}' at '{}'", self.rest()))
        }
    }

    fn quoted(&mut self) -> Result<&'a str, String> {
        self.skip_ws();
        let q = match self.peek() {
            Some(q @ ('\'' | '"')) => q,
            _ => return Err(format!("expected quoted label at '{}'", self.rest())),
        };
        self.pos += 1;
        let rest = self.rest();
        let end = rest.find(q).ok_or("unterminated label")?;
        self.pos += end + 1;
        Ok(&rest[..end])
    }

    fn word(&mut self) -> &'a str {
        self.skip_ws();
        let quoted = self.eat('\'') || self.eat('"');
        let rest = self.rest();
        let end = rest
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
            .unwrap_or(rest.len());
        self.pos += end;
        if quoted {
            let _ = self.eat('\'') || self.eat('"');
        }
        &rest[..end]
    }

    fn bracket_list(&mut self) -> Result<Vec<f64>, String> {
        self.expect('[')?;
        let rest = self.rest();
        let end = rest.find(']').ok_or("unterminated '['")?;
        self.pos += end + 1;
        parse_number_list(&rest[..end])
    }
}

/// Parses the right-hand side of an `MF<k>=` / `OBS<k>=` line:
/// `'<label>':<kind>,[x ...]` followed by `![y ...]`, `([y ...])`,
/// `[y ...]` or nothing.
fn parse_mf_value(no: usize, v: &str) -> Result<MembershipDecl, ParseError> {
    let malformed = |m: String| err(no, ParseErrorKind::MalformedMf(m));
    let mut c = Cursor::new(v);
    let label = c.quoted().map_err(malformed)?.to_string();
    c.expect(':').map_err(malformed)?;
    let kind_word = c.word();
    let kind = MfKind::from_keyword(kind_word)
        .ok_or_else(|| err(no, ParseErrorKind::UnknownMfKind(kind_word.to_string())))?;
    c.expect(',').map_err(malformed)?;
    let params = c.bracket_list().map_err(malformed)?;
    c.skip_ws();
    let paramsy = match c.peek() {
        None => None,
        Some('!') => {
            c.pos += 1;
            Some(c.bracket_list().map_err(malformed)?)
        }
        Some('(') => {
            c.pos += 1;
            let ys = c.bracket_list().map_err(malformed)?;
            c.expect(')').map_err(malformed)?;
            Some(ys)
        }
        Some('[') => Some(c.bracket_list().map_err(malformed)?),
        Some(_) => return Err(malformed(format!("unexpected '{}'", c.rest()))),
    };
    c.skip_ws();
    if !c.rest().is_empty() {
        return Err(malformed(format!("trailing text '{}'", c.rest())));
    }
    if !kind.arity_matches(params.len()) {
        return Err(err(
            no,
            ParseErrorKind::Arity {
                kind: kind.keyword(),
                expected: kind.arity_text(),
                found: params.len(),
            },
        ));
    }
    let paramsy = match paramsy {
        Some(ys) => ys,
        None => kind
            .default_paramsy()
            .ok_or_else(|| err(no, ParseErrorKind::MissingParamsy(kind.keyword())))?,
    };
    if paramsy.len() != params.len() {
        return Err(err(
            no,
            ParseErrorKind::ParamsyLength {
                params: params.len(),
                paramsy: paramsy.len(),
            },
        ));
    }
    let decl = MembershipDecl {
        label,
        kind,
        params,
        paramsy,
    };
    if let Err(reason) = decl.to_fuzzy_set() {
        return Err(err(
            no,
            ParseErrorKind::NotCnf {
                label: decl.label.clone(),
                reason,
            },
        ));
    }
    Ok(decl)
}

/// Splits `MF12` / `OBS3` style keys into their index.
fn indexed_key(key: &str, prefix: &str) -> Option<usize> {
    let head = key.get(..prefix.len())?;
    if key.len() <= prefix.len() || !head.eq_ignore_ascii_case(prefix) {
        return None;
    }
    key[prefix.len()..].parse::<usize>().ok()
}

fn collect_indexed(
    items: BTreeMap<usize, (usize, MembershipDecl)>,
    what: &str,
    declared: usize,
    decl_line: usize,
) -> Result<Vec<MembershipDecl>, ParseError> {
    let found = items.len();
    let contiguous = items.keys().copied().eq(1..=found);
    if found != declared || !contiguous {
        return Err(err(
            decl_line,
            ParseErrorKind::CountMismatch {
                what: what.to_string(),
                declared,
                found,
            },
        ));
    }
    Ok(items.into_values().map(|(_, d)| d).collect())
}

fn missing_key(line: usize, section: &str, key: &str) -> ParseError {
    err(
        line,
        ParseErrorKind::MissingKey {
            section: section.to_string(),
            key: key.to_string(),
        },
    )
}

fn parse_variable(block: &Block<'_>) -> Result<VariableDecl, ParseError> {
    let (hline, _, hname) = block.header.expect("variable blocks have headers");
    let mut name = None;
    let mut range = None;
    let mut num_mfs: Option<(usize, usize)> = None;
    let mut mfs = BTreeMap::new();
    for &(no, line) in &block.entries {
        let (key, v) = split_key_value(no, line)?;
        let dup = || err(no, ParseErrorKind::DuplicateKey(key.to_string()));
        if key.eq_ignore_ascii_case("Name") {
            if name.replace(unquote(v).to_string()).is_some() {
                return Err(dup());
            }
        } else if key.eq_ignore_ascii_case("Range") {
            if range.replace((no, parse_range(no, key, v)?)).is_some() {
                return Err(dup());
            }
        } else if key.eq_ignore_ascii_case("NumMFs") {
            if num_mfs.replace((no, parse_count(no, key, v)?)).is_some() {
                return Err(dup());
            }
        } else if let Some(k) = indexed_key(key, "MF") {
            if mfs.insert(k, (no, parse_mf_value(no, v)?)).is_some() {
                return Err(dup());
            }
        } else {
            return Err(err(
                no,
                ParseErrorKind::UnknownKey {
                    section: hname.to_string(),
                    key: key.to_string(),
                },
            ));
        }
    }
    let name = name.ok_or_else(|| missing_key(hline, hname, "Name"))?;
    let (_, (lo, hi)) = range.ok_or_else(|| missing_key(hline, hname, "Range"))?;
    let (nline, n) = num_mfs.ok_or_else(|| missing_key(hline, hname, "NumMFs"))?;
    for (no, d) in mfs.values() {
        if let Some(&x) = d.params.iter().find(|&&x| x < lo - EPS || x > hi + EPS) {
            return Err(err(
                *no,
                ParseErrorKind::MfOutOfRange {
                    label: d.label.clone(),
                    x,
                    lo,
                    hi,
                },
            ));
        }
    }
    let mfs = collect_indexed(mfs, &format!("[{hname}] NumMFs"), n, nline)?;
    Ok(VariableDecl {
        name,
        range: (lo, hi),
        mfs,
    })
}

fn parse_index_list(text: &str) -> Result<Vec<usize>, String> {
    text.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| format!("'{t}' is not a non-negative membership function index"))
        })
        .collect()
}

/// `<i1> <i2> ..., <c1> ... (<w>) : <conn>`
fn parse_rule(no: usize, line: &str) -> Result<Rule, ParseError> {
    let malformed = |m: &str| err(no, ParseErrorKind::MalformedRule(m.to_string()));
    let (lhs, conn) = line
        .rsplit_once(':')
        .ok_or_else(|| malformed("missing ': <connective>'"))?;
    let connective = conn
        .trim()
        .parse::<u32>()
        .map_err(|_| malformed("connective must be a non-negative integer"))?;
    let (indices, weight) = lhs
        .split_once('(')
        .ok_or_else(|| malformed("missing '(<weight>)'"))?;
    let weight = weight
        .trim_end()
        .strip_suffix(')')
        .ok_or_else(|| malformed("missing ')' after weight"))?;
    let weight = parse_number(weight.trim()).ok_or_else(|| malformed("weight must be a number"))?;
    let (ante, cons) = indices
        .split_once(',')
        .ok_or_else(|| malformed("missing ',' between antecedents and consequents"))?;
    let antecedents = parse_index_list(ante).map_err(|m| malformed(&m))?;
    let consequents = parse_index_list(cons).map_err(|m| malformed(&m))?;
    Ok(Rule {
        antecedents,
        consequents,
        weight,
        connective,
    })
}

fn check_sections(
    list: &[(usize, usize, &Block<'_>)],
    what: &str,
    declared: usize,
    line: usize,
) -> Result<(), ParseError> {
    let found = list.len();
    if found != declared || !list.iter().map(|&(k, _, _)| k).eq(1..=found) {
        return Err(err(
            line,
            ParseErrorKind::CountMismatch {
                what: what.to_string(),
                declared,
                found,
            },
        ));
    }
    Ok(())
}

#[derive(Default)]
struct FisParts<'a> {
    system: Option<&'a Block<'a>>,
    inputs: Vec<(usize, usize, &'a Block<'a>)>,
    outputs: Vec<(usize, usize, &'a Block<'a>)>,
    rules: Option<&'a Block<'a>>,
    unnumbered_inputs: usize,
    unnumbered_outputs: usize,
}

impl<'a> FisParts<'a> {
    fn add(&mut self, block: &'a Block<'a>) -> Result<(), ParseError> {
        let (no, id, name) = block.header.expect("only header blocks are routed");
        let dup = || err(no, ParseErrorKind::DuplicateSection(name.to_string()));
        match id {
            SectionId::System => {
                if self.system.replace(block).is_some() {
                    return Err(dup());
                }
            }
            SectionId::Rules => {
                if self.rules.replace(block).is_some() {
                    return Err(dup());
                }
            }
            SectionId::Input(k) => {
                let k = k.unwrap_or_else(|| {
                    self.unnumbered_inputs += 1;
                    self.unnumbered_inputs
                });
                if self.inputs.iter().any(|&(j, _, _)| j == k) {
                    return Err(dup());
                }
                self.inputs.push((k, no, block));
            }
            SectionId::Output(k) => {
                let k = k.unwrap_or_else(|| {
                    self.unnumbered_outputs += 1;
                    self.unnumbered_outputs
                });
                if self.outputs.iter().any(|&(j, _, _)| j == k) {
                    return Err(dup());
                }
                self.outputs.push((k, no, block));
            }
            SectionId::Observation => {
                return Err(err(no, ParseErrorKind::UnexpectedSection(name.to_string())))
            }
        }
        Ok(())
    }

    fn build(mut self) -> Result<FisDocument, ParseError> {
        let system = self.system.ok_or(ParseError {
            line: None,
            kind: ParseErrorKind::MissingSection("System".into()),
        })?;
        let (sline, _, _) = system.header.expect("header");
        let mut fields: BTreeMap<&'static str, (usize, String)> = BTreeMap::new();
        let mut extra = Vec::new();
        const KNOWN: [&str; 11] = [
            "Name",
            "Type",
            "Version",
            "NumInputs",
            "NumOutputs",
            "NumRules",
            "AndMethod",
            "OrMethod",
            "ImpMethod",
            "AggMethod",
            "DefuzzMethod",
        ];
        for &(no, line) in &system.entries {
            let (key, v) = split_key_value(no, line)?;
            match KNOWN.iter().find(|k| k.eq_ignore_ascii_case(key)) {
                Some(k) => {
                    if fields.insert(k, (no, v.to_string())).is_some() {
                        return Err(err(no, ParseErrorKind::DuplicateKey(key.to_string())));
                    }
                }
                None => extra.push((key.to_string(), v.to_string())),
            }
        }
        let count = |key: &'static str| -> Result<(usize, usize), ParseError> {
            let (no, v) = fields
                .get(key)
                .ok_or_else(|| missing_key(sline, "System", key))?;
            Ok((*no, parse_count(*no, key, v)?))
        };
        let (in_line, num_inputs) = count("NumInputs")?;
        let (out_line, num_outputs) = count("NumOutputs")?;
        let (rules_line, num_rules) = count("NumRules")?;
        let text = |key: &str| fields.get(key).map(|(_, v)| unquote(v).to_string());
        let name = text("Name").ok_or_else(|| missing_key(sline, "System", "Name"))?;

        self.inputs.sort_by_key(|&(k, _, _)| k);
        self.outputs.sort_by_key(|&(k, _, _)| k);
        check_sections(&self.inputs, "NumInputs", num_inputs, in_line)?;
        check_sections(&self.outputs, "NumOutputs", num_outputs, out_line)?;
        let inputs = self
            .inputs
            .iter()
            .map(|&(_, _, b)| parse_variable(b))
            .collect::<Result<Vec<_>, _>>()?;
        let outputs = self
            .outputs
            .iter()
            .map(|&(_, _, b)| parse_variable(b))
            .collect::<Result<Vec<_>, _>>()?;

        let mut rules = Vec::new();
        if let Some(block) = self.rules {
            for (i, &(no, line)) in block.entries.iter().enumerate() {
                let rule = parse_rule(no, line)?;
                check_rule(no, i + 1, &rule, &inputs, &outputs)?;
                rules.push(rule);
            }
        }
        if rules.len() != num_rules {
            return Err(err(
                rules_line,
                ParseErrorKind::CountMismatch {
                    what: "NumRules".into(),
                    declared: num_rules,
                    found: rules.len(),
                },
            ));
        }

        Ok(FisDocument {
            name,
            system_type: text("Type").unwrap_or_else(|| "sparse".into()),
            version: text("Version").unwrap_or_else(|| "2.0".into()),
            num_inputs,
            num_outputs,
            num_rules,
            and_method: text("AndMethod"),
            or_method: text("OrMethod"),
            imp_method: text("ImpMethod"),
            agg_method: text("AggMethod"),
            defuzz_method: text("DefuzzMethod").unwrap_or_else(|| "COG".into()),
            extra,
            inputs,
            outputs,
            rules,
        })
    }
}

fn check_rule(
    no: usize,
    index: usize,
    rule: &Rule,
    inputs: &[VariableDecl],
    outputs: &[VariableDecl],
) -> Result<(), ParseError> {
    let sides = [
        ("antecedent", &rule.antecedents, inputs),
        ("consequent", &rule.consequents, outputs),
    ];
    for (side, indices, vars) in sides {
        if indices.len() != vars.len() {
            return Err(err(
                no,
                ParseErrorKind::CountMismatch {
                    what: format!("rule {index} {side} indices"),
                    declared: vars.len(),
                    found: indices.len(),
                },
            ));
        }
        for (&i, var) in indices.iter().zip(vars) {
            if i > var.mfs.len() {
                return Err(err(
                    no,
                    ParseErrorKind::RuleIndex {
                        rule: index,
                        side,
                        index: i,
                        max: var.mfs.len(),
                    },
                ));
            }
        }
    }
    if !(rule.weight > 0.0 && rule.weight <= 1.0) {
        return Err(err(
            no,
            ParseErrorKind::RuleWeight {
                rule: index,
                weight: rule.weight,
            },
        ));
    }
    Ok(())
}

#[derive(Default)]
struct ObsParts<'a> {
    preamble: Vec<(usize, &'a str)>,
    observation: Option<&'a Block<'a>>,
}

impl<'a> ObsParts<'a> {
    fn build(self) -> Result<ObsDocument, ParseError> {
        let mut num_inputs = None;
        let mut name = None;
        let mut observations = BTreeMap::new();
        let mut handle = |no: usize, line: &str, in_section: bool| -> Result<(), ParseError> {
            let (key, v) = split_key_value(no, line)?;
            let dup = || err(no, ParseErrorKind::DuplicateKey(key.to_string()));
            if key.eq_ignore_ascii_case("NumInputs") {
                if num_inputs.replace((no, parse_count(no, key, v)?)).is_some() {
                    return Err(dup());
                }
            } else if key.eq_ignore_ascii_case("ObsName") {
                if name.replace(unquote(v).to_string()).is_some() {
                    return Err(dup());
                }
            } else if let Some(k) = indexed_key(key, "OBS").filter(|_| in_section) {
                if observations
                    .insert(k, (no, parse_mf_value(no, v)?))
                    .is_some()
                {
                    return Err(dup());
                }
            } else {
                return Err(err(
                    no,
                    ParseErrorKind::UnknownKey {
                        section: if in_section {
                            "Observation"
                        } else {
                            "OBS header"
                        }
                        .into(),
                        key: key.to_string(),
                    },
                ));
            }
            Ok(())
        };
        for &(no, line) in &self.preamble {
            handle(no, line, false)?;
        }
        let block = self.observation.ok_or(ParseError {
            line: None,
            kind: ParseErrorKind::MissingSection("Observation".into()),
        })?;
        for &(no, line) in &block.entries {
            handle(no, line, true)?;
        }
        let (nline, n) = num_inputs.ok_or(ParseError {
            line: None,
            kind: ParseErrorKind::MissingKey {
                section: "OBS header".into(),
                key: "NumInputs".into(),
            },
        })?;
        let observations = collect_indexed(observations, "NumInputs observations", n, nline)?;
        Ok(ObsDocument {
            num_inputs: n,
            name: name.unwrap_or_default(),
            observations,
        })
    }

    fn add_observation(&mut self, block: &'a Block<'a>) -> Result<(), ParseError> {
        let (no, _, name) = block.header.expect("header");
        if self.observation.replace(block).is_some() {
            return Err(err(no, ParseErrorKind::DuplicateSection(name.to_string())));
        }
        Ok(())
    }
}

fn single_part<'a>(lexed: &'a Lexed<'a>) -> Result<&'a [Block<'a>], ParseError> {
    if lexed.parts.len() > 1 {
        let line = lexed.parts[1]
            .first()
            .and_then(|b| b.entries.first().map(|e| e.0))
            .unwrap_or(0);
        return Err(ParseError {
            line: (line > 0).then_some(line),
            kind: ParseErrorKind::UnexpectedSeparator,
        });
    }
    Ok(&lexed.parts[0])
}

/// Parses and validates a FIS file.
pub fn parse_fis(text: &str) -> Result<FisDocument, ParseError> {
    let lexed = lex(text)?;
    let blocks = single_part(&lexed)?;
    let mut parts = FisParts::default();
    for block in blocks {
        match block.header {
            None => {
                if let Some(&(no, _)) = block.entries.first() {
                    return Err(err(no, ParseErrorKind::EntryOutsideSection));
                }
            }
            Some(_) => parts.add(block)?,
        }
    }
    parts.build()
}

/// Parses and validates an OBS file.
pub fn parse_obs(text: &str) -> Result<ObsDocument, ParseError> {
    let lexed = lex(text)?;
    let blocks = single_part(&lexed)?;
    let mut parts = ObsParts::default();
    for block in blocks {
        match block.header {
            None => parts.preamble.extend(block.entries.iter().copied()),
            Some((_, SectionId::Observation, _)) => parts.add_observation(block)?,
            Some((no, _, name)) => {
                return Err(err(no, ParseErrorKind::UnexpectedSection(name.to_string())))
            }
        }
    }
    parts.build()
}

/// Parses a combined listing: a FIS part, a `*****` separator line, then an
/// OBS part. Rule-base sections found after the separator still belong to
/// the FIS document, so listings that print a FIS section below the
/// observation parse as well.
pub fn parse_bundle(text: &str) -> Result<(FisDocument, ObsDocument), ParseError> {
    let lexed = lex(text)?;
    let (before, after) = match lexed.parts.as_slice() {
        [before, after] => (before, after),
        _ => {
            return Err(ParseError {
                line: None,
                kind: ParseErrorKind::MissingSection("***** separator".into()),
            })
        }
    };
    let mut fis = FisParts::default();
    let mut obs = ObsParts::default();
    for block in before {
        match block.header {
            None => {
                if let Some(&(no, _)) = block.entries.first() {
                    return Err(err(no, ParseErrorKind::EntryOutsideSection));
                }
            }
            Some(_) => fis.add(block)?,
        }
    }
    for block in after {
        match block.header {
            None => obs.preamble.extend(block.entries.iter().copied()),
            Some((_, id, _)) if id.is_fis() => fis.add(block)?,
            Some(_) => obs.add_observation(block)?,
        }
    }
    Ok((fis.build()?, obs.build()?))
}
