use std::collections::BTreeSet;
use std::path::Path;

use serde::Deserialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::exterior::KForm;
use crate::lie::{validate_lie, Bracket, LieAlgebra, LieReport};
use crate::moser::{FlowFamily, FlowSpec};
use crate::scalar::parse_rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Pair,
    Triple,
    Flow,
}

impl Mode {
    pub fn name(&self) -> &'static str {
        match self {
            Mode::Pair => "pair",
            Mode::Triple => "triple",
            Mode::Flow => "flow",
        }
    }
}

/// Raw JSON shape of an input file.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawDocument {
    pub mode: Mode,
    pub dimension: usize,
    #[serde(default)]
    pub lie: Option<Vec<(usize, usize, usize, String)>>,
    #[serde(default)]
    pub forms: Vec<Vec<(usize, usize, String)>>,
    #[serde(default)]
    pub flow: Option<FlowSpec>,
}

/// Validated input.
#[derive(Debug, Clone)]
pub struct InputDocument {
    pub mode: Mode,
    pub dimension: usize,
    /// Hex SHA-256 of the raw input bytes.
    pub sha256: String,
    pub algebra: Option<(LieAlgebra, LieReport)>,
    pub forms: Vec<KForm>,
    pub flow: Option<(FlowSpec, FlowFamily)>,
}

pub fn parse_input(path: &Path) -> Result<InputDocument> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    parse_str(&text)
}

/// Parses and validates a document. Syntax errors carry line and column;
/// semantic violations are all collected and reported by JSON path.
pub fn parse_str(text: &str) -> Result<InputDocument> {
    let raw: RawDocument = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let sha256 = Sha256::digest(text.as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect();
    let n = raw.dimension;
    let mut problems = Vec::new();

    let expected_forms = match raw.mode {
        Mode::Pair => 2,
        Mode::Triple => 3,
        Mode::Flow => 0,
    };
    if raw.forms.len() != expected_forms {
        problems.push(format!(
            "forms: {} mode needs {expected_forms} forms, found {}",
            raw.mode.name(),
            raw.forms.len()
        ));
    }
    if raw.mode == Mode::Flow && raw.flow.is_none() {
        problems.push("flow: missing in flow mode".to_string());
    }
    if raw.mode != Mode::Flow && raw.flow.is_some() {
        problems.push(format!("flow: not allowed in {} mode", raw.mode.name()));
    }
    if n == 0 {
        problems.push("dimension: must be positive".to_string());
    }

    let mut brackets = Vec::new();
    if let Some(entries) = &raw.lie {
        let mut seen = BTreeSet::new();
        for (pos, (i, j, k, c)) in entries.iter().enumerate() {
            let at = format!("lie[{pos}]");
            let in_range = [i, j, k].iter().all(|&&x| (1..=n).contains(&x));
            if !in_range {
                problems.push(format!("{at}: index out of range 1..={n} in ({i}, {j}, {k})"));
                continue;
            }
            if !seen.insert((*i.min(j), *i.max(j), *k)) {
                problems.push(format!("{at}: duplicate term ([e{i},e{j}], e{k})"));
                continue;
            }
            match parse_rational(c) {
                Ok(v) => brackets.push(Bracket::new(*i, *j, *k, v)),
                Err(e) => problems.push(format!("{at}: {e}")),
            }
        }
    }

    let mut forms = Vec::new();
    for (f, terms) in raw.forms.iter().enumerate() {
        let mut form = KForm::zero(n, 2);
        let mut seen = BTreeSet::new();
        for (pos, (i, j, c)) in terms.iter().enumerate() {
            let at = format!("forms[{f}][{pos}]");
            if !(1..=n).contains(i) || !(1..=n).contains(j) {
                problems.push(format!("{at}: index out of range 1..={n} in ({i}, {j})"));
                continue;
            }
            if i >= j {
                problems.push(format!("{at}: expected i < j, got ({i}, {j})"));
                continue;
            }
            if !seen.insert((*i, *j)) {
                problems.push(format!("{at}: duplicate term ({i}, {j})"));
                continue;
            }
            match parse_rational(c) {
                Ok(v) => form.add_term(&[*i, *j], v)?,
                Err(e) => problems.push(format!("{at}: {e}")),
            }
        }
        forms.push(form);
    }

    let flow = match (&raw.flow, raw.mode) {
        (Some(spec), Mode::Flow) if n > 0 => match spec.build(n) {
            Ok(family) => Some((spec.clone(), family)),
            Err(e) => {
                problems.push(format!("flow: {e}"));
                None
            }
        },
        _ => None,
    };

    if !problems.is_empty() {
        return Err(Error::Parse(problems.join("; ")));
    }

    let algebra = match &raw.lie {
        Some(_) => Some(validate_lie(n, &brackets)?),
        None => None,
    };
    Ok(InputDocument {
        mode: raw.mode,
        dimension: n,
        sha256,
        algebra,
        forms,
        flow,
    })
}
