//! Batch front end. Every command produces one JSON report on stdout and an
//! exit status: 0 when every required check passes, 1 when some check is
//! red, 2 on input or usage errors. See `docs/input-format.md` for the file
//! grammar.

mod document;
mod report;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

pub use document::{parse_input, parse_str, InputDocument, Mode};
pub use report::{pair_report, signature_json, triple_json};

use crate::error::{Error, Result};
use crate::lie::LieAlgebra;
use crate::moser::{
    cohomology_drift, convergence_study, integrate_flow, intertwining_check, sample_points, FlowFamily, FlowSpec,
    CHECKPOINTS,
};
use crate::triples::{
    builtin_example, catalog_names, classify_triple, triple_checks, verify_example, Check, TripleClassification, TripleTag,
};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

/// Default bound on the pullback error at `t = 1`.
pub const DEFAULT_FLOW_TOLERANCE: f64 = 1e-6;
/// Bound on `|α_t − β_t∘A|` and on `|X_t − Y_t|`.
pub const INTERTWINING_TOLERANCE: f64 = 1e-9;
/// Bound on `|i_X ω_t + α_t|`.
pub const FIELD_RESIDUAL_TOLERANCE: f64 = 1e-12;
/// Bound on the drift of the grid-averaged class.
pub const COHOMOLOGY_TOLERANCE: f64 = 1e-10;
/// Minimal error reduction per halving for fourth-order convergence.
pub const MIN_REDUCTION: f64 = 12.0;

/// Composite names checked by `verify-all` besides the base catalog.
pub const COMPOSITE_EXAMPLES: [&str; 2] = ["product(dotti-fino-8,flat-hk-4)", "product(dotti-fino-8,neg(flat-hk-4))"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Arithmetic {
    Exact,
    Float,
}

#[derive(Debug, Parser)]
#[command(name = "recop", version, about = "Classify pairs and triples of symplectic forms and verify Moser flows")]
pub struct Cli {
    /// Arithmetic mode; classification is exact, flows are float.
    #[arg(long, value_enum, global = true)]
    pub mode: Option<Arithmetic>,
    /// Overrides the sampling seed of a flow file.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Pullback error bound at t = 1 (float mode only).
    #[arg(long, global = true)]
    pub tolerance: Option<f64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    ClassifyPair { file: PathBuf },
    ClassifyTriple { file: PathBuf },
    VerifyExample { name: String },
    VerifyAll,
    MoserFlow { file: PathBuf },
    ConvergenceStudy {
        file: PathBuf,
        #[arg(long, default_value_t = 1)]
        halvings: usize,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::ClassifyPair { .. } => "classify-pair",
            Command::ClassifyTriple { .. } => "classify-triple",
            Command::VerifyExample { .. } => "verify-example",
            Command::VerifyAll => "verify-all",
            Command::MoserFlow { .. } => "moser-flow",
            Command::ConvergenceStudy { .. } => "convergence-study",
        }
    }

    fn arithmetic(&self) -> Arithmetic {
        match self {
            Command::MoserFlow { .. } | Command::ConvergenceStudy { .. } => Arithmetic::Float,
            _ => Arithmetic::Exact,
        }
    }
}

/// A finished command: the JSON report and the process exit status.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub report: Value,
    pub exit_code: i32,
}

impl Outcome {
    /// Pretty JSON with a trailing newline.
    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.report).expect("report serializes");
        s.push('\n');
        s
    }
}

struct Body {
    sha256: Option<String>,
    result: Value,
    checks: Vec<Check>,
}

pub fn run(cli: &Cli) -> Outcome {
    let name = cli.command.name();
    match dispatch(cli) {
        Ok(body) => {
            let pass = body.checks.iter().filter(|c| c.required).all(|c| c.pass);
            let exit_code = if pass { EXIT_PASS } else { EXIT_FAIL };
            Outcome {
                report: json!({
                    "command": name,
                    "input_sha256": body.sha256,
                    "status": if pass { "pass" } else { "fail" },
                    "exit_code": exit_code,
                    "result": body.result,
                    "checks": body.checks,
                }),
                exit_code,
            }
        }
        Err(e) => Outcome {
            report: json!({
                "command": name,
                "status": "error",
                "exit_code": EXIT_ERROR,
                "error": e.to_string(),
            }),
            exit_code: EXIT_ERROR,
        },
    }
}

/// Parses `args` (including the program name) and runs the command. Usage
/// errors become an error outcome carrying clap's message.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => Outcome {
            report: json!({
                "command": Value::Null,
                "status": "error",
                "exit_code": EXIT_ERROR,
                "error": e.to_string(),
            }),
            exit_code: EXIT_ERROR,
        },
    }
}

fn dispatch(cli: &Cli) -> Result<Body> {
    let wanted = cli.command.arithmetic();
    if let Some(m) = cli.mode {
        if m != wanted {
            return Err(Error::Precondition(format!(
                "{} runs in {:?} mode only",
                cli.command.name(),
                wanted
            )));
        }
    }
    if cli.tolerance.is_some() && wanted != Arithmetic::Float {
        return Err(Error::Precondition("--tolerance applies to float mode only".into()));
    }
    match &cli.command {
        Command::ClassifyPair { file } => classify_pair_cmd(&parse_input(file)?),
        Command::ClassifyTriple { file } => classify_triple_cmd(&parse_input(file)?),
        Command::VerifyExample { name } => verify_example_cmd(name),
        Command::VerifyAll => verify_all_cmd(),
        Command::MoserFlow { file } => {
            let doc = parse_input(file)?;
            moser_flow_cmd(&doc, cli.seed, cli.tolerance.unwrap_or(DEFAULT_FLOW_TOLERANCE))
        }
        Command::ConvergenceStudy { file, halvings } => {
            let doc = parse_input(file)?;
            convergence_cmd(&doc, cli.seed, *halvings)
        }
    }
}

fn require_mode(doc: &InputDocument, mode: Mode) -> Result<()> {
    if doc.mode != mode {
        return Err(Error::Precondition(format!(
            "command expects a {} document, found {}",
            mode.name(),
            doc.mode.name()
        )));
    }
    Ok(())
}

/// The declared algebra, or the abelian one when the `lie` block is absent.
pub fn algebra_of(doc: &InputDocument) -> LieAlgebra {
    doc.algebra
        .as_ref()
        .map(|(g, _)| g.clone())
        .unwrap_or_else(|| LieAlgebra::abelian(doc.dimension))
}

/// Classification of a triple document with its checks.
pub fn triple_report(doc: &InputDocument) -> Result<(TripleClassification, Value, Vec<Check>)> {
    require_mode(doc, Mode::Triple)?;
    let forms = [doc.forms[0].clone(), doc.forms[1].clone(), doc.forms[2].clone()];
    let c = classify_triple(&forms)?;
    let mut checks = vec![Check::required("recognized_structure", c.tag != TripleTag::Generic)];
    checks.extend(triple_checks(&algebra_of(doc), &c)?);
    let mut result = triple_json(&c);
    if let Some((_, lie)) = &doc.algebra {
        result["lie"] = json!(lie);
    }
    Ok((c, result, checks))
}

/// Report body of a catalog example with its checks.
pub fn example_report(name: &str) -> Result<(TripleClassification, Value, Vec<Check>)> {
    let entry = builtin_example(name)?;
    let v = verify_example(&entry)?;
    let mut result = triple_json(&v.classification);
    result["example"] = json!(v.name);
    result["lie"] = json!(v.lie);
    result["expected_tag"] = json!(entry.expected_tag.name());
    if let Some(s) = &entry.expected_signature {
        result["expected_signature"] = signature_json(s);
    }
    Ok((v.classification, result, v.checks))
}

fn classify_pair_cmd(doc: &InputDocument) -> Result<Body> {
    require_mode(doc, Mode::Pair)?;
    let (result, checks) = pair_report(&algebra_of(doc), &doc.forms[0], &doc.forms[1])?;
    Ok(Body {
        sha256: Some(doc.sha256.clone()),
        result,
        checks,
    })
}

fn classify_triple_cmd(doc: &InputDocument) -> Result<Body> {
    let (_, result, checks) = triple_report(doc)?;
    Ok(Body {
        sha256: Some(doc.sha256.clone()),
        result,
        checks,
    })
}

fn verify_example_cmd(name: &str) -> Result<Body> {
    let (_, result, checks) = example_report(name)?;
    Ok(Body {
        sha256: None,
        result,
        checks,
    })
}

fn verify_all_cmd() -> Result<Body> {
    let mut rows = Vec::new();
    let mut checks = Vec::new();
    for name in catalog_names().iter().copied().chain(COMPOSITE_EXAMPLES) {
        let v = verify_example(&builtin_example(name)?)?;
        let failed: Vec<&str> = v.checks.iter().filter(|c| c.required && !c.pass).map(|c| c.name).collect();
        rows.push(json!({
            "example": name,
            "tag": v.classification.tag.name(),
            "signature": v.classification.metric.as_ref().map(|m| signature_json(&m.signature)),
            "passed": v.passed(),
            "failed_checks": failed,
        }));
        checks.push(Check::required("example_passed", v.passed()));
    }
    Ok(Body {
        sha256: None,
        result: json!({ "examples": rows }),
        checks,
    })
}

fn flow_of(doc: &InputDocument) -> Result<(&FlowSpec, &FlowFamily)> {
    require_mode(doc, Mode::Flow)?;
    let (spec, family) = doc.flow.as_ref().expect("validated flow document");
    Ok((spec, family))
}

fn moser_flow_cmd(doc: &InputDocument, seed: Option<u64>, tolerance: f64) -> Result<Body> {
    let (spec, flow) = flow_of(doc)?;
    let seed = seed.unwrap_or(spec.seed);
    let samples = sample_points(doc.dimension, spec.samples, seed);
    let mut checks = Vec::new();
    let mut result = json!({
        "family": spec.name,
        "parameters": {
            "epsilon": spec.epsilon,
            "steps": spec.steps,
            "samples": spec.samples,
            "seed": seed,
        },
    });

    let closed = flow.omega.is_closed() && flow.eta.as_ref().is_none_or(|e| e.is_closed());
    checks.push(Check::required("families_closed", closed));

    let mut drift = cohomology_drift(&flow.omega, &CHECKPOINTS);
    if let Some(eta) = &flow.eta {
        drift = drift.max(cohomology_drift(eta, &CHECKPOINTS));
    }
    result["cohomology_drift"] = json!(drift);
    checks.push(Check::required("cohomology_constant", drift < COHOMOLOGY_TOLERANCE));

    if let Some(eta) = &flow.eta {
        let times: Vec<f64> = std::iter::once(0.0).chain(CHECKPOINTS).collect();
        let r = intertwining_check(&flow.omega, eta, &samples, &times)?;
        result["intertwining"] = json!(r);
        checks.push(Check::required("intertwined_primitives", r.alpha_residual < INTERTWINING_TOLERANCE));
        checks.push(Check::informational("operator_constant_in_t", r.a_drift < INTERTWINING_TOLERANCE));
    }

    let r = integrate_flow(flow, &samples, spec.steps)?;
    let last = r.final_checkpoint();
    checks.push(Check::required("pullback_error_within_tolerance", r.final_error() < tolerance));
    checks.push(Check::required("orientation_preserved", r.checkpoints.iter().all(|c| c.min_det > 0.0)));
    checks.push(Check::required(
        "field_residual_small",
        r.checkpoints.iter().all(|c| c.field_residual < FIELD_RESIDUAL_TOLERANCE),
    ));
    if last.xy_gap.is_some() {
        checks.push(Check::required(
            "fields_agree",
            r.checkpoints.iter().all(|c| c.xy_gap.unwrap_or(0.0) < INTERTWINING_TOLERANCE),
        ));
    }
    result["tolerance"] = json!(tolerance);
    result["max_pullback_error"] = json!(r.final_error());
    result["checkpoints"] = json!(r.checkpoints);
    Ok(Body {
        sha256: Some(doc.sha256.clone()),
        result,
        checks,
    })
}

fn convergence_cmd(doc: &InputDocument, seed: Option<u64>, halvings: usize) -> Result<Body> {
    let (spec, flow) = flow_of(doc)?;
    let seed = seed.unwrap_or(spec.seed);
    let samples = sample_points(doc.dimension, spec.samples, seed);
    let rows = convergence_study(flow, &samples, spec.steps, halvings)?;
    let fourth_order = rows.iter().filter_map(|r| r.reduction).all(|q| q >= MIN_REDUCTION);
    Ok(Body {
        sha256: Some(doc.sha256.clone()),
        result: json!({
            "family": spec.name,
            "seed": seed,
            "samples": spec.samples,
            "rows": rows,
        }),
        checks: vec![Check::required("fourth_order_reduction", fourth_order)],
    })
}

#[cfg(test)]
mod tests;
