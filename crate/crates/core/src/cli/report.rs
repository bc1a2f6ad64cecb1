use serde_json::{json, Value};

use crate::error::Result;
use crate::exterior::{is_nondegenerate, KForm, Signature};
use crate::lie::{is_closed, is_subalgebra, nijenhuis, LieAlgebra, Subspace};
use crate::matrix::Matrix;
use crate::recursion::{
    classify_pair, complex_kernel_check, couple_conditions, eta_symmetry_check, recursion_operator, PairClassification,
};
use crate::scalar::format_rational;
use crate::triples::{Check, TripleClassification};

pub fn matrix_json(m: &Matrix) -> Value {
    json!(m.to_strings())
}

fn basis_json(s: &Subspace) -> Value {
    let rows: Vec<Vec<String>> = s.basis().iter().map(|v| v.iter().map(format_rational).collect()).collect();
    json!(rows)
}

pub fn signature_json(s: &Signature) -> Value {
    let (p, q) = s.unsigned();
    json!({
        "positive": s.positive,
        "negative": s.negative,
        "zero": s.zero,
        "display": format!("({p},{q})"),
    })
}

pub fn triple_json(c: &TripleClassification) -> Value {
    let mut out = json!({
        "tag": c.tag.name(),
        "permutation": c.permutation,
        "squares": c.squares,
        "operators": c.operators.iter().map(|a| matrix_json(a)).collect::<Vec<_>>(),
        "relations": c.relations,
    });
    if let Some(m) = &c.metric {
        out["metric"] = json!({
            "matrix": matrix_json(&m.metric),
            "signature": signature_json(&m.signature),
        });
    }
    if let Some(l) = &c.leaves {
        out["leaves"] = json!({
            "plus_dim": l.plus.dim(),
            "minus_dim": l.minus.dim(),
            "plus_basis": basis_json(&l.plus),
            "minus_basis": basis_json(&l.minus),
            "restricted_tags": l.restricted_tags,
        });
    }
    if let Some(p) = &c.pairs {
        out["pairs"] = json!(p);
    }
    out
}

/// Classification of a pair with its checks.
pub fn pair_report(g: &LieAlgebra, omega: &KForm, eta: &KForm) -> Result<(Value, Vec<Check>)> {
    let c = classify_pair(omega, eta)?;
    let a = recursion_operator(omega, eta)?;
    let back = recursion_operator(eta, omega)?;
    let mut checks = vec![
        Check::required("forms_closed", is_closed(g, omega)? && is_closed(g, eta)?),
        Check::required("forms_nondegenerate", is_nondegenerate(omega)? && is_nondegenerate(eta)?),
        Check::required("round_trip", a.compose(&back).is_identity()),
        Check::required("eta_symmetry", eta_symmetry_check(eta, &a)?),
        Check::required("recognized_structure", c.tag() != "Generic"),
    ];
    let mut body = json!({
        "tag": c.tag(),
        "operator": matrix_json(&a),
    });
    match &c {
        PairClassification::SymplecticPair(d) => {
            checks.push(Check::required("nijenhuis_zero", nijenhuis(g, &a)?.is_zero()));
            checks.push(Check::required(
                "eigenspaces_subalgebras",
                is_subalgebra(g, &d.plus_eigenspace)? && is_subalgebra(g, &d.minus_eigenspace)?,
            ));
            body["plus_eigenspace"] = basis_json(&d.plus_eigenspace);
            body["minus_eigenspace"] = basis_json(&d.minus_eigenspace);
            body["rank_plus"] = json!(d.rank_plus);
            body["rank_minus"] = json!(d.rank_minus);
        }
        PairClassification::HolomorphicSymplectic { .. } => {
            checks.push(Check::required("nijenhuis_zero", nijenhuis(g, &a)?.is_zero()));
            checks.push(Check::required("complex_kernel", complex_kernel_check(omega, eta, &a)?));
        }
        PairClassification::Generic {
            minimal_polynomial_degree,
            ..
        } => {
            body["minimal_polynomial_degree"] = json!(minimal_polynomial_degree);
        }
        PairClassification::TrivialIdentity | PairClassification::TrivialNegation => {}
    }
    if omega.dim() == 4 {
        let (squares, orthogonal) = couple_conditions(omega, eta)?;
        checks.push(Check::informational("omega_sq_eq_eta_sq", squares));
        checks.push(Check::informational("omega_wedge_eta_zero", orthogonal));
    }
    Ok((body, checks))
}
