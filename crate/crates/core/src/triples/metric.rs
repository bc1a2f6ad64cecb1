use serde::Serialize;

use crate::error::{Error, Result};
use crate::exterior::{form_matrix, signature, KForm, Signature};
use crate::matrix::{Endo, Matrix, SymMatrix};

/// A named boolean check. Informational checks are reported but do not
/// count towards [`MetricReport::all_required_pass`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub pass: bool,
    pub required: bool,
}

impl Check {
    pub fn required(name: &'static str, pass: bool) -> Self {
        Check { name, pass, required: true }
    }

    pub fn informational(name: &'static str, pass: bool) -> Self {
        Check { name, pass, required: false }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MetricReport {
    /// `g(X, Y) = Xᵀ G Y`.
    pub metric: SymMatrix,
    pub signature: Signature,
    pub checks: Vec<Check>,
}

impl MetricReport {
    pub fn all_required_pass(&self) -> bool {
        self.checks.iter().filter(|c| c.required).all(|c| c.pass)
    }

    pub fn check(&self, name: &str) -> Option<bool> {
        self.checks.iter().find(|c| c.name == name).map(|c| c.pass)
    }
}

/// Matrix of `(X, Y) ↦ ω(X, A Y)`.
fn twisted(form: &KForm, a: &Endo) -> Result<Matrix> {
    Ok(&*form_matrix(form)? * &**a)
}

/// `g(AX, AY)` as a matrix: `Aᵀ G A`.
fn pulled(g: &Matrix, a: &Endo) -> Matrix {
    g.congruence(a)
}

/// `g = ω₁(·, A₁·) = ω₂(·, A₂·) = ω₃(·, A₃·)` for a triple whose operators
/// all square to `−Id`. A failure of independence or symmetry means the
/// inputs are internally inconsistent.
pub fn metric_hyperholomorphic(forms: &[KForm; 3], ops: &[Endo; 3]) -> Result<MetricReport> {
    if !ops.iter().all(|a| a.square().is_neg_identity()) {
        return Err(Error::Precondition("all three operators must square to −Id".into()));
    }
    let g: Vec<Matrix> = (0..3).map(|i| twisted(&forms[i], &ops[i])).collect::<Result<_>>()?;
    if g[1] != g[0] || g[2] != g[0] {
        return Err(Error::Consistency("ω_i(·, A_i·) depends on i".into()));
    }
    let metric = SymMatrix::new(g[0].clone())
        .map_err(|_| Error::Consistency("ω₁(·, A₁·) is not symmetric".into()))?;
    let signature = signature(&metric);
    let mut checks = vec![
        Check::required("independent_of_i", true),
        Check::required("symmetric", true),
        Check::required("nondegenerate", signature.is_nondegenerate()),
    ];
    for (a, name) in ops.iter().zip(["invariant_a1", "invariant_a2", "invariant_a3"]) {
        checks.push(Check::required(name, pulled(&metric, a) == *metric));
    }
    if forms[0].dim() == 4 {
        checks.push(Check::informational("definite", signature.is_definite()));
    }
    Ok(MetricReport {
        metric,
        signature,
        checks,
    })
}

/// Metric of a hypersymplectic triple in canonical order (`A₁² = −Id`,
/// `A₂² = A₃² = Id`): `g = ω₁(·, A₁·) = −ω₂(·, A₂·) = ω₃(·, A₃·)`.
///
/// The chain with `−ω₃(·, A₃·)` in the last slot is recorded as an
/// informational check; it can only hold when `g = 0`.
pub fn metric_hypersymplectic(forms: &[KForm; 3], ops: &[Endo; 3]) -> Result<MetricReport> {
    let ok = ops[0].square().is_neg_identity()
        && ops[1].square().is_identity()
        && ops[2].square().is_identity();
    if !ok {
        return Err(Error::Precondition("expected A₁² = −Id and A₂² = A₃² = Id".into()));
    }
    let g1 = twisted(&forms[0], &ops[0])?;
    let g2 = twisted(&forms[1], &ops[1])?;
    let g3 = twisted(&forms[2], &ops[2])?;
    if g1 != -&g2 {
        return Err(Error::Consistency("ω₁(·, A₁·) ≠ −ω₂(·, A₂·)".into()));
    }
    if g1 != g3 {
        return Err(Error::Consistency("ω₁(·, A₁·) ≠ ω₃(·, A₃·)".into()));
    }
    let metric = SymMatrix::new(g1).map_err(|_| Error::Consistency("ω₁(·, A₁·) is not symmetric".into()))?;
    let signature = signature(&metric);
    let neg = -&*metric;
    let checks = vec![
        Check::required("chain_omega2", true),
        Check::required("chain_omega3", true),
        Check::informational("chain_omega3_negated", *metric == -&g3),
        Check::required("symmetric", true),
        Check::required("nondegenerate", signature.is_nondegenerate()),
        Check::required("invariant_a1", pulled(&metric, &ops[0]) == *metric),
        Check::required("anti_invariant_a2", pulled(&metric, &ops[1]) == neg),
        Check::required("anti_invariant_a3", pulled(&metric, &ops[2]) == neg),
        Check::required("neutral", signature.is_neutral()),
    ];
    Ok(MetricReport {
        metric,
        signature,
        checks,
    })
}
