use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::moser::family::FormFamily;
use crate::moser::field::{OneFormField, TwoFormField};
use crate::moser::flow::FlowFamily;
use crate::moser::trig::{TrigPoly, TrigTerm};
use crate::scalar::{parse_rational, to_f64};

/// One trigonometric term of a primitive coefficient, before scaling by ε.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PrimitiveTerm {
    /// Power of `t`.
    #[serde(default)]
    pub power: usize,
    /// 1-based index `i` of `dxⁱ`.
    pub component: usize,
    pub freq: Vec<i64>,
    #[serde(default)]
    pub cos: f64,
    #[serde(default)]
    pub sin: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilySpec {
    /// Constant base form as `(i, j, "p/q")` entries.
    pub base: Vec<(usize, usize, String)>,
    pub primitive: Vec<PrimitiveTerm>,
}

/// Flow input: one or two form families plus integration parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FlowSpec {
    pub name: String,
    /// Multiplies every primitive term.
    pub epsilon: f64,
    pub omega: FamilySpec,
    #[serde(default)]
    pub eta: Option<FamilySpec>,
    #[serde(default = "default_steps")]
    pub steps: usize,
    #[serde(default = "default_samples")]
    pub samples: usize,
    #[serde(default)]
    pub seed: u64,
}

fn default_steps() -> usize {
    200
}

fn default_samples() -> usize {
    64
}

fn check_index(i: usize, n: usize, what: &str) -> Result<()> {
    if i == 0 || i > n {
        return Err(Error::Parse(format!("{what}: index {i} not in 1..={n}")));
    }
    Ok(())
}

impl FamilySpec {
    pub fn build(&self, n: usize, epsilon: f64, label: &str) -> Result<FormFamily> {
        let mut base = TwoFormField::zero(n);
        let mut seen = std::collections::BTreeSet::new();
        for (pos, (i, j, c)) in self.base.iter().enumerate() {
            let what = format!("{label}.base[{pos}]");
            check_index(*i, n, &what)?;
            check_index(*j, n, &what)?;
            if i >= j {
                return Err(Error::Parse(format!("{what}: expected i < j, got ({i}, {j})")));
            }
            if !seen.insert((*i, *j)) {
                return Err(Error::Parse(format!("{what}: duplicate term ({i}, {j})")));
            }
            let c = parse_rational(c).map_err(|e| Error::Parse(format!("{what}: {e}")))?;
            base.add_to(*i, *j, &TrigPoly::constant(n, to_f64(&c)))?;
        }
        let top = self.primitive.iter().map(|p| p.power + 1).max().unwrap_or(0);
        let mut primitives = vec![OneFormField::zero(n); top];
        for (pos, p) in self.primitive.iter().enumerate() {
            let what = format!("{label}.primitive[{pos}]");
            check_index(p.component, n, &what)?;
            if p.freq.len() != n {
                return Err(Error::Parse(format!("{what}: frequency has {} entries, expected {n}", p.freq.len())));
            }
            let term = TrigTerm::new(p.freq.clone(), p.cos * epsilon, p.sin * epsilon);
            primitives[p.power].coeffs[p.component - 1].push(term);
        }
        FormFamily::new(base, primitives)
    }
}

impl FlowSpec {
    pub fn build(&self, n: usize) -> Result<FlowFamily> {
        Ok(FlowFamily {
            name: self.name.clone(),
            omega: self.omega.build(n, self.epsilon, "omega")?,
            eta: self.eta.as_ref().map(|e| e.build(n, self.epsilon, "eta")).transpose()?,
        })
    }
}
