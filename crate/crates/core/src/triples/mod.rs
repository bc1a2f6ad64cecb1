//! Triples of symplectic forms.
//!
//! Operators follow the cyclic convention `i_X ω_i = i_{A_{i+2} X} ω_{i+1}`
//! (indices mod 3), so `A₁ = R(ω₂, ω₃)`, `A₂ = R(ω₃, ω₁)`, `A₃ = R(ω₁, ω₂)`
//! where `R` is [`recursion_operator`]. With this convention every cyclic
//! composition `A_{i+2} A_{i+1} A_i` is the identity.

mod catalog;
mod metric;

pub use catalog::{builtin_example, catalog_names, triple_checks, verify_example, ExampleCatalogEntry, ExampleVerification};
pub use metric::{metric_hyperholomorphic, metric_hypersymplectic, Check, MetricReport};

use serde::Serialize;

use crate::error::{Error, Operand, Result};
use crate::exterior::{rank_2form, KForm};
use crate::lie::Subspace;
use crate::matrix::Endo;
use crate::recursion::{classify_pair, classify_restricted, recursion_operator, square_class, PairClassification, SquareClass};
use crate::scalar::one;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TripleTag {
    HyperholomorphicSymplectic,
    Hypersymplectic,
    HolomorphicSymplecticPair,
    SymplecticTriple,
    Generic,
}

impl TripleTag {
    pub fn name(&self) -> &'static str {
        match self {
            TripleTag::HyperholomorphicSymplectic => "HyperholomorphicSymplectic",
            TripleTag::Hypersymplectic => "Hypersymplectic",
            TripleTag::HolomorphicSymplecticPair => "HolomorphicSymplecticPair",
            TripleTag::SymplecticTriple => "SymplecticTriple",
            TripleTag::Generic => "Generic",
        }
    }

    pub fn has_metric(&self) -> bool {
        matches!(self, TripleTag::HyperholomorphicSymplectic | TripleTag::Hypersymplectic)
    }
}

/// Computes `(A₁, A₂, A₃)` and verifies all three cyclic compositions.
pub fn triple_operators(forms: &[KForm; 3]) -> Result<[Endo; 3]> {
    let op = |i: usize, j: usize| {
        recursion_operator(&forms[i], &forms[j]).map_err(|e| match e {
            Error::DegenerateForm(Operand::First) => Error::DegenerateForm(operand(i)),
            Error::DegenerateForm(_) => Error::DegenerateForm(operand(j)),
            other => other,
        })
    };
    let a1 = op(1, 2)?;
    let a2 = op(2, 0)?;
    let a3 = op(0, 1)?;
    let ops = [a1, a2, a3];
    if !cyclic_identity_holds(&ops) {
        return Err(Error::Consistency("cyclic composition A₃A₂A₁ ≠ Id".into()));
    }
    Ok(ops)
}

fn operand(i: usize) -> Operand {
    [Operand::First, Operand::Second, Operand::Third][i]
}

/// `A_{i+2} A_{i+1} A_i = Id` for `i = 1, 2, 3`.
pub fn cyclic_identity_holds(ops: &[Endo; 3]) -> bool {
    (0..3).all(|i| {
        ops[(i + 2) % 3]
            .compose(&ops[(i + 1) % 3])
            .compose(&ops[i])
            .is_identity()
    })
}

/// Algebraic relations among the three operators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OperatorRelations {
    /// `A_i A_j = −A_j A_i` for the pairs (1,2), (2,3), (3,1).
    pub anticommute: [bool; 3],
    /// `A_i A_j = A_j A_i` for the same pairs.
    pub commute: [bool; 3],
    pub a2a1_is_a3: bool,
    pub a1a2_is_a3: bool,
}

impl OperatorRelations {
    pub fn of(ops: &[Endo; 3]) -> Self {
        let pairs = [(0, 1), (1, 2), (2, 0)];
        let ab = |i: usize, j: usize| ops[i].compose(&ops[j]);
        OperatorRelations {
            anticommute: pairs.map(|(i, j)| *ab(i, j) == -&*ab(j, i)),
            commute: pairs.map(|(i, j)| ab(i, j) == ab(j, i)),
            a2a1_is_a3: ab(1, 0) == ops[2],
            a1a2_is_a3: ab(0, 1) == ops[2],
        }
    }
}

/// Leaf data of a holomorphic symplectic pair: the eigenspaces of `A₃` and
/// the classification of the restricted pairs of `A₁` and `A₂` on each.
#[derive(Debug, Clone, PartialEq)]
pub struct LeafReport {
    pub plus: Subspace,
    pub minus: Subspace,
    /// Tags of `(ω₂,ω₃)|D₊`, `(ω₃,ω₁)|D₊`, `(ω₂,ω₃)|D₋`, `(ω₃,ω₁)|D₋`.
    pub restricted_tags: [&'static str; 4],
}

impl LeafReport {
    pub fn leaves_holomorphic(&self) -> bool {
        self.restricted_tags.iter().all(|t| *t == "HolomorphicSymplectic")
    }

    pub fn dims_multiple_of_four(&self) -> bool {
        self.plus.dim().is_multiple_of(4) && self.minus.dim().is_multiple_of(4)
    }
}

/// One pair `(ω_i, ω_j)` of a symplectic triple.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairSummary {
    pub slots: (usize, usize),
    pub tag: &'static str,
    /// Ranks of `ω_i + ω_j` and `ω_i − ω_j`.
    pub ranks: (usize, usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct TripleClassification {
    pub tag: TripleTag,
    /// Canonical slot `s` holds input form `permutation[s]` (1-based).
    pub permutation: [usize; 3],
    pub forms: [KForm; 3],
    pub operators: [Endo; 3],
    pub squares: [SquareClass; 3],
    pub relations: OperatorRelations,
    pub metric: Option<MetricReport>,
    pub leaves: Option<LeafReport>,
    pub pairs: Option<Vec<PairSummary>>,
}

/// Classifies a triple by the squares of its operators, rotating the inputs
/// into canonical slots: the odd-one-out operator goes to slot 1 for
/// hypersymplectic triples (`A₁² = −Id`) and to slot 3 for holomorphic
/// symplectic pairs (`A₃² = Id`). Symmetric cases keep input order.
pub fn classify_triple(forms: &[KForm; 3]) -> Result<TripleClassification> {
    let ops = triple_operators(forms)?;
    let squares = ops.each_ref().map(square_class);
    let trivial = ops.iter().any(|a| a.is_identity() || a.is_neg_identity());
    let (tag, rotation) = tag_for_squares(&squares, trivial);

    // Rotating forms by r moves A_{1+r} into slot 1.
    let idx = [rotation % 3, (rotation + 1) % 3, (rotation + 2) % 3];
    let forms = idx.map(|i| forms[i].clone());
    let operators = idx.map(|i| ops[i].clone());
    let squares = idx.map(|i| squares[i]);
    let relations = OperatorRelations::of(&operators);

    let metric = match tag {
        TripleTag::HyperholomorphicSymplectic => Some(metric_hyperholomorphic(&forms, &operators)?),
        TripleTag::Hypersymplectic => Some(metric_hypersymplectic(&forms, &operators)?),
        _ => None,
    };
    let leaves = match tag {
        TripleTag::HolomorphicSymplecticPair => Some(leaf_report(&forms, &operators)?),
        _ => None,
    };
    let pairs = match tag {
        TripleTag::SymplecticTriple => Some(pair_summaries(&forms)?),
        _ => None,
    };
    Ok(TripleClassification {
        tag,
        permutation: idx.map(|i| i + 1),
        forms,
        operators,
        squares,
        relations,
        metric,
        leaves,
        pairs,
    })
}

/// Tag and canonical rotation from the squares in input order. `trivial`
/// marks a triple where some operator is `±Id`.
pub fn tag_for_squares(squares: &[SquareClass; 3], trivial: bool) -> (TripleTag, usize) {
    let minus = squares.iter().filter(|s| **s == SquareClass::MinusIdentity).count();
    let plus = squares.iter().filter(|s| **s == SquareClass::Identity).count();
    let slot = |c: SquareClass| squares.iter().position(|s| *s == c).expect("present");
    match (minus, plus) {
        (3, 0) => (TripleTag::HyperholomorphicSymplectic, 0),
        (1, 2) => (TripleTag::Hypersymplectic, slot(SquareClass::MinusIdentity)),
        (2, 1) if !trivial => (TripleTag::HolomorphicSymplecticPair, (slot(SquareClass::Identity) + 1) % 3),
        (0, 3) if !trivial => (TripleTag::SymplecticTriple, 0),
        _ => (TripleTag::Generic, 0),
    }
}

fn leaf_report(forms: &[KForm; 3], ops: &[Endo; 3]) -> Result<LeafReport> {
    let a3 = &ops[2];
    let n = a3.dim();
    let plus = Subspace::new(n, a3.eigenspace(&one()))?;
    let minus = Subspace::new(n, a3.eigenspace(&-one()))?;
    let tag = |basis: &Subspace, i: usize, j: usize| -> Result<&'static str> {
        if basis.dim() == 0 {
            return Ok("Empty");
        }
        Ok(classify_restricted(&forms[i], &forms[j], basis.basis())?.tag())
    };
    Ok(LeafReport {
        restricted_tags: [tag(&plus, 1, 2)?, tag(&plus, 2, 0)?, tag(&minus, 1, 2)?, tag(&minus, 2, 0)?],
        plus,
        minus,
    })
}

fn pair_summaries(forms: &[KForm; 3]) -> Result<Vec<PairSummary>> {
    [(0, 1), (1, 2), (2, 0)]
        .into_iter()
        .map(|(i, j)| {
            let c = classify_pair(&forms[i], &forms[j])?;
            Ok(PairSummary {
                slots: (i + 1, j + 1),
                tag: c.tag(),
                ranks: (rank_2form(&(&forms[i] + &forms[j]))?, rank_2form(&(&forms[i] - &forms[j]))?),
            })
        })
        .collect()
}

/// Whether every pair of a classified symplectic triple is a symplectic pair.
pub fn all_pairs_symplectic(c: &TripleClassification) -> bool {
    c.pairs
        .as_ref()
        .is_some_and(|ps| ps.iter().all(|p| p.tag == "SymplecticPair"))
}

/// Pair-level classification for slot pair `(i, j)` (0-based) of a triple.
pub fn classify_slot_pair(c: &TripleClassification, i: usize, j: usize) -> Result<PairClassification> {
    classify_pair(&c.forms[i], &c.forms[j])
}
