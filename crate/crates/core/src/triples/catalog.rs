use crate::error::{Error, Result};
use crate::exterior::{is_nondegenerate, KForm, Signature};
use crate::lie::{is_closed, is_subalgebra, nijenhuis, validate_lie, Bracket, LieAlgebra, LieReport};
use crate::recursion::{complex_kernel_check, PairClassification, SquareClass};
use crate::scalar::int;
use crate::triples::metric::Check;
use crate::triples::{classify_slot_pair, classify_triple, cyclic_identity_holds, tag_for_squares, TripleClassification, TripleTag};

use SquareClass::{Identity as Plus, MinusIdentity as Minus};

/// A named triple with the classification it is expected to produce.
#[derive(Debug, Clone, PartialEq)]
pub struct ExampleCatalogEntry {
    pub name: String,
    pub algebra: LieAlgebra,
    pub forms: [KForm; 3],
    /// Squares of `A₁, A₂, A₃` in input order.
    pub expected_squares: [SquareClass; 3],
    pub expected_tag: TripleTag,
    /// Signature of `g` as computed from canonical slot 1.
    pub expected_signature: Option<Signature>,
}

const BASE_NAMES: [&str; 6] = ["dotti-fino-8", "nil3xR", "hsp-8", "triple-6", "flat-hk-4", "flat-hs-4"];

/// Names of the built-in entries. Composite names are built with
/// `product(a,b)` and `neg(a)`.
pub fn catalog_names() -> &'static [&'static str] {
    &BASE_NAMES
}

fn sig(positive: usize, negative: usize) -> Option<Signature> {
    Some(Signature {
        positive,
        negative,
        zero: 0,
    })
}

fn brackets(raw: &[(usize, usize, usize, i64)]) -> Vec<Bracket> {
    raw.iter().map(|&(i, j, k, c)| Bracket::new(i, j, k, int(c))).collect()
}

fn forms(n: usize, raw: [&[(usize, usize, i64)]; 3]) -> [KForm; 3] {
    raw.map(|t| KForm::two_form_i64(n, t).expect("static catalog data"))
}

fn entry(
    name: &str,
    n: usize,
    lie: &[(usize, usize, usize, i64)],
    raw: [&[(usize, usize, i64)]; 3],
    squares: [SquareClass; 3],
    signature: Option<Signature>,
) -> ExampleCatalogEntry {
    let (algebra, _) = validate_lie(n, &brackets(lie)).expect("static catalog data");
    ExampleCatalogEntry {
        name: name.to_string(),
        algebra,
        forms: forms(n, raw),
        expected_squares: squares,
        expected_tag: tag_for_squares(&squares, false).0,
        expected_signature: signature,
    }
}

const DF_BRACKETS: &[(usize, usize, usize, i64)] = &[(1, 3, 7, 1), (2, 4, 7, -1), (1, 4, 8, 1), (2, 3, 8, 1)];
const DF_OMEGA1: &[(usize, usize, i64)] = &[(8, 1, 1), (7, 2, 1), (6, 3, -1), (5, 4, 1)];
const DF_OMEGA2: &[(usize, usize, i64)] = &[(8, 2, 1), (7, 1, -1), (6, 4, 1), (5, 3, 1)];
const DF_OMEGA3: &[(usize, usize, i64)] = &[(8, 3, 1), (7, 4, 1), (6, 1, 1), (5, 2, -1)];

fn base_example(name: &str) -> Option<ExampleCatalogEntry> {
    let e = match name {
        "dotti-fino-8" => entry(name, 8, DF_BRACKETS, [DF_OMEGA1, DF_OMEGA2, DF_OMEGA3], [Minus; 3], sig(4, 4)),
        // dα₃ = α₁∧α₂ with dα(X,Y) = −α([X,Y]) gives [e₁,e₂] = −e₃.
        "nil3xR" => entry(
            name,
            4,
            &[(1, 2, 3, -1)],
            [&[(3, 1, 1), (2, 4, 1)], &[(3, 2, 1), (1, 4, -1)], &[(3, 2, 1), (1, 4, 1)]],
            [Plus, Plus, Minus],
            sig(2, 2),
        ),
        "hsp-8" => entry(
            name,
            8,
            DF_BRACKETS,
            [DF_OMEGA1, DF_OMEGA2, &[(8, 2, 1), (7, 1, -1), (6, 4, -1), (5, 3, -1)]],
            [Plus, Minus, Minus],
            None,
        ),
        "triple-6" => entry(
            name,
            6,
            &[],
            [
                &[(1, 2, 1), (3, 4, 1), (5, 6, 1)],
                &[(1, 2, 1), (3, 4, 1), (5, 6, -1)],
                &[(1, 2, 1), (3, 4, -1), (5, 6, -1)],
            ],
            [Plus; 3],
            None,
        ),
        "flat-hk-4" => entry(
            name,
            4,
            &[],
            [&[(1, 2, 1), (3, 4, 1)], &[(1, 3, 1), (4, 2, 1)], &[(1, 4, 1), (2, 3, 1)]],
            [Minus; 3],
            sig(4, 0),
        ),
        "flat-hs-4" => entry(
            name,
            4,
            &[],
            [&[(1, 2, 1), (3, 4, 1)], &[(1, 2, 1), (3, 4, -1)], &[(1, 3, 1), (2, 4, 1)]],
            [Minus, Plus, Plus],
            sig(2, 2),
        ),
        _ => return None,
    };
    Some(e)
}

/// Looks up a catalog entry. Besides the base names, accepts
/// `product(a,b)` (block-diagonal algebra and forms) and `neg(a)` (all
/// three forms negated, which keeps the operators and negates `g`).
pub fn builtin_example(name: &str) -> Result<ExampleCatalogEntry> {
    let name = name.trim();
    let unknown = || Error::UnknownExample(name.to_string());
    if let Some(inner) = call_args(name, "product") {
        let (a, b) = split_top_level(inner).ok_or_else(unknown)?;
        return product(&builtin_example(a)?, &builtin_example(b)?);
    }
    if let Some(inner) = call_args(name, "neg") {
        return Ok(negate(&builtin_example(inner)?));
    }
    base_example(name).ok_or_else(unknown)
}

fn call_args<'a>(s: &'a str, head: &str) -> Option<&'a str> {
    s.strip_prefix(head)?.trim_start().strip_prefix('(')?.strip_suffix(')')
}

fn split_top_level(s: &str) -> Option<(&str, &str)> {
    let mut depth = 0i32;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => return Some((&s[..i], &s[i + 1..])),
            _ => {}
        }
    }
    None
}

fn product(a: &ExampleCatalogEntry, b: &ExampleCatalogEntry) -> Result<ExampleCatalogEntry> {
    let squares: [SquareClass; 3] =
        std::array::from_fn(|i| if a.expected_squares[i] == b.expected_squares[i] { a.expected_squares[i] } else { SquareClass::Other });
    let tag = tag_for_squares(&squares, false).0;
    let signature = match (tag.has_metric(), a.expected_signature, b.expected_signature) {
        (true, Some(x), Some(y)) => Some(x + y),
        _ => None,
    };
    Ok(ExampleCatalogEntry {
        name: format!("product({},{})", a.name, b.name),
        algebra: a.algebra.direct_sum(&b.algebra),
        forms: [
            a.forms[0].direct_sum(&b.forms[0])?,
            a.forms[1].direct_sum(&b.forms[1])?,
            a.forms[2].direct_sum(&b.forms[2])?,
        ],
        expected_squares: squares,
        expected_tag: tag,
        expected_signature: signature,
    })
}

fn negate(a: &ExampleCatalogEntry) -> ExampleCatalogEntry {
    ExampleCatalogEntry {
        name: format!("neg({})", a.name),
        algebra: a.algebra.clone(),
        forms: a.forms.clone().map(|f| -&f),
        expected_squares: a.expected_squares,
        expected_tag: a.expected_tag,
        expected_signature: a.expected_signature.map(|s| Signature {
            positive: s.negative,
            negative: s.positive,
            zero: s.zero,
        }),
    }
}

/// Outcome of running every applicable check on a catalog entry.
#[derive(Debug, Clone, PartialEq)]
pub struct ExampleVerification {
    pub name: String,
    pub lie: LieReport,
    pub classification: TripleClassification,
    pub checks: Vec<Check>,
}

impl ExampleVerification {
    pub fn passed(&self) -> bool {
        self.checks.iter().filter(|c| c.required).all(|c| c.pass)
    }

    pub fn check(&self, name: &str) -> Option<bool> {
        self.checks.iter().find(|c| c.name == name).map(|c| c.pass)
    }
}

/// Classifies the entry and checks it against its expectations and the
/// structural properties implied by its tag.
pub fn verify_example(entry: &ExampleCatalogEntry) -> Result<ExampleVerification> {
    let c = classify_triple(&entry.forms)?;
    let mut checks = vec![Check::required("tag_matches", c.tag == entry.expected_tag)];
    if let Some(expected) = entry.expected_signature {
        let found = c.metric.as_ref().map(|m| m.signature);
        checks.push(Check::required("signature_matches", found == Some(expected)));
    }
    checks.extend(triple_checks(&entry.algebra, &c)?);
    Ok(ExampleVerification {
        name: entry.name.clone(),
        lie: entry.algebra.report(),
        classification: c,
        checks,
    })
}

/// Closedness, non-degeneracy, integrability and the tag-specific
/// properties of a classified triple of left-invariant forms on `g`.
pub fn triple_checks(g: &LieAlgebra, c: &TripleClassification) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let mut closed = true;
    let mut nondeg = true;
    for f in &c.forms {
        closed &= is_closed(g, f)?;
        nondeg &= is_nondegenerate(f)?;
    }
    checks.push(Check::required("forms_closed", closed));
    checks.push(Check::required("forms_nondegenerate", nondeg));
    checks.push(Check::required("cyclic_identity", cyclic_identity_holds(&c.operators)));
    if c.tag != TripleTag::Generic {
        let mut integrable = true;
        for a in &c.operators {
            integrable &= nijenhuis(g, a)?.is_zero();
        }
        checks.push(Check::required("nijenhuis_zero", integrable));
    }

    let rel = &c.relations;
    match c.tag {
        TripleTag::HyperholomorphicSymplectic => {
            checks.push(Check::required("squares_minus_identity", c.squares == [Minus; 3]));
            checks.push(Check::required("anticommute", rel.anticommute.iter().all(|b| *b)));
            let f = &c.forms;
            let mut kernel = true;
            for i in 0..3 {
                kernel &= complex_kernel_check(&f[(i + 1) % 3], &f[(i + 2) % 3], &c.operators[i])?;
            }
            checks.push(Check::required("complex_kernel", kernel));
            checks.push(Check::informational("a2a1_is_a3", rel.a2a1_is_a3));
            checks.push(Check::informational("a1a2_is_a3", rel.a1a2_is_a3));
        }
        TripleTag::Hypersymplectic => {
            checks.push(Check::informational("a2a1_is_a3", rel.a2a1_is_a3));
            checks.push(Check::informational("a1a2_is_a3", rel.a1a2_is_a3));
        }
        TripleTag::HolomorphicSymplecticPair => {
            let leaves = c.leaves.as_ref().expect("present for this tag");
            checks.push(Check::required("commute", rel.commute.iter().all(|b| *b)));
            checks.push(Check::required("a2a1_is_a3", rel.a2a1_is_a3));
            checks.push(Check::required("eigenspace_dims_multiple_of_4", leaves.dims_multiple_of_four()));
            checks.push(Check::required("leaves_holomorphic", leaves.leaves_holomorphic()));
            checks.push(Check::required(
                "eigenspaces_subalgebras",
                is_subalgebra(g, &leaves.plus)? && is_subalgebra(g, &leaves.minus)?,
            ));
        }
        TripleTag::SymplecticTriple => {
            let pairs = c.pairs.as_ref().expect("present for this tag");
            let n = g.dim();
            checks.push(Check::required("pairs_symplectic", pairs.iter().all(|p| p.tag == "SymplecticPair")));
            checks.push(Check::required("dimension_at_least_6", n >= 6));
            checks.push(Check::required(
                "pair_sums_degenerate",
                pairs.iter().all(|p| p.ranks.0 > 0 && p.ranks.0 < n && p.ranks.1 > 0 && p.ranks.1 < n),
            ));
            checks.push(Check::informational("pair_sums_rank_4", pairs.iter().all(|p| p.ranks == (4, 4))));
            let mut foliated = true;
            for (i, j) in [(0, 1), (1, 2), (2, 0)] {
                if let PairClassification::SymplecticPair(d) = classify_slot_pair(c, i, j)? {
                    foliated &= is_subalgebra(g, &d.plus_eigenspace)? && is_subalgebra(g, &d.minus_eigenspace)?;
                }
            }
            checks.push(Check::required("pair_kernels_subalgebras", foliated));
        }
        TripleTag::Generic => {}
    }
    if let Some(m) = &c.metric {
        checks.extend(m.checks.iter().cloned());
    }
    Ok(checks)
}
