use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Rational;

/// One raw structure constant: `[e_i, e_j]` has `value` along `e_k` (1-based).
#[derive(Debug, Clone, PartialEq)]
pub struct Bracket {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub value: Rational,
}

impl Bracket {
    pub fn new(i: usize, j: usize, k: usize, value: Rational) -> Self {
        Bracket { i, j, k, value }
    }
}

/// Real Lie algebra given by structure constants in a fixed basis `e_1..e_n`.
/// Only obtainable through [`validate_lie`], so antisymmetry and the Jacobi
/// identity always hold.
#[derive(Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    dim: usize,
    // c[(i * n + j) * n + k] = c^k_{ij}, 0-based
    consts: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct LieReport {
    /// Dimensions of `g ⊇ [g,g] ⊇ [g,[g,g]] ⊇ …` until the series stabilizes.
    pub lower_central_dims: Vec<usize>,
    /// Smallest `s` with `g^{s+1} = 0`; `None` when not nilpotent.
    pub nilpotency_step: Option<usize>,
}

impl std::fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "LieAlgebra(n={}; ", self.dim)?;
        let mut first = true;
        for b in self.nonzero_brackets() {
            if !first {
                write!(f, ", ")?;
            }
            first = false;
            write!(f, "[e{},e{}]_{}={}", b.i, b.j, b.k, b.value)?;
        }
        write!(f, ")")
    }
}

impl LieAlgebra {
    pub fn abelian(dim: usize) -> Self {
        LieAlgebra {
            dim,
            consts: vec![Rational::zero(); dim * dim * dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn at(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.consts[(i * self.dim + j) * self.dim + k]
    }

    /// `c^k_{ij}` with 1-based indices.
    pub fn constant(&self, i: usize, j: usize, k: usize) -> Rational {
        self.at(i - 1, j - 1, k - 1).clone()
    }

    pub fn is_abelian(&self) -> bool {
        self.consts.iter().all(Zero::is_zero)
    }

    /// Nonzero constants with `i < j`, 1-based, in lexicographic order.
    pub fn nonzero_brackets(&self) -> Vec<Bracket> {
        let n = self.dim;
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in 0..n {
                    let c = self.at(i, j, k);
                    if !c.is_zero() {
                        out.push(Bracket::new(i + 1, j + 1, k + 1, c.clone()));
                    }
                }
            }
        }
        out
    }

    /// `[X, Y]^k = Σ X_i Y_j c^k_{ij}`.
    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let n = self.dim;
        let mut out = vec![Rational::zero(); n];
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y[j].is_zero() {
                    continue;
                }
                let xy = &x[i] * &y[j];
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.at(i, j, k);
                    if !c.is_zero() {
                        *o += &xy * c;
                    }
                }
            }
        }
        out
    }

    fn basis_vector(&self, i: usize) -> Vec<Rational> {
        (0..self.dim)
            .map(|k| if k == i { Rational::from_integer(1.into()) } else { Rational::zero() })
            .collect()
    }

    /// Direct sum `self ⊕ other`, with `other`'s basis shifted past `self`'s.
    pub fn direct_sum(&self, other: &LieAlgebra) -> LieAlgebra {
        let (a, b) = (self.dim, other.dim);
        let n = a + b;
        let mut consts = vec![Rational::zero(); n * n * n];
        for i in 0..a {
            for j in 0..a {
                for k in 0..a {
                    consts[(i * n + j) * n + k] = self.at(i, j, k).clone();
                }
            }
        }
        for i in 0..b {
            for j in 0..b {
                for k in 0..b {
                    consts[((i + a) * n + j + a) * n + k + a] = other.at(i, j, k).clone();
                }
            }
        }
        LieAlgebra { dim: n, consts }
    }

    pub fn report(&self) -> LieReport {
        let n = self.dim;
        let mut dims = vec![n];
        let mut current: Vec<Vec<Rational>> = (0..n).map(|i| self.basis_vector(i)).collect();
        loop {
            let mut spans = Vec::new();
            for i in 0..n {
                let ei = self.basis_vector(i);
                for v in &current {
                    spans.push(self.bracket(&ei, v));
                }
            }
            let next = if spans.is_empty() {
                Vec::new()
            } else {
                let (r, pivots) = Matrix::from_rows(spans).expect("equal lengths").rref();
                (0..pivots.len()).map(|row| r.row(row).to_vec()).collect()
            };
            let d = next.len();
            if d == *dims.last().expect("nonempty") {
                return LieReport {
                    lower_central_dims: dims,
                    nilpotency_step: None,
                };
            }
            dims.push(d);
            if d == 0 {
                let step = dims.len() - 1;
                return LieReport {
                    lower_central_dims: dims,
                    nilpotency_step: Some(step),
                };
            }
            current = next;
        }
    }
}

/// Validates raw structure constants and builds the algebra.
///
/// Entries listing both `[e_i,e_j]` and `[e_j,e_i]` must agree up to sign.
/// Every Jacobi triple `i < j < l` is checked and all violations reported.
pub fn validate_lie(dim: usize, entries: &[Bracket]) -> Result<(LieAlgebra, LieReport)> {
    let n = dim;
    let mut consts = vec![Rational::zero(); n * n * n];
    let mut set = vec![false; n * n * n];
    for b in entries {
        for idx in [b.i, b.j, b.k] {
            if idx == 0 || idx > n {
                return Err(Error::IndexOutOfRange { index: idx, dim: n });
            }
        }
        let (i, j, k) = (b.i - 1, b.j - 1, b.k - 1);
        if i == j {
            if b.value.is_zero() {
                continue;
            }
            return Err(Error::Antisymmetry { i: b.i, j: b.j, k: b.k });
        }
        let fwd = (i * n + j) * n + k;
        let rev = (j * n + i) * n + k;
        if set[fwd] && consts[fwd] != b.value {
            return Err(Error::Antisymmetry { i: b.i, j: b.j, k: b.k });
        }
        consts[fwd] = b.value.clone();
        consts[rev] = -&b.value;
        set[fwd] = true;
        set[rev] = true;
    }
    let g = LieAlgebra { dim: n, consts };
    let violations = jacobi_violations(&g);
    if !violations.is_empty() {
        return Err(Error::Jacobi(violations));
    }
    let report = g.report();
    Ok((g, report))
}

/// 1-based triples `(i, j, l)` where `[e_i,[e_j,e_l]] + cyclic ≠ 0`.
fn jacobi_violations(g: &LieAlgebra) -> Vec<(usize, usize, usize)> {
    let n = g.dim;
    let e: Vec<Vec<Rational>> = (0..n).map(|i| g.basis_vector(i)).collect();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for l in j + 1..n {
                let a = g.bracket(&e[i], &g.bracket(&e[j], &e[l]));
                let b = g.bracket(&e[j], &g.bracket(&e[l], &e[i]));
                let c = g.bracket(&e[l], &g.bracket(&e[i], &e[j]));
                if a.iter().zip(&b).zip(&c).any(|((x, y), z)| !(x + y + z).is_zero()) {
                    out.push((i + 1, j + 1, l + 1));
                }
            }
        }
    }
    out
}

/// Linear subspace given by an independent spanning set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Rational>>,
}

impl Subspace {
    pub fn new(ambient: usize, basis: Vec<Vec<Rational>>) -> Result<Self> {
        if let Some(v) = basis.iter().find(|v| v.len() != ambient) {
            return Err(Error::DimensionMismatch {
                expected: ambient,
                found: v.len(),
            });
        }
        if !basis.is_empty() && Matrix::from_rows(basis.clone())?.rank() < basis.len() {
            return Err(Error::DependentBasis);
        }
        Ok(Subspace { ambient, basis })
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        if v.iter().all(Zero::is_zero) {
            return true;
        }
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        Matrix::from_rows(rows).expect("equal lengths").rank() == self.basis.len()
    }

    /// Same subspace, possibly with a different basis.
    pub fn same_span(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient
            && self.dim() == other.dim()
            && other.basis.iter().all(|v| self.contains(v))
    }
}
