use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exterior::{wedge, KForm};
use crate::lie::algebra::{LieAlgebra, Subspace};
use crate::matrix::Endo;
use crate::scalar::Rational;

/// Differential of the dual basis covector: `d e^k = −Σ_{i<j} c^k_{ij} e^i∧e^j`,
/// i.e. `dα(X, Y) = −α([X, Y])`.
pub fn differential_of_covector(g: &LieAlgebra, k: usize) -> KForm {
    let n = g.dim();
    let mut out = KForm::zero(n, 2);
    for b in g.nonzero_brackets().into_iter().filter(|b| b.k == k) {
        out.add_term(&[b.i, b.j], -b.value).expect("indices in range");
    }
    out
}

/// Chevalley–Eilenberg differential of a left-invariant form, extended from
/// covectors as a graded derivation:
/// `d(e^{i₁}∧…∧e^{i_k}) = Σ_p (−1)^p e^{i₁}∧…∧d e^{i_p}∧…∧e^{i_k}`.
pub fn ce_differential(g: &LieAlgebra, f: &KForm) -> Result<KForm> {
    let n = g.dim();
    if f.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: f.dim(),
        });
    }
    let k = f.degree();
    if k + 1 > n {
        return Err(Error::DegreeOverflow { left: k, right: 1, dim: n });
    }
    let d_basis: Vec<KForm> = (1..=n).map(|i| differential_of_covector(g, i)).collect();
    let mut out = KForm::zero(n, k + 1);
    for (idx, a) in f.terms() {
        for p in 0..k {
            let d = &d_basis[idx[p] - 1];
            if d.is_zero() {
                continue;
            }
            let left = KForm::basis(n, &idx[..p])?;
            let right = KForm::basis(n, &idx[p + 1..])?;
            let term = wedge(&wedge(&left, d)?, &right)?;
            let s = if p % 2 == 1 { -a.clone() } else { a.clone() };
            out = &out + &term.scale(&s);
        }
    }
    Ok(out)
}

/// `df = 0`; top-degree forms are closed.
pub fn is_closed(g: &LieAlgebra, f: &KForm) -> Result<bool> {
    if f.dim() != g.dim() {
        return Err(Error::DimensionMismatch {
            expected: g.dim(),
            found: f.dim(),
        });
    }
    if f.degree() == g.dim() {
        return Ok(true);
    }
    Ok(ce_differential(g, f)?.is_zero())
}

/// Values `N_A(e_i, e_j)` on all frame pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NijenhuisTensor {
    dim: usize,
    values: Vec<Vec<Rational>>,
}

impl NijenhuisTensor {
    /// `N_A(e_i, e_j)` with 1-based indices.
    pub fn value(&self, i: usize, j: usize) -> &[Rational] {
        &self.values[(i - 1) * self.dim + (j - 1)]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().flatten().all(Zero::is_zero)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
}

/// `N_A(X,Y) = A²[X,Y] + [AX,AY] − A[AX,Y] − A[X,AY]` on the frame.
pub fn nijenhuis(g: &LieAlgebra, a: &Endo) -> Result<NijenhuisTensor> {
    let n = g.dim();
    if a.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: a.dim(),
        });
    }
    let a2 = a.square();
    let frame: Vec<Vec<Rational>> = (0..n)
        .map(|i| (0..n).map(|k| Rational::from_integer(i64::from(i == k).into())).collect())
        .collect();
    let images: Vec<Vec<Rational>> = frame.iter().map(|v| a.apply(v)).collect();
    let mut values = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let t1 = a2.apply(&g.bracket(&frame[i], &frame[j]));
            let t2 = g.bracket(&images[i], &images[j]);
            let t3 = a.apply(&g.bracket(&images[i], &frame[j]));
            let t4 = a.apply(&g.bracket(&frame[i], &images[j]));
            values.push(
                (0..n)
                    .map(|k| &t1[k] + &t2[k] - &t3[k] - &t4[k])
                    .collect(),
            );
        }
    }
    Ok(NijenhuisTensor { dim: n, values })
}

/// `[s, s] ⊆ s`, checked on basis pairs.
pub fn is_subalgebra(g: &LieAlgebra, s: &Subspace) -> Result<bool> {
    if s.ambient() != g.dim() {
        return Err(Error::DimensionMismatch {
            expected: g.dim(),
            found: s.ambient(),
        });
    }
    let b = s.basis();
    for i in 0..b.len() {
        for j in i + 1..b.len() {
            if !s.contains(&g.bracket(&b[i], &b[j])) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
