use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exterior::form::{form_matrix, KForm};
use crate::matrix::{SkewMatrix, SymMatrix};
use crate::scalar::Rational;

/// Inertia indices `(positive, negative, zero)` of a symmetric form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Signature {
    pub fn is_neutral(&self) -> bool {
        self.positive == self.negative
    }

    pub fn is_definite(&self) -> bool {
        self.zero == 0 && (self.positive == 0 || self.negative == 0)
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.zero == 0
    }

    /// `(p, q)` with `p ≥ q`, the display form when a global sign is free.
    pub fn unsigned(&self) -> (usize, usize) {
        (self.positive.max(self.negative), self.positive.min(self.negative))
    }
}

impl std::ops::Add for Signature {
    type Output = Signature;
    fn add(self, o: Signature) -> Signature {
        Signature {
            positive: self.positive + o.positive,
            negative: self.negative + o.negative,
            zero: self.zero + o.zero,
        }
    }
}

/// Pfaffian by skew-symmetric elimination with 2×2 pivots, O(n³).
pub fn pfaffian(m: &SkewMatrix) -> Result<Rational> {
    let n = m.rows();
    if n % 2 == 1 {
        return Err(Error::OddDimension(n));
    }
    let mut a = (**m).clone();
    let mut pf = Rational::one();
    for k in (0..n).step_by(2) {
        let Some(p) = (k + 1..n).find(|&p| !a[(k, p)].is_zero()) else {
            return Ok(Rational::zero());
        };
        if p != k + 1 {
            // Simultaneous row/column swap negates the Pfaffian.
            a.swap_rows(k + 1, p);
            a.swap_cols(k + 1, p);
            pf = -pf;
        }
        let piv = a[(k, k + 1)].clone();
        pf *= &piv;
        for i in k + 2..n {
            for j in k + 2..n {
                let num = &a[(k + 1, i)] * &a[(k, j)] - &a[(k, i)] * &a[(k + 1, j)];
                if !num.is_zero() {
                    a[(i, j)] += num / &piv;
                }
            }
        }
    }
    Ok(pf)
}

/// Rank of a 2-form (always even).
pub fn rank_2form(f: &KForm) -> Result<usize> {
    Ok(form_matrix(f)?.rank())
}

/// Non-degeneracy of a 2-form via its Pfaffian (odd dimension is degenerate).
pub fn is_nondegenerate(f: &KForm) -> Result<bool> {
    let m = form_matrix(f)?;
    if m.rows() % 2 == 1 {
        return Ok(false);
    }
    Ok(!pfaffian(&m)?.is_zero())
}

/// Exact inertia by symmetric pivoting (Sylvester's law).
///
/// Diagonal pivots are eliminated by Schur complement. When the active
/// diagonal is all zero but an off-diagonal entry `a_ij` survives, the
/// congruence `e_i ← e_i + e_j` creates the pivot `2 a_ij`.
pub fn signature(s: &SymMatrix) -> Signature {
    let n = s.rows();
    let mut a = (**s).clone();
    let mut active: Vec<usize> = (0..n).collect();
    let (mut pos, mut neg) = (0, 0);
    loop {
        if let Some(pi) = active.iter().position(|&i| !a[(i, i)].is_zero()) {
            let i = active.swap_remove(pi);
            let d = a[(i, i)].clone();
            if d.is_positive() {
                pos += 1;
            } else {
                neg += 1;
            }
            for &r in &active {
                if a[(r, i)].is_zero() {
                    continue;
                }
                let f = &a[(r, i)] / &d;
                for &c in &active {
                    let delta = &f * &a[(i, c)];
                    a[(r, c)] -= delta;
                }
            }
            continue;
        }
        let off = active.iter().find_map(|&i| {
            active
                .iter()
                .find(|&&j| j != i && !a[(i, j)].is_zero())
                .map(|&j| (i, j))
        });
        let Some((i, j)) = off else { break };
        for &c in &active {
            let v = a[(j, c)].clone();
            a[(i, c)] += v;
        }
        for &r in &active {
            let v = a[(r, j)].clone();
            a[(r, i)] += v;
        }
    }
    Signature {
        positive: pos,
        negative: neg,
        zero: n - pos - neg,
    }
}
