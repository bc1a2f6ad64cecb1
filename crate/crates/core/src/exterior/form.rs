use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::{Matrix, SkewMatrix};
use crate::scalar::{format_rational, Rational};

/// Alternating `k`-form on an `n`-dimensional frame.
///
/// Coefficients are keyed by strictly increasing 1-based index tuples, so
/// `e¹∧e²` is the key `[1, 2]`. Absent keys are zero; zero coefficients are
/// never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct KForm {
    dim: usize,
    degree: usize,
    coeffs: BTreeMap<Vec<usize>, Rational>,
}

impl KForm {
    pub fn zero(dim: usize, degree: usize) -> Self {
        assert!(degree <= dim, "degree {degree} exceeds dimension {dim}");
        KForm {
            dim,
            degree,
            coeffs: BTreeMap::new(),
        }
    }

    /// The basis monomial `e^{i₁}∧…∧e^{i_k}`; indices need not be sorted, the
    /// sign of the sorting permutation is applied.
    pub fn basis(dim: usize, indices: &[usize]) -> Result<Self> {
        let mut f = Self::zero(dim, indices.len());
        f.add_term(indices, Rational::from_integer(1.into()))?;
        Ok(f)
    }

    /// 2-form from `(i, j, c)` triples meaning `c·e^i∧e^j` (any order of i, j).
    pub fn two_form(dim: usize, terms: &[(usize, usize, Rational)]) -> Result<Self> {
        let mut f = Self::zero(dim, 2);
        for (i, j, c) in terms {
            f.add_term(&[*i, *j], c.clone())?;
        }
        Ok(f)
    }

    /// Integer-coefficient shorthand for [`KForm::two_form`].
    pub fn two_form_i64(dim: usize, terms: &[(usize, usize, i64)]) -> Result<Self> {
        let t: Vec<_> = terms
            .iter()
            .map(|&(i, j, c)| (i, j, Rational::from_integer(c.into())))
            .collect();
        Self::two_form(dim, &t)
    }

    /// Adds `c·e^{indices}`, sorting the indices with the induced sign.
    /// Repeated indices make the monomial vanish.
    pub fn add_term(&mut self, indices: &[usize], c: Rational) -> Result<()> {
        if indices.len() != self.degree {
            return Err(Error::WrongDegree {
                expected: self.degree,
                found: indices.len(),
            });
        }
        if let Some(&bad) = indices.iter().find(|&&i| i == 0 || i > self.dim) {
            return Err(Error::IndexOutOfRange {
                index: bad,
                dim: self.dim,
            });
        }
        let Some((key, odd)) = sort_with_parity(indices) else {
            return Ok(());
        };
        let c = if odd { -c } else { c };
        self.accumulate(key, c);
        Ok(())
    }

    fn accumulate(&mut self, key: Vec<usize>, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(key) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Coefficient of the increasing tuple `indices` (zero when absent).
    pub fn coefficient(&self, indices: &[usize]) -> Rational {
        self.coeffs.get(indices).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[usize], &Rational)> {
        self.coeffs.iter().map(|(k, v)| (k.as_slice(), v))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, s: &Rational) -> Self {
        let mut out = Self::zero(self.dim, self.degree);
        for (k, v) in &self.coeffs {
            out.accumulate(k.clone(), v * s);
        }
        out
    }

    /// Value on `k` vectors: `Σ_I a_I det[v_r(I_s)]`.
    pub fn evaluate(&self, vectors: &[Vec<Rational>]) -> Result<Rational> {
        if vectors.len() != self.degree {
            return Err(Error::WrongDegree {
                expected: self.degree,
                found: vectors.len(),
            });
        }
        if let Some(v) = vectors.iter().find(|v| v.len() != self.dim) {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: v.len(),
            });
        }
        let mut total = Rational::zero();
        for (idx, a) in &self.coeffs {
            let minor = Matrix::from_fn(self.degree, self.degree, |r, s| vectors[r][idx[s] - 1].clone());
            total += a * minor.det();
        }
        Ok(total)
    }

    /// Restriction to the span of `basis` (columns), as a form on the
    /// subspace in that basis. Only implemented for 2-forms.
    pub fn restrict(&self, basis: &[Vec<Rational>]) -> Result<KForm> {
        let m = form_matrix(self)?;
        let b = Matrix::from_columns(self.dim, basis);
        matrix_form(&SkewMatrix::new(m.congruence(&b))?)
    }

    fn check_same_shape(&self, other: &KForm) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        if self.degree != other.degree {
            return Err(Error::WrongDegree {
                expected: self.degree,
                found: other.degree,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &KForm) -> Result<KForm> {
        self.check_same_shape(other)?;
        let mut out = self.clone();
        for (k, v) in &other.coeffs {
            out.accumulate(k.clone(), v.clone());
        }
        Ok(out)
    }

    /// Block-sum: `self` on the first `dim` coordinates plus `other` shifted
    /// past them.
    pub fn direct_sum(&self, other: &KForm) -> Result<KForm> {
        if self.degree != other.degree {
            return Err(Error::WrongDegree {
                expected: self.degree,
                found: other.degree,
            });
        }
        let mut out = KForm::zero(self.dim + other.dim, self.degree);
        for (k, v) in &self.coeffs {
            out.accumulate(k.clone(), v.clone());
        }
        for (k, v) in &other.coeffs {
            out.accumulate(k.iter().map(|i| i + self.dim).collect(), v.clone());
        }
        Ok(out)
    }
}

/// Sorts distinct indices, returning the sorted key and whether the sorting
/// permutation is odd; `None` when an index repeats.
pub(crate) fn sort_with_parity(indices: &[usize]) -> Option<(Vec<usize>, bool)> {
    let mut inversions = 0usize;
    for a in 0..indices.len() {
        for b in a + 1..indices.len() {
            match indices[a].cmp(&indices[b]) {
                std::cmp::Ordering::Equal => return None,
                std::cmp::Ordering::Greater => inversions += 1,
                std::cmp::Ordering::Less => {}
            }
        }
    }
    let mut key = indices.to_vec();
    key.sort_unstable();
    Some((key, inversions % 2 == 1))
}

impl Add for &KForm {
    type Output = KForm;
    fn add(self, rhs: &KForm) -> KForm {
        self.try_add(rhs).expect("forms of equal shape")
    }
}

impl Neg for &KForm {
    type Output = KForm;
    fn neg(self) -> KForm {
        self.scale(&-Rational::from_integer(1.into()))
    }
}

impl Sub for &KForm {
    type Output = KForm;
    fn sub(self, rhs: &KForm) -> KForm {
        self + &(-rhs)
    }
}

impl fmt::Display for KForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(k, v)| {
                let mono: Vec<String> = k.iter().map(|i| format!("e{i}")).collect();
                format!("({})·{}", format_rational(v), mono.join("∧"))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for KForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "KForm(n={}, k={}; {})", self.dim, self.degree, self)
    }
}

/// `M[i][j] = f(e_i, e_j)`, so `f(X, Y) = Xᵀ M Y`. For `i < j` this is the
/// coefficient of `e^i∧e^j`. Every module shares this convention.
pub fn form_matrix(f: &KForm) -> Result<SkewMatrix> {
    if f.degree != 2 {
        return Err(Error::WrongDegree {
            expected: 2,
            found: f.degree,
        });
    }
    let mut m = Matrix::zeros(f.dim, f.dim);
    for (k, v) in &f.coeffs {
        let (i, j) = (k[0] - 1, k[1] - 1);
        m[(i, j)] = v.clone();
        m[(j, i)] = -v;
    }
    SkewMatrix::new(m)
}

/// Inverse of [`form_matrix`].
pub fn matrix_form(m: &SkewMatrix) -> Result<KForm> {
    let n = m.rows();
    let mut f = KForm::zero(n, 2);
    for i in 0..n {
        for j in i + 1..n {
            f.accumulate(vec![i + 1, j + 1], m[(i, j)].clone());
        }
    }
    Ok(f)
}

/// Exterior product. Graded-commutative: `f∧g = (−1)^{kl} g∧f`.
pub fn wedge(f: &KForm, g: &KForm) -> Result<KForm> {
    if f.dim != g.dim {
        return Err(Error::DimensionMismatch {
            expected: f.dim,
            found: g.dim,
        });
    }
    if f.degree + g.degree > f.dim {
        return Err(Error::DegreeOverflow {
            left: f.degree,
            right: g.degree,
            dim: f.dim,
        });
    }
    let mut out = KForm::zero(f.dim, f.degree + g.degree);
    for (a, x) in &f.coeffs {
        for (b, y) in &g.coeffs {
            let joined: Vec<usize> = a.iter().chain(b).copied().collect();
            if let Some((key, odd)) = sort_with_parity(&joined) {
                let c = x * y;
                out.accumulate(key, if odd { -c } else { c });
            }
        }
    }
    Ok(out)
}

/// Interior product `i_v f`, i.e. `(i_v f)(Y…) = f(v, Y…)`.
pub fn contract(v: &[Rational], f: &KForm) -> Result<KForm> {
    if v.len() != f.dim {
        return Err(Error::DimensionMismatch {
            expected: f.dim,
            found: v.len(),
        });
    }
    if f.degree == 0 {
        return Err(Error::ZeroDegree);
    }
    let mut out = KForm::zero(f.dim, f.degree - 1);
    for (k, a) in &f.coeffs {
        for (p, &idx) in k.iter().enumerate() {
            let vi = &v[idx - 1];
            if vi.is_zero() {
                continue;
            }
            let rest: Vec<usize> = k.iter().enumerate().filter(|&(q, _)| q != p).map(|(_, &i)| i).collect();
            let c = vi * a;
            out.accumulate(rest, if p % 2 == 1 { -c } else { c });
        }
    }
    Ok(out)
}

/// Covector `i_v ω` of a 2-form as a plain coefficient vector.
pub fn contract_covector(v: &[Rational], m: &SkewMatrix) -> Vec<Rational> {
    m.transpose().mul_vec(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    #[test]
    fn basis_sorting_sign() {
        let a = KForm::basis(3, &[2, 1]).unwrap();
        assert_eq!(a.coefficient(&[1, 2]), int(-1));
        assert!(KForm::basis(3, &[1, 1]).unwrap().is_zero());
        assert!(matches!(KForm::basis(3, &[4, 1]), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn cancellation_removes_terms() {
        let a = KForm::two_form_i64(3, &[(1, 2, 1), (2, 1, 1)]).unwrap();
        assert!(a.is_zero());
    }

    #[test]
    fn restrict_to_coordinate_plane() {
        let w = KForm::two_form_i64(4, &[(1, 2, 3), (3, 4, 1)]).unwrap();
        let e1 = vec![int(1), int(0), int(0), int(0)];
        let e2 = vec![int(0), int(1), int(0), int(0)];
        let r = w.restrict(&[e1, e2]).unwrap();
        assert_eq!(r.dim(), 2);
        assert_eq!(r.coefficient(&[1, 2]), int(3));
    }

    #[test]
    fn evaluate_matches_matrix() {
        let w = KForm::two_form_i64(3, &[(1, 2, 2), (2, 3, -1)]).unwrap();
        let m = form_matrix(&w).unwrap();
        let x = vec![int(1), int(2), int(3)];
        let y = vec![int(-1), int(0), int(5)];
        assert_eq!(w.evaluate(&[x.clone(), y.clone()]).unwrap(), m.bilinear(&x, &y));
    }
}
