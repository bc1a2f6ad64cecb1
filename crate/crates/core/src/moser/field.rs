use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::moser::trig::TrigPoly;

/// `α = Σ aᵢ dxⁱ` with trigonometric coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct OneFormField {
    pub coeffs: Vec<TrigPoly>,
}

impl OneFormField {
    pub fn zero(dim: usize) -> Self {
        OneFormField {
            coeffs: vec![TrigPoly::zero(dim); dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn eval(&self, x: &[f64]) -> DVector<f64> {
        DVector::from_iterator(self.dim(), self.coeffs.iter().map(|c| c.eval(x)))
    }

    pub fn partial(&self, k: usize) -> OneFormField {
        OneFormField {
            coeffs: self.coeffs.iter().map(|c| c.partial(k)).collect(),
        }
    }

    pub fn scale(&self, s: f64) -> OneFormField {
        OneFormField {
            coeffs: self.coeffs.iter().map(|c| c.scale(s)).collect(),
        }
    }
}

/// `F = Σ_{i<j} F_{ij} dxⁱ∧dxʲ`, stored as a full row-major table of the
/// upper triangle (`i < j`, 0-based).
#[derive(Debug, Clone, PartialEq)]
pub struct TwoFormField {
    dim: usize,
    upper: Vec<TrigPoly>,
}

fn upper_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

impl TwoFormField {
    pub fn zero(dim: usize) -> Self {
        TwoFormField {
            dim,
            upper: vec![TrigPoly::zero(dim); dim * dim.saturating_sub(1) / 2],
        }
    }

    /// Constant-coefficient form from `(i, j, c)` entries, 1-based, `i < j`.
    pub fn constant(dim: usize, entries: &[(usize, usize, f64)]) -> Result<Self> {
        let mut f = Self::zero(dim);
        for &(i, j, c) in entries {
            f.add_to(i, j, &TrigPoly::constant(dim, c))?;
        }
        Ok(f)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Coefficient of `dxⁱ∧dxʲ` for 0-based `i < j`.
    pub fn coeff(&self, i: usize, j: usize) -> &TrigPoly {
        &self.upper[upper_index(self.dim, i, j)]
    }

    /// Adds `p·dxⁱ∧dxʲ` (1-based, any order of distinct indices).
    pub fn add_to(&mut self, i: usize, j: usize, p: &TrigPoly) -> Result<()> {
        let n = self.dim;
        for idx in [i, j] {
            if idx == 0 || idx > n {
                return Err(Error::IndexOutOfRange { index: idx, dim: n });
            }
        }
        if i == j {
            return Err(Error::Precondition(format!("repeated index {i} in 2-form term")));
        }
        let (a, b, p) = if i < j { (i, j, p.clone()) } else { (j, i, p.neg()) };
        let slot = upper_index(n, a - 1, b - 1);
        self.upper[slot] = self.upper[slot].add(&p);
        Ok(())
    }

    pub fn plus(&self, other: &TwoFormField) -> TwoFormField {
        TwoFormField {
            dim: self.dim,
            upper: self.upper.iter().zip(&other.upper).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn scale(&self, s: f64) -> TwoFormField {
        TwoFormField {
            dim: self.dim,
            upper: self.upper.iter().map(|p| p.scale(s)).collect(),
        }
    }

    pub fn partial(&self, k: usize) -> TwoFormField {
        TwoFormField {
            dim: self.dim,
            upper: self.upper.iter().map(|p| p.partial(k)).collect(),
        }
    }

    /// `M` with `M_ij = F(e_i, e_j)`.
    pub fn matrix(&self, x: &[f64]) -> DMatrix<f64> {
        let n = self.dim;
        let mut m = DMatrix::zeros(n, n);
        for i in 0..n {
            for j in i + 1..n {
                let v = self.coeff(i, j).eval(x);
                m[(i, j)] = v;
                m[(j, i)] = -v;
            }
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.upper.iter().all(TrigPoly::is_zero)
    }

    pub fn is_constant(&self) -> bool {
        self.upper.iter().all(TrigPoly::is_constant)
    }

    pub fn max_abs_freq(&self) -> i64 {
        self.upper.iter().map(TrigPoly::max_abs_freq).max().unwrap_or(0)
    }

    /// Coefficients `(dF)_{ijl} = ∂_i F_{jl} − ∂_j F_{il} + ∂_l F_{ij}`,
    /// `i < j < l`, in lexicographic order.
    pub fn exterior_derivative(&self) -> Vec<TrigPoly> {
        let n = self.dim;
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for l in j + 1..n {
                    let t = self
                        .coeff(j, l)
                        .partial(i)
                        .add(&self.coeff(i, l).partial(j).neg())
                        .add(&self.coeff(i, j).partial(l));
                    out.push(t);
                }
            }
        }
        out
    }

    pub fn is_closed(&self) -> bool {
        self.exterior_derivative().iter().all(TrigPoly::is_zero)
    }
}

/// Coordinate exterior derivative `(dα)_{ij} = ∂_i a_j − ∂_j a_i`.
pub fn exterior_derivative_field(alpha: &OneFormField) -> TwoFormField {
    let n = alpha.dim();
    let mut out = TwoFormField::zero(n);
    for i in 0..n {
        for j in i + 1..n {
            let c = alpha.coeffs[j].partial(i).add(&alpha.coeffs[i].partial(j).neg());
            out.upper[upper_index(n, i, j)] = c;
        }
    }
    out
}
