use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::moser::field::{exterior_derivative_field, OneFormField, TwoFormField};

/// `ω_t = ω₀ + Σ_p t^{p+1}/(p+1) · dα^{(p)}` with primitive
/// `α_t = Σ_p t^p α^{(p)}`, so `ω̇_t = dα_t` holds by construction.
#[derive(Debug, Clone, PartialEq)]
pub struct FormFamily {
    base: TwoFormField,
    primitives: Vec<OneFormField>,
    exact: Vec<TwoFormField>,
    exact_partials: Vec<Vec<TwoFormField>>,
    primitive_partials: Vec<Vec<OneFormField>>,
}

impl FormFamily {
    /// `base` must have constant coefficients; `primitives[p]` is the
    /// coefficient of `t^p` in `α_t`.
    pub fn new(base: TwoFormField, primitives: Vec<OneFormField>) -> Result<Self> {
        let n = base.dim();
        if !base.is_constant() {
            return Err(Error::Precondition("base form must have constant coefficients".into()));
        }
        if let Some(p) = primitives.iter().find(|p| p.dim() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: p.dim(),
            });
        }
        let exact: Vec<TwoFormField> = primitives.iter().map(exterior_derivative_field).collect();
        let exact_partials = exact.iter().map(|f| (0..n).map(|k| f.partial(k)).collect()).collect();
        let primitive_partials = primitives.iter().map(|a| (0..n).map(|k| a.partial(k)).collect()).collect();
        Ok(FormFamily {
            base,
            primitives,
            exact,
            exact_partials,
            primitive_partials,
        })
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    pub fn base(&self) -> &TwoFormField {
        &self.base
    }

    pub fn primitives(&self) -> &[OneFormField] {
        &self.primitives
    }

    /// Same family with every primitive multiplied by `s`.
    pub fn scale_primitives(&self, s: f64) -> Result<Self> {
        FormFamily::new(self.base.clone(), self.primitives.iter().map(|a| a.scale(s)).collect())
    }

    /// `ω_t` closed as a field: the base is constant and each `dα^{(p)}`
    /// is checked symbolically.
    pub fn is_closed(&self) -> bool {
        self.base.is_closed() && self.exact.iter().all(TwoFormField::is_closed)
    }

    pub fn max_abs_freq(&self) -> i64 {
        self.exact.iter().map(TwoFormField::max_abs_freq).max().unwrap_or(0)
    }

    pub fn alpha(&self, x: &[f64], t: f64) -> DVector<f64> {
        let mut out = DVector::zeros(self.dim());
        for (p, a) in self.primitives.iter().enumerate() {
            out += a.eval(x) * t.powi(p as i32);
        }
        out
    }

    pub fn alpha_partial(&self, x: &[f64], t: f64, k: usize) -> DVector<f64> {
        let mut out = DVector::zeros(self.dim());
        for (p, a) in self.primitive_partials.iter().enumerate() {
            out += a[k].eval(x) * t.powi(p as i32);
        }
        out
    }

    pub fn omega(&self, x: &[f64], t: f64) -> DMatrix<f64> {
        let mut m = self.base.matrix(x);
        for (p, f) in self.exact.iter().enumerate() {
            m += f.matrix(x) * (t.powi(p as i32 + 1) / (p as f64 + 1.0));
        }
        m
    }

    pub fn omega_partial(&self, x: &[f64], t: f64, k: usize) -> DMatrix<f64> {
        let n = self.dim();
        let mut m = DMatrix::zeros(n, n);
        for (p, f) in self.exact_partials.iter().enumerate() {
            m += f[k].matrix(x) * (t.powi(p as i32 + 1) / (p as f64 + 1.0));
        }
        m
    }

    /// `dα_t` evaluated at `x`.
    pub fn d_alpha(&self, x: &[f64], t: f64) -> DMatrix<f64> {
        let n = self.dim();
        let mut m = DMatrix::zeros(n, n);
        for (p, f) in self.exact.iter().enumerate() {
            m += f.matrix(x) * t.powi(p as i32);
        }
        m
    }

    /// Mean of `M_{ω_t}` over a uniform grid fine enough to integrate every
    /// frequency exactly; equals the cohomology class on the torus.
    pub fn grid_average(&self, t: f64) -> DMatrix<f64> {
        let n = self.dim();
        let m = (self.max_abs_freq() as usize + 1).max(4);
        let total = m.pow(n as u32);
        let mut acc = DMatrix::zeros(n, n);
        let mut x = vec![0.0; n];
        for idx in 0..total {
            let mut r = idx;
            for xi in x.iter_mut() {
                *xi = (r % m) as f64 / m as f64;
                r /= m;
            }
            acc += self.omega(&x, t);
        }
        acc / total as f64
    }
}
