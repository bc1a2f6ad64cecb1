use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

/// One term `w · (2π)^p · (c·cos 2π⟨k,x⟩ + s·sin 2π⟨k,x⟩)`.
///
/// Derivatives only touch the integer weight `w` and the power `p`, so mixed
/// partials commute exactly and `d∘d` cancels term by term.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrigTerm {
    pub freq: Vec<i64>,
    pub cos: f64,
    pub sin: f64,
    #[serde(default = "one_i64", skip_serializing_if = "is_one")]
    pub weight: i64,
    #[serde(default, skip_serializing_if = "is_zero_u32")]
    pub tau_power: u32,
}

fn one_i64() -> i64 {
    1
}

fn is_one(w: &i64) -> bool {
    *w == 1
}

fn is_zero_u32(p: &u32) -> bool {
    *p == 0
}

impl TrigTerm {
    pub fn new(freq: Vec<i64>, cos: f64, sin: f64) -> Self {
        TrigTerm {
            freq,
            cos,
            sin,
            weight: 1,
            tau_power: 0,
        }
    }

    fn phase(&self, x: &[f64]) -> f64 {
        TAU * self.freq.iter().zip(x).map(|(&k, &xi)| k as f64 * xi).sum::<f64>()
    }

    fn amplitude(&self) -> f64 {
        self.weight as f64 * TAU.powi(self.tau_power as i32)
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        let (s, c) = self.phase(x).sin_cos();
        self.amplitude() * (self.cos * c + self.sin * s)
    }

    /// `∂/∂x_j`: `c cos θ + s sin θ ↦ 2πk_j (s cos θ − c sin θ)`.
    pub fn partial(&self, j: usize) -> Option<TrigTerm> {
        let k = self.freq[j];
        if k == 0 {
            return None;
        }
        Some(TrigTerm {
            freq: self.freq.clone(),
            cos: self.sin,
            sin: -self.cos,
            weight: self.weight * k,
            tau_power: self.tau_power + 1,
        })
    }

    fn same_shape(&self, o: &TrigTerm) -> bool {
        self.freq == o.freq
            && self.tau_power == o.tau_power
            && self.cos.to_bits() == o.cos.to_bits()
            && self.sin.to_bits() == o.sin.to_bits()
    }

    fn is_null(&self) -> bool {
        self.weight == 0 || (self.cos == 0.0 && self.sin == 0.0)
    }
}

/// Finite trigonometric polynomial on `Tⁿ = ℝⁿ/ℤⁿ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrigPoly {
    pub dim: usize,
    pub terms: Vec<TrigTerm>,
}

impl TrigPoly {
    pub fn zero(dim: usize) -> Self {
        TrigPoly { dim, terms: Vec::new() }
    }

    pub fn constant(dim: usize, c: f64) -> Self {
        let mut p = Self::zero(dim);
        p.push(TrigTerm::new(vec![0; dim], c, 0.0));
        p
    }

    /// Adds a term, merging it with an identically shaped one.
    pub fn push(&mut self, t: TrigTerm) {
        debug_assert_eq!(t.freq.len(), self.dim);
        if t.is_null() {
            return;
        }
        if let Some(pos) = self.terms.iter().position(|u| u.same_shape(&t)) {
            self.terms[pos].weight += t.weight;
            if self.terms[pos].weight == 0 {
                self.terms.remove(pos);
            }
        } else {
            self.terms.push(t);
        }
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.terms.iter().map(|t| t.eval(x)).sum()
    }

    pub fn partial(&self, j: usize) -> TrigPoly {
        let mut out = Self::zero(self.dim);
        for t in self.terms.iter().filter_map(|t| t.partial(j)) {
            out.push(t);
        }
        out
    }

    pub fn add(&self, other: &TrigPoly) -> TrigPoly {
        let mut out = self.clone();
        for t in &other.terms {
            out.push(t.clone());
        }
        out
    }

    pub fn neg(&self) -> TrigPoly {
        let mut out = self.clone();
        for t in &mut out.terms {
            t.weight = -t.weight;
        }
        out
    }

    /// Multiplies the cosine and sine coefficients by `s`.
    pub fn scale(&self, s: f64) -> TrigPoly {
        let mut out = Self::zero(self.dim);
        for t in &self.terms {
            out.push(TrigTerm {
                cos: t.cos * s,
                sin: t.sin * s,
                ..t.clone()
            });
        }
        out
    }

    /// No terms left after exact cancellation.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|t| t.freq.iter().all(|&k| k == 0))
    }

    pub fn max_abs_freq(&self) -> i64 {
        self.terms.iter().flat_map(|t| t.freq.iter().map(|k| k.abs())).max().unwrap_or(0)
    }
}
