use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::moser::family::FormFamily;

/// Above this 2-norm condition number a form matrix counts as degenerate.
pub const CONDITION_LIMIT: f64 = 1e8;

/// Times at which flow results are recorded.
pub const CHECKPOINTS: [f64; 4] = [0.25, 0.5, 0.75, 1.0];

/// A Moser problem: `ω_t` with primitive `α_t`, optionally paired with
/// `η_t` and `β_t`.
#[derive(Debug, Clone, PartialEq)]
pub struct FlowFamily {
    pub name: String,
    pub omega: FormFamily,
    pub eta: Option<FormFamily>,
}

/// Uniform samples in `[0,1)ⁿ` from a seeded ChaCha stream.
pub fn sample_points(n: usize, count: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| (0..n).map(|_| rng.gen::<f64>()).collect()).collect()
}

/// `max(σ_max, 1) / σ_min`: the usual 2-norm condition number, floored at
/// unit scale so that a uniformly shrinking form also counts as degenerate.
fn condition_number(m: &DMatrix<f64>) -> f64 {
    let sv = m.clone().svd(false, false).singular_values;
    let max = sv.max().max(1.0);
    let min = sv.min();
    if min == 0.0 {
        f64::INFINITY
    } else {
        max / min
    }
}

fn checked_lu(m: DMatrix<f64>, x: &[f64], t: f64) -> Result<nalgebra::LU<f64, nalgebra::Dyn, nalgebra::Dyn>> {
    let cond = condition_number(&m);
    // NaN must also be rejected.
    if cond.is_nan() || cond >= CONDITION_LIMIT {
        return Err(Error::DegenerateFamily {
            t,
            x: x.to_vec(),
            cond,
        });
    }
    Ok(m.lu())
}

/// Solves `i_X ω_t = −α_t` at `x`. With `ω(X, Y) = Xᵀ M Y` the covector
/// `i_X ω` is `Mᵀ X = −M X`, so the system is `M X = α`.
pub fn moser_vector_field(family: &FormFamily, x: &[f64], t: f64) -> Result<DVector<f64>> {
    let lu = checked_lu(family.omega(x, t), x, t)?;
    Ok(lu.solve(&family.alpha(x, t)).expect("nonsingular after condition check"))
}

/// `X_t(x)` and `∂X/∂x`, the latter from `M ∂_k X = ∂_k α − (∂_k M) X`.
fn field_and_jacobian(family: &FormFamily, x: &[f64], t: f64) -> Result<(DVector<f64>, DMatrix<f64>)> {
    let n = family.dim();
    let lu = checked_lu(family.omega(x, t), x, t)?;
    let v = lu.solve(&family.alpha(x, t)).expect("nonsingular");
    let mut dv = DMatrix::zeros(n, n);
    for k in 0..n {
        let rhs = family.alpha_partial(x, t, k) - family.omega_partial(x, t, k) * &v;
        dv.set_column(k, &lu.solve(&rhs).expect("nonsingular"));
    }
    Ok((v, dv))
}

/// `max |i_X ω_t + α_t|` at one point.
pub fn field_residual(family: &FormFamily, x: &[f64], t: f64, v: &DVector<f64>) -> f64 {
    let covector = family.omega(x, t).transpose() * v;
    (covector + family.alpha(x, t)).amax()
}

/// Residuals of the intertwining hypothesis over samples and times.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IntertwiningReport {
    /// `max |α_t − β_t∘A|`.
    pub alpha_residual: f64,
    /// `max |A(x,t) − A(x,0)| / max(1, |A(x,0)|)`.
    pub a_drift: f64,
}

impl IntertwiningReport {
    pub fn within(&self, tol: f64) -> bool {
        self.alpha_residual < tol && self.a_drift < tol
    }
}

fn pointwise_operator(omega: &FormFamily, eta: &FormFamily, x: &[f64], t: f64) -> Result<DMatrix<f64>> {
    let lu = checked_lu(eta.omega(x, t), x, t)?;
    Ok(lu.solve(&omega.omega(x, t)).expect("nonsingular"))
}

/// Checks `α_t = β_t∘A` and `A(x,t) = A(x,0)` with `A = M_η⁻¹ M_ω` computed
/// pointwise. Residuals are reported, not enforced.
pub fn intertwining_check(
    omega: &FormFamily,
    eta: &FormFamily,
    samples: &[Vec<f64>],
    times: &[f64],
) -> Result<IntertwiningReport> {
    let mut report = IntertwiningReport {
        alpha_residual: 0.0,
        a_drift: 0.0,
    };
    for x in samples {
        let a0 = pointwise_operator(omega, eta, x, 0.0)?;
        let scale = a0.amax().max(1.0);
        for &t in times {
            let a = pointwise_operator(omega, eta, x, t)?;
            report.a_drift = report.a_drift.max((&a - &a0).amax() / scale);
            // (β∘A)(X) = β(AX), i.e. the covector Aᵀβ.
            let pulled = a.transpose() * eta.alpha(x, t);
            report.alpha_residual = report.alpha_residual.max((omega.alpha(x, t) - pulled).amax());
        }
    }
    Ok(report)
}

/// Per-checkpoint maxima over all samples.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckpointReport {
    pub t: f64,
    /// `max |Dφᵀ M_{ω_t}(φ) Dφ − M_{ω_0}|`.
    pub omega_error: f64,
    pub eta_error: Option<f64>,
    pub min_det: f64,
    /// `max |i_X ω_t + α_t|` at the flowed points.
    pub field_residual: f64,
    /// `max |X_t − Y_t|` where `i_Y η_t = −β_t`.
    pub xy_gap: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampleTrajectory {
    pub start: Vec<f64>,
    /// `φ_t(x)` at each checkpoint.
    pub positions: Vec<Vec<f64>>,
    /// `Dφ_t(x)` at each checkpoint, row-major.
    pub jacobians: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FlowResult {
    pub steps: usize,
    pub checkpoints: Vec<CheckpointReport>,
    pub trajectories: Vec<SampleTrajectory>,
}

impl FlowResult {
    pub fn final_checkpoint(&self) -> &CheckpointReport {
        self.checkpoints.last().expect("at least one checkpoint")
    }

    /// Worst pullback error over both forms at `t = 1`.
    pub fn final_error(&self) -> f64 {
        let c = self.final_checkpoint();
        c.omega_error.max(c.eta_error.unwrap_or(0.0))
    }
}

type State = (DVector<f64>, DMatrix<f64>);

fn rhs(family: &FormFamily, t: f64, s: &State) -> Result<State> {
    let (v, dv) = field_and_jacobian(family, s.0.as_slice(), t)?;
    let dj = dv * &s.1;
    Ok((v, dj))
}

fn axpy(s: &State, h: f64, k: &State) -> State {
    (&s.0 + &k.0 * h, &s.1 + &k.1 * h)
}

fn rk4_step(family: &FormFamily, t: f64, h: f64, s: &State) -> Result<State> {
    let k1 = rhs(family, t, s)?;
    let k2 = rhs(family, t + h / 2.0, &axpy(s, h / 2.0, &k1))?;
    let k3 = rhs(family, t + h / 2.0, &axpy(s, h / 2.0, &k2))?;
    let k4 = rhs(family, t + h, &axpy(s, h, &k3))?;
    let w = h / 6.0;
    Ok((
        &s.0 + (&k1.0 + &k2.0 * 2.0 + &k3.0 * 2.0 + &k4.0) * w,
        &s.1 + (&k1.1 + &k2.1 * 2.0 + &k3.1 * 2.0 + &k4.1) * w,
    ))
}

/// Growth bound on the Jacobian beyond which a step is rejected.
const JACOBIAN_LIMIT: f64 = 1e6;

struct SampleOutcome {
    trajectory: SampleTrajectory,
    rows: Vec<CheckpointReport>,
}

fn pullback_error(family: &FormFamily, x0: &[f64], s: &State, t: f64) -> f64 {
    let m_t = family.omega(s.0.as_slice(), t);
    let m_0 = family.omega(x0, 0.0);
    (s.1.transpose() * m_t * &s.1 - m_0).amax()
}

fn integrate_sample(flow: &FlowFamily, x0: &[f64], steps: usize) -> Result<SampleOutcome> {
    let n = flow.omega.dim();
    let h = 1.0 / steps as f64;
    let every = steps / CHECKPOINTS.len();
    let mut s: State = (DVector::from_column_slice(x0), DMatrix::identity(n, n));
    let mut trajectory = SampleTrajectory {
        start: x0.to_vec(),
        positions: Vec::new(),
        jacobians: Vec::new(),
    };
    let mut rows = Vec::new();
    for step in 0..steps {
        let t = step as f64 * h;
        s = rk4_step(&flow.omega, t, h, &s)?;
        let t_next = (step + 1) as f64 * h;
        let bad = !s.0.iter().chain(s.1.iter()).all(|v| v.is_finite());
        if bad || s.1.amax() > JACOBIAN_LIMIT {
            return Err(Error::StepRejected {
                t: t_next,
                reason: if bad { "non-finite state".into() } else { "Jacobian growth exceeds bound".into() },
            });
        }
        if (step + 1) % every != 0 {
            continue;
        }
        let t_c = CHECKPOINTS[(step + 1) / every - 1];
        let x = s.0.as_slice();
        let v = moser_vector_field(&flow.omega, x, t_c)?;
        let (eta_error, xy_gap) = match &flow.eta {
            Some(eta) => {
                let y = moser_vector_field(eta, x, t_c)?;
                (Some(pullback_error(eta, x0, &s, t_c)), Some((&v - y).amax()))
            }
            None => (None, None),
        };
        rows.push(CheckpointReport {
            t: t_c,
            omega_error: pullback_error(&flow.omega, x0, &s, t_c),
            eta_error,
            min_det: s.1.determinant(),
            field_residual: field_residual(&flow.omega, x, t_c, &v),
            xy_gap,
        });
        trajectory.positions.push(x.to_vec());
        trajectory.jacobians.push(s.1.transpose().as_slice().to_vec());
    }
    Ok(SampleOutcome { trajectory, rows })
}

fn max_opt(a: Option<f64>, b: Option<f64>) -> Option<f64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.max(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

/// Integrates `ẋ = X_t(x)` together with `J̇ = (∂X_t/∂x) J` by fixed-step
/// RK4 from every sample, in parallel, and reports pullback errors at
/// [`CHECKPOINTS`]. `steps` must be a positive multiple of 4.
pub fn integrate_flow(flow: &FlowFamily, samples: &[Vec<f64>], steps: usize) -> Result<FlowResult> {
    if steps == 0 || !steps.is_multiple_of(CHECKPOINTS.len()) {
        return Err(Error::Precondition(format!("step count {steps} must be a positive multiple of 4")));
    }
    let n = flow.omega.dim();
    if let Some(eta) = &flow.eta {
        if eta.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: eta.dim(),
            });
        }
    }
    if let Some(x) = samples.iter().find(|x| x.len() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: x.len(),
        });
    }
    let outcomes: Vec<SampleOutcome> = samples
        .par_iter()
        .map(|x| integrate_sample(flow, x, steps))
        .collect::<Result<_>>()?;

    let mut checkpoints: Vec<CheckpointReport> = CHECKPOINTS
        .iter()
        .map(|&t| CheckpointReport {
            t,
            omega_error: 0.0,
            eta_error: None,
            min_det: f64::INFINITY,
            field_residual: 0.0,
            xy_gap: None,
        })
        .collect();
    for o in &outcomes {
        for (c, r) in checkpoints.iter_mut().zip(&o.rows) {
            c.omega_error = c.omega_error.max(r.omega_error);
            c.eta_error = max_opt(c.eta_error, r.eta_error);
            c.min_det = c.min_det.min(r.min_det);
            c.field_residual = c.field_residual.max(r.field_residual);
            c.xy_gap = max_opt(c.xy_gap, r.xy_gap);
        }
    }
    Ok(FlowResult {
        steps,
        checkpoints,
        trajectories: outcomes.into_iter().map(|o| o.trajectory).collect(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceRow {
    pub steps: usize,
    /// Worst pullback error over both forms at `t = 1`.
    pub error: f64,
    /// Previous row's error divided by this one.
    pub reduction: Option<f64>,
}

/// Runs [`integrate_flow`] at `base_steps · 2^k` for `k = 0..=halvings`.
pub fn convergence_study(
    flow: &FlowFamily,
    samples: &[Vec<f64>],
    base_steps: usize,
    halvings: usize,
) -> Result<Vec<ConvergenceRow>> {
    let mut rows: Vec<ConvergenceRow> = Vec::with_capacity(halvings + 1);
    for k in 0..=halvings {
        let steps = base_steps << k;
        let error = integrate_flow(flow, samples, steps)?.final_error();
        let reduction = rows.last().map(|r| r.error / error);
        rows.push(ConvergenceRow { steps, error, reduction });
    }
    Ok(rows)
}

/// `max_t |⟨ω_t⟩ − ⟨ω_0⟩|` over the given times, with `⟨·⟩` the grid mean.
pub fn cohomology_drift(family: &FormFamily, times: &[f64]) -> f64 {
    let base = family.grid_average(0.0);
    times
        .iter()
        .map(|&t| (family.grid_average(t) - &base).amax())
        .fold(0.0, f64::max)
}
