//! Turning solver output into rigorous bounds, and the bounds derived from them.

use serde::{Deserialize, Serialize};

use super::fj::{FjMethod, FjRun};
use super::SolveStatus;
use crate::error::{input, Error, Result};
use crate::formulas::{binom4, dds_limit_ratio, prior_lower_ratio, to_f64, Rational};

/// A rigorous upper bound `fj_value` on max-k-cut of `G_n` and the lower bound on
/// `nu_k(K_n)` it implies.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertifiedBound {
    pub n: usize,
    pub k: usize,
    /// Objective at a verified feasible point of the minimization program.
    pub fj_value: f64,
    pub nu_lower: u64,
    /// Uniform shift added to the free diagonal variables to restore feasibility.
    pub certificate_feasibility_margin: f64,
    pub method: FjMethod,
    pub solver_tol: f64,
}

impl CertifiedBound {
    /// `(C(n,4) - fj_value) / C(n,4)`, clamped at zero.
    pub fn ratio(&self) -> f64 {
        let c4 = binom4(self.n as u64) as f64;
        ((c4 - self.fj_value) / c4).max(0.0)
    }
}

/// Repairs by shifting when the worst eigenvalue is below this fraction of the objective scale.
const REPAIR_LIMIT: f64 = 1e-4;

pub fn certify_bound(run: &FjRun) -> Result<CertifiedBound> {
    certify_bound_with_margin(run, 0.0)
}

/// As [`certify_bound`], adding `extra_margin >= 0` on top of the repair shift.
pub fn certify_bound_with_margin(run: &FjRun, extra_margin: f64) -> Result<CertifiedBound> {
    if extra_margin < 0.0 || !extra_margin.is_finite() {
        return input("extra margin must be finite and nonnegative");
    }
    let sol = &run.solution;
    let p = &run.problem;
    if sol.status == SolveStatus::Failed {
        return Err(Error::Solver(format!(
            "refusing to certify n={} k={}: solver failed (gap {:.2e}, primal {:.2e}, dual {:.2e})",
            run.n, run.k, sol.relative_gap, sol.primal_residual, sol.dual_residual
        )));
    }
    let Some(shift) = &p.shift else {
        return Err(Error::Solver("problem has no repair direction".into()));
    };
    let mut y = sol.y.clone();
    for &v in &p.nonneg {
        y[v] = y[v].max(0.0);
    }
    let (lo, norm) = p.min_eigenvalue(&y);
    // eigenvalues are computed with an absolute error of a few ulps of the norm
    let safety = 1e-10 * (1.0 + norm);
    let delta = (safety - lo).max(0.0) + extra_margin;
    let scale = 1.0 + p.objective_at(&y).abs();
    if delta - extra_margin > REPAIR_LIMIT * scale {
        return Err(Error::Solver(format!(
            "refusing to certify n={} k={}: PSD violation {lo:.3e} too large to repair",
            run.n, run.k
        )));
    }
    for (v, e) in y.iter_mut().zip(shift) {
        *v += delta * e;
    }
    let (lo_after, _) = p.min_eigenvalue(&y);
    if lo_after < 0.0 {
        return Err(Error::Invariant(format!("repaired point still infeasible ({lo_after:.3e})")));
    }
    let value = p.objective_at(&y);
    let value = value + value.abs() * 1e-14;
    let c4 = binom4(run.n as u64) as f64;
    let nu_lower = (c4 - value).ceil().max(0.0) as u64;
    Ok(CertifiedBound {
        n: run.n,
        k: run.k,
        fj_value: value,
        nu_lower,
        certificate_feasibility_margin: delta,
        method: run.method,
        solver_tol: run.tol,
    })
}

fn check_lift(m: usize, n: usize) -> Result<()> {
    if m < 4 || n <= m {
        return input(format!("lifting needs n > m >= 4, got m={m}, n={n}"));
    }
    Ok(())
}

/// `ratio * C(n,4)`: a lower bound on `nu_k(K_n)` from a lower bound `ratio` on
/// `nu_k(K_m)/C(m,4)`, valid for every `n > m` since that ratio is nondecreasing in `n`.
pub fn lift_bound(m: usize, ratio: f64, n: usize) -> Result<f64> {
    check_lift(m, n)?;
    Ok(ratio * binom4(n as u64) as f64)
}

pub fn lift_bound_exact(m: usize, ratio: &Rational, n: usize) -> Result<Rational> {
    check_lift(m, n)?;
    Ok(ratio * Rational::from_integer(binom4(n as u64).into()))
}

/// Approximation guarantees `alpha_k` of the Frieze–Jerrum rounding, `k = 3..=10`.
pub const ALPHA_TABLE: [(usize, f64); 8] = [
    (3, 0.836008),
    (4, 0.857487),
    (5, 0.876610),
    (6, 0.891543),
    (7, 0.903259),
    (8, 0.912664),
    (9, 0.920367),
    (10, 0.926788),
];

pub fn alpha_k(k: usize) -> Result<f64> {
    ALPHA_TABLE
        .iter()
        .find(|(kk, _)| *kk == k)
        .map(|&(_, a)| a)
        .ok_or_else(|| Error::Unsupported(format!("alpha_k is tabulated for 3 <= k <= 10, got {k}")))
}

/// `C(n,4) - alpha_k fj_value`, an upper bound on `nu_k(K_n)`.
pub fn alpha_upper_bound(n: usize, k: usize, fj_value: f64) -> Result<f64> {
    Ok(binom4(n as u64) as f64 - alpha_k(k)? * fj_value)
}

/// One row of the summary of bounds on `lim nu_k(K_n)/C(n,4)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LimitRow {
    pub k: usize,
    pub prior_lower: f64,
    /// `None` when no FJ value was supplied for this `k`.
    pub fj_lower: Option<f64>,
    pub dds_upper: f64,
    pub quotient: Option<f64>,
}

/// Rows for each `k` in `ks`; `fj_ratio(k)` supplies the certified ratio
/// `(C(m,4) - FJ_k(G_m))/C(m,4)` when available.
pub fn limit_table(ks: impl IntoIterator<Item = usize>, fj_ratio: impl Fn(usize) -> Option<f64>) -> Result<Vec<LimitRow>> {
    ks.into_iter()
        .map(|k| {
            let prior_lower = to_f64(&prior_lower_ratio(k as u64)?);
            let dds_upper = to_f64(&dds_limit_ratio(k as u64));
            let fj_lower = fj_ratio(k);
            Ok(LimitRow { k, prior_lower, fj_lower, dds_upper, quotient: fj_lower.map(|r| r / dds_upper) })
        })
        .collect()
}
