//! Frieze–Jerrum semidefinite bounds on max-k-cut of `G_n` and the lower
//! bounds on `nu_k(K_n)` they certify.
//!
//! Programs are stated in linear-matrix-inequality form: minimize `c^T y`
//! subject to `F_0 + sum_i y_i F_i >= 0` in each PSD block and `y_i >= 0`
//! for the listed nonnegative variables.

mod cache;
mod certify;
mod fj;
mod ipm;

use nalgebra::DMatrix;

use crate::error::{input, Result};

pub use cache::{BoundCache, CacheRecord};
pub use certify::{
    alpha_k, alpha_upper_bound, certify_bound, certify_bound_with_margin, lift_bound,
    lift_bound_exact, limit_table, CertifiedBound, LimitRow, ALPHA_TABLE,
};
pub use fj::{
    assemble_reduced, fj_dense, fj_dense_problem, fj_for, fj_laplacian_problem, fj_reduced, reduced_lambda, FjMethod,
    FjRun, ReducedFJ, DENSE_VAR_LIMIT,
};
pub use ipm::{solve_conic, SolverOptions};

/// Symmetric sparse matrix given by its upper triangle: `(r, c, v)` with `r <= c`
/// stands for `v` at `(r, c)` and `(c, r)`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SparseSym {
    pub entries: Vec<(usize, usize, f64)>,
}

impl SparseSym {
    pub fn new(entries: Vec<(usize, usize, f64)>) -> Self {
        SparseSym { entries }
    }

    pub fn add_to(&self, m: &mut DMatrix<f64>, scale: f64) {
        for &(r, c, v) in &self.entries {
            m[(r, c)] += scale * v;
            if r != c {
                m[(c, r)] += scale * v;
            }
        }
    }
}

/// `constant + sum_i y[var_i] * coeff_i` must be positive semidefinite.
#[derive(Debug, Clone, PartialEq)]
pub struct PsdBlock {
    pub dim: usize,
    pub constant: DMatrix<f64>,
    pub coeffs: Vec<(usize, SparseSym)>,
}

impl PsdBlock {
    pub fn evaluate(&self, y: &[f64]) -> DMatrix<f64> {
        let mut z = self.constant.clone();
        for (var, coeff) in &self.coeffs {
            coeff.add_to(&mut z, y[*var]);
        }
        z
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SdpProblem {
    pub num_vars: usize,
    /// Minimized.
    pub objective: Vec<f64>,
    pub psd_blocks: Vec<PsdBlock>,
    /// Variables constrained to be `>= 0`.
    pub nonneg: Vec<usize>,
    /// A direction `e` with `sum_i e_i F_i = I` in every block and `e_i >= 0` on
    /// nonnegative variables; moving along it repairs small PSD violations.
    pub shift: Option<Vec<f64>>,
}

impl SdpProblem {
    pub fn validate(&self) -> Result<()> {
        if self.objective.len() != self.num_vars {
            return input("objective length differs from the number of variables");
        }
        for (b, blk) in self.psd_blocks.iter().enumerate() {
            if blk.constant.nrows() != blk.dim || blk.constant.ncols() != blk.dim {
                return input(format!("block {b}: constant is not {0}x{0}", blk.dim));
            }
            if (&blk.constant - blk.constant.transpose()).amax() > 1e-12 * (1.0 + blk.constant.amax()) {
                return input(format!("block {b}: constant is not symmetric"));
            }
            for (var, coeff) in &blk.coeffs {
                if *var >= self.num_vars {
                    return input(format!("block {b}: variable {var} out of range"));
                }
                if coeff.entries.iter().any(|&(r, c, _)| r > c || c >= blk.dim) {
                    return input(format!("block {b}: bad coefficient entry for variable {var}"));
                }
            }
        }
        if self.nonneg.iter().any(|&v| v >= self.num_vars) {
            return input("nonnegative variable out of range");
        }
        if let Some(e) = &self.shift {
            if e.len() != self.num_vars {
                return input("shift direction has the wrong length");
            }
        }
        Ok(())
    }

    pub fn objective_at(&self, y: &[f64]) -> f64 {
        self.objective.iter().zip(y).map(|(c, v)| c * v).sum()
    }

    /// Smallest eigenvalue over all PSD blocks at `y`, together with the largest
    /// block Frobenius norm.
    pub fn min_eigenvalue(&self, y: &[f64]) -> (f64, f64) {
        let mut lo = f64::INFINITY;
        let mut norm: f64 = 0.0;
        for blk in &self.psd_blocks {
            let z = blk.evaluate(y);
            norm = norm.max(z.norm());
            let ev = z.symmetric_eigen().eigenvalues;
            lo = lo.min(ev.min());
        }
        (lo, norm)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveStatus {
    Optimal,
    FeasibleSuboptimal,
    Failed,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SdpSolution {
    pub y: Vec<f64>,
    /// Primal matrices, one per PSD block, and the primal multipliers of the nonnegativity constraints.
    pub primal_blocks: Vec<DMatrix<f64>>,
    pub primal_nonneg: Vec<f64>,
    /// `c^T y`, the minimized objective.
    pub objective_value: f64,
    /// Objective of the primal (maximization) side; a lower bound on the optimum when primal feasible.
    pub primal_objective: f64,
    pub primal_residual: f64,
    pub dual_residual: f64,
    pub relative_gap: f64,
    pub min_eigenvalue_slack: f64,
    pub status: SolveStatus,
    pub iterations: usize,
}
