//! The Frieze–Jerrum program for `G_n`, dense and dihedrally reduced.
//!
//! Both are the minimization side: with `c = (k-1)/(2k)` and `L` the Laplacian,
//!   min sum_v w_v + (2/(k-1)) sum_{u<v} s_uv   s.t.  Diag(w) - c L - S >= 0,  S >= 0.
//! For `k = 2` the `S` part is dropped (the primal constraint it dualizes is implied).
//!
//! For odd `n` the rotations and reflections of the polygon act on `G_n`;
//! averaging an optimal point over them keeps it optimal, so `w` may be taken
//! constant on each orbit (`y_i`) and every orbit block of `S` a symmetric
//! circulant with first-row values `x^(0)_ij, x^(1)_ij, ..., x^(d)_ij`.
//! The Fourier transform splits the LMI into `d + 1` blocks of order `d - 1`:
//!   Diag(y) - c Diag(val) + c lambda^(m) - mu^(m) >= 0,   m = 0..d,
//! where `lambda^(m)_ij = sum_t a_ij(t) cos(2 pi m t / n)` over the first row `a_ij`
//! of adjacency block `(i, j)` and `mu^(m)_ij = x^(0)_ij + 2 sum_{t>=1} x^(t)_ij cos(2 pi m t / n)`.
//! The objective becomes `n sum_i y_i + (n/(k-1)) sum_{i,j} (x^(0)_ij + 2 sum_{t>=1} x^(t)_ij)`.

use std::f64::consts::PI;

use nalgebra::DMatrix;

use super::ipm::{solve_conic, SolverOptions};
use super::{PsdBlock, SdpProblem, SdpSolution, SparseSym};
use crate::chordgraph::{block_first_row, build_chord_graph, laplacian, orbit_valency, ChordGraph};
use crate::error::{input, Error, Result};

/// Largest number of scalar variables accepted by the dense formulation.
pub const DENSE_VAR_LIMIT: usize = 6000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FjMethod {
    Dense,
    Reduced,
}

impl FjMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            FjMethod::Dense => "dense",
            FjMethod::Reduced => "reduced",
        }
    }
}

/// A solved FJ program together with the problem it came from.
#[derive(Debug, Clone)]
pub struct FjRun {
    pub n: usize,
    pub k: usize,
    pub method: FjMethod,
    pub tol: f64,
    pub problem: SdpProblem,
    pub solution: SdpSolution,
}

fn laplacian_coeff(k: usize) -> f64 {
    (k as f64 - 1.0) / (2.0 * k as f64)
}

fn check_k(k: usize) -> Result<()> {
    if k < 2 {
        return input(format!("FJ bound needs k >= 2, got {k}"));
    }
    Ok(())
}

pub fn fj_dense_problem(g: &ChordGraph, k: usize) -> Result<SdpProblem> {
    fj_laplacian_problem(&laplacian(g).map(|v| v as f64), k).map_err(|e| match e {
        Error::Unsupported(msg) => Error::Unsupported(format!("n={}: {msg}", g.n())),
        other => other,
    })
}

/// Dense FJ program for an arbitrary graph given by its Laplacian.
pub fn fj_laplacian_problem(lap: &DMatrix<f64>, k: usize) -> Result<SdpProblem> {
    check_k(k)?;
    let p = lap.nrows();
    if lap.ncols() != p || p == 0 {
        return input("Laplacian must be a nonempty square matrix");
    }
    let with_s = k >= 3;
    let num_vars = if with_s { p + p * (p - 1) / 2 } else { p };
    if num_vars > DENSE_VAR_LIMIT {
        return Err(Error::Unsupported(format!(
            "dense FJ with k={k} needs {num_vars} variables (limit {DENSE_VAR_LIMIT}); use odd n for the reduced program"
        )));
    }
    let c = laplacian_coeff(k);
    let constant = lap * -c;
    let mut coeffs: Vec<(usize, SparseSym)> =
        (0..p).map(|v| (v, SparseSym::new(vec![(v, v, 1.0)]))).collect();
    let mut objective = vec![1.0; p];
    let mut nonneg = Vec::new();
    if with_s {
        for u in 0..p {
            for v in u + 1..p {
                let var = coeffs.len();
                coeffs.push((var, SparseSym::new(vec![(u, v, -1.0)])));
                objective.push(2.0 / (k as f64 - 1.0));
                nonneg.push(var);
            }
        }
    }
    let mut shift = vec![0.0; num_vars];
    shift[..p].iter_mut().for_each(|e| *e = 1.0);
    Ok(SdpProblem {
        num_vars,
        objective,
        psd_blocks: vec![PsdBlock { dim: p, constant, coeffs }],
        nonneg,
        shift: Some(shift),
    })
}

/// Dense FJ on `g`.
pub fn fj_dense(g: &ChordGraph, k: usize, tol: f64) -> Result<FjRun> {
    let problem = fj_dense_problem(g, k)?;
    let solution = solve_conic(&problem, &SolverOptions::with_tol(tol))?;
    Ok(FjRun { n: g.n(), k, method: FjMethod::Dense, tol, problem, solution })
}

/// `lambda^(m)`: Fourier eigenvalues of the adjacency orbit blocks, orbits `2..=d` indexed from 0.
pub fn reduced_lambda(n: usize, m: usize) -> Result<DMatrix<f64>> {
    let d = n / 2;
    let q = d - 1;
    let mut lam = DMatrix::zeros(q, q);
    for i in 2..=d {
        for j in i..=d {
            let row = block_first_row(i, j, n)?.first_row;
            let v: f64 = row
                .iter()
                .enumerate()
                .filter(|(_, &r)| r != 0)
                .map(|(t, &r)| r as f64 * (2.0 * PI * (m * t % n) as f64 / n as f64).cos())
                .sum();
            lam[(i - 2, j - 2)] = v;
            lam[(j - 2, i - 2)] = v;
        }
    }
    Ok(lam)
}

fn reduced_dims(n: usize, k: usize) -> (usize, usize, usize) {
    let d = n / 2;
    let q = d - 1;
    let per_t = if k >= 3 { q * (q + 1) / 2 } else { 0 };
    (d, q, per_t)
}

/// Index of `x^(t)_ab` (`a <= b`) among the variables.
fn x_index(q: usize, t: usize, a: usize, b: usize) -> usize {
    let per_t = q * (q + 1) / 2;
    let pair = a * q - a * a.saturating_sub(1) / 2 + b - a;
    q + t * per_t + pair
}

/// The reduced program for odd `n >= 7`: variables `y_2..y_d`, then for
/// `k >= 3` the nonnegative `x^(t)_ab` (`t = 0..d`, `a <= b`).
pub fn assemble_reduced(n: usize, k: usize) -> Result<SdpProblem> {
    check_k(k)?;
    if n.is_multiple_of(2) {
        return Err(Error::Unsupported(format!("the reduced program needs odd n, got {n}")));
    }
    if n < 7 {
        return input(format!("the reduced program needs n >= 7, got {n}"));
    }
    let (d, q, per_t) = reduced_dims(n, k);
    let num_vars = q + (d + 1) * per_t;
    let c = laplacian_coeff(k);
    let nf = n as f64;
    let mut objective = vec![nf; q];
    let mut nonneg = Vec::new();
    if k >= 3 {
        objective.resize(num_vars, 0.0);
        for t in 0..=d {
            for a in 0..q {
                for b in a..q {
                    let idx = x_index(q, t, a, b);
                    let mult = (if t == 0 { 1.0 } else { 2.0 }) * (if a == b { 1.0 } else { 2.0 });
                    objective[idx] = nf / (k as f64 - 1.0) * mult;
                    nonneg.push(idx);
                }
            }
        }
    }
    let mut blocks = Vec::with_capacity(d + 1);
    for m in 0..=d {
        let mut constant = reduced_lambda(n, m)? * c;
        for i in 0..q {
            constant[(i, i)] -= c * orbit_valency(i + 2, d) as f64;
        }
        let mut coeffs: Vec<(usize, SparseSym)> =
            (0..q).map(|i| (i, SparseSym::new(vec![(i, i, 1.0)]))).collect();
        if k >= 3 {
            for t in 0..=d {
                let weight = if t == 0 {
                    1.0
                } else {
                    2.0 * (2.0 * PI * (m * t % n) as f64 / nf).cos()
                };
                for a in 0..q {
                    for b in a..q {
                        coeffs.push((x_index(q, t, a, b), SparseSym::new(vec![(a, b, -weight)])));
                    }
                }
            }
        }
        blocks.push(PsdBlock { dim: q, constant, coeffs });
    }
    let mut shift = vec![0.0; num_vars];
    shift[..q].iter_mut().for_each(|e| *e = 1.0);
    Ok(SdpProblem { num_vars, objective, psd_blocks: blocks, nonneg, shift: Some(shift) })
}

pub fn fj_reduced(n: usize, k: usize, tol: f64) -> Result<FjRun> {
    let problem = assemble_reduced(n, k)?;
    let solution = solve_conic(&problem, &SolverOptions::with_tol(tol))?;
    Ok(FjRun { n, k, method: FjMethod::Reduced, tol, problem, solution })
}

/// Reduced program for odd `n >= 7`, dense otherwise.
pub fn fj_for(n: usize, k: usize, tol: f64) -> Result<FjRun> {
    if n % 2 == 1 && n >= 7 {
        fj_reduced(n, k, tol)
    } else {
        fj_dense(&build_chord_graph(n)?, k, tol)
    }
}

/// The reduced solution unpacked into its named pieces.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedFJ {
    pub n: usize,
    pub k: usize,
    pub d: usize,
    /// `y_i` for `i = 2..=d`.
    pub y: Vec<f64>,
    /// `X^(0)..X^(d)`, all zero for `k = 2`.
    pub x_blocks: Vec<DMatrix<f64>>,
    pub val: Vec<f64>,
    /// `c lambda^(m) - mu^(m)` for `m = 0..=d`.
    pub lambda_blocks: Vec<DMatrix<f64>>,
}

impl ReducedFJ {
    pub fn from_run(run: &FjRun) -> Result<Self> {
        if run.method != FjMethod::Reduced {
            return input("ReducedFJ needs a run of the reduced program");
        }
        let (n, k) = (run.n, run.k);
        let (d, q, _) = reduced_dims(n, k);
        let sol = &run.solution.y;
        let y = sol[..q].to_vec();
        let mut x_blocks = vec![DMatrix::zeros(q, q); d + 1];
        if k >= 3 {
            for (t, xb) in x_blocks.iter_mut().enumerate() {
                for a in 0..q {
                    for b in a..q {
                        let v = sol[x_index(q, t, a, b)];
                        xb[(a, b)] = v;
                        xb[(b, a)] = v;
                    }
                }
            }
        }
        let c = laplacian_coeff(k);
        let val = (2..=d).map(|i| orbit_valency(i, d) as f64).collect();
        let mut lambda_blocks = Vec::with_capacity(d + 1);
        for m in 0..=d {
            let mut lam = reduced_lambda(n, m)? * c;
            for (t, xb) in x_blocks.iter().enumerate() {
                let weight = if t == 0 { 1.0 } else { 2.0 * (2.0 * PI * (m * t % n) as f64 / n as f64).cos() };
                lam -= xb * weight;
            }
            lambda_blocks.push(lam);
        }
        Ok(ReducedFJ { n, k, d, y, x_blocks, val, lambda_blocks })
    }

    /// `Diag(y - c val) + Lambda^(m)` for each `m`.
    pub fn lmi_blocks(&self) -> Vec<DMatrix<f64>> {
        let c = laplacian_coeff(self.k);
        self.lambda_blocks
            .iter()
            .map(|lam| {
                let mut z = lam.clone();
                for i in 0..self.y.len() {
                    z[(i, i)] += self.y[i] - c * self.val[i];
                }
                z
            })
            .collect()
    }
}
