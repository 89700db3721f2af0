//! Infeasible primal-dual interior-point method (HKM direction, Mehrotra
//! predictor-corrector) over a product of PSD cones and the nonnegative orthant.
//!
//! Internally the problem is the standard pair
//!   (P) min <C, X> + c_l^T x  s.t.  A_i(X) + a_i^T x = b_i,  X >= 0, x >= 0
//!   (D) max b^T y             s.t.  C - sum_i y_i A_i = Z >= 0,  c_l - a^T y = z >= 0
//! with `C = F_0`, `A_i = -F_i`, `b = -objective`, and one orthant coordinate
//! `z_l = y_v` per nonnegative variable `v`. The LMI variables `y` are the dual `y`.

use faer::linalg::solvers::Solve;
use faer::{Mat, Side};
use nalgebra::DMatrix;

use super::{SdpProblem, SdpSolution, SolveStatus};
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    pub tol: f64,
    pub max_iter: usize,
    pub verbose: bool,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions { tol: 1e-8, max_iter: 100, verbose: false }
    }
}

impl SolverOptions {
    pub fn with_tol(tol: f64) -> Self {
        SolverOptions { tol, ..Self::default() }
    }
}

/// Constraint data of one PSD block: for each variable touching the block, the
/// entries `(a, b, alpha)` of `A_i = -F_i` with both orientations listed.
struct Block {
    dim: usize,
    c: DMatrix<f64>,
    vars: Vec<usize>,
    starts: Vec<usize>,
    terms: Vec<(usize, usize, f64)>,
}

impl Block {
    fn new(p: &super::PsdBlock) -> Self {
        let mut per_var: Vec<(usize, Vec<(usize, usize, f64)>)> = Vec::new();
        let mut coeffs: Vec<_> = p.coeffs.iter().collect();
        coeffs.sort_by_key(|(v, _)| *v);
        for (var, coeff) in coeffs {
            let mut t = Vec::new();
            for &(r, c, v) in &coeff.entries {
                if v == 0.0 {
                    continue;
                }
                t.push((r, c, -v));
                if r != c {
                    t.push((c, r, -v));
                }
            }
            match per_var.last_mut() {
                Some((last, list)) if *last == *var => list.extend(t),
                _ => per_var.push((*var, t)),
            }
        }
        let mut vars = Vec::new();
        let mut starts = vec![0];
        let mut terms = Vec::new();
        for (v, t) in per_var {
            if t.is_empty() {
                continue;
            }
            vars.push(v);
            terms.extend(t);
            starts.push(terms.len());
        }
        Block { dim: p.dim, c: p.constant.clone(), vars, starts, terms }
    }

    fn terms_of(&self, p: usize) -> &[(usize, usize, f64)] {
        &self.terms[self.starts[p]..self.starts[p + 1]]
    }

    /// `out[i] += <A_i, G>` for the variables of this block.
    fn apply(&self, g: &DMatrix<f64>, out: &mut [f64]) {
        for (p, &v) in self.vars.iter().enumerate() {
            out[v] += self.terms_of(p).iter().map(|&(a, b, al)| al * g[(a, b)]).sum::<f64>();
        }
    }

    /// `sum_i y_i A_i`.
    fn adjoint(&self, y: &[f64]) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.dim, self.dim);
        for (p, &v) in self.vars.iter().enumerate() {
            if y[v] != 0.0 {
                for &(a, b, al) in self.terms_of(p) {
                    m[(a, b)] += y[v] * al;
                }
            }
        }
        m
    }

    /// Adds `tr(A_i X A_j W)` to the lower triangle of `schur`.
    fn add_schur(&self, x: &DMatrix<f64>, w: &DMatrix<f64>, schur: &mut Mat<f64>) {
        let n = self.dim;
        // row-major copies for cache-friendly access
        let xs: Vec<f64> = (0..n * n).map(|t| x[(t / n, t % n)]).collect();
        let ws: Vec<f64> = (0..n * n).map(|t| w[(t / n, t % n)]).collect();
        let nv = self.vars.len();
        for p in 0..nv {
            let i = self.vars[p];
            let tp = self.terms_of(p);
            for q in p..nv {
                let j = self.vars[q];
                let tq = self.terms_of(q);
                let mut s = 0.0;
                for &(a, b, al) in tp {
                    let xrow = &xs[b * n..b * n + n];
                    for &(c, d, be) in tq {
                        s += al * be * xrow[c] * ws[d * n + a];
                    }
                }
                schur[(j, i)] += s;
            }
        }
    }
}

fn sym(m: DMatrix<f64>) -> DMatrix<f64> {
    (&m + m.transpose()) * 0.5
}

fn inner(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
    a.dot(b)
}

/// Largest `alpha` with `x + alpha dx` positive semidefinite (infinite when `dx >= 0`).
fn max_step_psd(x: &DMatrix<f64>, dx: &DMatrix<f64>) -> Option<f64> {
    let l = x.clone().cholesky()?.l();
    let t = l.solve_lower_triangular(dx)?;
    let t2 = l.solve_lower_triangular(&t.transpose())?;
    let lo = sym(t2).symmetric_eigen().eigenvalues.min();
    Some(if lo >= 0.0 { f64::INFINITY } else { -1.0 / lo })
}

fn max_step_lp(x: &[f64], dx: &[f64]) -> f64 {
    x.iter()
        .zip(dx)
        .filter(|(_, &d)| d < 0.0)
        .map(|(&v, &d)| -v / d)
        .fold(f64::INFINITY, f64::min)
}

struct Direction {
    dy: Vec<f64>,
    dx: Vec<DMatrix<f64>>,
    dz: Vec<DMatrix<f64>>,
    dxl: Vec<f64>,
    dzl: Vec<f64>,
}

struct State<'a> {
    blocks: &'a [Block],
    lp_var: &'a [usize],
    b: &'a [f64],
    m: usize,
    x: Vec<DMatrix<f64>>,
    z: Vec<DMatrix<f64>>,
    w: Vec<DMatrix<f64>>,
    xl: Vec<f64>,
    zl: Vec<f64>,
    y: Vec<f64>,
    rp: Vec<f64>,
    rd: Vec<DMatrix<f64>>,
    rdl: Vec<f64>,
}

impl State<'_> {
    fn residuals(&mut self) {
        let mut ax = vec![0.0; self.m];
        for (blk, x) in self.blocks.iter().zip(&self.x) {
            blk.apply(x, &mut ax);
        }
        for (l, &v) in self.lp_var.iter().enumerate() {
            ax[v] -= self.xl[l];
        }
        self.rp = self.b.iter().zip(&ax).map(|(b, a)| b - a).collect();
        self.rd = self
            .blocks
            .iter()
            .zip(&self.z)
            .map(|(blk, z)| &blk.c - blk.adjoint(&self.y) - z)
            .collect();
        self.rdl = self.lp_var.iter().zip(&self.zl).map(|(&v, z)| self.y[v] - z).collect();
    }

    /// Solves the Newton system for complementarity target `rc` given as
    /// `R_c W` per block and `r_c` for the orthant.
    fn direction(&self, llt: &faer::linalg::solvers::Llt<f64>, rcw: &[DMatrix<f64>], rcl: &[f64]) -> Direction {
        let mut h = self.rp.clone();
        let mut ag = vec![0.0; self.m];
        let gs: Vec<DMatrix<f64>> = (0..self.blocks.len())
            .map(|j| &rcw[j] - &self.x[j] * &self.rd[j] * &self.w[j])
            .collect();
        for (blk, g) in self.blocks.iter().zip(&gs) {
            blk.apply(g, &mut ag);
        }
        for (hi, a) in h.iter_mut().zip(&ag) {
            *hi -= a;
        }
        for (l, &v) in self.lp_var.iter().enumerate() {
            h[v] += (rcl[l] - self.xl[l] * self.rdl[l]) / self.zl[l];
        }
        let rhs = Mat::from_fn(self.m, 1, |i, _| h[i]);
        let sol = llt.solve(&rhs);
        let dy: Vec<f64> = (0..self.m).map(|i| sol[(i, 0)]).collect();
        let dz: Vec<DMatrix<f64>> =
            self.blocks.iter().zip(&self.rd).map(|(blk, rd)| rd - blk.adjoint(&dy)).collect();
        let dx: Vec<DMatrix<f64>> = (0..self.blocks.len())
            .map(|j| sym(&rcw[j] - &self.x[j] * &dz[j] * &self.w[j]))
            .collect();
        let dzl: Vec<f64> = self.lp_var.iter().zip(&self.rdl).map(|(&v, rd)| rd + dy[v]).collect();
        let dxl: Vec<f64> =
            (0..self.lp_var.len()).map(|l| (rcl[l] - self.xl[l] * dzl[l]) / self.zl[l]).collect();
        Direction { dy, dx, dz, dxl, dzl }
    }

    fn step_lengths(&self, d: &Direction) -> Option<(f64, f64)> {
        let mut ap = max_step_lp(&self.xl, &d.dxl);
        let mut ad = max_step_lp(&self.zl, &d.dzl);
        for j in 0..self.blocks.len() {
            ap = ap.min(max_step_psd(&self.x[j], &d.dx[j])?);
            ad = ad.min(max_step_psd(&self.z[j], &d.dz[j])?);
        }
        Some((ap, ad))
    }
}

/// Solves `min c^T y` subject to the PSD blocks and nonnegativity of `p`.
pub fn solve_conic(p: &SdpProblem, opts: &SolverOptions) -> Result<SdpSolution> {
    p.validate()?;
    let m = p.num_vars;
    let blocks: Vec<Block> = p.psd_blocks.iter().map(Block::new).collect();
    let mut lp_var = p.nonneg.clone();
    lp_var.sort_unstable();
    lp_var.dedup();
    let nl = lp_var.len();
    let b: Vec<f64> = p.objective.iter().map(|c| -c).collect();
    let big_n = blocks.iter().map(|b| b.dim).sum::<usize>() + nl;

    // starting point, scaled from the data
    let mut x0 = Vec::new();
    let mut z0 = Vec::new();
    for blk in &blocks {
        let n = blk.dim as f64;
        let mut norm_a = vec![0.0; m];
        for (q, &v) in blk.vars.iter().enumerate() {
            norm_a[v] = blk.terms_of(q).iter().map(|t| t.2 * t.2).sum::<f64>().sqrt();
        }
        let cmax = (0..m).map(|i| (1.0 + b[i].abs()) / (1.0 + norm_a[i])).fold(0.0, f64::max);
        let amax = norm_a.iter().cloned().fold(0.0, f64::max);
        let xi = 10f64.max(n.sqrt()).max(n.sqrt() * cmax);
        let eta = 10f64.max(n.sqrt()).max(blk.c.norm()).max(amax);
        x0.push(DMatrix::identity(blk.dim, blk.dim) * xi);
        z0.push(DMatrix::identity(blk.dim, blk.dim) * eta);
    }
    let lp_scale = if nl > 0 {
        let cmax = lp_var.iter().map(|&v| 1.0 + b[v].abs() / 2.0).fold(0.0, f64::max);
        10f64.max((nl as f64).sqrt() * cmax)
    } else {
        1.0
    };
    let norm_b = b.iter().map(|v| v * v).sum::<f64>().sqrt();
    let norm_c = blocks.iter().map(|b| b.c.norm_squared()).sum::<f64>().sqrt();

    let mut s = State {
        blocks: &blocks,
        lp_var: &lp_var,
        b: &b,
        m,
        x: x0,
        z: z0,
        w: Vec::new(),
        xl: vec![lp_scale; nl],
        zl: vec![10f64.max((nl as f64).sqrt()); nl],
        y: vec![0.0; m],
        rp: Vec::new(),
        rd: Vec::new(),
        rdl: Vec::new(),
    };

    let mut status = SolveStatus::Failed;
    let mut iterations = 0;
    let (mut pinf, mut dinf, mut relgap, mut pobj, mut dobj);
    loop {
        s.residuals();
        pobj = blocks.iter().zip(&s.x).map(|(blk, x)| inner(&blk.c, x)).sum::<f64>();
        dobj = b.iter().zip(&s.y).map(|(b, y)| b * y).sum::<f64>();
        let gap = s.x.iter().zip(&s.z).map(|(x, z)| inner(x, z)).sum::<f64>()
            + s.xl.iter().zip(&s.zl).map(|(x, z)| x * z).sum::<f64>();
        let mu = gap / big_n as f64;
        pinf = s.rp.iter().map(|v| v * v).sum::<f64>().sqrt() / (1.0 + norm_b);
        dinf = (s.rd.iter().map(|r| r.norm_squared()).sum::<f64>()
            + s.rdl.iter().map(|v| v * v).sum::<f64>())
        .sqrt()
            / (1.0 + norm_c);
        relgap = gap.max((pobj - dobj).abs()) / (1.0 + pobj.abs().max(dobj.abs()));
        if opts.verbose {
            eprintln!(
                "ipm {iterations:3} pobj {pobj:.10e} dobj {dobj:.10e} gap {relgap:.2e} pinf {pinf:.2e} dinf {dinf:.2e}"
            );
        }
        if relgap < opts.tol && pinf < opts.tol && dinf < opts.tol {
            status = SolveStatus::Optimal;
            break;
        }
        if iterations >= opts.max_iter {
            break;
        }
        iterations += 1;

        let Some(w) = s.z.iter().map(|z| z.clone().cholesky().map(|c| c.inverse())).collect::<Option<Vec<_>>>()
        else {
            break;
        };
        s.w = w;

        let mut schur = Mat::<f64>::zeros(m, m);
        for ((blk, x), w) in blocks.iter().zip(&s.x).zip(&s.w) {
            blk.add_schur(x, w, &mut schur);
        }
        for (l, &v) in lp_var.iter().enumerate() {
            schur[(v, v)] += s.xl[l] / s.zl[l];
        }
        let Ok(llt) = schur.llt(Side::Lower) else {
            break;
        };

        // predictor
        let rcw: Vec<DMatrix<f64>> = s.x.iter().map(|x| -x).collect();
        let rcl: Vec<f64> = s.xl.iter().zip(&s.zl).map(|(x, z)| -x * z).collect();
        let pred = s.direction(&llt, &rcw, &rcl);
        let Some((ap, ad)) = s.step_lengths(&pred) else {
            break;
        };
        let (ap, ad) = (ap.min(1.0), ad.min(1.0));
        let mut gap_aff = 0.0;
        for j in 0..blocks.len() {
            gap_aff += inner(&(&s.x[j] + &pred.dx[j] * ap), &(&s.z[j] + &pred.dz[j] * ad));
        }
        for l in 0..nl {
            gap_aff += (s.xl[l] + ap * pred.dxl[l]) * (s.zl[l] + ad * pred.dzl[l]);
        }
        let expon = 1f64.max(3.0 * ap.min(ad).powi(2));
        let sigma = (gap_aff / gap).max(0.0).powf(expon).min(1.0);

        // corrector
        let smu = sigma * mu;
        let rcw: Vec<DMatrix<f64>> = (0..blocks.len())
            .map(|j| &s.w[j] * smu - &s.x[j] - &pred.dx[j] * &pred.dz[j] * &s.w[j])
            .collect();
        let rcl: Vec<f64> =
            (0..nl).map(|l| smu - s.xl[l] * s.zl[l] - pred.dxl[l] * pred.dzl[l]).collect();
        let corr = s.direction(&llt, &rcw, &rcl);
        let Some((ap, ad)) = s.step_lengths(&corr) else {
            break;
        };
        let gamma = 0.9 + 0.09 * ap.min(ad).min(1.0);
        let (ap, ad) = ((gamma * ap).min(1.0), (gamma * ad).min(1.0));
        if ap < 1e-10 && ad < 1e-10 {
            break;
        }
        for j in 0..blocks.len() {
            s.x[j] = sym(&s.x[j] + &corr.dx[j] * ap);
            s.z[j] = sym(&s.z[j] + &corr.dz[j] * ad);
        }
        for l in 0..nl {
            s.xl[l] += ap * corr.dxl[l];
            s.zl[l] += ad * corr.dzl[l];
        }
        for (y, d) in s.y.iter_mut().zip(&corr.dy) {
            *y += ad * d;
        }
    }

    if status != SolveStatus::Optimal {
        let loose = opts.tol.sqrt();
        if dinf < loose && relgap < loose && pinf < loose {
            status = SolveStatus::FeasibleSuboptimal;
        }
    }
    let (lo, _) = p.min_eigenvalue(&s.y);
    let lo = lp_var.iter().map(|&v| s.y[v]).fold(lo, f64::min);
    Ok(SdpSolution {
        objective_value: p.objective_at(&s.y),
        primal_objective: -pobj,
        y: s.y,
        primal_blocks: s.x,
        primal_nonneg: s.xl,
        primal_residual: pinf,
        dual_residual: dinf,
        relative_gap: relgap,
        min_eigenvalue_slack: lo,
        status,
        iterations,
    })
}
