//! Exact `nu_k(K_n)` through max-k-cut on `G_n`.
//!
//! A k-coloring of `G_n` is a k-page drawing of `K_n` (chord `{a,b}` colored
//! `c` means edge `ab` on page `c`), and its monochromatic edges are exactly the
//! crossings, so `nu_k(K_n) = C(n,4) - max-k-cut(G_n)`.

mod bnb;
mod brute;
pub mod wcnf;

use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::chordgraph::{build_chord_graph, ChordGraph};
use crate::drawings::{dds_drawing, edge_index, num_edges, Drawing};
use crate::error::{input, Result};
use crate::formulas::binom4;

pub use bnb::max_k_cut_bnb;
pub use brute::{brute_force_nu, brute_force_nu_capped, BRUTE_FORCE_CAP};

/// A k-coloring of the vertices of `G_n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutAssignment {
    pub graph_n: usize,
    pub k: usize,
    pub color_of: Vec<usize>,
}

impl CutAssignment {
    pub fn new(graph_n: usize, k: usize, color_of: Vec<usize>) -> Result<Self> {
        if k == 0 {
            return input("a cut needs at least one color");
        }
        if let Some(c) = color_of.iter().find(|&&c| c >= k) {
            return input(format!("color {c} out of range for k={k}"));
        }
        Ok(CutAssignment { graph_n, k, color_of })
    }

    pub fn monochromatic(g: &ChordGraph, k: usize) -> Self {
        CutAssignment { graph_n: g.n(), k, color_of: vec![0; g.num_vertices()] }
    }

    fn check_against(&self, g: &ChordGraph) -> Result<()> {
        if self.graph_n != g.n() || self.color_of.len() != g.num_vertices() {
            return input(format!(
                "assignment for n={} with {} colors does not fit G_{} ({} vertices)",
                self.graph_n,
                self.color_of.len(),
                g.n(),
                g.num_vertices()
            ));
        }
        Ok(())
    }
}

/// Search limits; `None` means unlimited.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Budget {
    pub max_nodes: Option<u64>,
    pub max_time: Option<Duration>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget::default()
    }

    pub fn nodes(max_nodes: u64) -> Self {
        Budget { max_nodes: Some(max_nodes), max_time: None }
    }

    pub fn time(max_time: Duration) -> Self {
        Budget { max_nodes: None, max_time: Some(max_time) }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExactResult {
    pub n: usize,
    pub k: usize,
    /// Exact when `proved_optimal`, otherwise an upper bound.
    pub nu: u64,
    pub cut_size: u64,
    pub assignment: CutAssignment,
    pub proved_optimal: bool,
    pub nodes_explored: u64,
    pub wall_time: Duration,
}

/// JSON record form of an [`ExactResult`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExactRecord {
    pub n: usize,
    pub k: usize,
    pub nu: u64,
    pub cut: u64,
    pub optimal: bool,
    pub nodes: u64,
    pub seconds: f64,
}

impl ExactResult {
    pub fn record(&self) -> ExactRecord {
        ExactRecord {
            n: self.n,
            k: self.k,
            nu: self.nu,
            cut: self.cut_size,
            optimal: self.proved_optimal,
            nodes: self.nodes_explored,
            seconds: self.wall_time.as_secs_f64(),
        }
    }
}

/// Number of edges of `g` whose endpoints get different colors.
pub fn cut_value(g: &ChordGraph, a: &CutAssignment) -> Result<u64> {
    a.check_against(g)?;
    Ok(g.edges().iter().filter(|&&(u, v)| a.color_of[u] != a.color_of[v]).count() as u64)
}

/// Page of each chord becomes its color.
pub fn cut_from_drawing(g: &ChordGraph, dr: &Drawing) -> Result<CutAssignment> {
    if dr.n() != g.n() {
        return input(format!("drawing of K_{} does not match G_{}", dr.n(), g.n()));
    }
    let colors = g.vertices().iter().map(|c| dr.page(c.a(), c.b())).collect();
    CutAssignment::new(g.n(), dr.k(), colors)
}

/// Color of each chord becomes its page; cycle edges go on page 0 (they cross nothing).
pub fn drawing_from_cut(g: &ChordGraph, a: &CutAssignment) -> Result<Drawing> {
    a.check_against(g)?;
    let n = g.n();
    let mut page_of = vec![0; num_edges(n)];
    for (v, c) in g.vertices().iter().enumerate() {
        page_of[edge_index(c.a(), c.b(), n)] = a.color_of[v];
    }
    Drawing::new(n, a.k, page_of)
}

/// DDS drawing of `K_n` read as a coloring of `G_n`.
pub fn dds_cut(g: &ChordGraph, k: usize) -> Result<CutAssignment> {
    cut_from_drawing(g, &dds_drawing(g.n(), k)?)
}

/// `nu_k(K_n)` by branch-and-bound, short-circuiting `k >= ceil(n/2)` to zero.
pub fn nu_exact(n: usize, k: usize, budget: Budget) -> Result<ExactResult> {
    if n < 5 {
        return input(format!("nu_exact needs n >= 5, got {n}"));
    }
    if k == 0 {
        return input("nu_exact needs k >= 1");
    }
    let g = build_chord_graph(n)?;
    if k >= n.div_ceil(2) {
        let assignment = dds_cut(&g, k)?;
        let cut_size = cut_value(&g, &assignment)?;
        return Ok(ExactResult {
            n,
            k,
            nu: binom4(n as u64) - cut_size,
            cut_size,
            assignment,
            proved_optimal: true,
            nodes_explored: 0,
            wall_time: Duration::ZERO,
        });
    }
    max_k_cut_bnb(&g, k, budget)
}
