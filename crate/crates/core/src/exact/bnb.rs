//! Branch-and-bound for max-k-cut, phrased as minimizing monochromatic edges.
//!
//! Vertices are colored one at a time in a fixed order (descending degree,
//! ties by index). The first vertex gets color 0 and a new color may only be
//! opened in index order, which removes the `k!` color relabelings.
//!
//! The lower bound at a node is the sum of
//! - monochromatic edges among assigned vertices,
//! - for each unassigned vertex, the fewest assigned neighbors sharing any one color,
//! - the optimum of the subproblem induced on the unassigned vertices.
//!
//! The last term is available because subproblems are solved first, from the
//! shortest suffix of the order to the full graph (Russian-doll search); each
//! suffix optimum is warm-started from the next shorter one.

use std::time::Instant;

use super::{cut_value, dds_cut, Budget, CutAssignment, ExactResult};
use crate::chordgraph::ChordGraph;
use crate::error::{input, Result};

const UNSET: u8 = u8::MAX;

struct Search<'a> {
    k: usize,
    /// Neighbors of each position with a larger position.
    later: Vec<Vec<usize>>,
    /// `cnt[pos * k + c]`: assigned neighbors of `pos` with color `c`.
    cnt: Vec<u32>,
    color: Vec<u8>,
    /// Optimal monochromatic count of the subgraph induced on positions `d..`.
    suffix_opt: Vec<u64>,
    best: u64,
    best_colors: Vec<u8>,
    end: usize,
    nodes: u64,
    budget: &'a Budget,
    start: Instant,
    aborted: bool,
}

impl Search<'_> {
    fn min_count(&self, pos: usize) -> u32 {
        let row = &self.cnt[pos * self.k..(pos + 1) * self.k];
        *row.iter().min().unwrap_or(&0)
    }

    fn out_of_budget(&mut self) -> bool {
        if let Some(limit) = self.budget.max_nodes {
            if self.nodes >= limit {
                self.aborted = true;
            }
        }
        if self.nodes.is_multiple_of(4096) {
            if let Some(limit) = self.budget.max_time {
                if self.start.elapsed() >= limit {
                    self.aborted = true;
                }
            }
        }
        self.aborted
    }

    /// `slack` is the sum over unassigned positions `depth..end` of their `min_count`.
    fn dfs(&mut self, depth: usize, cost: u64, slack: u64, opened: usize) {
        if depth == self.end {
            if cost < self.best {
                self.best = cost;
                self.best_colors.copy_from_slice(&self.color);
            }
            return;
        }
        self.nodes += 1;
        if self.out_of_budget() {
            return;
        }
        let k = self.k;
        let choices = (opened + 1).min(k);
        let mut order: [(u32, usize); 32] = [(0, 0); 32];
        let row = depth * k;
        for (c, slot) in order.iter_mut().enumerate().take(choices) {
            *slot = (self.cnt[row + c], c);
        }
        order[..choices].sort_unstable();
        let own_min = self.min_count(depth) as u64;
        for &(delta, c) in &order[..choices] {
            let new_cost = cost + delta as u64;
            let rest = self.suffix_opt[depth + 1];
            if new_cost + slack - own_min + rest >= self.best {
                // children are sorted by delta; later ones are no better on this term,
                // but other terms change with the color, so keep looking
                continue;
            }
            let mut new_slack = slack - own_min;
            self.color[depth] = c as u8;
            for idx in 0..self.later[depth].len() {
                let u = self.later[depth][idx];
                if u >= self.end {
                    continue;
                }
                let before = self.min_count(u);
                self.cnt[u * k + c] += 1;
                new_slack += (self.min_count(u) - before) as u64;
            }
            if new_cost + new_slack + rest < self.best {
                self.dfs(depth + 1, new_cost, new_slack, opened.max(c + 1));
            }
            for idx in 0..self.later[depth].len() {
                let u = self.later[depth][idx];
                if u < self.end {
                    self.cnt[u * k + c] -= 1;
                }
            }
            self.color[depth] = UNSET;
            if self.aborted {
                return;
            }
        }
    }
}

/// Descending degree, ties broken by vertex index.
fn branching_order(g: &ChordGraph) -> Vec<usize> {
    let mut order: Vec<usize> = (0..g.num_vertices()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    order
}

/// Maximum k-cut of `G_n`; `nu` is reported as `C(n,4) - cut`.
pub fn max_k_cut_bnb(g: &ChordGraph, k: usize, budget: Budget) -> Result<ExactResult> {
    if k == 0 {
        return input("max_k_cut_bnb needs k >= 1");
    }
    if k > 32 {
        return input("max_k_cut_bnb supports at most 32 colors");
    }
    let start = Instant::now();
    let p = g.num_vertices();
    let order = branching_order(g);
    let mut pos_of = vec![0; p];
    for (pos, &v) in order.iter().enumerate() {
        pos_of[v] = pos;
    }
    let later: Vec<Vec<usize>> = order
        .iter()
        .enumerate()
        .map(|(pos, &v)| {
            let mut l: Vec<usize> =
                g.neighbors(v).iter().map(|&u| pos_of[u]).filter(|&q| q > pos).collect();
            l.sort_unstable();
            l
        })
        .collect();
    let total_edges = g.num_edges() as u64;

    let dds = dds_cut(g, k)?;
    let dds_cost = total_edges - cut_value(g, &dds)?;

    let mut s = Search {
        k,
        later,
        cnt: vec![0; p * k],
        color: vec![UNSET; p],
        suffix_opt: vec![0; p + 1],
        best: 0,
        best_colors: vec![UNSET; p],
        end: p,
        nodes: 0,
        budget: &budget,
        start,
        aborted: false,
    };

    // Suffix optima, shortest first. The full problem is suffix 0.
    let mut prev_colors: Vec<u8> = Vec::new();
    for d in (0..p).rev() {
        // warm start: previous suffix optimum plus the cheapest color for position d
        let mut counts = vec![0u64; k];
        for &u in &s.later[d] {
            if let Some(&c) = prev_colors.get(u - d - 1) {
                counts[c as usize] += 1;
            }
        }
        let (cheap_c, cheap) =
            counts.iter().enumerate().min_by_key(|&(_, &x)| x).map(|(c, &x)| (c, x)).unwrap();
        let mut seed = vec![UNSET; p];
        seed[d] = cheap_c as u8;
        seed[d + 1..].copy_from_slice(&prev_colors);
        let mut upper = s.suffix_opt[d + 1] + cheap;
        if d == 0 && dds_cost < upper {
            for (v, &c) in dds.color_of.iter().enumerate() {
                seed[pos_of[v]] = c as u8;
            }
            upper = dds_cost;
        }
        s.suffix_opt[d] = s.suffix_opt[d + 1];
        s.best = upper;
        s.best_colors.copy_from_slice(&seed);
        if upper > s.suffix_opt[d + 1] {
            // search for anything strictly better than the warm start
            s.color.iter_mut().for_each(|c| *c = UNSET);
            s.cnt.iter_mut().for_each(|x| *x = 0);
            let slack = 0;
            s.dfs_root(d, slack);
        }
        if s.aborted {
            break;
        }
        s.suffix_opt[d] = s.best;
        prev_colors = s.best_colors[d..].to_vec();
    }

    let proved_optimal = !s.aborted;
    let assignment = if proved_optimal {
        let colors = canonical_colors(&(0..p).map(|v| s.best_colors[pos_of[v]]).collect::<Vec<_>>());
        CutAssignment::new(g.n(), k, colors)?
    } else {
        dds.clone()
    };
    let cut_size = cut_value(g, &assignment)?;
    Ok(ExactResult {
        n: g.n(),
        k,
        nu: total_edges - cut_size,
        cut_size,
        assignment,
        proved_optimal,
        nodes_explored: s.nodes,
        wall_time: start.elapsed(),
    })
}

impl Search<'_> {
    fn dfs_root(&mut self, d: usize, slack: u64) {
        // positions d.. are the whole subproblem; color of d is fixed to 0
        let k = self.k;
        self.color[d] = 0;
        let mut new_slack = slack;
        for idx in 0..self.later[d].len() {
            let u = self.later[d][idx];
            let before = self.min_count(u);
            self.cnt[u * k] += 1;
            new_slack += (self.min_count(u) - before) as u64;
        }
        if new_slack + self.suffix_opt[d + 1] < self.best {
            self.dfs(d + 1, 0, new_slack, 1);
        }
        for idx in 0..self.later[d].len() {
            let u = self.later[d][idx];
            self.cnt[u * k] -= 1;
        }
        self.color[d] = UNSET;
    }
}

/// Colors by vertex index, relabeled by order of first appearance.
fn canonical_colors(colors: &[u8]) -> Vec<usize> {
    let mut map = [usize::MAX; 256];
    let mut next = 0;
    colors
        .iter()
        .map(|&c| {
            let slot = &mut map[c as usize];
            if *slot == usize::MAX {
                *slot = next;
                next += 1;
            }
            *slot
        })
        .collect()
}
