//! Weighted Max-SAT encoding of max-k-cut, in DIMACS WCNF.
//!
//! Variable `x[i][p]` (vertex `i` has color `p`) is DIMACS variable `i*k + p + 1`.
//! For every edge `(i, j)` and color `p` there is a weight-1 clause
//! `-x[i][p] -x[j][p]`; every vertex gets `x[i][0] v ... v x[i][k-1]` with
//! weight `k|E|`. The minimum total weight of unsatisfied clauses is `nu_k(K_n)`.
//!
//! Emitted files list the `|V|` vertex clauses first (clause ids `1..=|V|`),
//! then the edge clauses.

use std::io::{self, Write};

use super::CutAssignment;
use crate::chordgraph::ChordGraph;
use crate::error::{input, Error, Result};

/// How the vertex clauses are weighted on output.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum WcnfMode {
    /// `top = k|E| + 1`; vertex clauses carry weight `top` and are hard.
    #[default]
    Hard,
    /// Vertex clauses keep weight `k|E|` as soft clauses; `top` exceeds every soft weight combined.
    AllSoft,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WcnfInstance {
    pub graph_n: usize,
    pub num_vertices: usize,
    pub k: usize,
    pub num_vars: usize,
    /// `k |E|`.
    pub hard_weight: u64,
    /// Pairs of negative literals, weight 1.
    pub soft_clauses: Vec<[i64; 2]>,
    /// One all-positive `k`-literal clause per vertex.
    pub hard_clauses: Vec<Vec<i64>>,
}

impl WcnfInstance {
    pub fn var(&self, vertex: usize, color: usize) -> i64 {
        (vertex * self.k + color + 1) as i64
    }

    pub fn num_clauses(&self) -> usize {
        self.soft_clauses.len() + self.hard_clauses.len()
    }

    pub fn top(&self, mode: WcnfMode) -> u64 {
        match mode {
            WcnfMode::Hard => self.hard_weight + 1,
            WcnfMode::AllSoft => {
                self.soft_clauses.len() as u64 + self.hard_clauses.len() as u64 * self.hard_weight + 1
            }
        }
    }

    /// Total weight of clauses falsified by `model` (`model[v-1]` is DIMACS variable `v`),
    /// with vertex clauses weighted `k|E|`.
    pub fn unsat_weight(&self, model: &[bool]) -> Result<u64> {
        if model.len() != self.num_vars {
            return input(format!("model has {} values, expected {}", model.len(), self.num_vars));
        }
        let truth = |lit: i64| {
            let v = model[(lit.unsigned_abs() - 1) as usize];
            if lit > 0 {
                v
            } else {
                !v
            }
        };
        let soft = self.soft_clauses.iter().filter(|c| !c.iter().any(|&l| truth(l))).count() as u64;
        let hard = self.hard_clauses.iter().filter(|c| !c.iter().any(|&l| truth(l))).count() as u64;
        Ok(soft + hard * self.hard_weight)
    }

    /// The one-hot truth assignment of a coloring.
    pub fn model_of(&self, a: &CutAssignment) -> Result<Vec<bool>> {
        if a.k != self.k || a.color_of.len() != self.num_vertices {
            return input("assignment does not match the instance");
        }
        let mut model = vec![false; self.num_vars];
        for (v, &c) in a.color_of.iter().enumerate() {
            model[(self.var(v, c) - 1) as usize] = true;
        }
        Ok(model)
    }
}

pub fn encode_wcnf(g: &ChordGraph, k: usize) -> Result<WcnfInstance> {
    if k == 0 {
        return input("encode_wcnf needs k >= 1");
    }
    let p = g.num_vertices();
    let var = |v: usize, c: usize| (v * k + c + 1) as i64;
    let soft_clauses = g
        .edges()
        .iter()
        .flat_map(|&(u, v)| (0..k).map(move |c| [-var(u, c), -var(v, c)]))
        .collect();
    let hard_clauses = (0..p).map(|v| (0..k).map(|c| var(v, c)).collect()).collect();
    Ok(WcnfInstance {
        graph_n: g.n(),
        num_vertices: p,
        k,
        num_vars: p * k,
        hard_weight: (k * g.num_edges()) as u64,
        soft_clauses,
        hard_clauses,
    })
}

pub fn emit_dimacs_wcnf<W: Write>(w: &WcnfInstance, mode: WcnfMode, mut out: W) -> io::Result<()> {
    let top = w.top(mode);
    let vertex_weight = match mode {
        WcnfMode::Hard => top,
        WcnfMode::AllSoft => w.hard_weight,
    };
    writeln!(out, "c max-{}-cut of G_{} ({} vertices)", w.k, w.graph_n, w.num_vertices)?;
    writeln!(out, "p wcnf {} {} {}", w.num_vars, w.num_clauses(), top)?;
    for clause in &w.hard_clauses {
        write!(out, "{vertex_weight}")?;
        for l in clause {
            write!(out, " {l}")?;
        }
        writeln!(out, " 0")?;
    }
    for [a, b] in &w.soft_clauses {
        writeln!(out, "1 {a} {b} 0")?;
    }
    Ok(())
}

pub fn wcnf_string(w: &WcnfInstance, mode: WcnfMode) -> String {
    let mut buf = Vec::new();
    emit_dimacs_wcnf(w, mode, &mut buf).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("ASCII output")
}

/// Reads a solver model (`v` lines with signed literals, or a single `v` line
/// of 0/1 characters) and decodes it into a coloring. A vertex with several
/// true colors takes the lowest one.
pub fn parse_wcnf_model(text: &str, w: &WcnfInstance) -> Result<CutAssignment> {
    let mut model = vec![None::<bool>; w.num_vars];
    let mut saw_v = false;
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        let mut toks = line.split_whitespace();
        if toks.next() != Some("v") {
            continue;
        }
        saw_v = true;
        let toks: Vec<&str> = toks.collect();
        if toks.len() == 1 && toks[0].len() > 1 && toks[0].chars().all(|c| c == '0' || c == '1') {
            for (idx, ch) in toks[0].chars().enumerate().take(w.num_vars) {
                model[idx] = Some(ch == '1');
            }
            continue;
        }
        for tok in toks {
            let lit: i64 = tok
                .parse()
                .map_err(|_| Error::Parse { line: i + 1, msg: format!("bad literal '{tok}'") })?;
            if lit == 0 {
                continue;
            }
            let idx = (lit.unsigned_abs() - 1) as usize;
            if idx >= w.num_vars {
                return Err(Error::Parse { line: i + 1, msg: format!("variable {lit} out of range") });
            }
            model[idx] = Some(lit > 0);
        }
    }
    if !saw_v {
        return Err(Error::Parse { line: 0, msg: "no 'v' model line found".into() });
    }
    let mut color_of = Vec::with_capacity(w.num_vertices);
    for v in 0..w.num_vertices {
        let color = (0..w.k).find(|&c| model[v * w.k + c] == Some(true));
        match color {
            Some(c) => color_of.push(c),
            None => {
                return Err(Error::Parse {
                    line: 0,
                    msg: format!("model violates hard clause {} (vertex {v} has no color)", v + 1),
                })
            }
        }
    }
    CutAssignment::new(w.graph_n, w.k, color_of)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chordgraph::build_chord_graph;
    use crate::exact::{cut_value, dds_cut};

    #[test]
    fn counts_n7_k3() {
        let g = build_chord_graph(7).unwrap();
        let w = encode_wcnf(&g, 3).unwrap();
        assert_eq!(w.num_vars, 42);
        assert_eq!(w.soft_clauses.len(), 105);
        assert_eq!(w.hard_clauses.len(), 14);
        assert_eq!(w.hard_weight, 105);
        assert!(w.hard_clauses.iter().all(|c| c.len() == 3));
        let text = wcnf_string(&w, WcnfMode::Hard);
        assert!(text.lines().any(|l| l == "p wcnf 42 119 106"));
        assert_eq!(text.lines().filter(|l| l.starts_with("106 ")).count(), 14);
        let lit = wcnf_string(&w, WcnfMode::AllSoft);
        assert_eq!(lit.lines().filter(|l| l.starts_with("105 ")).count(), 14);
        assert!(lit.lines().any(|l| l == format!("p wcnf 42 119 {}", 105 + 14 * 105 + 1)));
    }

    #[test]
    fn hard_weight_definition() {
        for (n, k) in [(6, 2), (8, 4), (9, 3)] {
            let g = build_chord_graph(n).unwrap();
            assert_eq!(encode_wcnf(&g, k).unwrap().hard_weight, (k * g.num_edges()) as u64);
        }
    }

    #[test]
    fn model_roundtrip_and_tie_rule() {
        let g = build_chord_graph(7).unwrap();
        let w = encode_wcnf(&g, 3).unwrap();
        let a = dds_cut(&g, 3).unwrap();
        let model = w.model_of(&a).unwrap();
        assert_eq!(w.unsat_weight(&model).unwrap(), 2);
        let lits: Vec<String> = model
            .iter()
            .enumerate()
            .map(|(i, &b)| if b { format!("{}", i + 1) } else { format!("-{}", i + 1) })
            .collect();
        let text = format!("s OPTIMUM FOUND\no 2\nv {}\n", lits.join(" "));
        assert_eq!(parse_wcnf_model(&text, &w).unwrap(), a);
        let bits: String = model.iter().map(|&b| if b { '1' } else { '0' }).collect();
        assert_eq!(parse_wcnf_model(&format!("v {bits}"), &w).unwrap(), a);

        // vertex 0 also gets color 2 on top of its own: lowest true color wins
        let mut doubled = model.clone();
        doubled[2] = true;
        let decoded = parse_wcnf_model(
            &format!("v {}", doubled.iter().map(|&b| if b { '1' } else { '0' }).collect::<String>()),
            &w,
        )
        .unwrap();
        assert_eq!(decoded.color_of[0], a.color_of[0].min(2));
        assert!(cut_value(&g, &decoded).is_ok());
    }

    #[test]
    fn g5_k3_roundtrip() {
        // G_5 is a 5-cycle
        let g = build_chord_graph(5).unwrap();
        let w = encode_wcnf(&g, 3).unwrap();
        let a = CutAssignment::new(5, 3, vec![0, 1, 2, 1, 0]).unwrap();
        let model = w.model_of(&a).unwrap();
        let bits: String = model.iter().map(|&b| if b { '1' } else { '0' }).collect();
        assert_eq!(parse_wcnf_model(&format!("v {bits}"), &w).unwrap(), a);
    }

    #[test]
    fn malformed_models() {
        let g = build_chord_graph(5).unwrap();
        let w = encode_wcnf(&g, 2).unwrap();
        assert!(parse_wcnf_model("s UNKNOWN", &w).is_err());
        assert!(parse_wcnf_model("v 1 x 3", &w).is_err());
        assert!(parse_wcnf_model("v 99", &w).is_err());
        match parse_wcnf_model("v -1 -2 3 4 5 6 7 8 9 10", &w) {
            Err(Error::Parse { msg, .. }) => assert!(msg.contains("hard clause 1"), "{msg}"),
            other => panic!("expected hard clause violation, got {other:?}"),
        }
    }
}
