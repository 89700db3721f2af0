//! The chord-overlap graph `G_n`.
//!
//! Vertices are the chords of an `n`-cycle (pairs of cycle positions at cyclic
//! distance at least 2); two chords are adjacent when their endpoints strictly
//! interleave around the cycle. A k-coloring of `G_n` is the same thing as a
//! k-page drawing of `K_n` with the cycle edges left out, and monochromatic
//! edges of `G_n` are exactly the crossings of that drawing.
//!
//! Vertices are ordered orbit by orbit (orbit = cyclic distance `i`), each
//! orbit starting at the chord `{d*i mod n, (d+1)*i mod n}` with `d = n/2`
//! and continuing by clockwise shifts. For odd `n` this makes every `n x n`
//! block of the adjacency matrix a symmetric circulant.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::io;

use nalgebra::DMatrix;

use crate::error::{input, Error, Result};

/// A chord `{a, b}` of the `n`-cycle, stored with `a < b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Chord {
    a: usize,
    b: usize,
}

impl Chord {
    pub fn new(x: usize, y: usize, n: usize) -> Result<Self> {
        if x >= n || y >= n {
            return input(format!("chord endpoint out of range: {{{x}, {y}}} on {n}-cycle"));
        }
        if cyclic_distance(x, y, n) < 2 {
            return input(format!("{{{x}, {y}}} is not a chord of the {n}-cycle"));
        }
        Ok(Chord { a: x.min(y), b: x.max(y) })
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn b(&self) -> usize {
        self.b
    }

    pub fn distance(&self, n: usize) -> usize {
        cyclic_distance(self.a, self.b, n)
    }

    /// Shared endpoints.
    pub fn touches(&self, other: &Chord) -> bool {
        self.a == other.a || self.a == other.b || self.b == other.a || self.b == other.b
    }
}

pub fn cyclic_distance(x: usize, y: usize, n: usize) -> usize {
    let diff = x.abs_diff(y);
    diff.min(n - diff)
}

/// Strict interleaving of two segments with endpoints on a circle, given in
/// canonical `a < b` form. Shared endpoints never count.
pub(crate) fn interleave(a1: usize, b1: usize, a2: usize, b2: usize) -> bool {
    (a1 < a2 && a2 < b1 && b1 < b2) || (a2 < a1 && a1 < b2 && b2 < b1)
}

/// Whether two chords cross when drawn inside the cycle.
pub fn chords_overlap(c1: Chord, c2: Chord, n: usize) -> Result<bool> {
    for c in [c1, c2] {
        if c.b >= n || c.distance(n) < 2 {
            return input(format!("{{{}, {}}} is not a chord of the {n}-cycle", c.a, c.b));
        }
    }
    Ok(interleave(c1.a, c1.b, c2.a, c2.b))
}

/// The overlap graph of the chords of the `n`-cycle.
#[derive(Debug, Clone)]
pub struct ChordGraph {
    n: usize,
    d: usize,
    vertices: Vec<Chord>,
    orbit_of: Vec<usize>,
    neighbors: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
    index: HashMap<Chord, usize>,
}

impl ChordGraph {
    pub fn new(n: usize) -> Result<Self> {
        build_chord_graph(n)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `floor(n / 2)`, the largest chord distance.
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn vertices(&self) -> &[Chord] {
        &self.vertices
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Edges `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }

    /// Cyclic distance of the chord at vertex `v`.
    pub fn orbit_of(&self, v: usize) -> usize {
        self.orbit_of[v]
    }

    pub fn num_orbits(&self) -> usize {
        self.d - 1
    }

    /// Vertex indices of orbit `i` (contiguous by construction).
    pub fn orbit_range(&self, i: usize) -> std::ops::Range<usize> {
        let start = self.orbit_of.iter().position(|&o| o == i).unwrap_or(self.vertices.len());
        let len = self.orbit_of[start..].iter().take_while(|&&o| o == i).count();
        start..start + len
    }

    pub fn index_of(&self, c: &Chord) -> Option<usize> {
        self.index.get(c).copied()
    }

    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        self.neighbors[u].binary_search(&v).is_ok()
    }

    pub fn adjacency_matrix(&self) -> DMatrix<i64> {
        let p = self.num_vertices();
        let mut a = DMatrix::zeros(p, p);
        for &(u, v) in &self.edges {
            a[(u, v)] = 1;
            a[(v, u)] = 1;
        }
        a
    }

    /// Edge-list export: `p <|V|> <|E|>` followed by one `u v` line per edge.
    pub fn write_edge_list<W: io::Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "p {} {}", self.num_vertices(), self.num_edges())?;
        for &(u, v) in &self.edges {
            writeln!(out, "{u} {v}")?;
        }
        Ok(())
    }

    pub fn edge_list_string(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "p {} {}", self.num_vertices(), self.num_edges());
        for &(u, v) in &self.edges {
            let _ = writeln!(s, "{u} {v}");
        }
        s
    }
}

/// Builds `G_n` in the canonical orbit-by-orbit vertex order.
pub fn build_chord_graph(n: usize) -> Result<ChordGraph> {
    if n < 5 {
        return input(format!("chord graph needs n >= 5, got {n}"));
    }
    let d = n / 2;
    let mut vertices = Vec::with_capacity(n * (n - 1) / 2 - n);
    let mut orbit_of = Vec::with_capacity(vertices.capacity());
    let mut index = HashMap::new();
    for i in 2..=d {
        for shift in 0..n {
            let x = (d * i + shift) % n;
            let y = ((d + 1) * i + shift) % n;
            let chord = Chord::new(x, y, n)?;
            // diameters (even n, i = d) come around twice
            if index.contains_key(&chord) {
                continue;
            }
            index.insert(chord, vertices.len());
            vertices.push(chord);
            orbit_of.push(i);
        }
    }
    let p = vertices.len();
    let mut neighbors = vec![Vec::new(); p];
    let mut edges = Vec::new();
    for u in 0..p {
        let cu = vertices[u];
        for v in u + 1..p {
            let cv = vertices[v];
            if interleave(cu.a, cu.b, cv.a, cv.b) {
                neighbors[u].push(v);
                neighbors[v].push(u);
                edges.push((u, v));
            }
        }
    }
    for list in &mut neighbors {
        list.sort_unstable();
    }
    Ok(ChordGraph { n, d, vertices, orbit_of, neighbors, edges, index })
}

/// Circulant offset `l_ij` locating the ones in the first row of block `(i, j)`.
pub fn ell(i: usize, j: usize, n: usize) -> Result<usize> {
    let d = n / 2;
    if n < 5 || i < 2 || i > j || j > d {
        return input(format!("ell needs 2 <= i <= j <= {d}, got i={i}, j={j}, n={n}"));
    }
    let (i, j, d, m) = (i as i64, j as i64, d as i64, n as i64);
    let raw = if (i - j) % 2 == 0 { d * (i - j) } else { d * (i - j) - j };
    Ok(raw.rem_euclid(m) as usize)
}

/// First row of the symmetric circulant block `(i, j)` of the adjacency matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CirculantBlockSpec {
    pub i: usize,
    pub j: usize,
    pub ell: usize,
    pub first_row: Vec<u8>,
}

impl CirculantBlockSpec {
    /// Entry `(r, c)` of the realized `n x n` circulant.
    pub fn entry(&self, r: usize, c: usize) -> u8 {
        let n = self.first_row.len();
        self.first_row[(c + n - r) % n]
    }
}

pub fn block_first_row(i: usize, j: usize, n: usize) -> Result<CirculantBlockSpec> {
    if n.is_multiple_of(2) {
        return Err(Error::Unsupported(format!(
            "circulant block structure is only defined for odd n, got n={n}"
        )));
    }
    let l = ell(i, j, n)?;
    let ones = i - 1;
    if 2 * ones + 1 + 2 * l > n {
        return Err(Error::Invariant(format!(
            "block ({i},{j}) for n={n}: offset {l} leaves no room for the zero gap"
        )));
    }
    let mut first_row = vec![0u8; n];
    for t in 0..ones {
        first_row[1 + l + t] = 1;
        first_row[n - 1 - l - t] = 1;
    }
    Ok(CirculantBlockSpec { i, j, ell: l, first_row })
}

/// Adjacency matrix assembled purely from the circulant block descriptions (odd n).
pub fn assemble_block_adjacency(n: usize) -> Result<DMatrix<i64>> {
    if n.is_multiple_of(2) || n < 5 {
        return Err(Error::Unsupported(format!("block assembly needs odd n >= 5, got {n}")));
    }
    let d = n / 2;
    let p = n * (d - 1);
    let mut a = DMatrix::zeros(p, p);
    for i in 2..=d {
        for j in i..=d {
            let spec = block_first_row(i, j, n)?;
            let (r0, c0) = ((i - 2) * n, (j - 2) * n);
            for r in 0..n {
                for c in 0..n {
                    let e = spec.entry(r, c) as i64;
                    a[(r0 + r, c0 + c)] = e;
                    a[(c0 + c, r0 + r)] = e;
                }
            }
        }
    }
    Ok(a)
}

/// `L = Deg - A`.
pub fn laplacian(g: &ChordGraph) -> DMatrix<i64> {
    let mut l = -g.adjacency_matrix();
    for v in 0..g.num_vertices() {
        l[(v, v)] = g.degree(v) as i64;
    }
    l
}

/// Orbit valency `i(i-1) + 2(i-1)(d-i)` (odd n).
pub fn orbit_valency(i: usize, d: usize) -> usize {
    i * (i - 1) + 2 * (i - 1) * (d - i)
}
