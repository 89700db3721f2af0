//! k-page drawings of `K_n` in the circular model and the DDS construction.
//!
//! Vertices `0..n` sit on a circle in clockwise order; each edge lives on one
//! page, and two edges on the same page cross iff their endpoints strictly
//! interleave.

use std::fmt;
use std::str::FromStr;

use crate::chordgraph::interleave;
use crate::error::{input, Error, Result};

/// Number of edges of `K_n`.
pub fn num_edges(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Position of edge `{a, b}` (`a < b`) in the lexicographic edge order of `K_n`.
pub fn edge_index(a: usize, b: usize, n: usize) -> usize {
    debug_assert!(a < b && b < n);
    a * n - a * (a + 1) / 2 + (b - a - 1)
}

/// Inverse of [`edge_index`].
pub fn edge_at(mut idx: usize, n: usize) -> (usize, usize) {
    let mut a = 0;
    loop {
        let row = n - a - 1;
        if idx < row {
            return (a, a + 1 + idx);
        }
        idx -= row;
        a += 1;
    }
}

/// A k-page drawing of `K_n`: one page index per edge, in lexicographic edge order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Drawing {
    n: usize,
    k: usize,
    page_of: Vec<usize>,
}

impl Drawing {
    pub fn new(n: usize, k: usize, page_of: Vec<usize>) -> Result<Self> {
        if k == 0 {
            return input("a drawing needs at least one page");
        }
        if page_of.len() != num_edges(n) {
            return input(format!(
                "drawing of K_{n} needs {} page entries, got {}",
                num_edges(n),
                page_of.len()
            ));
        }
        if let Some(p) = page_of.iter().find(|&&p| p >= k) {
            return input(format!("page index {p} out of range for {k} pages"));
        }
        Ok(Drawing { n, k, page_of })
    }

    /// Builds a drawing from explicit page contents; every edge must appear exactly once.
    pub fn from_pages(n: usize, pages: &[Vec<(usize, usize)>]) -> Result<Self> {
        let k = pages.len();
        let mut page_of = vec![usize::MAX; num_edges(n)];
        for (p, edges) in pages.iter().enumerate() {
            for &(x, y) in edges {
                let (a, b) = (x.min(y), x.max(y));
                if a == b || b >= n {
                    return input(format!("{x}-{y} is not an edge of K_{n}"));
                }
                let slot = &mut page_of[edge_index(a, b, n)];
                if *slot != usize::MAX {
                    return input(format!("edge {a}-{b} assigned twice"));
                }
                *slot = p;
            }
        }
        if let Some(missing) = page_of.iter().position(|&p| p == usize::MAX) {
            let (a, b) = edge_at(missing, n);
            return input(format!("edge {a}-{b} has no page"));
        }
        Drawing::new(n, k, page_of)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn page(&self, a: usize, b: usize) -> usize {
        let (a, b) = (a.min(b), a.max(b));
        self.page_of[edge_index(a, b, self.n)]
    }

    pub fn page_of(&self) -> &[usize] {
        &self.page_of
    }

    /// Edges of each page, each list in lexicographic order.
    pub fn pages(&self) -> Vec<Vec<(usize, usize)>> {
        let mut pages = vec![Vec::new(); self.k];
        for (idx, &p) in self.page_of.iter().enumerate() {
            pages[p].push(edge_at(idx, self.n));
        }
        pages
    }
}

impl fmt::Display for Drawing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "drawing n={} k={}", self.n, self.k)?;
        for (p, edges) in self.pages().iter().enumerate() {
            write!(f, "page {p}:")?;
            for (a, b) in edges {
                write!(f, " {a}-{b}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

fn parse_err<T>(line: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse { line, msg: msg.into() })
}

fn header_field(tok: Option<&str>, key: &str, line: usize) -> Result<usize> {
    let tok = match tok {
        Some(t) => t,
        None => return parse_err(line, format!("missing {key}=")),
    };
    match tok.strip_prefix(key).and_then(|v| v.strip_prefix('=')) {
        Some(v) => v.parse().or_else(|_| parse_err(line, format!("bad value in {tok}"))),
        None => parse_err(line, format!("expected {key}=<int>, got {tok}")),
    }
}

impl FromStr for Drawing {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (hl, header) = match lines.next() {
            Some((i, l)) => (i + 1, l),
            None => return parse_err(1, "empty input"),
        };
        let mut toks = header.split_whitespace();
        if toks.next() != Some("drawing") {
            return parse_err(hl, "expected header 'drawing n=<n> k=<k>'");
        }
        let n = header_field(toks.next(), "n", hl)?;
        let k = header_field(toks.next(), "k", hl)?;
        let mut pages = vec![Vec::new(); k];
        let mut seen = vec![false; k];
        for (i, l) in lines {
            let ln = i + 1;
            let (head, body) = match l.split_once(':') {
                Some(x) => x,
                None => return parse_err(ln, "expected 'page <l>: ...'"),
            };
            let p: usize = match head.trim().strip_prefix("page") {
                Some(v) => v.trim().parse().or_else(|_| parse_err(ln, "bad page index"))?,
                None => return parse_err(ln, "expected 'page <l>: ...'"),
            };
            if p >= k || seen[p] {
                return parse_err(ln, format!("page {p} out of range or repeated"));
            }
            seen[p] = true;
            for tok in body.split_whitespace() {
                let parsed = tok
                    .split_once('-')
                    .and_then(|(a, b)| Some((a.parse::<usize>().ok()?, b.parse::<usize>().ok()?)));
                match parsed {
                    Some(e) => pages[p].push(e),
                    None => return parse_err(ln, format!("bad edge token '{tok}'")),
                }
            }
        }
        Drawing::from_pages(n, &pages).map_err(|e| Error::Parse { line: hl, msg: e.to_string() })
    }
}

/// `M_i`: edges whose endpoint sum is `i` mod `n`.
pub fn matching(i: usize, n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for a in 0..n {
        let b = (i + n - a % n) % n;
        if a < b {
            out.push((a, b));
        }
    }
    out
}

/// Matching ranges `[s, t]` of each DDS page; `None` for an empty page (only when `k > n`).
pub fn dds_page_intervals(n: usize, k: usize) -> Vec<Option<(usize, usize)>> {
    let (p, q) = (n / k, n % k);
    (0..k)
        .map(|l| {
            if l < q {
                Some((l * (p + 1), l * (p + 1) + p))
            } else if p == 0 {
                None
            } else {
                Some((l * p + q, l * p + q + p - 1))
            }
        })
        .collect()
}

/// The DDS drawing: consecutive matchings grouped into `k` contiguous pages,
/// the first `n mod k` pages holding one extra matching. When `k > n` some
/// pages are simply empty.
pub fn dds_drawing(n: usize, k: usize) -> Result<Drawing> {
    if n == 0 || k == 0 {
        return input(format!("dds_drawing needs n >= 1 and k >= 1, got n={n}, k={k}"));
    }
    let mut page_of = vec![usize::MAX; num_edges(n)];
    for (page, iv) in dds_page_intervals(n, k).into_iter().enumerate() {
        let Some((s, t)) = iv else { continue };
        for i in s..=t {
            for (a, b) in matching(i, n) {
                page_of[edge_index(a, b, n)] = page;
            }
        }
    }
    if page_of.contains(&usize::MAX) {
        return Err(Error::Invariant(format!("DDS pages do not cover K_{n} for k={k}")));
    }
    Drawing::new(n, k, page_of)
}

/// Number of same-page pairs of edges whose endpoints interleave.
pub fn count_crossings(dr: &Drawing) -> u64 {
    dr.pages().iter().map(|edges| page_crossings(edges)).sum()
}

pub(crate) fn page_crossings(edges: &[(usize, usize)]) -> u64 {
    let mut total = 0;
    for (x, &(a1, b1)) in edges.iter().enumerate() {
        for &(a2, b2) in &edges[x + 1..] {
            if interleave(a1, b1, a2, b2) {
                total += 1;
            }
        }
    }
    total
}
