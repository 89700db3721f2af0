//! Exhaustive enumeration of colorings; ground truth for tiny `n`.

use crate::chordgraph::build_chord_graph;
use crate::error::{Error, Result};
use crate::formulas::binom4;

/// Default cap on the number of colorings enumerated.
pub const BRUTE_FORCE_CAP: f64 = 2e9;

/// `C(n,4)` minus the best cut over all colorings with vertex 0 fixed to color 0.
pub fn brute_force_nu(n: usize, k: usize) -> Result<u64> {
    brute_force_nu_capped(n, k, BRUTE_FORCE_CAP)
}

pub fn brute_force_nu_capped(n: usize, k: usize, cap: f64) -> Result<u64> {
    if k == 0 {
        return Err(Error::Input("brute force needs k >= 1".into()));
    }
    let g = build_chord_graph(n)?;
    let p = g.num_vertices();
    let estimate = (k as f64).powi(p as i32 - 1);
    if estimate > cap {
        return Err(Error::Cap { estimate, cap });
    }
    // every vertex starts at color 0: all edges monochromatic
    let mut color = vec![0usize; p];
    let mut mono = g.num_edges() as u64;
    let mut best = mono;
    let recolor = |color: &mut [usize], mono: &mut u64, v: usize, c: usize| {
        let old = color[v];
        for &u in g.neighbors(v) {
            if color[u] == old {
                *mono -= 1;
            }
            if color[u] == c {
                *mono += 1;
            }
        }
        color[v] = c;
    };
    'outer: loop {
        // odometer over vertices 1..p
        let mut v = 1;
        loop {
            if v == p {
                break 'outer;
            }
            if color[v] + 1 < k {
                let c = color[v] + 1;
                recolor(&mut color, &mut mono, v, c);
                break;
            }
            recolor(&mut color, &mut mono, v, 0);
            v += 1;
        }
        best = best.min(mono);
    }
    debug_assert!(best <= binom4(n as u64));
    Ok(best)
}
