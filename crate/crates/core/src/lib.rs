//! Book crossing numbers of complete graphs.
//!
//! `nu_k(K_n)`, the minimum number of crossings over k-page drawings of `K_n`,
//! equals `C(n,4) - max-k-cut(G_n)` where `G_n` is the chord-overlap graph of
//! the `n`-cycle. This crate builds `G_n`, solves small max-k-cut instances
//! exactly, exports them as weighted Max-SAT, bounds `nu_k(K_n)` from below via
//! the symmetry-reduced Frieze–Jerrum semidefinite relaxation and from above
//! via the DDS drawing and its closed-form crossing count `Z_k(n)`.

pub mod bounds;
pub mod chordgraph;
pub mod drawings;
pub mod error;
pub mod exact;
pub mod formulas;
pub mod sdp;

pub use error::{Error, Result};
