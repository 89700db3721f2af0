//! Per-instance bound bookkeeping.

use serde::{Deserialize, Serialize};

use crate::error::{input, Result};

/// Where a number came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    /// Proved optimal by the embedded branch-and-bound.
    Exact,
    /// Closed-form evaluation (`Z_k(n)`, or `nu = 0` for `k >= ceil(n/2)`).
    Formula,
    /// The DDS drawing, counted crossing by crossing.
    Dds,
    /// Feasibility-repaired Frieze–Jerrum bound.
    SdpCertified,
    /// Ratio bound carried from a smaller `m` to `n > m`.
    Lifted,
    /// Previously published bound.
    PriorBound,
    /// Search stopped by its budget; value is only a bound.
    BudgetExceeded,
}

impl Provenance {
    pub fn as_str(&self) -> &'static str {
        match self {
            Provenance::Exact => "exact",
            Provenance::Formula => "formula",
            Provenance::Dds => "dds",
            Provenance::SdpCertified => "sdp-certified",
            Provenance::Lifted => "lifted",
            Provenance::PriorBound => "prior-bound",
            Provenance::BudgetExceeded => "budget-exceeded",
        }
    }
}

/// Lower and upper bound on `nu_k(K_n)` with their sources.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundRecord {
    pub k: u64,
    pub n: u64,
    pub lower: u64,
    pub upper: u64,
    pub exact: bool,
    pub lower_source: Provenance,
    pub upper_source: Provenance,
}

impl BoundRecord {
    pub fn new(
        k: u64,
        n: u64,
        (lower, lower_source): (u64, Provenance),
        (upper, upper_source): (u64, Provenance),
    ) -> Result<Self> {
        if lower > upper {
            return input(format!("inconsistent bounds for k={k}, n={n}: {lower} > {upper}"));
        }
        Ok(BoundRecord { k, n, lower, upper, exact: lower == upper, lower_source, upper_source })
    }

    /// Tightens with another pair of bounds, keeping the better side of each.
    pub fn merge(&self, other: &BoundRecord) -> Result<Self> {
        let lo = if other.lower > self.lower {
            (other.lower, other.lower_source)
        } else {
            (self.lower, self.lower_source)
        };
        let hi = if other.upper < self.upper {
            (other.upper, other.upper_source)
        } else {
            (self.upper, self.upper_source)
        };
        BoundRecord::new(self.k, self.n, lo, hi)
    }
}
