use std::fmt;

use crate::count::Count;
use crate::error::{Error, Result};
use crate::poset::a_max;

use super::table::{CountTable, Refinement};

/// Region of the `(p, a)` plane a cell belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RegionLabel {
    /// `a > ⌊p²/4⌋`.
    NoPoset,
    /// `⌊(p−1)²/4⌋ < a ≤ ⌊p²/4⌋`: every poset is connected.
    AllConnected,
    /// `a < p − 1`: every poset is disconnected.
    AllDisconnectedIfAny,
    /// `3a/2 ≤ p ≤ 2a`: no-isolated counts depend only on `2a − p`.
    StableConeMember,
    /// None of the first three.
    Mixed,
}

impl fmt::Display for RegionLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RegionLabel::NoPoset => "no_poset",
            RegionLabel::AllConnected => "all_connected",
            RegionLabel::AllDisconnectedIfAny => "all_disconnected_if_any",
            RegionLabel::StableConeMember => "stable_cone_member",
            RegionLabel::Mixed => "mixed",
        })
    }
}

/// Every label that applies to a cell. Exactly one of the connectivity
/// labels holds; the stable-cone label may hold in addition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RegionSet {
    pub primary: RegionLabel,
    pub stable_cone: bool,
}

impl RegionSet {
    pub fn contains(&self, label: RegionLabel) -> bool {
        self.primary == label || (label == RegionLabel::StableConeMember && self.stable_cone)
    }

    pub fn labels(&self) -> Vec<RegionLabel> {
        let mut v = vec![self.primary];
        if self.stable_cone {
            v.push(RegionLabel::StableConeMember);
        }
        v
    }
}

pub fn classify_region(p: usize, a: usize) -> RegionSet {
    let primary = if a > a_max(p) {
        RegionLabel::NoPoset
    } else if p >= 1 && a > a_max(p - 1) {
        RegionLabel::AllConnected
    } else if a + 1 < p {
        RegionLabel::AllDisconnectedIfAny
    } else {
        RegionLabel::Mixed
    };
    RegionSet { primary, stable_cone: 2 * p >= 3 * a && p <= 2 * a }
}

/// `H(p,a) − H(p−1,a)`, the number of posets without isolated points.
pub fn h0_by_difference<N: Count>(table_all: &CountTable<N>, p: usize, a: usize) -> Result<N> {
    if table_all.refinement() != Refinement::All {
        return Err(Error::WrongRefinement { expected: Refinement::All, found: table_all.refinement() });
    }
    if p == 0 {
        return table_all.get(0, a);
    }
    table_all.get(p, a)?.try_sub(&table_all.get(p - 1, a)?)
}
