use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::count::Count;
use crate::error::{Error, Result};
use crate::poset::{a_max, is_self_dual, CoverDigraph};

/// Which posets a [`CountTable`] counts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Refinement {
    All,
    Connected,
    NoIsolated,
    SelfDualConnected,
    SelfDualNoIsolated,
}

impl Refinement {
    pub const ALL: [Refinement; 5] = [
        Refinement::All,
        Refinement::Connected,
        Refinement::NoIsolated,
        Refinement::SelfDualConnected,
        Refinement::SelfDualNoIsolated,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Refinement::All => "all",
            Refinement::Connected => "connected",
            Refinement::NoIsolated => "no_isolated",
            Refinement::SelfDualConnected => "self_dual_connected",
            Refinement::SelfDualNoIsolated => "self_dual_no_isolated",
        }
    }

    /// Whether `d` belongs to the class this refinement counts.
    pub fn admits(self, d: &CoverDigraph) -> bool {
        match self {
            Refinement::All => true,
            Refinement::Connected => d.is_connected(),
            Refinement::NoIsolated => d.isolated_mask() == 0,
            Refinement::SelfDualConnected => d.is_connected() && is_self_dual(d),
            Refinement::SelfDualNoIsolated => d.isolated_mask() == 0 && is_self_dual(d),
        }
    }

    /// Count at `p = 0`: the empty poset has no isolated points, is
    /// self-dual, and is not connected.
    fn empty_poset_count(self) -> u64 {
        match self {
            Refinement::All | Refinement::NoIsolated | Refinement::SelfDualNoIsolated => 1,
            Refinement::Connected | Refinement::SelfDualConnected => 0,
        }
    }

    /// Arc range outside of which the refinement is zero by the connectivity,
    /// isolated-point and maximum-arc bounds.
    pub fn feasible_arcs(self, p: usize) -> std::ops::RangeInclusive<usize> {
        let lo = match self {
            Refinement::All => 0,
            Refinement::Connected | Refinement::SelfDualConnected => p.saturating_sub(1),
            Refinement::NoIsolated | Refinement::SelfDualNoIsolated => p.div_ceil(2),
        };
        lo..=a_max(p)
    }
}

impl fmt::Display for Refinement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Refinement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(Refinement::All),
            "connected" => Ok(Refinement::Connected),
            "no_isolated" | "no-isolated" => Ok(Refinement::NoIsolated),
            "self_dual_connected" | "self-dual" | "self-dual-connected" => {
                Ok(Refinement::SelfDualConnected)
            }
            "self_dual_no_isolated" | "self-dual-no-isolated" => Ok(Refinement::SelfDualNoIsolated),
            other => Err(Error::Usage(format!("unknown refinement `{other}`"))),
        }
    }
}

/// Counts per `(points, arcs)` cell for one refinement.
///
/// The table is complete for every cell with `1 ≤ p ≤ max_points` and, if
/// set, `a ≤ max_arcs`; absent cells in that region are zero. Lookups
/// outside it fail with [`Error::IncompleteTable`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountTable<N> {
    refinement: Refinement,
    max_points: usize,
    max_arcs: Option<usize>,
    entries: BTreeMap<(usize, usize), N>,
}

impl<N: Count> CountTable<N> {
    pub fn new(refinement: Refinement, max_points: usize, max_arcs: Option<usize>) -> Self {
        CountTable { refinement, max_points, max_arcs, entries: BTreeMap::new() }
    }

    pub fn refinement(&self) -> Refinement {
        self.refinement
    }

    pub fn max_points(&self) -> usize {
        self.max_points
    }

    pub fn max_arcs(&self) -> Option<usize> {
        self.max_arcs
    }

    pub fn is_complete_at(&self, p: usize, a: usize) -> bool {
        p <= self.max_points && self.max_arcs.is_none_or(|m| a <= m)
    }

    pub fn get(&self, p: usize, a: usize) -> Result<N> {
        if !self.is_complete_at(p, a) {
            return Err(Error::IncompleteTable { refinement: self.refinement, points: p, arcs: a });
        }
        if p == 0 {
            return Ok(if a == 0 { N::of(self.refinement.empty_poset_count()) } else { N::zero() });
        }
        Ok(self.entries.get(&(p, a)).cloned().unwrap_or_else(N::zero))
    }

    /// Overwrites a cell; zero removes it.
    pub fn set(&mut self, p: usize, a: usize, n: N) {
        if n.is_zero() {
            self.entries.remove(&(p, a));
        } else {
            self.entries.insert((p, a), n);
        }
    }

    pub fn add(&mut self, p: usize, a: usize, n: &N) -> Result<()> {
        if n.is_zero() {
            return Ok(());
        }
        let slot = self.entries.entry((p, a)).or_insert_with(N::zero);
        *slot = slot.try_add(n)?;
        Ok(())
    }

    /// Nonzero cells sorted by `(p, a)`.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize, &N)> {
        self.entries.iter().map(|(&(p, a), n)| (p, a, n))
    }

    pub fn nonzero_cells(&self) -> usize {
        self.entries.len()
    }

    /// `Σ_a` of one column; requires an unbounded arc range.
    pub fn column_sum(&self, p: usize) -> Result<N> {
        if let Some(m) = self.max_arcs {
            if m < a_max(p) {
                return Err(Error::IncompleteTable { refinement: self.refinement, points: p, arcs: m + 1 });
            }
        }
        (0..=a_max(p)).try_fold(N::zero(), |acc, a| acc.try_add(&self.get(p, a)?))
    }

    /// Adds the counts of a table over the same refinement and completeness
    /// region, e.g. a partial tally from another worker.
    pub fn merge(&mut self, other: &CountTable<N>) -> Result<()> {
        if self.refinement != other.refinement
            || self.max_points != other.max_points
            || self.max_arcs != other.max_arcs
        {
            return Err(Error::ShapeMismatch(format!(
                "{}/{}/{:?} vs {}/{}/{:?}",
                self.refinement,
                self.max_points,
                self.max_arcs,
                other.refinement,
                other.max_points,
                other.max_arcs
            )));
        }
        for (p, a, n) in other.cells() {
            self.add(p, a, n)?;
        }
        Ok(())
    }

    /// Same cells in another count type.
    pub fn convert<M: Count>(&self) -> Result<CountTable<M>> {
        let mut out = CountTable::new(self.refinement, self.max_points, self.max_arcs);
        for (p, a, n) in self.cells() {
            let m: M = n.to_string().parse().map_err(|_| Error::Overflow)?;
            out.set(p, a, m);
        }
        Ok(out)
    }
}

/// One table per [`Refinement`], all complete over the same region.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RefinedCounts<N> {
    pub all: CountTable<N>,
    pub connected: CountTable<N>,
    pub no_isolated: CountTable<N>,
    pub self_dual_connected: CountTable<N>,
    pub self_dual_no_isolated: CountTable<N>,
}

impl<N: Count> RefinedCounts<N> {
    pub fn new(max_points: usize, max_arcs: Option<usize>) -> Self {
        RefinedCounts {
            all: CountTable::new(Refinement::All, max_points, max_arcs),
            connected: CountTable::new(Refinement::Connected, max_points, max_arcs),
            no_isolated: CountTable::new(Refinement::NoIsolated, max_points, max_arcs),
            self_dual_connected: CountTable::new(Refinement::SelfDualConnected, max_points, max_arcs),
            self_dual_no_isolated: CountTable::new(
                Refinement::SelfDualNoIsolated,
                max_points,
                max_arcs,
            ),
        }
    }

    pub fn table(&self, refinement: Refinement) -> &CountTable<N> {
        match refinement {
            Refinement::All => &self.all,
            Refinement::Connected => &self.connected,
            Refinement::NoIsolated => &self.no_isolated,
            Refinement::SelfDualConnected => &self.self_dual_connected,
            Refinement::SelfDualNoIsolated => &self.self_dual_no_isolated,
        }
    }

    pub fn table_mut(&mut self, refinement: Refinement) -> &mut CountTable<N> {
        match refinement {
            Refinement::All => &mut self.all,
            Refinement::Connected => &mut self.connected,
            Refinement::NoIsolated => &mut self.no_isolated,
            Refinement::SelfDualConnected => &mut self.self_dual_connected,
            Refinement::SelfDualNoIsolated => &mut self.self_dual_no_isolated,
        }
    }

    pub fn merge(&mut self, other: &RefinedCounts<N>) -> Result<()> {
        for r in Refinement::ALL {
            self.table_mut(r).merge(other.table(r))?;
        }
        Ok(())
    }
}
