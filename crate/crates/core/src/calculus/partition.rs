use std::fmt;

use crate::count::Count;
use crate::enumerator::{CountTable, Refinement};
use crate::error::{Error, Result};
use crate::poset::a_max;

/// `f` copies of a connected component shape with `points` points and
/// `arcs` Hasse arcs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Part {
    pub points: usize,
    pub arcs: usize,
    pub multiplicity: usize,
}

impl Part {
    pub fn new(points: usize, arcs: usize, multiplicity: usize) -> Self {
        Part { points, arcs, multiplicity }
    }
}

/// A decomposition of `(p, a)` into pairwise distinct connected shapes
/// with multiplicities, listed in strictly decreasing `(points, arcs)`
/// order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DistinctConnectedPartition {
    parts: Vec<Part>,
}

impl DistinctConnectedPartition {
    /// Validates every defining clause plus connectivity feasibility of the
    /// parts.
    pub fn new(parts: Vec<Part>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::Usage("a partition needs at least one part".into()));
        }
        for part in &parts {
            if part.arcs == 0 || part.multiplicity == 0 {
                return Err(Error::Usage(format!("part {part:?} needs positive arcs and multiplicity")));
            }
            if part.arcs + 1 < part.points || part.arcs > a_max(part.points) {
                return Err(Error::Usage(format!("no connected poset has shape {part:?}")));
            }
        }
        for w in parts.windows(2) {
            if (w[1].points, w[1].arcs) >= (w[0].points, w[0].arcs) {
                return Err(Error::Usage(format!(
                    "parts must be strictly decreasing in (points, arcs): {:?} then {:?}",
                    w[0], w[1]
                )));
            }
        }
        Ok(DistinctConnectedPartition { parts })
    }

    pub fn parts(&self) -> &[Part] {
        &self.parts
    }

    pub fn points(&self) -> usize {
        self.parts.iter().map(|t| t.points * t.multiplicity).sum()
    }

    pub fn arcs(&self) -> usize {
        self.parts.iter().map(|t| t.arcs * t.multiplicity).sum()
    }

    /// Whether the partition contains the isolated pair `(2, 1)`.
    pub fn has_pair(&self) -> bool {
        self.parts.iter().any(|t| (t.points, t.arcs) == (2, 1))
    }
}

impl fmt::Display for DistinctConnectedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .parts
            .iter()
            .map(|t| format!("({},{},{})", t.points, t.arcs, t.multiplicity))
            .collect();
        f.write_str(&parts.join(" "))
    }
}

/// A remainder that can still be covered by connected parts with at least
/// one arc each.
fn remainder_feasible(p: usize, a: usize) -> bool {
    (p == 0 && a == 0) || (p >= 2 && a >= 1 && p <= 2 * a && a <= a_max(p))
}

fn check_component_table<N: Count>(t: &CountTable<N>) -> Result<()> {
    match t.refinement() {
        Refinement::Connected | Refinement::SelfDualConnected => Ok(()),
        found => Err(Error::WrongRefinement { expected: Refinement::Connected, found }),
    }
}

/// All distinct connected partitions of `(p, a)` whose parts all have a
/// nonzero count in `components`, in decreasing lexicographic order of
/// their part sequences.
///
/// Only cells that can occur in some partition are looked up, so the table
/// needs to be complete just over those; any other gap is reported as
/// [`Error::IncompleteTable`].
pub fn enumerate_dcp<N: Count>(
    p: usize,
    a: usize,
    components: &CountTable<N>,
) -> Result<Vec<DistinctConnectedPartition>> {
    check_component_table(components)?;
    if p == 0 || a == 0 {
        return Err(Error::Usage(format!("partitions need p >= 1 and a >= 1, got ({p}, {a})")));
    }
    let mut out = Vec::new();
    if remainder_feasible(p, a) {
        let mut parts = Vec::new();
        descend(p, a, (usize::MAX, usize::MAX), &mut parts, components, &mut out)?;
    }
    Ok(out)
}

fn descend<N: Count>(
    rem_p: usize,
    rem_a: usize,
    bound: (usize, usize),
    parts: &mut Vec<Part>,
    components: &CountTable<N>,
    out: &mut Vec<DistinctConnectedPartition>,
) -> Result<()> {
    if rem_p == 0 && rem_a == 0 {
        out.push(DistinctConnectedPartition { parts: parts.clone() });
        return Ok(());
    }
    for points in (2..=rem_p.min(bound.0)).rev() {
        let mut hi = a_max(points).min(rem_a);
        if points == bound.0 {
            if bound.1 == 0 {
                continue;
            }
            hi = hi.min(bound.1 - 1);
        }
        let lo = (points - 1).max(1);
        if lo > hi {
            continue;
        }
        for arcs in (lo..=hi).rev() {
            let max_f = (rem_p / points).min(rem_a / arcs);
            let feasible: Vec<usize> = (1..=max_f)
                .rev()
                .filter(|&f| remainder_feasible(rem_p - f * points, rem_a - f * arcs))
                .collect();
            if feasible.is_empty() || components.get(points, arcs)?.is_zero() {
                continue;
            }
            for f in feasible {
                parts.push(Part::new(points, arcs, f));
                descend(
                    rem_p - f * points,
                    rem_a - f * arcs,
                    (points, arcs),
                    parts,
                    components,
                    out,
                )?;
                parts.pop();
            }
        }
    }
    Ok(())
}

/// Number of multisets of size `f` drawn from `n` types,
/// `binomial(n + f − 1, n − 1)`; zero when `n = 0` and `f ≥ 1`, one when
/// `f = 0`.
pub fn multiset_coeff<N: Count>(n: &N, f: usize) -> Result<N> {
    if f == 0 {
        return Ok(N::one());
    }
    if n.is_zero() {
        return Ok(N::zero());
    }
    // running product of f consecutive integers stays divisible by i!
    let mut acc = N::one();
    let base = n.try_sub(&N::one())?;
    for i in 1..=f {
        let i_n = N::of(i as u64);
        acc = acc.try_mul(&base.try_add(&i_n)?)?;
        acc = acc.checked_div(&i_n).ok_or(Error::Overflow)?;
    }
    Ok(acc)
}

/// Each partition of `(p, a)` with its product of multiset coefficients.
pub fn h0_terms<N: Count>(
    p: usize,
    a: usize,
    connected: &CountTable<N>,
) -> Result<Vec<(DistinctConnectedPartition, N)>> {
    if p == 0 || a == 0 || p > 2 * a {
        check_component_table(connected)?;
        return Ok(Vec::new());
    }
    enumerate_dcp(p, a, connected)?
        .into_iter()
        .map(|dcp| {
            let term = dcp.parts().iter().try_fold(N::one(), |acc, t| {
                acc.try_mul(&multiset_coeff(&connected.get(t.points, t.arcs)?, t.multiplicity)?)
            })?;
            Ok((dcp, term))
        })
        .collect()
}

/// Number of posets on `p` points with `a` arcs and no isolated point,
/// assembled from connected counts. With a self-dual connected table this
/// counts multisets of self-dual components only.
pub fn h0_via_partitions<N: Count>(p: usize, a: usize, connected: &CountTable<N>) -> Result<N> {
    if p == 0 && a == 0 {
        check_component_table(connected)?;
        return Ok(N::one());
    }
    let terms = h0_terms(p, a, connected)?;
    crate::count::try_sum(terms.into_iter().map(|(_, n)| n))
}

/// Self-dual multisets of `f` components drawn from `total` classes of one
/// shape, `self_dual` of which are self-dual and the rest paired with
/// their (distinct) duals.
fn self_dual_multisets<N: Count>(total: &N, self_dual: &N, f: usize) -> Result<N> {
    let paired = total.try_sub(self_dual)?;
    let two = N::of(2);
    if !(paired.clone() % two.clone()).is_zero() {
        return Err(Error::Usage("non-self-dual classes must come in dual pairs".into()));
    }
    let pairs = paired / two;
    (0..=f / 2).try_fold(N::zero(), |acc, k| {
        let term = multiset_coeff(self_dual, f - 2 * k)?.try_mul(&multiset_coeff(&pairs, k)?)?;
        acc.try_add(&term)
    })
}

/// Self-dual posets without isolated points, from connected and self-dual
/// connected counts. A multiset of components is self-dual iff dualizing
/// every component maps it to itself, so non-self-dual components must
/// appear together with their duals at equal multiplicity.
pub fn h0_selfdual_via_partitions<N: Count>(
    p: usize,
    a: usize,
    connected: &CountTable<N>,
    self_dual_connected: &CountTable<N>,
) -> Result<N> {
    if self_dual_connected.refinement() != Refinement::SelfDualConnected {
        return Err(Error::WrongRefinement {
            expected: Refinement::SelfDualConnected,
            found: self_dual_connected.refinement(),
        });
    }
    if connected.refinement() != Refinement::Connected {
        return Err(Error::WrongRefinement { expected: Refinement::Connected, found: connected.refinement() });
    }
    if p == 0 && a == 0 {
        return Ok(N::one());
    }
    if a == 0 || p > 2 * a {
        return Ok(N::zero());
    }
    enumerate_dcp(p, a, connected)?.iter().try_fold(N::zero(), |acc, dcp| {
        let term = dcp.parts().iter().try_fold(N::one(), |prod, t| {
            let total = connected.get(t.points, t.arcs)?;
            let sd = self_dual_connected.get(t.points, t.arcs)?;
            prod.try_mul(&self_dual_multisets(&total, &sd, t.multiplicity)?)
        })?;
        acc.try_add(&term)
    })
}
