//! Level-by-level generation of unlabeled posets.
//!
//! Every poset on `p + 1` points arises from a poset on `p` points by
//! adding a maximal point whose lower covers form an antichain. Children
//! of a whole level are canonicalized in parallel and deduplicated in one
//! key set per level.

use std::collections::HashSet;

use rayon::prelude::*;

use super::table::RefinedCounts;
use crate::count::Count;
use crate::error::{Error, Result};
use crate::poset::{bit, canonical_key, closure_unchecked, dual, Bits, CanonicalKey, CoverDigraph};

/// Rough per-key footprint of a level (key, hash slot, decoded digraph).
pub const BYTES_PER_LEVEL_KEY: usize = 128;

#[derive(Clone, Debug, Default)]
pub struct EnumerationConfig {
    /// Fail with [`Error::ResourceLimit`] once a level holds more keys.
    pub max_level_keys: Option<usize>,
    /// Drop posets with more arcs. Arc counts never decrease along the
    /// generation path, so the result is complete for `a ≤ ceiling`.
    pub arc_ceiling: Option<usize>,
}

impl EnumerationConfig {
    pub fn with_arc_ceiling(mut self, ceiling: usize) -> Self {
        self.arc_ceiling = Some(ceiling);
        self
    }

    pub fn with_max_level_keys(mut self, keys: usize) -> Self {
        self.max_level_keys = Some(keys);
        self
    }
}

/// Reported once per completed level.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Progress {
    pub level: usize,
    pub children: usize,
    pub classes: usize,
}

/// Calls `visit` with every antichain (as a bit mask) of size at most
/// `max_size`, given the comparability masks of the points.
fn for_each_antichain(comparable: &[u64], max_size: usize, visit: &mut impl FnMut(u64)) {
    fn rec(
        comparable: &[u64],
        from: usize,
        chosen: u64,
        blocked: u64,
        room: usize,
        visit: &mut impl FnMut(u64),
    ) {
        visit(chosen);
        if room == 0 {
            return;
        }
        for v in from..comparable.len() {
            if blocked & bit(v) == 0 {
                rec(comparable, v + 1, chosen | bit(v), blocked | comparable[v], room - 1, visit);
            }
        }
    }
    rec(comparable, 0, 0, 0, max_size, visit);
}

fn comparability(d: &CoverDigraph) -> Vec<u64> {
    let order = closure_unchecked(d);
    let up = order.rows();
    let mut comp = up.to_vec();
    for (x, &row) in up.iter().enumerate() {
        for y in Bits(row) {
            comp[y] |= bit(x);
        }
    }
    comp
}

fn children_with_ceiling(d: &CoverDigraph, ceiling: Option<usize>, visit: &mut impl FnMut(CoverDigraph)) {
    let arcs = d.arc_count();
    let room = match ceiling {
        Some(c) if c < arcs => return,
        Some(c) => c - arcs,
        None => usize::MAX,
    };
    let comp = comparability(d);
    for_each_antichain(&comp, room, &mut |s| visit(d.with_new_top(s)));
}

/// One child per antichain `S` of `d`: a new maximal point covering
/// exactly `S`. Children are not deduplicated.
pub fn extend_by_maximal_point(d: &CoverDigraph) -> Vec<CoverDigraph> {
    let mut out = Vec::new();
    children_with_ceiling(d, None, &mut |c| out.push(c));
    out
}

fn next_level(
    level: &[CoverDigraph],
    points: usize,
    config: &EnumerationConfig,
) -> Result<(Vec<CoverDigraph>, usize)> {
    let budget = config.max_level_keys.unwrap_or(usize::MAX);
    let over = |keys: usize| Error::ResourceLimit { level: points, keys, budget };
    let (keys, children) = level
        .par_iter()
        .try_fold(
            || (HashSet::new(), 0usize),
            |(mut set, mut n), d| {
                children_with_ceiling(d, config.arc_ceiling, &mut |c| {
                    set.insert(canonical_key(&c));
                    n += 1;
                });
                if set.len() > budget {
                    return Err(over(set.len()));
                }
                Ok((set, n))
            },
        )
        .try_reduce(
            || (HashSet::new(), 0usize),
            |(a, na), (b, nb)| {
                let (mut big, small) = if a.len() >= b.len() { (a, b) } else { (b, a) };
                big.extend(small);
                if big.len() > budget {
                    return Err(over(big.len()));
                }
                Ok((big, na + nb))
            },
        )?;
    let mut keys: Vec<CanonicalKey> = keys.into_iter().collect();
    keys.par_sort_unstable();
    Ok((keys.par_iter().map(CanonicalKey::to_digraph).collect(), children))
}

/// Runs generation up to `p_max` points, handing each level (starting with
/// the empty poset at level 0) to `on_level`. Representatives are
/// canonically labeled and sorted by key.
pub fn enumerate_levels(
    p_max: usize,
    config: &EnumerationConfig,
    mut on_level: impl FnMut(usize, &[CoverDigraph]) -> Result<()>,
    progress: &mut dyn FnMut(&Progress),
) -> Result<()> {
    let mut level = vec![CoverDigraph::antichain(0)?];
    on_level(0, &level)?;
    for p in 1..=p_max {
        let (next, children) = next_level(&level, p, config)?;
        level = next;
        progress(&Progress { level: p, children, classes: level.len() });
        on_level(p, &level)?;
    }
    Ok(())
}

/// One representative per isomorphism class of posets on `p` points.
pub fn enumerate_posets(p: usize, config: &EnumerationConfig) -> Result<Vec<CoverDigraph>> {
    let mut out = Vec::new();
    enumerate_levels(
        p,
        config,
        |q, level| {
            if q == p {
                out = level.to_vec();
            }
            Ok(())
        },
        &mut |_| {},
    )?;
    Ok(out)
}

pub fn count_refined<N: Count>(p_max: usize, config: &EnumerationConfig) -> Result<RefinedCounts<N>> {
    count_refined_with_progress(p_max, config, &mut |_| {})
}

const CONNECTED: u8 = 1;
const NO_ISOLATED: u8 = 2;
const SELF_DUAL: u8 = 4;

fn classify(d: &CoverDigraph) -> (usize, u8) {
    let mut flags = 0;
    if d.is_connected() {
        flags |= CONNECTED;
    }
    if d.isolated_mask() == 0 {
        flags |= NO_ISOLATED;
    }
    if flags != 0 && canonical_key(d) == canonical_key(&dual(d)) {
        flags |= SELF_DUAL;
    }
    (d.arc_count(), flags)
}

/// Tallies every generated poset with `1 ≤ p ≤ p_max` into the refined
/// tables.
pub fn count_refined_with_progress<N: Count>(
    p_max: usize,
    config: &EnumerationConfig,
    progress: &mut dyn FnMut(&Progress),
) -> Result<RefinedCounts<N>> {
    let mut counts = RefinedCounts::new(p_max, config.arc_ceiling);
    enumerate_levels(
        p_max,
        config,
        |p, level| {
            if p == 0 {
                return Ok(());
            }
            // per arc count: [all, connected, no isolated, sd connected, sd no isolated]
            let tally = level
                .par_iter()
                .fold(Vec::<[u64; 5]>::new, |mut acc, d| {
                    let (a, flags) = classify(d);
                    if acc.len() <= a {
                        acc.resize(a + 1, [0; 5]);
                    }
                    let row = &mut acc[a];
                    row[0] += 1;
                    let sd = flags & SELF_DUAL != 0;
                    if flags & CONNECTED != 0 {
                        row[1] += 1;
                        row[3] += sd as u64;
                    }
                    if flags & NO_ISOLATED != 0 {
                        row[2] += 1;
                        row[4] += sd as u64;
                    }
                    acc
                })
                .reduce(Vec::new, |mut a, b| {
                    if a.len() < b.len() {
                        a.resize(b.len(), [0; 5]);
                    }
                    for (x, y) in a.iter_mut().zip(b) {
                        for i in 0..5 {
                            x[i] += y[i];
                        }
                    }
                    a
                });
            for (a, row) in tally.iter().enumerate() {
                counts.all.set(p, a, N::of(row[0]));
                counts.connected.set(p, a, N::of(row[1]));
                counts.no_isolated.set(p, a, N::of(row[2]));
                counts.self_dual_connected.set(p, a, N::of(row[3]));
                counts.self_dual_no_isolated.set(p, a, N::of(row[4]));
            }
            Ok(())
        },
        progress,
    )?;
    Ok(counts)
}
