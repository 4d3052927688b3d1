//! Bit-matrix Hasse diagrams and order relations.

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported point count: one `u64` word per row.
pub const MAX_POINTS: usize = 64;

#[inline]
pub(crate) fn bit(i: usize) -> u64 {
    1u64 << i
}

#[inline]
pub(crate) fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        bit(n) - 1
    }
}

/// Iterator over the set bits of a word, lowest first.
#[derive(Clone, Copy)]
pub(crate) struct Bits(pub u64);

impl Iterator for Bits {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }
}

/// A directed graph on `points` vertices stored as one successor word per
/// row. An arc `(x, y)` reads "x is covered by y".
///
/// Construction only checks that arcs are in range; whether the arcs form
/// a Hasse diagram is answered by [`validate_hasse`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoverDigraph {
    points: usize,
    rows: Vec<u64>,
}

impl CoverDigraph {
    /// The antichain on `points` points.
    pub fn antichain(points: usize) -> Result<Self> {
        check_points(points)?;
        Ok(CoverDigraph { points, rows: vec![0; points] })
    }

    /// The chain `0 < 1 < ... < points-1`.
    pub fn chain(points: usize) -> Result<Self> {
        let mut d = Self::antichain(points)?;
        for x in 1..points {
            d.rows[x - 1] |= bit(x);
        }
        Ok(d)
    }

    pub fn new(points: usize, arcs: &[(usize, usize)]) -> Result<Self> {
        let mut d = Self::antichain(points)?;
        for &(x, y) in arcs {
            if x >= points || y >= points {
                return Err(Error::ArcOutOfRange { from: x, to: y, points });
            }
            d.rows[x] |= bit(y);
        }
        Ok(d)
    }

    /// Builds from successor words; bits at or above `points` are rejected.
    pub fn from_rows(points: usize, rows: Vec<u64>) -> Result<Self> {
        check_points(points)?;
        if rows.len() != points {
            return Err(Error::InvalidOrder(format!(
                "expected {points} rows, got {}",
                rows.len()
            )));
        }
        for (x, &r) in rows.iter().enumerate() {
            if r & !low_mask(points) != 0 {
                let y = (r & !low_mask(points)).trailing_zeros() as usize;
                return Err(Error::ArcOutOfRange { from: x, to: y, points });
            }
        }
        Ok(CoverDigraph { points, rows })
    }

    pub(crate) fn from_rows_unchecked(points: usize, rows: Vec<u64>) -> Self {
        debug_assert_eq!(rows.len(), points);
        CoverDigraph { points, rows }
    }

    #[inline]
    pub fn points(&self) -> usize {
        self.points
    }

    #[inline]
    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    /// Successor (upper cover) mask of `x`.
    #[inline]
    pub fn successors(&self, x: usize) -> u64 {
        self.rows[x]
    }

    pub fn arc_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum()
    }

    #[inline]
    pub fn has_arc(&self, x: usize, y: usize) -> bool {
        self.rows[x] & bit(y) != 0
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(x, &r)| Bits(r).map(move |y| (x, y)))
    }

    /// Predecessor (lower cover) masks, i.e. the transposed matrix.
    pub fn predecessor_rows(&self) -> Vec<u64> {
        let mut cols = vec![0u64; self.points];
        for (x, y) in self.arcs() {
            cols[y] |= bit(x);
        }
        cols
    }

    pub fn maximal_mask(&self) -> u64 {
        self.rows
            .iter()
            .enumerate()
            .filter(|(_, &r)| r == 0)
            .fold(0, |m, (x, _)| m | bit(x))
    }

    pub fn minimal_mask(&self) -> u64 {
        let has_lower = self.rows.iter().fold(0u64, |m, &r| m | r);
        low_mask(self.points) & !has_lower
    }

    /// Points incident to no arc.
    pub fn isolated_mask(&self) -> u64 {
        self.minimal_mask() & self.maximal_mask()
    }

    pub fn is_connected(&self) -> bool {
        self.points >= 1 && component_masks(self).len() == 1
    }

    /// Applies a relabeling: point `x` becomes `perm[x]`.
    pub fn relabel(&self, perm: &[usize]) -> CoverDigraph {
        debug_assert_eq!(perm.len(), self.points);
        let mut rows = vec![0u64; self.points];
        for (x, y) in self.arcs() {
            rows[perm[x]] |= bit(perm[y]);
        }
        CoverDigraph { points: self.points, rows }
    }

    /// Adds a new maximal point covering exactly `covers`.
    pub(crate) fn with_new_top(&self, covers: u64) -> CoverDigraph {
        let top = self.points;
        let mut rows = Vec::with_capacity(top + 1);
        rows.extend(Bits(low_mask(top)).map(|x| {
            if covers & bit(x) != 0 {
                self.rows[x] | bit(top)
            } else {
                self.rows[x]
            }
        }));
        rows.push(0);
        CoverDigraph { points: top + 1, rows }
    }
}

impl fmt::Debug for CoverDigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CoverDigraph({}; ", self.points)?;
        let arcs: Vec<String> = self.arcs().map(|(x, y)| format!("{x}<{y}")).collect();
        write!(f, "{})", arcs.join(" "))
    }
}

fn check_points(points: usize) -> Result<()> {
    if points > MAX_POINTS {
        return Err(Error::TooManyPoints { points, max: MAX_POINTS });
    }
    Ok(())
}

/// First violated Hasse-diagram invariant together with its witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    SelfLoop { point: usize },
    /// Points along a directed cycle, first point not repeated.
    Cycle { path: Vec<usize> },
    /// The arc is implied by a longer directed path.
    Shortcut { from: usize, to: usize },
    TooManyArcs { arcs: usize, max: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::SelfLoop { point } => write!(f, "self-loop at {point}"),
            Violation::Cycle { path } => {
                let p: Vec<String> = path.iter().map(|x| x.to_string()).collect();
                write!(f, "directed cycle {}", p.join(" -> "))
            }
            Violation::Shortcut { from, to } => {
                write!(f, "shortcut arc ({from}, {to}) is implied by a longer path")
            }
            Violation::TooManyArcs { arcs, max } => {
                write!(f, "{arcs} arcs exceed the maximum of {max}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HasseReport {
    pub violation: Option<Violation>,
}

impl HasseReport {
    pub fn is_valid(&self) -> bool {
        self.violation.is_none()
    }

    pub fn into_result(self) -> Result<()> {
        match self.violation {
            None => Ok(()),
            Some(v) => Err(Error::InvalidHasse(v)),
        }
    }
}

/// Checks the Hasse-diagram invariants in order: no self-loops, acyclic,
/// transitively reduced, arc count within `⌊p²/4⌋`.
pub fn validate_hasse(d: &CoverDigraph) -> HasseReport {
    HasseReport { violation: first_violation(d) }
}

fn first_violation(d: &CoverDigraph) -> Option<Violation> {
    let p = d.points;
    if let Some(x) = (0..p).find(|&x| d.has_arc(x, x)) {
        return Some(Violation::SelfLoop { point: x });
    }
    let order = match topological_order(d) {
        Ok(order) => order,
        Err(path) => return Some(Violation::Cycle { path }),
    };
    // strict descendants, filled in reverse topological order
    let mut below = vec![0u64; p];
    for &x in order.iter().rev() {
        below[x] = Bits(d.rows[x]).fold(0, |m, y| m | bit(y) | below[y]);
    }
    for x in 0..p {
        let via_longer = Bits(d.rows[x]).fold(0, |m, z| m | below[z]);
        let shortcut = d.rows[x] & via_longer;
        if shortcut != 0 {
            return Some(Violation::Shortcut { from: x, to: shortcut.trailing_zeros() as usize });
        }
    }
    let arcs = d.arc_count();
    let max = p * p / 4;
    if arcs > max {
        return Some(Violation::TooManyArcs { arcs, max });
    }
    None
}

/// Kahn order, or the points of some directed cycle.
fn topological_order(d: &CoverDigraph) -> std::result::Result<Vec<usize>, Vec<usize>> {
    let p = d.points;
    let mut indeg: Vec<u32> = d.predecessor_rows().iter().map(|c| c.count_ones()).collect();
    let mut stack: Vec<usize> = (0..p).filter(|&x| indeg[x] == 0).collect();
    let mut order = Vec::with_capacity(p);
    while let Some(x) = stack.pop() {
        order.push(x);
        for y in Bits(d.rows[x]) {
            indeg[y] -= 1;
            if indeg[y] == 0 {
                stack.push(y);
            }
        }
    }
    if order.len() == p {
        return Ok(order);
    }
    // every remaining point has a remaining predecessor: walk backwards
    let done = order.iter().fold(0u64, |m, &x| m | bit(x));
    let preds = d.predecessor_rows();
    let start = (0..p).find(|&x| done & bit(x) == 0).expect("unsorted point exists");
    let mut seen_at = vec![usize::MAX; p];
    let mut walk = Vec::new();
    let mut x = start;
    while seen_at[x] == usize::MAX {
        seen_at[x] = walk.len();
        walk.push(x);
        x = (preds[x] & !done).trailing_zeros() as usize;
    }
    let mut cycle = walk[seen_at[x]..].to_vec();
    cycle.reverse();
    Err(cycle)
}

/// A partial order as a reflexive `leq` bit-matrix: bit `y` of row `x` is
/// set iff `x ≤ y`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct OrderRelation {
    points: usize,
    leq: Vec<u64>,
}

impl OrderRelation {
    /// Wraps a relation without checking the poset axioms; see
    /// [`OrderRelation::check_axioms`].
    pub fn from_rows(points: usize, leq: Vec<u64>) -> Result<Self> {
        check_points(points)?;
        if leq.len() != points || leq.iter().any(|r| r & !low_mask(points) != 0) {
            return Err(Error::InvalidOrder("row count or width mismatch".into()));
        }
        Ok(OrderRelation { points, leq })
    }

    /// The relation generated by reflexivity plus the listed pairs `x ≤ y`
    /// (no closure is taken).
    pub fn from_pairs(points: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        check_points(points)?;
        let mut leq: Vec<u64> = (0..points).map(bit).collect();
        for &(x, y) in pairs {
            if x >= points || y >= points {
                return Err(Error::ArcOutOfRange { from: x, to: y, points });
            }
            leq[x] |= bit(y);
        }
        Ok(OrderRelation { points, leq })
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn rows(&self) -> &[u64] {
        &self.leq
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x] & bit(y) != 0
    }

    /// Number of true entries, reflexive ones included.
    pub fn pair_count(&self) -> usize {
        self.leq.iter().map(|r| r.count_ones() as usize).sum()
    }

    /// Reflexive, antisymmetric and transitive.
    pub fn check_axioms(&self) -> Result<()> {
        let p = self.points;
        for x in 0..p {
            if !self.leq(x, x) {
                return Err(Error::InvalidOrder(format!("not reflexive at {x}")));
            }
            for y in Bits(self.leq[x] & !bit(x)) {
                if self.leq(y, x) {
                    return Err(Error::InvalidOrder(format!("not antisymmetric: {x} and {y}")));
                }
                if self.leq[y] & !self.leq[x] != 0 {
                    let z = (self.leq[y] & !self.leq[x]).trailing_zeros();
                    return Err(Error::InvalidOrder(format!(
                        "not transitive: {x} <= {y} <= {z}"
                    )));
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for OrderRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .leq
            .iter()
            .map(|r| (0..self.points).map(|y| if r & bit(y) != 0 { '1' } else { '0' }).collect())
            .collect();
        write!(f, "OrderRelation({}; {})", self.points, rows.join("/"))
    }
}

/// Reflexive-transitive closure of a valid Hasse diagram.
pub fn transitive_closure(d: &CoverDigraph) -> Result<OrderRelation> {
    validate_hasse(d).into_result()?;
    Ok(closure_unchecked(d))
}

/// Warshall closure; the input need only be acyclic.
pub(crate) fn closure_unchecked(d: &CoverDigraph) -> OrderRelation {
    let p = d.points;
    let mut leq: Vec<u64> = (0..p).map(|x| d.rows[x] | bit(x)).collect();
    for k in 0..p {
        let row_k = leq[k];
        for row in leq.iter_mut() {
            if *row & bit(k) != 0 {
                *row |= row_k;
            }
        }
    }
    OrderRelation { points: p, leq }
}

/// Cover relation of a partial order.
pub fn transitive_reduction(r: &OrderRelation) -> Result<CoverDigraph> {
    r.check_axioms()?;
    let p = r.points;
    let strict: Vec<u64> = (0..p).map(|x| r.leq[x] & !bit(x)).collect();
    let rows = (0..p)
        .map(|x| {
            let two_step = Bits(strict[x]).fold(0, |m, w| m | strict[w]);
            strict[x] & !two_step
        })
        .collect();
    Ok(CoverDigraph { points: p, rows })
}

pub(crate) fn component_masks(d: &CoverDigraph) -> Vec<u64> {
    let p = d.points;
    let preds = d.predecessor_rows();
    let adj: Vec<u64> = (0..p).map(|x| d.rows[x] | preds[x]).collect();
    let mut unseen = low_mask(p);
    let mut comps = Vec::new();
    while unseen != 0 {
        let start = unseen.trailing_zeros() as usize;
        let mut comp = bit(start);
        let mut frontier = comp;
        while frontier != 0 {
            let next = Bits(frontier).fold(0, |m, x| m | adj[x]) & !comp;
            comp |= next;
            frontier = next;
        }
        unseen &= !comp;
        comps.push(comp);
    }
    comps
}

/// Connected components of the underlying undirected graph, each sorted,
/// ordered by smallest point.
pub fn underlying_components(d: &CoverDigraph) -> Vec<Vec<usize>> {
    component_masks(d).into_iter().map(|m| Bits(m).collect()).collect()
}

/// The order-reversed diagram.
pub fn dual(d: &CoverDigraph) -> CoverDigraph {
    CoverDigraph { points: d.points, rows: d.predecessor_rows() }
}

/// Disjoint union: `p` keeps its labels, `q` is shifted past them.
pub fn direct_sum(p: &CoverDigraph, q: &CoverDigraph) -> Result<CoverDigraph> {
    let n = p.points + q.points;
    check_points(n)?;
    let mut rows = p.rows.clone();
    rows.extend(q.rows.iter().map(|&r| r << p.points));
    Ok(CoverDigraph { points: n, rows })
}

/// Ordinal sum `p ⊕ q` with every element of `q` below every element of
/// `p`. Points of `p` keep their labels; `q` is shifted past them. Cover
/// arcs are added from each maximal element of `q` to each minimal element
/// of `p`.
pub fn ordinal_sum(p: &CoverDigraph, q: &CoverDigraph) -> Result<CoverDigraph> {
    let mut sum = direct_sum(p, q)?;
    if p.points == 0 || q.points == 0 {
        return Ok(sum);
    }
    let upper_minimal = p.minimal_mask();
    for x in Bits(q.maximal_mask()) {
        sum.rows[p.points + x] |= upper_minimal;
    }
    Ok(sum)
}
