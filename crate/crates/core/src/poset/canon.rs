//! Canonical labeling of small digraphs.
//!
//! The search follows the individualization/refinement scheme: points are
//! first partitioned by (level, in-degree, out-degree), the partition is
//! refined to an equitable one, and the remaining ties are broken by
//! backtracking. Among the discrete partitions reached, the relabeled
//! adjacency matrix that is smallest in row-major bit order is the
//! canonical form. Automorphisms discovered at equal leaves prune sibling
//! branches lying in the same orbit.

use smallvec::SmallVec;

use super::digraph::{bit, dual, Bits, CoverDigraph};
use crate::error::{Error, Result};

/// Leading byte of every [`CanonicalKey`]; bump on any change to the
/// canonical form or the encoding.
pub const KEY_FORMAT_VERSION: u8 = 1;

/// Opaque bytes identifying an isomorphism class.
///
/// Layout: format version, point count, then the canonical adjacency
/// matrix in row-major order packed most significant bit first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct CanonicalKey(SmallVec<[u8; 32]>);

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn points(&self) -> usize {
        self.0[1] as usize
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        if bytes.first() != Some(&KEY_FORMAT_VERSION) {
            return Err(Error::Incompatible(format!(
                "canonical key version {:?}, expected {KEY_FORMAT_VERSION}",
                bytes.first()
            )));
        }
        let p = *bytes.get(1).ok_or_else(|| Error::Incompatible("truncated key".into()))? as usize;
        if bytes.len() != 2 + (p * p).div_ceil(8) {
            return Err(Error::Incompatible("key length does not match point count".into()));
        }
        Ok(CanonicalKey(SmallVec::from_slice(bytes)))
    }

    /// The canonically labeled digraph this key encodes.
    pub fn to_digraph(&self) -> CoverDigraph {
        let p = self.points();
        let bits = &self.0[2..];
        let mut rows = vec![0u64; p];
        for (x, row) in rows.iter_mut().enumerate() {
            for y in 0..p {
                let i = x * p + y;
                if bits[i / 8] & (0x80 >> (i % 8)) != 0 {
                    *row |= bit(y);
                }
            }
        }
        CoverDigraph::from_rows_unchecked(p, rows)
    }

    fn encode(p: usize, lex_rows: &[u64]) -> Self {
        let mut bytes: SmallVec<[u8; 32]> = SmallVec::new();
        bytes.push(KEY_FORMAT_VERSION);
        bytes.push(p as u8);
        bytes.resize(2 + (p * p).div_ceil(8), 0);
        for (x, &row) in lex_rows.iter().enumerate() {
            for y in 0..p {
                if row & lex_bit(y) != 0 {
                    let i = x * p + y;
                    bytes[2 + i / 8] |= 0x80 >> (i % 8);
                }
            }
        }
        CanonicalKey(bytes)
    }
}

/// Column `j` stored at bit `63 - j`, so that comparing rows as integers
/// compares them bit by bit from column 0.
#[inline]
fn lex_bit(j: usize) -> u64 {
    1u64 << (63 - j)
}

/// Canonical labeling result: the relabeled digraph and the map from
/// original point to canonical label.
#[derive(Clone, Debug)]
pub struct CanonicalForm {
    pub digraph: CoverDigraph,
    pub labeling: Vec<usize>,
    pub key: CanonicalKey,
}

pub fn canonical_key(d: &CoverDigraph) -> CanonicalKey {
    canonical_form(d).key
}

pub fn canonical_form(d: &CoverDigraph) -> CanonicalForm {
    let p = d.points();
    let mut search = Search::new(d);
    if p > 0 {
        let cells = search.initial_cells();
        let mut fixed = Vec::new();
        search.visit(cells, &mut fixed);
    }
    let labeling = search.best_labeling;
    let lex_rows = search.best.unwrap_or_default();
    CanonicalForm {
        digraph: d.relabel(&labeling),
        key: CanonicalKey::encode(p, &lex_rows),
        labeling,
    }
}

/// Isomorphic to its own dual.
pub fn is_self_dual(d: &CoverDigraph) -> bool {
    canonical_key(d) == canonical_key(&dual(d))
}

type Signature = SmallVec<[u16; 16]>;

struct Search<'a> {
    d: &'a CoverDigraph,
    preds: Vec<u64>,
    best: Option<Vec<u64>>,
    best_labeling: Vec<usize>,
    automorphisms: Vec<Vec<usize>>,
}

impl<'a> Search<'a> {
    fn new(d: &'a CoverDigraph) -> Self {
        Search {
            d,
            preds: d.predecessor_rows(),
            best: None,
            best_labeling: Vec::new(),
            automorphisms: Vec::new(),
        }
    }

    /// Cells of equal (level, in-degree, out-degree), ordered by that triple.
    fn initial_cells(&self) -> Vec<u64> {
        let p = self.d.points();
        let mut level = vec![0usize; p];
        // longest-path layering; capped relaxation also terminates on cycles
        for _ in 0..p {
            let mut changed = false;
            for (x, y) in self.d.arcs() {
                if level[y] < level[x] + 1 && level[x] < p {
                    level[y] = level[x] + 1;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        let mut keyed: Vec<((usize, u32, u32), usize)> = (0..p)
            .map(|v| ((level[v], self.preds[v].count_ones(), self.d.successors(v).count_ones()), v))
            .collect();
        keyed.sort_unstable();
        let mut cells: Vec<u64> = Vec::new();
        let mut prev = None;
        for (key, v) in keyed {
            if prev == Some(key) {
                *cells.last_mut().unwrap() |= bit(v);
            } else {
                cells.push(bit(v));
                prev = Some(key);
            }
        }
        cells
    }

    fn signature(&self, v: usize, cells: &[u64]) -> Signature {
        let out = self.d.successors(v);
        let inn = self.preds[v];
        cells
            .iter()
            .map(|&c| (((out & c).count_ones() as u16) << 8) | (inn & c).count_ones() as u16)
            .collect()
    }

    /// Splits cells until every point in a cell has the same number of
    /// successors and predecessors in every cell.
    fn refine(&self, cells: &mut Vec<u64>) {
        let p = self.d.points();
        loop {
            if cells.len() == p {
                return;
            }
            let mut next = Vec::with_capacity(p);
            let mut changed = false;
            for &cell in cells.iter() {
                if cell & (cell - 1) == 0 {
                    next.push(cell);
                    continue;
                }
                let mut sigs: SmallVec<[(Signature, usize); 16]> =
                    Bits(cell).map(|v| (self.signature(v, cells), v)).collect();
                sigs.sort_unstable();
                let start = next.len();
                let mut prev: Option<&Signature> = None;
                for (sig, v) in &sigs {
                    if prev == Some(sig) {
                        *next.last_mut().unwrap() |= bit(*v);
                    } else {
                        next.push(bit(*v));
                        prev = Some(sig);
                    }
                }
                changed |= next.len() - start > 1;
            }
            *cells = next;
            if !changed {
                return;
            }
        }
    }

    fn visit(&mut self, mut cells: Vec<u64>, fixed: &mut Vec<usize>) {
        self.refine(&mut cells);
        let p = self.d.points();
        if cells.len() == p {
            self.leaf(&cells);
            return;
        }
        let target = cells
            .iter()
            .enumerate()
            .filter(|(_, c)| c.count_ones() > 1)
            .min_by_key(|(i, c)| (c.count_ones(), *i))
            .map(|(i, _)| i)
            .expect("non-discrete partition has a non-singleton cell");
        let cell = cells[target];
        let mut explored: SmallVec<[usize; 16]> = SmallVec::new();
        for v in Bits(cell) {
            if !explored.is_empty() && self.in_explored_orbit(v, &explored, fixed) {
                continue;
            }
            let mut child = Vec::with_capacity(cells.len() + 1);
            child.extend_from_slice(&cells[..target]);
            child.push(bit(v));
            child.push(cell & !bit(v));
            child.extend_from_slice(&cells[target + 1..]);
            fixed.push(v);
            self.visit(child, fixed);
            fixed.pop();
            explored.push(v);
        }
    }

    /// Whether `v` lies in the orbit of an explored sibling under the
    /// known automorphisms that fix the current prefix pointwise.
    fn in_explored_orbit(&self, v: usize, explored: &[usize], fixed: &[usize]) -> bool {
        let p = self.d.points();
        let mut parent: SmallVec<[usize; 64]> = (0..p).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut any = false;
        for gamma in &self.automorphisms {
            if fixed.iter().all(|&f| gamma[f] == f) {
                any = true;
                for (x, &gx) in gamma.iter().enumerate() {
                    let (a, b) = (find(&mut parent, x), find(&mut parent, gx));
                    if a != b {
                        parent[a] = b;
                    }
                }
            }
        }
        if !any {
            return false;
        }
        let root = find(&mut parent, v);
        explored.iter().any(|&w| find(&mut parent, w) == root)
    }

    fn leaf(&mut self, cells: &[u64]) {
        let p = self.d.points();
        let order: SmallVec<[usize; 64]> = cells.iter().map(|c| c.trailing_zeros() as usize).collect();
        let mut labeling = vec![0usize; p];
        for (label, &v) in order.iter().enumerate() {
            labeling[v] = label;
        }
        let rows: Vec<u64> = order
            .iter()
            .map(|&u| Bits(self.d.successors(u)).fold(0, |m, y| m | lex_bit(labeling[y])))
            .collect();
        match &self.best {
            Some(best) if rows > *best => {}
            Some(best) if rows == *best => {
                // best_labeling⁻¹ ∘ labeling is an automorphism
                let mut inverse = vec![0usize; p];
                for (v, &l) in self.best_labeling.iter().enumerate() {
                    inverse[l] = v;
                }
                let gamma: Vec<usize> = labeling.iter().map(|&l| inverse[l]).collect();
                if gamma.iter().enumerate().any(|(i, &g)| i != g) {
                    self.automorphisms.push(gamma);
                }
            }
            _ => {
                self.best = Some(rows);
                self.best_labeling = labeling;
            }
        }
    }
}

/// Minimum row-major adjacency matrix over all `p!` relabelings.
/// Exponential; intended as an independent oracle for `p ≤ 8`.
pub fn exhaustive_min_matrix(d: &CoverDigraph) -> Vec<u64> {
    let p = d.points();
    let mut perm: Vec<usize> = (0..p).collect();
    let mut best: Option<Vec<u64>> = None;
    let mut consider = |perm: &[usize]| {
        let mut rows = vec![0u64; p];
        for (x, y) in d.arcs() {
            rows[perm[x]] |= lex_bit(perm[y]);
        }
        if best.as_ref().is_none_or(|b| rows < *b) {
            best = Some(rows);
        }
    };
    // Heap's algorithm
    let mut c = vec![0usize; p];
    consider(&perm);
    let mut i = 1;
    while i < p {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            consider(&perm);
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    best.unwrap_or_default()
}
