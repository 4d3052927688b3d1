//! Stationary differences, row limits and row extension.

use crate::count::{try_sum, Count};
use crate::enumerator::{CountTable, RefinedCounts};
use crate::error::{Error, Result};

use super::partition::{h0_selfdual_via_partitions, h0_via_partitions};

/// Connected-count cells `(p_i, a_i)` with `p_i ≤ points` and
/// `a_i ≤ arcs` suffice for [`delta_h`]`(n)`: `(n + 2, n + 1)`.
pub fn delta_h_requirement(n: usize) -> (usize, usize) {
    (n + 2, n + 1)
}

/// Connected-count range needed by [`h_infinity`]`(a)`: `(a + 1, a)`.
pub fn h_infinity_requirement(a: usize) -> (usize, usize) {
    (a + 1, a)
}

/// Stationary value of `H_0(2a − n, a)` for `a ≥ 2n`, taken at
/// `(3n, 2n)`. Zero-based: `delta_h(0) = 1`, `delta_h(1) = 3`.
pub fn delta_h<N: Count>(n: usize, connected: &CountTable<N>) -> Result<N> {
    h0_via_partitions(3 * n, 2 * n, connected)
}

/// Number of posets with `a` arcs and no isolated point, i.e. the limit of
/// `H(p, a)` as `p` grows.
pub fn h_infinity<N: Count>(a: usize, connected: &CountTable<N>) -> Result<N> {
    if a == 0 {
        return h0_via_partitions(0, 0, connected);
    }
    let terms = (1..=2 * a).map(|p| h0_via_partitions(p, a, connected)).collect::<Result<Vec<N>>>()?;
    try_sum(terms)
}

/// `H(2a − n − 1, a) = H∞(a) − Σ_{i ≤ n} ΔH(i)`, valid for `a ≥ 2n`.
pub fn extend_row<N: Count>(a: usize, n: usize, connected: &CountTable<N>) -> Result<N> {
    if a < 2 * n || 2 * a < n + 1 {
        return Err(Error::OutsideStableCone { a, n });
    }
    let deltas = (0..=n).map(|i| delta_h(i, connected)).collect::<Result<Vec<N>>>()?;
    h_infinity(a, connected)?.try_sub(&try_sum(deltas)?)
}

/// `H(p, a)` from connected counts wherever the extension identity or the
/// row limit applies (`p ≥ 3a/2 − 1`); `None` elsewhere.
pub fn h_from_partitions<N: Count>(p: usize, a: usize, connected: &CountTable<N>) -> Option<Result<N>> {
    if p >= 2 * a {
        return Some(h_infinity(a, connected));
    }
    let n = 2 * a - p - 1;
    if a >= 2 * n {
        Some(extend_row(a, n, connected))
    } else {
        None
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StationarityReport<N> {
    pub n: usize,
    /// `(a, 2a − n, H_0(2a − n, a))` for every probed `a`.
    pub values: Vec<(usize, usize, N)>,
    pub constant: bool,
}

/// `H_0(2a − n, a)` read from directly enumerated no-isolated counts for
/// each `a`, and whether they all agree.
pub fn stationarity_oracle<N: Count>(
    n: usize,
    a_values: &[usize],
    tables: &RefinedCounts<N>,
) -> Result<StationarityReport<N>> {
    let values = a_values
        .iter()
        .map(|&a| {
            let p = (2 * a)
                .checked_sub(n)
                .ok_or_else(|| Error::Usage(format!("2a - n is negative for a={a}, n={n}")))?;
            Ok((a, p, tables.no_isolated.get(p, a)?))
        })
        .collect::<Result<Vec<_>>>()?;
    let constant = values.windows(2).all(|w| w[0].2 == w[1].2);
    Ok(StationarityReport { n, values, constant })
}

/// Self-dual posets with `3n` points, `2n` arcs and no isolated point,
/// read from direct enumeration.
pub fn delta_h_selfdual<N: Count>(n: usize, tables: &RefinedCounts<N>) -> Result<N> {
    tables.self_dual_no_isolated.get(3 * n, 2 * n)
}

/// The same quantity from connected and self-dual connected counts with
/// the dual-pair-aware multiset count.
pub fn delta_h_selfdual_via_partitions<N: Count>(
    n: usize,
    connected: &CountTable<N>,
    self_dual_connected: &CountTable<N>,
) -> Result<N> {
    h0_selfdual_via_partitions(3 * n, 2 * n, connected, self_dual_connected)
}
