//! Posets with the maximum number of Hasse arcs.
//!
//! The underlying graph of an extremal Hasse diagram is the complete
//! bipartite graph on parts `A` (`⌊p/2⌋` points) and `B` (`⌈p/2⌉` points).
//! It is oriented either as a two-layer ordinal sum or by splitting one
//! part into a top and a bottom layer around the other part.

use super::digraph::{ordinal_sum, CoverDigraph};
use crate::error::{Error, Result};

/// `⌊p²/4⌋`, the largest arc count of a Hasse diagram on `p` points.
pub fn a_max(p: usize) -> usize {
    p * p / 4
}

/// Layers listed bottom to top, each an antichain, consecutive layers
/// completely joined.
fn layered(sizes: &[usize]) -> Result<CoverDigraph> {
    // ordinal_sum places its second operand below the first
    sizes.iter().try_fold(CoverDigraph::antichain(0)?, |below, &n| {
        ordinal_sum(&CoverDigraph::antichain(n)?, &below)
    })
}

/// Every poset on `p ≥ 2` points with `a_max(p)` arcs, one per
/// isomorphism class: `p/2` of them for even `p`, `p` for odd `p`.
pub fn max_arc_family(p: usize) -> Result<Vec<CoverDigraph>> {
    if p < 2 {
        return Err(Error::Usage(format!("max_arc_family needs p >= 2, got {p}")));
    }
    let small = p / 2;
    let large = p - small;
    let mut family = vec![layered(&[small, large])?];
    if large != small {
        family.push(layered(&[large, small])?);
    }
    // split the small part around the large one
    for top in 1..small {
        family.push(layered(&[small - top, large, top])?);
    }
    if large != small {
        for top in 1..large {
            family.push(layered(&[large - top, small, top])?);
        }
    }
    Ok(family)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::{canonical_key, validate_hasse};
    use std::collections::HashSet;

    #[test]
    fn a_max_values() {
        assert_eq!(a_max(8), 16);
        assert_eq!(a_max(1), 0);
        assert_eq!(a_max(13), 42);
        assert_eq!(a_max(0), 0);
    }

    #[test]
    fn family_sizes() {
        assert!(max_arc_family(1).is_err());
        for p in 2..=12 {
            let fam = max_arc_family(p).unwrap();
            let expected = if p % 2 == 0 { p / 2 } else { p };
            assert_eq!(fam.len(), expected, "p={p}");
            let keys: HashSet<_> = fam.iter().map(canonical_key).collect();
            assert_eq!(keys.len(), expected);
            for d in &fam {
                assert!(validate_hasse(d).is_valid());
                assert_eq!(d.arc_count(), a_max(p));
                assert!(d.is_connected());
            }
        }
    }

    #[test]
    fn pair_is_the_only_two_point_member() {
        let fam = max_arc_family(2).unwrap();
        assert_eq!(fam.len(), 1);
        assert_eq!(canonical_key(&fam[0]), canonical_key(&CoverDigraph::chain(2).unwrap()));
    }
}
