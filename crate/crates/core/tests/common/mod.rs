#![allow(dead_code)]

use std::collections::{BTreeMap, HashSet};

use hasse_census::poset::exhaustive_min_matrix;
use hasse_census::{transitive_reduction, CoverDigraph, OrderRelation};
use rand::seq::SliceRandom;
use rand::Rng;

/// Reflexive-transitive closure of the relation `i ≤ j` for the given pairs.
pub fn closure_rows(points: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Vec<u64> {
    let mut leq: Vec<u64> = (0..points).map(|i| 1u64 << i).collect();
    for (i, j) in pairs {
        leq[i] |= 1 << j;
    }
    for k in 0..points {
        for i in 0..points {
            if leq[i] >> k & 1 == 1 {
                leq[i] |= leq[k];
            }
        }
    }
    leq
}

/// A poset whose natural order is a random linear extension: each pair
/// `i < j` is related with probability `density` before closing.
pub fn random_poset(rng: &mut impl Rng, points: usize, density: f64) -> CoverDigraph {
    let pairs: Vec<(usize, usize)> = (0..points)
        .flat_map(|i| (i + 1..points).map(move |j| (i, j)))
        .filter(|_| rng.gen_bool(density))
        .collect();
    let order = OrderRelation::from_rows(points, closure_rows(points, pairs)).unwrap();
    let mut perm: Vec<usize> = (0..points).collect();
    perm.shuffle(rng);
    transitive_reduction(&order).unwrap().relabel(&perm)
}

pub fn random_permutation(rng: &mut impl Rng, points: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..points).collect();
    perm.shuffle(rng);
    perm
}

/// Isomorphism classes of posets on `points` points, by arc count, found by
/// closing every subset of the pairs `i < j` and comparing minimum
/// adjacency matrices over all relabelings.
pub fn brute_force_classes(points: usize) -> BTreeMap<usize, Vec<CoverDigraph>> {
    let pairs: Vec<(usize, usize)> =
        (0..points).flat_map(|i| (i + 1..points).map(move |j| (i, j))).collect();
    let mut closures = HashSet::new();
    for mask in 0u64..1 << pairs.len() {
        let chosen = pairs.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &p)| p);
        closures.insert(closure_rows(points, chosen));
    }
    let mut seen = HashSet::new();
    let mut classes: BTreeMap<usize, Vec<CoverDigraph>> = BTreeMap::new();
    for leq in closures {
        let d = transitive_reduction(&OrderRelation::from_rows(points, leq).unwrap()).unwrap();
        if seen.insert(exhaustive_min_matrix(&d)) {
            classes.entry(d.arc_count()).or_default().push(d);
        }
    }
    classes
}
