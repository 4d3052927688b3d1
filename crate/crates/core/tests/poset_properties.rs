mod common;

use hasse_census::poset::exhaustive_min_matrix;
use hasse_census::{
    canonical_key, direct_sum, dual, is_self_dual, ordinal_sum, transitive_closure, transitive_reduction,
    validate_hasse, CanonicalKey, CoverDigraph, OrderRelation,
};
use proptest::prelude::*;

fn build(points: usize, related: &[bool]) -> CoverDigraph {
    let pairs = (0..points)
        .flat_map(|i| (i + 1..points).map(move |j| (i, j)))
        .zip(related)
        .filter(|(_, &r)| r)
        .map(|(p, _)| p);
    let order = OrderRelation::from_rows(points, common::closure_rows(points, pairs)).unwrap();
    transitive_reduction(&order).unwrap()
}

fn poset(max_points: usize) -> impl Strategy<Value = CoverDigraph> {
    (0..=max_points)
        .prop_flat_map(|p| {
            let perm = Just((0..p).collect::<Vec<usize>>()).prop_shuffle();
            (Just(p), prop::collection::vec(any::<bool>(), p * p.saturating_sub(1) / 2), perm)
        })
        .prop_map(|(p, related, perm)| build(p, &related).relabel(&perm))
}

fn poset_with_permutation(max_points: usize) -> impl Strategy<Value = (CoverDigraph, Vec<usize>)> {
    poset(max_points).prop_flat_map(|d| {
        let perm = Just((0..d.points()).collect::<Vec<usize>>()).prop_shuffle();
        (Just(d), perm)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn generated_posets_are_hasse_diagrams(d in poset(9)) {
        prop_assert!(validate_hasse(&d).is_valid());
    }

    #[test]
    fn key_ignores_labels((d, perm) in poset_with_permutation(9)) {
        prop_assert_eq!(canonical_key(&d), canonical_key(&d.relabel(&perm)));
    }

    #[test]
    fn key_decodes_to_an_isomorphic_diagram(d in poset(9)) {
        let key = canonical_key(&d);
        let back = key.to_digraph();
        prop_assert_eq!(canonical_key(&back), key.clone());
        prop_assert_eq!(CanonicalKey::from_bytes(key.as_bytes()).unwrap(), key);
        prop_assert_eq!(back.arc_count(), d.arc_count());
    }

    #[test]
    fn keys_agree_with_exhaustive_oracle(a in poset(6), b in poset(6)) {
        let same_key = canonical_key(&a) == canonical_key(&b);
        let same_class = a.points() == b.points() && exhaustive_min_matrix(&a) == exhaustive_min_matrix(&b);
        prop_assert_eq!(same_key, same_class);
    }

    #[test]
    fn dual_is_an_involution(d in poset(12)) {
        prop_assert_eq!(dual(&dual(&d)), d.clone());
        prop_assert_eq!(dual(&d).arc_count(), d.arc_count());
        prop_assert_eq!(is_self_dual(&d), canonical_key(&d) == canonical_key(&dual(&d)));
    }

    #[test]
    fn closure_and_reduction_are_inverse(d in poset(12)) {
        let order = transitive_closure(&d).unwrap();
        prop_assert!(order.check_axioms().is_ok());
        prop_assert_eq!(transitive_reduction(&order).unwrap(), d.clone());
        let again = transitive_closure(&transitive_reduction(&order).unwrap()).unwrap();
        prop_assert_eq!(again, order);
    }

    #[test]
    fn sums_are_valid_and_count_arcs(p in poset(5), q in poset(5)) {
        let plus = direct_sum(&p, &q).unwrap();
        prop_assert!(validate_hasse(&plus).is_valid());
        prop_assert_eq!(plus.arc_count(), p.arc_count() + q.arc_count());
        let over = ordinal_sum(&p, &q).unwrap();
        prop_assert!(validate_hasse(&over).is_valid());
        let bridge = if p.points() == 0 || q.points() == 0 {
            0
        } else {
            p.minimal_mask().count_ones() as usize * q.maximal_mask().count_ones() as usize
        };
        prop_assert_eq!(over.arc_count(), p.arc_count() + q.arc_count() + bridge);
        // every point of q lies below every point of p
        let order = transitive_closure(&over).unwrap();
        for x in 0..q.points() {
            for y in 0..p.points() {
                prop_assert!(order.leq(p.points() + x, y));
            }
        }
        prop_assert_eq!(canonical_key(&dual(&over)), canonical_key(&ordinal_sum(&dual(&q), &dual(&p)).unwrap()));
    }
}

#[test]
fn random_pairs_keep_their_key() {
    use rand::SeedableRng;
    let mut rng = rand::rngs::StdRng::seed_from_u64(7);
    for _ in 0..2000 {
        let p = rand::Rng::gen_range(&mut rng, 0..=7);
        let d = common::random_poset(&mut rng, p, 0.35);
        let perm = common::random_permutation(&mut rng, p);
        assert_eq!(canonical_key(&d), canonical_key(&d.relabel(&perm)));
    }
}
