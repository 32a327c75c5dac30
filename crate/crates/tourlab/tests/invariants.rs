//! Property-based invariants across the crate.

mod common;

use common::{local_random_tournament, nth_permutation, random_valid_chain, Rng};
use proptest::prelude::*;
use tourlab::enumeration::{canonical_form, enumerate_classes, find_embedding, is_isomorphic};
use tourlab::regularity::{
    backward_matching, maximum_backward_pairs, smooth_refine, verify_structure, MatchingOutcome,
};
use tourlab::structure::{analyze_ordering, find_homogeneous, is_homogeneous, is_prime};
use tourlab::transitive::{max_transitive, TrTable};
use tourlab::{Ordering, Tournament, VertexSet};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Parsing any 21-bit orientation line yields a total orientation and
    /// round-trips bit-exactly.
    #[test]
    fn parse_total_and_round_trip(bits in "[01]{21}") {
        let text = format!("7\n{bits}");
        let t = Tournament::parse(&text).unwrap();
        for u in 0..7 {
            for v in (u + 1)..7 {
                prop_assert!(t.has_edge(u, v) != t.has_edge(v, u));
            }
        }
        prop_assert_eq!(t.serialize().unwrap(), format!("{text}\n"));
    }

    /// Reversal is an involution, preserves tr, and maps the backward-edge
    /// graph of an ordering onto that of the reversed ordering.
    #[test]
    fn reversal_laws(seed in any::<u64>(), n in 2usize..=8, perm_index in any::<u64>()) {
        let mut rng = Rng(seed);
        let t = local_random_tournament(n, &mut rng);
        let r = t.reverse();
        prop_assert_eq!(&r.reverse(), &t);
        prop_assert_eq!(max_transitive(&t).unwrap().0, max_transitive(&r).unwrap().0);

        let theta = Ordering::new(nth_permutation(n, perm_index)).unwrap();
        let forward_pairs = t.backward_graph(&theta).unwrap().unordered_vertex_pairs();
        let reversed_pairs = r
            .backward_graph(&theta.reversed())
            .unwrap()
            .unordered_vertex_pairs();
        prop_assert_eq!(forward_pairs, reversed_pairs);
    }

    /// d(X,Y) + d(Y,X) = 1 exactly for random disjoint nonempty sets.
    #[test]
    fn density_complement(seed in any::<u64>(), n in 2usize..=12) {
        let mut rng = Rng(seed);
        let t = local_random_tournament(n, &mut rng);
        let split = 1 + rng.below(n - 1);
        let x = VertexSet::from_members(n, &(0..split).collect::<Vec<_>>()).unwrap();
        let y = VertexSet::from_members(n, &(split..n).collect::<Vec<_>>()).unwrap();
        let d1 = t.density(&x, &y).unwrap();
        let d2 = t.density(&y, &x).unwrap();
        let lhs = d1.num() as u128 * d2.den() as u128 + d2.num() as u128 * d1.den() as u128;
        prop_assert_eq!(lhs, d1.den() as u128 * d2.den() as u128);
    }

    /// tr is monotone under subset inclusion (via the subset table).
    #[test]
    fn tr_monotone(seed in any::<u64>(), n in 2usize..=10) {
        let mut rng = Rng(seed);
        let t = local_random_tournament(n, &mut rng);
        let table = TrTable::build(&t).unwrap();
        let sup: u32 = (rng.next() % (1u64 << n)) as u32;
        let sub = sup & (rng.next() % (1u64 << n)) as u32;
        prop_assert!(table.tr_of_mask(sub) <= table.tr_of_mask(sup));
    }

    /// Every tournament on n vertices has a transitive subtournament of size
    /// at least floor(log2 n) + 1.
    #[test]
    fn classic_lower_bound(seed in any::<u64>(), n in 2usize..=12) {
        let mut rng = Rng(seed);
        let t = local_random_tournament(n, &mut rng);
        let bound = (usize::BITS - n.leading_zeros()) as usize; // floor(log2 n) + 1
        prop_assert!(max_transitive(&t).unwrap().0 >= bound);
    }

    /// Containment is equivariant under simultaneous reversal.
    #[test]
    fn containment_reversal_equivariant(seed in any::<u64>(), hn in 4usize..=7, pn in 2usize..=4) {
        let mut rng = Rng(seed);
        let host = local_random_tournament(hn, &mut rng);
        let pattern = local_random_tournament(pn, &mut rng);
        let fwd = find_embedding(&host, &pattern).unwrap().is_some();
        let rev = find_embedding(&host.reverse(), &pattern.reverse()).unwrap().is_some();
        prop_assert_eq!(fwd, rev);
    }

    /// Containment is monotone under extension of the host.
    #[test]
    fn containment_monotone(seed in any::<u64>(), hn in 3usize..=6, pn in 2usize..=3) {
        let mut rng = Rng(seed);
        let host = local_random_tournament(hn, &mut rng);
        let pattern = local_random_tournament(pn, &mut rng);
        if find_embedding(&host, &pattern).unwrap().is_some() {
            // Extend by two vertices with arbitrary orientations.
            let mut extra = Vec::new();
            for _ in 0..(2 * (hn + 2)) {
                extra.push(rng.bit());
            }
            let mut idx = 0;
            let bigger = Tournament::from_fn(hn + 2, |i, j| {
                if j < hn {
                    host.has_edge(i, j)
                } else {
                    idx += 1;
                    extra[(idx - 1) % extra.len()]
                }
            })
            .unwrap();
            prop_assert!(find_embedding(&bigger, &pattern).unwrap().is_some());
        }
    }

    /// Galaxy ordering implies star ordering implies forest ordering.
    #[test]
    fn ordering_flag_implications(seed in any::<u64>(), n in 2usize..=6, perm_index in any::<u64>()) {
        let mut rng = Rng(seed);
        let t = local_random_tournament(n, &mut rng);
        let theta = Ordering::new(nth_permutation(n, perm_index)).unwrap();
        let a = analyze_ordering(&t, &theta).unwrap();
        if a.is_galaxy_ordering {
            prop_assert!(a.is_star_ordering);
        }
        if a.is_star_ordering {
            prop_assert!(a.is_forest_ordering);
        }
    }

    /// Any returned homogeneous set re-checks, and primality is invariant
    /// under reversal.
    #[test]
    fn homogeneous_and_primality(seed in any::<u64>(), n in 3usize..=7) {
        let mut rng = Rng(seed);
        let t = local_random_tournament(n, &mut rng);
        if let Some(set) = find_homogeneous(&t) {
            prop_assert!(is_homogeneous(&t, &set));
            prop_assert!(set.len() >= 2 && set.len() < n);
        }
        prop_assert_eq!(is_prime(&t), is_prime(&t.reverse()));
    }

    /// Kuhn matching size equals the recursive brute force, and the König
    /// complement sides are complete.
    #[test]
    fn koenig_duality_small(seed in any::<u64>(), xn in 1usize..=6, yn in 1usize..=6) {
        let mut rng = Rng(seed);
        let t = local_random_tournament(xn + yn, &mut rng);
        let x = VertexSet::from_members(t.n(), &(0..xn).collect::<Vec<_>>()).unwrap();
        let y = VertexSet::from_members(t.n(), &(xn..xn + yn).collect::<Vec<_>>()).unwrap();
        let pairs = maximum_backward_pairs(&t, &x, &y);
        let adj: Vec<Vec<usize>> = (0..xn)
            .map(|xi| (0..yn).filter(|&yi| t.has_edge(xn + yi, xi)).collect())
            .collect();
        prop_assert_eq!(pairs.len(), common::matching_brute(&adj, yn));

        match backward_matching(&t, &x, &y, pairs.len() + 1).unwrap() {
            MatchingOutcome::CompletePair { x_side, y_side, cover_x, cover_y } => {
                prop_assert_eq!(cover_x.len() + cover_y.len(), pairs.len());
                for a in x_side.iter() {
                    for b in y_side.iter() {
                        prop_assert!(t.has_edge(a, b));
                    }
                }
            }
            MatchingOutcome::Pairs(_) => prop_assert!(false, "matching cannot exceed maximum"),
        }
    }

    /// Every random six-vertex tournament satisfies at least one of the five
    /// outcomes (driven through the library's seeded generator).
    #[test]
    fn every_random_six_vertex_tournament_classifies(seed in any::<u64>()) {
        let t = tourlab::embedding::random_tournament(6, seed).unwrap();
        let record = tourlab::structure::classify6(&t).unwrap();
        prop_assert!(!record.outcomes.is_empty());
        prop_assert!(tourlab::structure::witnesses_hold(&t, &record));
    }

    /// Smoothing keeps at least half of every set and verifies smooth at
    /// 4k * lambda with c halved.
    #[test]
    fn refine_always_smooths(seed in any::<u64>()) {
        let (t, chain) = random_valid_chain(seed);
        let refined = smooth_refine(&t, &chain).unwrap();
        for (before, after) in chain.sets.iter().zip(&refined.sets) {
            prop_assert!(after.len() * 2 >= before.len());
            prop_assert!(after.is_subset(before));
        }
        prop_assert_eq!(verify_structure(&t, &refined, true).unwrap(), None);
    }
}

/// Canonical soundness on the 12 five-vertex classes: pairwise distinct, and
/// stable under 200 random relabelings each.
#[test]
fn canonical_soundness_up_to_five() {
    for n in 1..=5 {
        let classes = enumerate_classes(n).unwrap();
        let reps: Vec<Tournament> = classes
            .iter()
            .map(|c| Tournament::parse(&format!("{}\n{}", c.n, c.bits)).unwrap())
            .collect();
        for i in 0..reps.len() {
            for j in (i + 1)..reps.len() {
                assert!(is_isomorphic(&reps[i], &reps[j]).unwrap().is_none());
            }
        }
        if n == 5 {
            for (ci, rep) in reps.iter().enumerate() {
                for k in 0..200u64 {
                    let perm = nth_permutation(5, k * 7 + ci as u64);
                    let relabeled = rep.apply_ordering(&Ordering::new(perm).unwrap()).unwrap();
                    let witness = is_isomorphic(&relabeled, rep).unwrap();
                    assert!(witness.is_some());
                    assert_eq!(
                        canonical_form(&relabeled).unwrap(),
                        canonical_form(rep).unwrap()
                    );
                }
            }
        }
    }
}
