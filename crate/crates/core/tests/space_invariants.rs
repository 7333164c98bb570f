mod common;

use orthospace::metric::{diameter, distance, is_connected, Distance};
use orthospace::{OrthoSpace, VertexSet};
use proptest::prelude::*;

fn subsets(n: usize) -> impl Iterator<Item = VertexSet> {
    (0u64..1 << n).map(VertexSet::from_bits)
}

fn brute_rank(s: &OrthoSpace) -> usize {
    subsets(s.n()).filter(|&a| s.is_clique(a)).map(|a| a.len()).max().unwrap()
}

fn brute_irreducible(s: &OrthoSpace) -> bool {
    let n = s.n();
    if n == 1 {
        return true;
    }
    // fix point 0 in A; B is the rest of the bipartition
    !(0u64..1 << (n - 1)).any(|rest| {
        let a = VertexSet::from_bits(1 | rest << 1);
        let b = s.universe().difference(a);
        !b.is_empty() && a.iter().all(|x| b.is_subset(s.neighbors(x)))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn relation_is_symmetric_and_irreflexive(s in common::space(1, 20)) {
        prop_assert!(s.is_well_formed());
        for a in 0..s.n() {
            prop_assert!(!s.is_orthogonal(a, a));
            for b in 0..s.n() {
                prop_assert_eq!(s.is_orthogonal(a, b), s.is_orthogonal(b, a));
            }
        }
    }

    #[test]
    fn closure_is_a_closure_operator(s in common::space(1, 9)) {
        let n = s.n();
        for a in subsets(n) {
            let perp = s.ortho_complement(a);
            prop_assert!(a.is_subset(s.closure(a)));
            prop_assert_eq!(s.ortho_complement(s.closure(a)), perp);
            // every superset B of A has B⊥ ⊆ A⊥
            let free = s.universe().difference(a).bits();
            let mut extra = free;
            loop {
                let b = a | VertexSet::from_bits(extra);
                prop_assert!(s.ortho_complement(b).is_subset(perp));
                if extra == 0 { break; }
                extra = (extra - 1) & free;
            }
        }
        prop_assert_eq!(s.ortho_complement(VertexSet::EMPTY), s.universe());
    }

    #[test]
    fn distance_one_is_orthogonality(s in common::space(2, 12)) {
        for a in 0..s.n() {
            prop_assert_eq!(distance(&s, a, a), Distance::finite(0));
            for b in 0..s.n() {
                if a != b {
                    prop_assert_eq!(s.is_orthogonal(a, b), distance(&s, a, b) == Distance::finite(1));
                    prop_assert_eq!(distance(&s, a, b), distance(&s, b, a));
                }
            }
        }
    }

    #[test]
    fn diameter_one_is_clique(s in common::space(2, 8)) {
        for a in subsets(s.n()).filter(|a| a.len() >= 2) {
            let sub = s.induced(a).unwrap();
            if is_connected(&sub) {
                prop_assert_eq!(diameter(&sub).unwrap() == Distance::finite(1), s.is_clique(a));
            }
        }
    }

    #[test]
    fn rank_matches_brute_force(s in common::space(1, 8)) {
        let cliques = s.maximal_orthogonal_sets();
        prop_assert_eq!(s.rank(), cliques.iter().map(|c| c.len()).max().unwrap());
        prop_assert_eq!(s.rank(), brute_rank(&s));
        let covered = cliques.iter().fold(VertexSet::EMPTY, |acc, &c| acc | c);
        prop_assert_eq!(covered, s.universe());
        for c in &cliques {
            prop_assert!(s.is_maximal_clique(*c));
        }
    }

    #[test]
    fn apexes_are_the_common_core(s in common::space(1, 12)) {
        let core = s
            .maximal_orthogonal_sets()
            .into_iter()
            .fold(s.universe(), |acc, c| acc & c);
        prop_assert_eq!(s.apex_vertices(), core);
    }

    #[test]
    fn irreducibility_matches_bipartitions(s in common::space(1, 12)) {
        prop_assert_eq!(s.is_irreducible(), brute_irreducible(&s));
        if s.n() >= 2 && !s.apex_vertices().is_empty() {
            prop_assert!(!s.is_irreducible());
        }
    }

    #[test]
    fn relabeling_preserves_invariants((s, perm) in common::space_and_perm(1, 12)) {
        let t = s.relabeled(&perm);
        prop_assert_eq!(t.rank(), s.rank());
        prop_assert_eq!(t.edge_count(), s.edge_count());
        prop_assert_eq!(t.is_irreducible(), s.is_irreducible());
        prop_assert_eq!(is_connected(&t), is_connected(&s));
    }
}
