mod common;

use std::collections::HashSet;

use orthospace::enumerate::{
    canonical_form, canonical_labeling, enumerate_spaces, parse_graph6, write_graph6,
};
use orthospace::OrthoSpace;
use proptest::prelude::*;

fn degree_sequence(s: &OrthoSpace) -> Vec<usize> {
    let mut d: Vec<usize> = (0..s.n()).map(|v| s.degree(v)).collect();
    d.sort_unstable();
    d
}

fn triangles(s: &OrthoSpace) -> usize {
    s.edges()
        .iter()
        .map(|&(a, b)| (s.neighbors(a) & s.neighbors(b)).len())
        .sum::<usize>()
        / 3
}

/// Smallest adjacency bit-string over all relabelings; independent of the
/// refinement search.
fn brute_certificate(s: &OrthoSpace, perms: &[Vec<usize>]) -> u64 {
    perms
        .iter()
        .map(|p| {
            let t = s.relabeled(p);
            let mut code = 0u64;
            for (a, b) in t.edges() {
                code |= 1 << (b * (b - 1) / 2 + a);
            }
            code
        })
        .min()
        .unwrap()
}

#[test]
fn certificates_agree_with_brute_force_isomorphism() {
    for n in 1..=5 {
        let perms = common::permutations(n);
        let pairs = n * (n - 1) / 2;
        let mut by_brute: std::collections::HashMap<u64, orthospace::enumerate::CanonicalForm> =
            Default::default();
        for mask in 0u64..1 << pairs {
            let s = common::labeled(n, mask);
            let brute = brute_certificate(&s, &perms);
            let form = canonical_form(&s);
            match by_brute.get(&brute) {
                Some(f) => assert_eq!(*f, form),
                None => {
                    by_brute.insert(brute, form);
                }
            }
        }
        let distinct: HashSet<_> = by_brute.values().cloned().collect();
        assert_eq!(distinct.len(), by_brute.len(), "n = {n}");
    }
}

#[test]
fn eleven_classes_on_four_points() {
    let forms: HashSet<_> = enumerate_spaces(4).unwrap().map(|s| canonical_form(&s)).collect();
    assert_eq!(forms.len(), 11);
}

#[test]
fn enumeration_matches_labeled_dedup_up_to_six() {
    for n in 1..=6 {
        let pairs = n * (n - 1) / 2;
        let brute: HashSet<_> = (0u64..1 << pairs)
            .map(|mask| canonical_form(&common::labeled(n, mask)))
            .collect();
        let generated: Vec<_> = enumerate_spaces(n).unwrap().map(|s| canonical_form(&s)).collect();
        let unique: HashSet<_> = generated.iter().cloned().collect();
        assert_eq!(unique.len(), generated.len(), "duplicate class at n = {n}");
        assert_eq!(unique, brute, "n = {n}");
    }
}

#[test]
fn stream_order_is_deterministic() {
    let a: Vec<_> = enumerate_spaces(6).unwrap().map(|s| write_graph6(&s)).collect();
    let b: Vec<_> = enumerate_spaces(6).unwrap().map(|s| write_graph6(&s)).collect();
    assert_eq!(a, b);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn certificate_invariant_under_relabeling((s, perm) in common::space_and_perm(1, 14)) {
        prop_assert_eq!(canonical_form(&s.relabeled(&perm)), canonical_form(&s));
    }

    #[test]
    fn certificates_separate_invariants(a in common::space(1, 9), b in common::space(1, 9)) {
        let differ = a.n() != b.n()
            || degree_sequence(&a) != degree_sequence(&b)
            || triangles(&a) != triangles(&b);
        if differ {
            prop_assert_ne!(canonical_form(&a), canonical_form(&b));
        }
        if canonical_form(&a) == canonical_form(&b) {
            prop_assert_eq!(degree_sequence(&a), degree_sequence(&b));
        }
    }

    #[test]
    fn labeling_reproduces_canonical_graph((s, perm) in common::space_and_perm(1, 20)) {
        let lab = canonical_labeling(&s);
        let mut inverse = vec![0; s.n()];
        for (i, &v) in lab.lab.iter().enumerate() {
            inverse[v] = i;
        }
        prop_assert_eq!(s.relabeled(&inverse), lab.canonical.clone());
        for g in &lab.generators {
            prop_assert_eq!(s.relabeled(g), s.clone());
        }
        let other = canonical_labeling(&s.relabeled(&perm));
        prop_assert_eq!(other.canonical, lab.canonical);
    }

    #[test]
    fn graph6_round_trip(s in common::space(1, 64)) {
        let text = write_graph6(&s);
        prop_assert!(text.bytes().all(|b| (63..=126).contains(&b)));
        let back = parse_graph6(&text).unwrap();
        prop_assert_eq!(&back, &s);
        prop_assert_eq!(write_graph6(&back), text);
    }
}
