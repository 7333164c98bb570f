//! Named spaces used throughout the tests, the CLI and the documentation.

use crate::space::OrthoSpace;
use crate::vertex_set::{VertexId, VertexSet};

/// `M⊥` of the six-point space satisfying (L1) but not (L2).
pub const L1_NOT_L2_CLIQUES: &[&[VertexId]] = &[&[0, 1, 2, 3], &[0, 1, 4, 5]];

/// `M⊥` of the seven-point space satisfying (L2) but not (L1).
pub const L2_NOT_L1_CLIQUES: &[&[VertexId]] = &[
    &[0, 4],
    &[0, 6],
    &[5, 1],
    &[5, 2],
    &[5, 3],
    &[6, 1],
    &[6, 2],
];

/// `M⊥` of the eight-point (L2) space of rank 3 whose maximal orthogonal
/// sets differ in size.
pub const L2_RANK3_CLIQUES: &[&[VertexId]] = &[
    &[0, 4],
    &[0, 7],
    &[1, 5, 7],
    &[1, 6],
    &[2, 5],
    &[3, 6],
];

fn from_cliques(n: usize, family: &[&[VertexId]]) -> OrthoSpace {
    let sets: Vec<VertexSet> = family.iter().map(|c| c.iter().copied().collect()).collect();
    OrthoSpace::from_maximal_cliques(n, &sets)
        .expect("fixture family is in range")
        .0
}

pub fn l1_not_l2() -> OrthoSpace {
    from_cliques(6, L1_NOT_L2_CLIQUES)
}

pub fn l2_not_l1() -> OrthoSpace {
    from_cliques(7, L2_NOT_L1_CLIQUES)
}

pub fn l2_rank3() -> OrthoSpace {
    from_cliques(8, L2_RANK3_CLIQUES)
}

/// `K_n`.
pub fn complete(n: usize) -> OrthoSpace {
    let edges: Vec<_> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    OrthoSpace::new(n, &edges).expect("complete graph in range")
}

pub fn edgeless(n: usize) -> OrthoSpace {
    OrthoSpace::new(n, &[]).expect("edgeless graph in range")
}

pub fn matching_pairs(n: usize, pairs: &[(VertexId, VertexId)]) -> OrthoSpace {
    OrthoSpace::new(n, pairs).expect("pairs in range")
}

/// `2(A,B,φ)` with `A = {0..k}`, `B = {k..2k}` and `φ(i) = i + k`.
pub fn matching(k: usize) -> OrthoSpace {
    let pairs: Vec<_> = (0..k).map(|i| (i, i + k)).collect();
    matching_pairs(2 * k, &pairs)
}

/// `3(A,B,φ)`: the matching `2(A,B,φ)` on `0..2k` plus a hub `2k`
/// orthogonal to every other point.
pub fn windmill(k: usize) -> OrthoSpace {
    let hub = 2 * k;
    let mut edges: Vec<_> = (0..k).map(|i| (i, i + k)).collect();
    edges.extend((0..hub).map(|v| (v, hub)));
    OrthoSpace::new(hub + 1, &edges).expect("windmill in range")
}

fn hub_with_pairs(n: usize, hub: VertexId, pairs: &[(VertexId, VertexId)]) -> OrthoSpace {
    let mut edges = pairs.to_vec();
    edges.extend((0..n).filter(|&v| v != hub).map(|v| (v, hub)));
    OrthoSpace::new(n, &edges).expect("windmill in range")
}

/// The five-point rank-3 (L1) space with triangles `{0,2,h}` and `{1,3,h}`.
///
/// The published drawing labels the hub `5` on a five-element set; it is
/// relabeled to `4` so that the carrier is `{0,..,4}`.
pub fn paper_windmill_5() -> OrthoSpace {
    hub_with_pairs(5, 4, &[(0, 2), (1, 3)])
}

/// Seven-point windmill with hub `5`; the drawing's label `7` becomes `4`.
pub fn paper_windmill_7() -> OrthoSpace {
    hub_with_pairs(7, 5, &[(0, 2), (1, 3), (6, 4)])
}

/// Nine-point windmill with hub `5`; the drawing's label `9` becomes `4`.
pub fn paper_windmill_9() -> OrthoSpace {
    hub_with_pairs(9, 5, &[(0, 2), (1, 3), (6, 7), (8, 4)])
}

/// Path `0 – 1 – .. – (n-1)`.
pub fn path(n: usize) -> OrthoSpace {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    OrthoSpace::new(n, &edges).expect("path in range")
}
