//! Bron–Kerbosch with pivoting over single-word vertex sets.

use crate::space::OrthoSpace;
use crate::vertex_set::VertexSet;

/// Maximal cliques of the subspace induced on `within`, sorted by member
/// list. An isolated point of the subspace is reported as `{v}`.
pub fn maximal_cliques_within(space: &OrthoSpace, within: VertexSet) -> Vec<VertexSet> {
    let mut out = Vec::new();
    if !within.is_empty() {
        expand(space, within, VertexSet::EMPTY, within, VertexSet::EMPTY, &mut |c| {
            out.push(c)
        });
    }
    out.sort_by(|a, b| a.cmp_members(*b));
    out
}

fn expand(
    space: &OrthoSpace,
    within: VertexSet,
    clique: VertexSet,
    mut candidates: VertexSet,
    mut excluded: VertexSet,
    emit: &mut impl FnMut(VertexSet),
) {
    if candidates.is_empty() {
        if excluded.is_empty() {
            emit(clique);
        }
        return;
    }
    // pivot maximizing |P ∩ N(u)|
    let pivot = candidates
        .union(excluded)
        .iter()
        .max_by_key(|&u| candidates.intersection(space.neighbors(u)).len())
        .expect("candidates non-empty");
    for v in candidates.difference(space.neighbors(pivot)) {
        let nv = space.neighbors(v).intersection(within);
        let mut next = clique;
        next.insert(v);
        expand(
            space,
            within,
            next,
            candidates.intersection(nv),
            excluded.intersection(nv),
            emit,
        );
        candidates.remove(v);
        excluded.insert(v);
    }
}

/// Size of a largest clique; at least 1 for any non-empty space.
pub fn clique_number(space: &OrthoSpace) -> usize {
    let mut best = 0;
    grow(space, 0, space.universe(), &mut best);
    best
}

fn grow(space: &OrthoSpace, size: usize, mut candidates: VertexSet, best: &mut usize) {
    if candidates.is_empty() {
        *best = (*best).max(size);
        return;
    }
    while let Some(v) = candidates.first() {
        if size + candidates.len() <= *best {
            return;
        }
        candidates.remove(v);
        grow(space, size + 1, candidates.intersection(space.neighbors(v)), best);
    }
}
