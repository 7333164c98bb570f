use serde::Serialize;

use crate::space::{OrthoSpace, SpaceError};
use crate::vertex_set::{VertexId, VertexSet, MAX_VERTICES};

/// The decomposition `X = A ∪ B` of a perfect-matching space `2(A,B,φ)`.
///
/// The lower endpoint of each edge goes to `a_side`; `phi` lists the pairs
/// `(a, φ(a))` in increasing `a`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatchingStructure {
    pub a_side: VertexSet,
    pub b_side: VertexSet,
    pub phi: Vec<(VertexId, VertexId)>,
}

impl MatchingStructure {
    /// Rebuilds the space this structure describes on `n` points.
    pub fn to_space(&self, n: usize) -> Result<OrthoSpace, SpaceError> {
        OrthoSpace::new(n, &self.phi)
    }
}

/// A hub orthogonal to every other point plus a perfect matching on the
/// rest: the space `3(A,B,φ)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WindmillStructure {
    pub hub: VertexId,
    pub matching: MatchingStructure,
}

impl WindmillStructure {
    pub fn to_space(&self, n: usize) -> Result<OrthoSpace, SpaceError> {
        let mut edges = self.matching.phi.clone();
        edges.extend((0..n).filter(|&v| v != self.hub).map(|v| (v, self.hub)));
        OrthoSpace::new(n, &edges)
    }
}

fn matching_on(space: &OrthoSpace, within: VertexSet) -> Option<MatchingStructure> {
    if within.is_empty() {
        return None;
    }
    let mut a_side = VertexSet::EMPTY;
    let mut b_side = VertexSet::EMPTY;
    let mut phi = Vec::new();
    for v in within {
        let partners = space.neighbors(v) & within;
        if partners.len() != 1 {
            return None;
        }
        let w = partners.first().expect("one partner");
        if v < w {
            a_side.insert(v);
            b_side.insert(w);
            phi.push((v, w));
        }
    }
    Some(MatchingStructure { a_side, b_side, phi })
}

/// Succeeds iff every point is orthogonal to exactly one other point.
pub fn classify_rank2(space: &OrthoSpace) -> Option<MatchingStructure> {
    matching_on(space, space.universe())
}

/// Succeeds iff some point `h` is orthogonal to all others and the rest
/// forms a perfect matching. When several points qualify (only `K₃`) the
/// lowest index wins.
pub fn classify_rank3(space: &OrthoSpace) -> Option<WindmillStructure> {
    if space.n() < 3 {
        return None;
    }
    space.apex_vertices().iter().find_map(|hub| {
        let rest = space.universe().difference(VertexSet::singleton(hub));
        matching_on(space, rest).map(|matching| WindmillStructure { hub, matching })
    })
}

/// Adds `l` points orthogonal to everything, old and new.
pub fn extend_with_apexes(space: &OrthoSpace, l: usize) -> Result<OrthoSpace, SpaceError> {
    let n = space.n();
    let total = n + l;
    if total > MAX_VERTICES {
        return Err(SpaceError::CapacityExceeded { requested: total });
    }
    let added = VertexSet::full(total).difference(VertexSet::full(n));
    let mut rows: Vec<VertexSet> = space.rows().iter().map(|&r| r | added).collect();
    rows.extend((n..total).map(|v| VertexSet::full(total).difference(VertexSet::singleton(v))));
    OrthoSpace::from_rows(rows)
}

/// Removes the intersection of all maximal orthogonal subsets (the points
/// orthogonal to everything else) and renumbers the survivors in order.
pub fn strip_common_core(space: &OrthoSpace) -> Result<OrthoSpace, SpaceError> {
    let core = space.apex_vertices();
    let rest = space.universe().difference(core);
    if rest.is_empty() {
        return Err(SpaceError::WouldBeEmpty);
    }
    space.induced(rest)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::properties::check_l1;

    #[test]
    fn rank2_examples() {
        let m = classify_rank2(&fixtures::matching_pairs(4, &[(0, 1), (2, 3)])).unwrap();
        assert_eq!(m.a_side, VertexSet::from([0, 2]));
        assert_eq!(m.phi, vec![(0, 1), (2, 3)]);
        let k2 = classify_rank2(&fixtures::complete(2)).unwrap();
        assert_eq!(k2.a_side.len(), 1);
        assert_eq!(classify_rank2(&fixtures::windmill(2)), None);
        assert_eq!(classify_rank2(&fixtures::complete(1)), None);
        let s = fixtures::matching(3);
        assert_eq!(classify_rank2(&s).unwrap().to_space(6).unwrap(), s);
    }

    #[test]
    fn rank3_examples() {
        let w = classify_rank3(&fixtures::paper_windmill_5()).unwrap();
        assert_eq!(w.hub, 4);
        assert_eq!(w.matching.phi, vec![(0, 2), (1, 3)]);
        let k3 = classify_rank3(&fixtures::complete(3)).unwrap();
        assert_eq!(k3.hub, 0);
        assert_eq!(k3.matching.phi, vec![(1, 2)]);
        assert_eq!(classify_rank3(&fixtures::l1_not_l2()), None);
        let w7 = classify_rank3(&fixtures::paper_windmill_7()).unwrap();
        assert_eq!(w7.hub, 5);
        assert_eq!(w7.matching.phi.len(), 3);
        assert_eq!(w7.to_space(7).unwrap(), fixtures::paper_windmill_7());
    }

    #[test]
    fn apex_extension() {
        let w = extend_with_apexes(&fixtures::matching(2), 1).unwrap();
        assert_eq!(w, fixtures::windmill(2));
        assert!(classify_rank3(&w).is_some());
        assert_eq!(extend_with_apexes(&fixtures::complete(1), 2).unwrap(), fixtures::complete(3));
        let big = extend_with_apexes(&fixtures::l1_not_l2(), 1).unwrap();
        assert_eq!(big.n(), 7);
        assert_eq!(big.rank(), 5);
        assert!(check_l1(&big));
        assert!(matches!(
            extend_with_apexes(&fixtures::complete(60), 5),
            Err(SpaceError::CapacityExceeded { requested: 65 })
        ));
    }

    #[test]
    fn core_stripping() {
        let m = strip_common_core(&fixtures::paper_windmill_7()).unwrap();
        assert_eq!(classify_rank2(&m).unwrap().phi.len(), 3);
        assert_eq!(strip_common_core(&fixtures::complete(4)), Err(SpaceError::WouldBeEmpty));
        let six = fixtures::l1_not_l2();
        assert_eq!(six.apex_vertices(), VertexSet::from([0, 1]));
        let rest = strip_common_core(&six).unwrap();
        assert_eq!(rest, fixtures::matching_pairs(4, &[(0, 1), (2, 3)]));
        assert!(classify_rank2(&rest).is_some());
    }
}
