//! Path distance, diameter and connectivity.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::space::{OrthoSpace, SpaceError};
use crate::vertex_set::{VertexId, VertexSet};

/// Length of a shortest path, or infinity when no path exists.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Distance(u32);

impl Distance {
    pub const INFINITE: Distance = Distance(u32::MAX);

    pub const fn finite(d: u32) -> Self {
        assert!(d != u32::MAX);
        Distance(d)
    }

    pub const fn is_finite(self) -> bool {
        self.0 != u32::MAX
    }

    pub const fn value(self) -> Option<u32> {
        if self.is_finite() {
            Some(self.0)
        } else {
            None
        }
    }

    /// Adds `steps`; `None` when `self` is infinite.
    pub fn checked_add(self, steps: u32) -> Option<Distance> {
        self.value()
            .and_then(|d| d.checked_add(steps))
            .filter(|&d| d != u32::MAX)
            .map(Distance)
    }
}

impl fmt::Debug for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value() {
            Some(d) => write!(f, "{d}"),
            None => f.write_str("∞"),
        }
    }
}

impl Serialize for Distance {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self.value() {
            Some(d) => serializer.serialize_u32(d),
            None => serializer.serialize_str("infinite"),
        }
    }
}

/// Breadth-first layers from `source`; `dist[v]` is `u32::MAX` when
/// unreachable.
fn bfs_layers(space: &OrthoSpace, source: VertexId) -> Vec<u32> {
    let mut dist = vec![u32::MAX; space.n()];
    let mut seen = VertexSet::singleton(source);
    let mut frontier = seen;
    let mut depth = 0;
    while !frontier.is_empty() {
        let mut next = VertexSet::EMPTY;
        for v in frontier {
            dist[v] = depth;
            next |= space.neighbors(v);
        }
        frontier = next.difference(seen);
        seen |= frontier;
        depth += 1;
    }
    dist
}

pub fn distance(space: &OrthoSpace, a: VertexId, b: VertexId) -> Distance {
    assert!(a < space.n() && b < space.n(), "vertex out of range");
    Distance(bfs_layers(space, a)[b])
}

/// Largest pairwise distance; infinite iff the space is disconnected.
pub fn diameter(space: &OrthoSpace) -> Result<Distance, SpaceError> {
    if space.n() < 2 {
        return Err(SpaceError::TrivialDiameter);
    }
    let mut best = 0;
    for v in 0..space.n() {
        let layers = bfs_layers(space, v);
        let far = layers.into_iter().max().unwrap_or(0);
        if far == u32::MAX {
            return Ok(Distance::INFINITE);
        }
        best = best.max(far);
    }
    Ok(Distance(best))
}

/// Component of `v` in the orthogonality graph.
pub fn component_of(space: &OrthoSpace, v: VertexId) -> VertexSet {
    let mut seen = VertexSet::singleton(v);
    let mut frontier = seen;
    while !frontier.is_empty() {
        let mut next = VertexSet::EMPTY;
        for u in frontier {
            next |= space.neighbors(u);
        }
        frontier = next.difference(seen);
        seen |= frontier;
    }
    seen
}

pub fn is_connected(space: &OrthoSpace) -> bool {
    component_of(space, 0) == space.universe()
}
