//! The orthogonality relation as a simple graph.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cliques;
use crate::vertex_set::{VertexId, VertexSet, MAX_VERTICES};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpaceError {
    #[error("empty carrier: an orthogonality space needs at least one point")]
    EmptyCarrier,
    #[error("irreflexivity violated: vertex {0} cannot be orthogonal to itself")]
    SelfLoop(VertexId),
    #[error("vertex {vertex} out of range for a space with {n} points")]
    VertexOutOfRange { vertex: VertexId, n: usize },
    #[error("capacity exceeded: {requested} points requested, at most {MAX_VERTICES} supported")]
    CapacityExceeded { requested: usize },
    #[error("relation not symmetric: {0} ⊥ {1} but not {1} ⊥ {0}")]
    Asymmetric(VertexId, VertexId),
    #[error("a maximal-clique description needs at least one clique")]
    NoCliques,
    #[error("diameter undefined for trivial space")]
    TrivialDiameter,
    #[error("would produce empty space: every point is orthogonal to all others")]
    WouldBeEmpty,
}

/// A finite orthogonality space `(X, ⊥)` with `X = {0, .., n-1}`.
///
/// Row `i` of the adjacency holds `{i}⊥`. The relation is kept symmetric
/// and irreflexive by every constructor.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct OrthoSpace {
    adj: Vec<VertexSet>,
}

impl OrthoSpace {
    /// Builds a space from an edge list; the symmetric closure is taken and
    /// duplicate pairs collapse.
    pub fn new(n: usize, edges: &[(VertexId, VertexId)]) -> Result<Self, SpaceError> {
        check_size(n)?;
        let mut adj = vec![VertexSet::EMPTY; n];
        for &(i, j) in edges {
            check_vertex(i, n)?;
            check_vertex(j, n)?;
            if i == j {
                return Err(SpaceError::SelfLoop(i));
            }
            adj[i].insert(j);
            adj[j].insert(i);
        }
        Ok(OrthoSpace { adj })
    }

    /// Builds the space whose orthogonality is the union of all pairs inside
    /// the given cliques.
    ///
    /// The flag is `true` iff every listed set turns out to be a maximal
    /// clique of the result; a generating family that is not the full `M⊥`
    /// still yields the space but reports `false`.
    pub fn from_maximal_cliques(
        n: usize,
        cliques: &[VertexSet],
    ) -> Result<(Self, bool), SpaceError> {
        check_size(n)?;
        if cliques.is_empty() {
            return Err(SpaceError::NoCliques);
        }
        let universe = VertexSet::full(n);
        let mut adj = vec![VertexSet::EMPTY; n];
        for &c in cliques {
            if let Some(bad) = c.difference(universe).first() {
                return Err(SpaceError::VertexOutOfRange { vertex: bad, n });
            }
            for v in c {
                adj[v] |= c;
                adj[v].remove(v);
            }
        }
        let space = OrthoSpace { adj };
        let exact = cliques.iter().all(|&c| space.is_maximal_clique(c));
        Ok((space, exact))
    }

    /// Wraps raw adjacency rows. Rows must already be symmetric, irreflexive
    /// and confined to `{0, .., rows.len()-1}`.
    pub fn from_rows(rows: Vec<VertexSet>) -> Result<Self, SpaceError> {
        let n = rows.len();
        check_size(n)?;
        let universe = VertexSet::full(n);
        for (i, &row) in rows.iter().enumerate() {
            if row.contains(i) {
                return Err(SpaceError::SelfLoop(i));
            }
            if let Some(bad) = row.difference(universe).first() {
                return Err(SpaceError::VertexOutOfRange { vertex: bad, n });
            }
            for j in row {
                if !rows[j].contains(i) {
                    return Err(SpaceError::Asymmetric(i, j));
                }
            }
        }
        Ok(OrthoSpace { adj: rows })
    }

    /// Unchecked construction from `u64` rows, used on hot paths where the
    /// rows come from a trusted generator.
    pub(crate) fn from_raw(rows: &[u64]) -> Self {
        debug_assert!(!rows.is_empty() && rows.len() <= MAX_VERTICES);
        OrthoSpace {
            adj: rows.iter().map(|&r| VertexSet::from_bits(r)).collect(),
        }
    }

    /// Number of points.
    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn universe(&self) -> VertexSet {
        VertexSet::full(self.n())
    }

    /// `{v}⊥`.
    #[inline]
    pub fn neighbors(&self, v: VertexId) -> VertexSet {
        self.adj[v]
    }

    #[inline]
    pub fn rows(&self) -> &[VertexSet] {
        &self.adj
    }

    #[inline]
    pub fn is_orthogonal(&self, a: VertexId, b: VertexId) -> bool {
        self.adj[a].contains(b)
    }

    #[inline]
    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v].len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.len()).sum::<usize>() / 2
    }

    /// Edges `(i, j)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (i, row) in self.adj.iter().enumerate() {
            for j in row.iter().filter(|&j| j > i) {
                out.push((i, j));
            }
        }
        out
    }

    /// `A⊥ = { x : x ⊥ a for all a ∈ A }`; the empty set maps to `X`.
    #[inline]
    pub fn ortho_complement(&self, a: VertexSet) -> VertexSet {
        a.iter()
            .fold(self.universe(), |acc, v| acc.intersection(self.adj[v]))
    }

    /// `A⊥⊥`.
    #[inline]
    pub fn closure(&self, a: VertexSet) -> VertexSet {
        self.ortho_complement(self.ortho_complement(a))
    }

    #[inline]
    pub fn is_orthoclosed(&self, a: VertexSet) -> bool {
        self.closure(a) == a
    }

    /// Whether all members of `a` are mutually orthogonal.
    pub fn is_clique(&self, a: VertexSet) -> bool {
        a.iter().all(|v| a.difference(VertexSet::singleton(v)).is_subset(self.adj[v]))
    }

    pub fn is_maximal_clique(&self, a: VertexSet) -> bool {
        !a.is_empty() && self.is_clique(a) && self.ortho_complement(a).is_empty()
    }

    /// All maximal orthogonal subsets (maximal cliques), isolated points
    /// included as singletons, ordered by their sorted member lists.
    pub fn maximal_orthogonal_sets(&self) -> Vec<VertexSet> {
        cliques::maximal_cliques_within(self, self.universe())
    }

    /// Largest size of a set of mutually orthogonal points.
    pub fn rank(&self) -> usize {
        cliques::clique_number(self)
    }

    /// Points `a` with `{a}⊥ = X ∖ {a}`.
    pub fn apex_vertices(&self) -> VertexSet {
        let universe = self.universe();
        (0..self.n())
            .filter(|&v| self.adj[v] == universe.difference(VertexSet::singleton(v)))
            .collect()
    }

    /// The subspace on `a`, relabeled to `0..|a|` in increasing order.
    pub fn induced(&self, a: VertexSet) -> Result<OrthoSpace, SpaceError> {
        if a.is_empty() {
            return Err(SpaceError::EmptyCarrier);
        }
        let members = a.to_vec();
        let mut index = [usize::MAX; MAX_VERTICES];
        for (k, &v) in members.iter().enumerate() {
            index[v] = k;
        }
        let adj = members
            .iter()
            .map(|&v| self.adj[v].intersection(a).iter().map(|u| index[u]).collect())
            .collect();
        Ok(OrthoSpace { adj })
    }

    /// Relabels by `v -> perm[v]`; `perm` must be a permutation of `0..n`.
    pub fn relabeled(&self, perm: &[VertexId]) -> OrthoSpace {
        assert_eq!(perm.len(), self.n(), "permutation length mismatch");
        let mut adj = vec![VertexSet::EMPTY; self.n()];
        for (v, &row) in self.adj.iter().enumerate() {
            adj[perm[v]] = row.permuted(perm);
        }
        OrthoSpace { adj }
    }

    /// If `X` splits as `A ∪ B` with every cross pair orthogonal, returns
    /// such a split with `A` the complement-graph component of the lowest
    /// point.
    pub fn reducible_split(&self) -> Option<(VertexSet, VertexSet)> {
        let universe = self.universe();
        // component of 0 in the complement graph
        let mut seen = VertexSet::singleton(0);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = VertexSet::EMPTY;
            for v in frontier {
                next |= universe.difference(self.adj[v]);
            }
            frontier = next.difference(seen);
            seen |= frontier;
        }
        (seen != universe).then(|| (seen, universe.difference(seen)))
    }

    /// No partition of `X` into two non-empty mutually orthogonal blocks.
    pub fn is_irreducible(&self) -> bool {
        self.reducible_split().is_none()
    }

    /// Symmetry and irreflexivity, checked bit by bit.
    pub fn is_well_formed(&self) -> bool {
        let n = self.n();
        (0..n).all(|i| {
            !self.adj[i].contains(i)
                && self.adj[i].is_subset(self.universe())
                && (0..n).all(|j| self.adj[i].contains(j) == self.adj[j].contains(i))
        })
    }
}

fn check_size(n: usize) -> Result<(), SpaceError> {
    match n {
        0 => Err(SpaceError::EmptyCarrier),
        n if n > MAX_VERTICES => Err(SpaceError::CapacityExceeded { requested: n }),
        _ => Ok(()),
    }
}

fn check_vertex(v: VertexId, n: usize) -> Result<(), SpaceError> {
    if v >= n {
        Err(SpaceError::VertexOutOfRange { vertex: v, n })
    } else {
        Ok(())
    }
}

impl fmt::Debug for OrthoSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("OrthoSpace")
            .field("n", &self.n())
            .field("edges", &self.edges())
            .finish()
    }
}

/// JSON input shapes: `{"n": .., "edges": [[i,j],..]}` or
/// `{"n": .., "cliques": [[..],..]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SpaceDescription {
    Edges {
        n: usize,
        edges: Vec<(VertexId, VertexId)>,
    },
    Cliques {
        n: usize,
        cliques: Vec<VertexSet>,
    },
}

impl SpaceDescription {
    pub fn build(&self) -> Result<OrthoSpace, SpaceError> {
        match self {
            SpaceDescription::Edges { n, edges } => OrthoSpace::new(*n, edges),
            SpaceDescription::Cliques { n, cliques } => {
                OrthoSpace::from_maximal_cliques(*n, cliques).map(|(s, _)| s)
            }
        }
    }
}

impl From<&OrthoSpace> for SpaceDescription {
    fn from(space: &OrthoSpace) -> Self {
        SpaceDescription::Edges {
            n: space.n(),
            edges: space.edges(),
        }
    }
}
