//! Canonical labeling by partition refinement and individualization, with
//! automorphism pruning.
//!
//! The search tree is the usual one: a node is an equitable ordered
//! partition; its children individualize each vertex of the first
//! non-singleton cell and refine again; leaves are discrete partitions,
//! i.e. relabelings. The canonical leaf is the one minimizing
//! `(refinement trace, relabeled adjacency rows)`.
//!
//! Pruning:
//! * children of first-path nodes that lie in one orbit of the automorphisms
//!   found so far (restricted to those fixing the path prefix) are explored
//!   once;
//! * a subtree whose leaf reproduces the first leaf under an automorphism
//!   that maps the first path onto the current branch point is abandoned;
//! * a node whose trace differs from the first path's and exceeds the best
//!   leaf's is cut.
//!
//! None of the cuts removes a leaf reachable only through the cut, so the
//! generators collected generate the full automorphism group and the orbits
//! reported are exact.

use std::fmt;

use crate::enumerate::graph6;
use crate::space::OrthoSpace;
use crate::vertex_set::{VertexId, MAX_VERTICES};

const N: usize = MAX_VERTICES;

#[derive(Clone, Copy)]
struct Partition {
    cells: [u64; N],
    len: usize,
}

impl Partition {
    fn is_discrete(&self, n: usize) -> bool {
        self.len == n
    }
}

#[derive(Clone)]
struct Leaf {
    lab: [u8; N],
    rows: [u64; N],
    trace: Vec<u64>,
}

type Perm = [u8; N];

/// Reusable workspace for canonical labeling of graphs with up to 64
/// vertices.
pub struct Canonizer {
    n: usize,
    adj: [u64; N],
    first: Option<Leaf>,
    best: Option<Leaf>,
    first_path: [u8; N],
    path: [u8; N],
    traces: Vec<u64>,
    generators: Vec<Perm>,
    queue: Vec<u64>,
}

impl Default for Canonizer {
    fn default() -> Self {
        Self::new()
    }
}

#[inline]
fn mix(h: u64, x: u64) -> u64 {
    (h.rotate_left(7) ^ x).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

impl Canonizer {
    pub fn new() -> Self {
        Canonizer {
            n: 0,
            adj: [0; N],
            first: None,
            best: None,
            first_path: [0; N],
            path: [0; N],
            traces: vec![0; N + 1],
            generators: Vec::new(),
            queue: Vec::with_capacity(4 * N),
        }
    }

    /// Runs the search on `rows` (row `v` = neighbors of `v`). With
    /// `colors`, the initial partition groups vertices by color in
    /// increasing color order and only color-preserving relabelings count.
    pub fn run(&mut self, rows: &[u64], colors: Option<&[u8]>) {
        let n = rows.len();
        assert!((1..=N).contains(&n), "canonical labeling supports 1..=64 vertices");
        self.n = n;
        self.adj[..n].copy_from_slice(rows);
        self.first = None;
        self.best = None;
        self.generators.clear();

        let mut part = Partition { cells: [0; N], len: 0 };
        match colors {
            None => {
                part.cells[0] = full(n);
                part.len = 1;
            }
            Some(colors) => {
                assert_eq!(colors.len(), n, "one color per vertex");
                let mut palette: Vec<u8> = colors.to_vec();
                palette.sort_unstable();
                palette.dedup();
                for (i, &c) in palette.iter().enumerate() {
                    part.cells[i] = (0..n)
                        .filter(|&v| colors[v] == c)
                        .fold(0u64, |m, v| m | 1 << v);
                }
                part.len = palette.len();
            }
        }
        self.queue.clear();
        self.queue.extend_from_slice(&part.cells[..part.len]);
        let seed = mix(n as u64, part.len as u64);
        self.traces[0] = self.refine(&mut part, seed);
        self.search(0, &part, true);
    }

    /// Canonical order: position `i` holds the original vertex labeled `i`.
    pub fn lab(&self) -> &[u8] {
        &self.best.as_ref().expect("run first").lab[..self.n]
    }

    /// Adjacency rows of the canonically relabeled graph.
    pub fn canonical_rows(&self) -> &[u64] {
        &self.best.as_ref().expect("run first").rows[..self.n]
    }

    pub fn generators(&self) -> impl Iterator<Item = &[u8]> + '_ {
        self.generators.iter().map(move |g| &g[..self.n])
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    /// Orbit representative (smallest member) of every vertex under the
    /// full automorphism group.
    pub fn orbits(&self) -> [u8; N] {
        let mut uf = identity();
        for g in &self.generators {
            merge_perm(&mut uf, g, self.n);
        }
        for v in 0..self.n {
            uf[v] = find(&mut uf, v as u8);
        }
        uf
    }

    fn refine(&mut self, part: &mut Partition, seed: u64) -> u64 {
        let n = self.n;
        let mut h = seed;
        let mut head = 0;
        let mut buckets = [0u64; N + 1];
        while head < self.queue.len() && part.len < n {
            let splitter = self.queue[head];
            head += 1;
            let mut i = 0;
            while i < part.len {
                let cell = part.cells[i];
                if cell & (cell - 1) == 0 {
                    i += 1;
                    continue;
                }
                let mut lo = usize::MAX;
                let mut hi = 0;
                let mut rest = cell;
                while rest != 0 {
                    let v = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    let c = (self.adj[v] & splitter).count_ones() as usize;
                    buckets[c] |= 1 << v;
                    lo = lo.min(c);
                    hi = hi.max(c);
                }
                if lo == hi {
                    buckets[lo] = 0;
                    i += 1;
                    continue;
                }
                let mut frags = [0u64; N];
                let mut k = 0;
                for c in lo..=hi {
                    if buckets[c] != 0 {
                        frags[k] = buckets[c];
                        h = mix(h, ((i as u64) << 32) | ((c as u64) << 16) | buckets[c].count_ones() as u64);
                        buckets[c] = 0;
                        k += 1;
                    }
                }
                part.cells.copy_within(i + 1..part.len, i + k);
                part.cells[i..i + k].copy_from_slice(&frags[..k]);
                part.len += k - 1;
                self.queue.extend_from_slice(&frags[..k]);
                i += k;
            }
        }
        self.queue.clear();
        mix(h, part.len as u64)
    }

    fn individualize(&mut self, part: &Partition, cell: usize, v: usize, level: usize) -> (Partition, u64) {
        let mut child = *part;
        let bit = 1u64 << v;
        child.cells.copy_within(cell + 1..child.len, cell + 2);
        child.cells[cell] = bit;
        child.cells[cell + 1] = part.cells[cell] & !bit;
        child.len += 1;
        self.queue.clear();
        self.queue.push(bit);
        let seed = mix(level as u64 + 1, cell as u64);
        let trace = self.refine(&mut child, seed);
        (child, trace)
    }

    /// Returns `Some(k)` to abandon everything below first-path level `k`.
    fn search(&mut self, level: usize, part: &Partition, on_first: bool) -> Option<usize> {
        let n = self.n;
        if part.is_discrete(n) {
            return self.leaf(level, part);
        }
        let target = (0..part.len)
            .find(|&i| part.cells[i].count_ones() > 1)
            .expect("non-discrete partition has a non-singleton cell");
        let cell = part.cells[target];
        let first_child = cell.trailing_zeros() as usize;
        let mut explored = 0u64;
        let mut rest = cell;
        while rest != 0 {
            let w = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let child_on_first = on_first && w == first_child;
            if on_first && !child_on_first && self.in_explored_orbit(level, w, explored) {
                continue;
            }
            explored |= 1 << w;
            let (child, trace) = self.individualize(part, target, w, level);
            self.path[level] = w as u8;
            self.traces[level + 1] = trace;
            if child_on_first {
                self.first_path[level] = w as u8;
            } else if self.cut_by_trace(level + 1) {
                continue;
            }
            if let Some(k) = self.search(level + 1, &child, child_on_first) {
                if !on_first || k < level {
                    return Some(k);
                }
            }
        }
        None
    }

    fn cut_by_trace(&self, level: usize) -> bool {
        let cur = &self.traces[..=level];
        let first = &self.first.as_ref().expect("first leaf exists off the first path").trace;
        if first.len() > level && cur == &first[..=level] {
            return false;
        }
        let best = &self.best.as_ref().expect("best leaf exists").trace;
        let prefix = &best[..best.len().min(level + 1)];
        cur > prefix
    }

    fn in_explored_orbit(&self, level: usize, w: usize, explored: u64) -> bool {
        let mut uf = identity();
        let prefix = &self.first_path[..level];
        for g in &self.generators {
            if prefix.iter().all(|&v| g[v as usize] == v) {
                merge_perm(&mut uf, g, self.n);
            }
        }
        let root = find(&mut uf, w as u8);
        let mut rest = explored;
        while rest != 0 {
            let x = rest.trailing_zeros() as u8;
            rest &= rest - 1;
            if find(&mut uf, x) == root {
                return true;
            }
        }
        false
    }

    fn leaf(&mut self, level: usize, part: &Partition) -> Option<usize> {
        let n = self.n;
        let mut lab = [0u8; N];
        let mut pos = [0u8; N];
        for i in 0..n {
            let v = part.cells[i].trailing_zeros() as u8;
            lab[i] = v;
            pos[v as usize] = i as u8;
        }
        let mut rows = [0u64; N];
        for i in 0..n {
            let mut nb = self.adj[lab[i] as usize];
            let mut r = 0u64;
            while nb != 0 {
                let u = nb.trailing_zeros() as usize;
                nb &= nb - 1;
                r |= 1 << pos[u];
            }
            rows[i] = r;
        }
        let trace = &self.traces[..=level];

        let Some(first) = &self.first else {
            let leaf = Leaf { lab, rows, trace: trace.to_vec() };
            self.first = Some(leaf.clone());
            self.best = Some(leaf);
            return None;
        };

        if first.trace == trace && first.rows[..n] == rows[..n] {
            let sigma = map_between(&first.lab, &lab, n);
            let divergence = (0..level)
                .find(|&k| self.path[k] != self.first_path[k])
                .unwrap_or(level);
            let jump = divergence < level
                && self.first_path[..divergence]
                    .iter()
                    .all(|&v| sigma[v as usize] == v)
                && sigma[self.first_path[divergence] as usize] == self.path[divergence];
            self.record(sigma);
            return jump.then_some(divergence);
        }

        let best = self.best.as_ref().expect("best leaf exists");
        let order = trace
            .cmp(&best.trace[..])
            .then_with(|| rows[..n].cmp(&best.rows[..n]));
        match order {
            std::cmp::Ordering::Less => {
                self.best = Some(Leaf { lab, rows, trace: trace.to_vec() });
            }
            std::cmp::Ordering::Equal => {
                let sigma = map_between(&best.lab, &lab, n);
                self.record(sigma);
            }
            std::cmp::Ordering::Greater => {}
        }
        None
    }

    fn record(&mut self, sigma: Perm) {
        if (0..self.n).any(|v| sigma[v] as usize != v) {
            self.generators.push(sigma);
        }
    }
}

fn full(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn identity() -> [u8; N] {
    let mut p = [0u8; N];
    for (i, x) in p.iter_mut().enumerate() {
        *x = i as u8;
    }
    p
}

/// `σ(from[i]) = to[i]`.
fn map_between(from: &[u8; N], to: &[u8; N], n: usize) -> Perm {
    let mut sigma = identity();
    for i in 0..n {
        sigma[from[i] as usize] = to[i];
    }
    sigma
}

fn find(uf: &mut [u8; N], mut v: u8) -> u8 {
    while uf[v as usize] != v {
        let p = uf[v as usize];
        uf[v as usize] = uf[p as usize];
        v = p;
    }
    v
}

fn merge_perm(uf: &mut [u8; N], g: &Perm, n: usize) {
    for v in 0..n {
        let a = find(uf, v as u8);
        let b = find(uf, g[v]);
        if a != b {
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            uf[hi as usize] = lo;
        }
    }
}

/// Isomorphism certificate: the graph6 encoding of the canonically
/// relabeled graph. Equal certificates mean isomorphic spaces.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm(String);

impl CanonicalForm {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn as_bytes(&self) -> &[u8] {
        self.0.as_bytes()
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({})", self.0)
    }
}

/// Result of [`canonical_labeling`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalLabeling {
    /// `lab[i]` is the vertex that receives canonical label `i`.
    pub lab: Vec<VertexId>,
    /// Orbit representative of each vertex under `Aut`.
    pub orbits: Vec<VertexId>,
    /// Automorphisms found during the search; they generate `Aut`.
    pub generators: Vec<Vec<VertexId>>,
    pub canonical: OrthoSpace,
}

pub fn canonical_labeling(space: &OrthoSpace) -> CanonicalLabeling {
    let rows: Vec<u64> = space.rows().iter().map(|r| r.bits()).collect();
    let mut c = Canonizer::new();
    c.run(&rows, None);
    let n = space.n();
    let orbits = c.orbits();
    CanonicalLabeling {
        lab: c.lab().iter().map(|&v| v as usize).collect(),
        orbits: orbits[..n].iter().map(|&v| v as usize).collect(),
        generators: c
            .generators()
            .map(|g| g.iter().map(|&v| v as usize).collect())
            .collect(),
        canonical: OrthoSpace::from_raw(c.canonical_rows()),
    }
}

pub fn canonical_form(space: &OrthoSpace) -> CanonicalForm {
    CanonicalForm(graph6::write_graph6(&canonical_labeling(space).canonical))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::vertex_set::VertexSet;

    fn all_perms(n: usize) -> Vec<Vec<usize>> {
        fn go(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == used.len() {
                out.push(cur.clone());
                return;
            }
            for v in 0..used.len() {
                if !used[v] {
                    used[v] = true;
                    cur.push(v);
                    go(cur, used, out);
                    cur.pop();
                    used[v] = false;
                }
            }
        }
        let mut out = Vec::new();
        go(&mut Vec::new(), &mut vec![false; n], &mut out);
        out
    }

    fn brute_orbits(space: &OrthoSpace) -> Vec<usize> {
        let n = space.n();
        let mut rep: Vec<usize> = (0..n).collect();
        for p in all_perms(n) {
            if space.relabeled(&p) == *space {
                for v in 0..n {
                    let (a, b) = (rep[v].min(rep[p[v]]), p[v]);
                    let _ = b;
                    rep[v] = a;
                }
            }
        }
        // close transitively
        for _ in 0..n {
            for p in all_perms(n) {
                if space.relabeled(&p) == *space {
                    for v in 0..n {
                        let m = rep[v].min(rep[p[v]]);
                        rep[v] = m;
                        rep[p[v]] = m;
                    }
                }
            }
        }
        rep
    }

    #[test]
    fn relabeling_invariance_on_fixtures() {
        for s in [
            fixtures::l1_not_l2(),
            fixtures::l2_not_l1(),
            fixtures::l2_rank3(),
            fixtures::windmill(3),
            fixtures::edgeless(5),
            fixtures::complete(6),
        ] {
            let base = canonical_form(&s);
            let n = s.n();
            let rev: Vec<usize> = (0..n).rev().collect();
            let rot: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
            assert_eq!(canonical_form(&s.relabeled(&rev)), base);
            assert_eq!(canonical_form(&s.relabeled(&rot)), base);
        }
    }

    #[test]
    fn distinguishes_triangle_and_path() {
        assert_ne!(canonical_form(&fixtures::complete(3)), canonical_form(&fixtures::path(3)));
    }

    #[test]
    fn canonical_graph_is_isomorphic_image() {
        let s = fixtures::l2_rank3();
        let lab = canonical_labeling(&s);
        let mut inverse = vec![0; s.n()];
        for (i, &v) in lab.lab.iter().enumerate() {
            inverse[v] = i;
        }
        assert_eq!(s.relabeled(&inverse), lab.canonical);
    }

    #[test]
    fn orbits_match_brute_force() {
        for s in [
            fixtures::l2_not_l1(),
            fixtures::windmill(2),
            fixtures::path(5),
            fixtures::matching(3),
            OrthoSpace::new(6, &[(0, 1), (1, 2), (2, 0), (3, 4)]).unwrap(),
            // Petersen-like regular pieces stress the non-first-path search
            OrthoSpace::new(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]).unwrap(),
        ] {
            let lab = canonical_labeling(&s);
            assert_eq!(lab.orbits, brute_orbits(&s), "{s:?}");
            for g in &lab.generators {
                assert_eq!(s.relabeled(g), s);
            }
        }
    }

    #[test]
    fn petersen_graph() {
        let outer: Vec<_> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        let spokes: Vec<_> = (0..5).map(|i| (i, i + 5)).collect();
        let inner: Vec<_> = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5)).collect();
        let edges: Vec<_> = outer.into_iter().chain(spokes).chain(inner).collect();
        let p = OrthoSpace::new(10, &edges).unwrap();
        let lab = canonical_labeling(&p);
        assert!(lab.orbits.iter().all(|&r| r == 0));
        let perm: Vec<usize> = vec![3, 7, 1, 9, 0, 2, 8, 5, 6, 4];
        assert_eq!(canonical_form(&p.relabeled(&perm)), canonical_form(&p));
    }

    #[test]
    fn large_symmetric_graphs() {
        for s in [fixtures::edgeless(64), fixtures::complete(64), fixtures::matching(32)] {
            let lab = canonical_labeling(&s);
            assert!(lab.orbits.iter().all(|&r| r == 0));
        }
        let s = fixtures::edgeless(1);
        assert_eq!(canonical_form(&s).as_str(), "@");
    }

    #[test]
    fn colored_search_respects_colors() {
        let k3 = fixtures::complete(3);
        let rows: Vec<u64> = k3.rows().iter().map(|r| r.bits()).collect();
        let mut c = Canonizer::new();
        c.run(&rows, Some(&[1, 0, 0]));
        assert_eq!(c.lab()[2], 0);
        let orbits = c.orbits();
        assert_eq!(&orbits[..3], &[0, 1, 1]);
        let _ = VertexSet::EMPTY;
    }
}
