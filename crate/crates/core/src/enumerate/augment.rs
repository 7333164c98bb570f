//! Isomorph-free generation by canonical augmentation.
//!
//! A graph on `k + 1` vertices is produced from its parent on `k` by adding
//! vertex `k` with neighborhood `S`. `S` ranges over one representative per
//! orbit of `Aut(parent)` on subsets, and the child is kept iff the new
//! vertex is equivalent, under `Aut(child)`, to the vertex a canonical rule
//! would delete: among the vertices maximizing (degree, sum of neighbor
//! degrees), the one with the last canonical label.

use rayon::prelude::*;
use thiserror::Error;

use super::canon::Canonizer;
use crate::space::OrthoSpace;

/// Largest vertex count [`enumerate_spaces`] accepts.
pub const ENUMERATION_BOUND: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum EnumerateError {
    #[error("enumeration supports 1..={bound} vertices, got {0}", bound = ENUMERATION_BOUND)]
    OutOfBounds(usize),
}

fn check_bound(n: usize) -> Result<(), EnumerateError> {
    if (1..=ENUMERATION_BOUND).contains(&n) {
        Ok(())
    } else {
        Err(EnumerateError::OutOfBounds(n))
    }
}

/// A graph in the generation tree. Only the first `n` rows are meaningful.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub(crate) struct Node {
    pub n: usize,
    pub rows: [u64; ENUMERATION_BOUND],
}

impl Node {
    pub fn root() -> Self {
        Node { n: 1, rows: [0; ENUMERATION_BOUND] }
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows[..self.n]
    }

    pub fn to_space(self) -> OrthoSpace {
        OrthoSpace::from_raw(self.rows())
    }
}

/// Scratch space reused across augmentation steps.
pub(crate) struct Augmenter {
    canon: Canonizer,
    subset_root: Vec<u16>,
}

impl Augmenter {
    pub fn new() -> Self {
        Augmenter { canon: Canonizer::new(), subset_root: Vec::new() }
    }

    /// Appends the accepted children of `parent` to `out`, in increasing
    /// neighborhood bit order.
    pub fn children(&mut self, parent: &Node, out: &mut Vec<Node>) {
        let k = parent.n;
        debug_assert!(k < ENUMERATION_BOUND);
        let subsets = 1usize << k;
        self.canon.run(parent.rows(), None);
        let symmetric = self.canon.generator_count() > 0;
        if symmetric {
            self.subset_orbits(k);
        }
        for s in 0..subsets {
            if symmetric && self.subset_root[s] as usize != s {
                continue;
            }
            let s = s as u64;
            let mut child = *parent;
            child.n = k + 1;
            child.rows[k] = s;
            let mut rest = s;
            while rest != 0 {
                let u = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                child.rows[u] |= 1 << k;
            }
            if self.accepts(&child) {
                out.push(child);
            }
        }
    }

    /// Marks each subset with the smallest member of its orbit under the
    /// parent's automorphism generators.
    fn subset_orbits(&mut self, k: usize) {
        let subsets = 1usize << k;
        self.subset_root.clear();
        self.subset_root.extend(0..subsets as u16);
        let gens: Vec<Vec<u8>> = self.canon.generators().map(|g| g.to_vec()).collect();
        for g in &gens {
            for s in 0..subsets {
                let mut image = 0usize;
                let mut rest = s;
                while rest != 0 {
                    let v = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    image |= 1 << g[v];
                }
                let a = find(&mut self.subset_root, s as u16);
                let b = find(&mut self.subset_root, image as u16);
                if a != b {
                    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                    self.subset_root[hi as usize] = lo;
                }
            }
        }
        for s in 0..subsets {
            self.subset_root[s] = find(&mut self.subset_root, s as u16);
        }
    }

    fn accepts(&mut self, child: &Node) -> bool {
        let n = child.n;
        let new = n - 1;
        let rows = child.rows();
        let mut deg = [0u32; ENUMERATION_BOUND];
        for (d, r) in deg.iter_mut().zip(rows) {
            *d = r.count_ones();
        }
        let d = deg[new];
        if (0..new).any(|v| deg[v] > d) {
            return false;
        }
        let mut candidates: u64 = (0..n).filter(|&v| deg[v] == d).fold(0, |m, v| m | 1 << v);
        if candidates == 1 << new {
            return true;
        }
        let weight = |v: usize| -> u32 {
            let mut sum = 0;
            let mut rest = rows[v];
            while rest != 0 {
                sum += deg[rest.trailing_zeros() as usize];
                rest &= rest - 1;
            }
            sum
        };
        let w_new = weight(new);
        let mut rest = candidates & !(1 << new);
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let w = weight(v);
            if w > w_new {
                return false;
            }
            if w < w_new {
                candidates &= !(1 << v);
            }
        }
        if candidates == 1 << new {
            return true;
        }
        self.canon.run(rows, None);
        let lab = self.canon.lab();
        let chosen = *lab
            .iter()
            .rev()
            .find(|&&v| candidates >> v & 1 == 1)
            .expect("candidate set is non-empty") as usize;
        if chosen == new {
            return true;
        }
        let orbits = self.canon.orbits();
        orbits[chosen] == orbits[new]
    }
}

fn find(uf: &mut [u16], mut s: u16) -> u16 {
    while uf[s as usize] != s {
        let p = uf[s as usize];
        uf[s as usize] = uf[p as usize];
        s = p;
    }
    s
}

/// Depth-first walk of the generation tree below `start`, calling `visit`
/// on every node with `target` vertices.
pub(crate) fn walk(aug: &mut Augmenter, start: &Node, target: usize, visit: &mut impl FnMut(&Node)) {
    if start.n == target {
        visit(start);
        return;
    }
    let mut stack: Vec<Vec<Node>> = Vec::with_capacity(target);
    let mut level = Vec::new();
    aug.children(start, &mut level);
    level.reverse();
    stack.push(level);
    while let Some(top) = stack.last_mut() {
        let Some(node) = top.pop() else {
            stack.pop();
            continue;
        };
        if node.n == target {
            visit(&node);
        } else {
            let mut next = Vec::new();
            aug.children(&node, &mut next);
            next.reverse();
            stack.push(next);
        }
    }
}

/// All tree nodes with exactly `depth` vertices, in generation order.
pub(crate) fn frontier(depth: usize) -> Vec<Node> {
    let mut aug = Augmenter::new();
    let mut out = Vec::new();
    walk(&mut aug, &Node::root(), depth, &mut |node| out.push(*node));
    out
}

/// Depth at which parallel work splits the tree for `n` vertices.
pub(crate) fn split_depth(n: usize) -> usize {
    n.saturating_sub(2).max(1)
}

/// Folds every graph on `n` vertices into a per-worker accumulator, in
/// parallel over subtrees, and combines the accumulators with `merge`.
/// The result is independent of scheduling when `merge` is associative and
/// commutative.
pub(crate) fn par_fold<T, F, M>(n: usize, init: T, visit: F, merge: M) -> T
where
    T: Clone + Send + Sync,
    F: Fn(&mut T, &Node) + Sync,
    M: Fn(T, T) -> T + Sync + Send,
{
    let roots = frontier(split_depth(n));
    roots
        .par_iter()
        .fold(
            || (Augmenter::new(), init.clone()),
            |(mut aug, mut acc), root| {
                walk(&mut aug, root, n, &mut |node| visit(&mut acc, node));
                (aug, acc)
            },
        )
        .map(|(_, acc)| acc)
        .reduce(|| init.clone(), &merge)
}

/// Streams one representative per isomorphism class of graphs on `n`
/// vertices, in a fixed order.
pub fn enumerate_spaces(n: usize) -> Result<SpaceStream, EnumerateError> {
    check_bound(n)?;
    Ok(SpaceStream::new(n))
}

/// Iterator returned by [`enumerate_spaces`].
pub struct SpaceStream {
    target: usize,
    aug: Augmenter,
    stack: Vec<Vec<Node>>,
}

impl SpaceStream {
    fn new(target: usize) -> Self {
        SpaceStream { target, aug: Augmenter::new(), stack: vec![vec![Node::root()]] }
    }

    pub(crate) fn next_node(&mut self) -> Option<Node> {
        loop {
            let top = self.stack.last_mut()?;
            let Some(node) = top.pop() else {
                self.stack.pop();
                continue;
            };
            if node.n == self.target {
                return Some(node);
            }
            let mut next = Vec::new();
            self.aug.children(&node, &mut next);
            next.reverse();
            self.stack.push(next);
        }
    }
}

impl Iterator for SpaceStream {
    type Item = OrthoSpace;

    fn next(&mut self) -> Option<OrthoSpace> {
        self.next_node().map(|node| node.to_space())
    }
}

/// Parallel variant of [`enumerate_spaces`] that hands out the graphs in
/// batches. Batches arrive in the same order as the sequential stream, so
/// concatenating them reproduces it exactly.
pub fn for_each_batch<F>(n: usize, batch_roots: usize, mut sink: F) -> Result<(), EnumerateError>
where
    F: FnMut(Vec<OrthoSpace>),
{
    check_bound(n)?;
    let roots = frontier(split_depth(n));
    for chunk in roots.chunks(batch_roots.max(1)) {
        let parts: Vec<Vec<OrthoSpace>> = chunk
            .par_iter()
            .map_init(Augmenter::new, |aug, root| {
                let mut out = Vec::new();
                walk(aug, root, n, &mut |node| out.push(node.to_space()));
                out
            })
            .collect();
        for part in parts {
            sink(part);
        }
    }
    Ok(())
}
