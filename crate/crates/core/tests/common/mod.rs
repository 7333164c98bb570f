#![allow(dead_code)]

use orthospace::OrthoSpace;
use proptest::prelude::*;

/// Random simple graph on `min..=max` points with edge density around one half.
pub fn space(min: usize, max: usize) -> impl Strategy<Value = OrthoSpace> {
    (min..=max).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| from_bits(n, &bits))
    })
}

/// Random space together with a random relabeling of its points.
pub fn space_and_perm(min: usize, max: usize) -> impl Strategy<Value = (OrthoSpace, Vec<usize>)> {
    space(min, max).prop_flat_map(|s| {
        let n = s.n();
        (Just(s), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
    })
}

pub fn from_bits(n: usize, bits: &[bool]) -> OrthoSpace {
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bits[k] {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    OrthoSpace::new(n, &edges).unwrap()
}

/// Labeled graph number `mask` on `n` points, edges in column order.
pub fn labeled(n: usize, mask: u64) -> OrthoSpace {
    let pairs = n * (n - 1) / 2;
    let bits: Vec<bool> = (0..pairs).map(|k| mask >> k & 1 == 1).collect();
    from_bits(n, &bits)
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, n: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for v in 0..n {
            if !prefix.contains(&v) {
                prefix.push(v);
                go(prefix, n, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), n, &mut out);
    out
}
