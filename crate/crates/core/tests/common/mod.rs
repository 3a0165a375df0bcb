//! Helpers shared by the integration tests: independent brute-force
//! counters, capacity grids, random multigraphs and graph automorphisms.

#![allow(dead_code)]

use kflow::count::EdgeRange;
use kflow::{CapacityVector, FlowSpace, Multigraph, Orientation, Sign};
use proptest::prelude::*;

pub fn caps(v: &[u64]) -> CapacityVector {
    CapacityVector::new(v.to_vec()).expect("positive capacities")
}

/// Every vector in {lo, ..., hi}^m, first coordinate slowest.
pub fn grid(m: usize, lo: u64, hi: u64) -> Vec<Vec<u64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..m {
        out = out
            .into_iter()
            .flat_map(|p| {
                (lo..=hi).map(move |v| {
                    let mut q = p.clone();
                    q.push(v);
                    q
                })
            })
            .collect();
    }
    out
}

/// Calls `visit` on every integer vector with lo_e <= x_e <= hi_e that
/// satisfies conservation at every vertex.
fn scan_box(g: &Multigraph, lo: &[i64], hi: &[i64], mut visit: impl FnMut(&[i64])) {
    let m = g.edge_count();
    if lo.iter().zip(hi).any(|(a, b)| a > b) {
        return;
    }
    let mut x = lo.to_vec();
    loop {
        let mut balance = vec![0i64; g.vertex_count()];
        for (edge, &v) in g.edges().iter().zip(&x) {
            balance[edge.head] += v;
            balance[edge.tail] -= v;
        }
        if balance.iter().all(|&b| b == 0) {
            visit(&x);
        }
        let mut i = m;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if x[i] < hi[i] {
                x[i] += 1;
                break;
            }
            x[i] = lo[i];
        }
    }
}

/// Nowhere-zero flows with |x_e| < k_e, by scanning the whole box.
pub fn brute_nowhere_zero(g: &Multigraph, k: &[u64]) -> u64 {
    let hi: Vec<i64> = k.iter().map(|&k| k as i64 - 1).collect();
    let lo: Vec<i64> = hi.iter().map(|h| -h).collect();
    let mut n = 0;
    scan_box(g, &lo, &hi, |x| {
        if !x.contains(&0) {
            n += 1;
        }
    });
    n
}

/// Nowhere-zero Z_k flows, by scanning {0, ..., k-1}^E with conservation mod k.
pub fn brute_zk(g: &Multigraph, k: u64) -> u64 {
    let m = g.edge_count();
    if k == 1 {
        return u64::from(m == 0);
    }
    let k = k as i64;
    let mut x = vec![1i64; m];
    let mut n = 0;
    loop {
        let mut balance = vec![0i64; g.vertex_count()];
        for (edge, &v) in g.edges().iter().zip(&x) {
            balance[edge.head] += v;
            balance[edge.tail] -= v;
        }
        if balance.iter().all(|&b| b.rem_euclid(k) == 0) {
            n += 1;
        }
        let mut i = m;
        loop {
            if i == 0 {
                return n;
            }
            i -= 1;
            if x[i] < k - 1 {
                x[i] += 1;
                break;
            }
            x[i] = 1;
        }
    }
}

/// Sum over flows with |x_e| <= k_e of the number of orientations in
/// `tcos` that agree with the sign of x on its support.
pub fn brute_weighted(g: &Multigraph, k: &[u64], tcos: &[Orientation]) -> u64 {
    let hi: Vec<i64> = k.iter().map(|&k| k as i64).collect();
    let lo: Vec<i64> = hi.iter().map(|h| -h).collect();
    let mut n = 0;
    scan_box(g, &lo, &hi, |x| {
        n += tcos
            .iter()
            .filter(|s| {
                x.iter().enumerate().all(|(e, &v)| match v.signum() {
                    0 => true,
                    1 => s.sign(e) == Sign::Plus,
                    _ => s.sign(e) == Sign::Minus,
                })
            })
            .count() as u64;
    });
    n
}

/// For every k in {1, ..., top}^E, the number of flows x within `ranges`
/// with key(e, x_e) < k_e on every edge, from one enumeration. Keys must lie
/// in 0..top. Returned in the order of [`grid`]`(m, 1, top)`.
pub fn grid_counts(
    space: &FlowSpace,
    ranges: &[EdgeRange],
    top: u64,
    key: impl Fn(usize, i64) -> i64,
) -> Vec<u64> {
    let m = ranges.len();
    let side = top as usize;
    let mut table = vec![0u64; side.pow(m as u32)];
    for x in space.enumerate(ranges) {
        let idx = x
            .values()
            .iter()
            .enumerate()
            .fold(0usize, |acc, (e, &v)| acc * side + key(e, v) as usize);
        table[idx] += 1;
    }
    // a flow with values v is counted at every k with k_e - 1 >= v_e
    for axis in 0..m {
        let stride = side.pow((m - 1 - axis) as u32);
        for idx in 0..table.len() {
            if !(idx / stride).is_multiple_of(side) {
                table[idx] += table[idx - stride];
            }
        }
    }
    table
}

/// Edge permutations induced by automorphisms of the underlying undirected
/// multigraph: `perm[e]` is the image of edge e. Parallel edges are matched
/// in stored order, so only one edge map per vertex map is listed.
pub fn automorphisms(g: &Multigraph) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let key = |a: usize, b: usize| (a.min(b), a.max(b));
    let mut classes: std::collections::BTreeMap<(usize, usize), Vec<usize>> = Default::default();
    for (e, edge) in g.edges().iter().enumerate() {
        classes
            .entry(key(edge.tail, edge.head))
            .or_default()
            .push(e);
    }
    let mut out = Vec::new();
    for pi in permutations(n) {
        let mut perm = vec![0; g.edge_count()];
        let ok = classes
            .iter()
            .all(|(&(a, b), edges)| match classes.get(&key(pi[a], pi[b])) {
                Some(image) if image.len() == edges.len() => {
                    for (&e, &f) in edges.iter().zip(image) {
                        perm[e] = f;
                    }
                    true
                }
                _ => false,
            });
        if ok && !out.contains(&perm) {
            out.push(perm);
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Graph and capacity inputs for one random case.
#[derive(Debug, Clone)]
pub struct Case {
    pub graph: Multigraph,
    pub k: Vec<u64>,
    /// Nonnegative increments for a dominating capacity vector.
    pub bump: Vec<u64>,
    pub flips: Vec<bool>,
    /// Index used to choose an automorphism or a shuffle.
    pub pick: usize,
}

/// Multigraphs on at most 6 vertices with at most 9 edges, loops and
/// parallel edges allowed, with capacities in 1..=top.
pub fn arb_case(top: u64) -> impl Strategy<Value = Case> {
    (1usize..=6)
        .prop_flat_map(move |n| {
            (
                Just(n),
                prop::collection::vec((0..n, 0..n), 0..=9),
                prop::collection::vec(1..=top, 9),
                prop::collection::vec(0u64..=2, 9),
                prop::collection::vec(any::<bool>(), 9),
                any::<usize>(),
            )
        })
        .prop_map(|(n, edges, k, bump, flips, pick)| {
            let m = edges.len();
            Case {
                graph: Multigraph::new(n, edges).expect("endpoints in range"),
                k: k[..m].to_vec(),
                bump: bump[..m].to_vec(),
                flips: flips[..m].to_vec(),
                pick,
            }
        })
}

pub fn orientation_from_flips(flips: &[bool]) -> Orientation {
    Orientation::new(
        flips
            .iter()
            .map(|&f| if f { Sign::Minus } else { Sign::Plus })
            .collect(),
    )
}
