//! Flow enumeration and counting.
//!
//! Every integer flow is determined by its values on the non-forest edges
//! (loops included): the forest edges are fixed integer combinations of those
//! values through the fundamental cycles. The search therefore iterates only
//! the cyclomatic-number many free coordinates, ordered by increasing range
//! width, and rejects a partial assignment as soon as some forest edge can no
//! longer be brought inside its bounds. The innermost free coordinate is not
//! iterated when counting: each forest edge restricts it to an interval, and
//! nowhere-zero constraints remove at most one value per edge.

use std::collections::HashMap;

use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{
    check_len, CapacityVector, FlowVector, Multigraph, Orientation, Sign, SpanningForest,
};
use crate::orientations;
use crate::par;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundMode {
    /// |x_e| < k_e
    Open,
    /// |x_e| <= k_e
    Closed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ZeroMode {
    NowhereZero,
    ZerosAllowed,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowCountQuery {
    pub capacities: CapacityVector,
    pub bound: BoundMode,
    pub zeros: ZeroMode,
}

impl FlowCountQuery {
    pub fn new(capacities: CapacityVector, bound: BoundMode, zeros: ZeroMode) -> Self {
        FlowCountQuery {
            capacities,
            bound,
            zeros,
        }
    }

    /// The nowhere-zero k-flows: |x_e| < k_e and x_e != 0.
    pub fn nowhere_zero(capacities: CapacityVector) -> Self {
        Self::new(capacities, BoundMode::Open, ZeroMode::NowhereZero)
    }

    /// Per-edge value ranges realising this query.
    pub fn ranges(&self) -> Vec<EdgeRange> {
        let nonzero = self.zeros == ZeroMode::NowhereZero;
        self.capacities
            .values()
            .iter()
            .map(|&k| {
                let b = match self.bound {
                    BoundMode::Open => k as i64 - 1,
                    BoundMode::Closed => k as i64,
                };
                EdgeRange {
                    lo: -b,
                    hi: b,
                    nonzero,
                }
            })
            .collect()
    }
}

/// Inclusive value range for one edge, optionally excluding zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgeRange {
    pub lo: i64,
    pub hi: i64,
    pub nonzero: bool,
}

impl EdgeRange {
    fn admits(&self, v: i64) -> bool {
        self.lo <= v && v <= self.hi && !(self.nonzero && v == 0)
    }

    fn is_empty(&self) -> bool {
        self.lo > self.hi || (self.nonzero && self.lo == 0 && self.hi == 0)
    }
}

/// Cycle-space coordinates of a graph: the free (non-forest) edges and, for
/// every forest edge, its coefficient on each free edge.
#[derive(Debug, Clone)]
pub struct FlowSpace {
    edge_count: usize,
    free: Vec<usize>,
    forest: Vec<usize>,
    /// coeff[t][j]: coefficient of free edge j in forest edge t.
    coeff: Vec<Vec<i8>>,
}

impl FlowSpace {
    pub fn new(g: &Multigraph) -> Self {
        Self::from_forest(g, &g.spanning_forest())
    }

    /// Coordinates whose free edges carry the smallest capacities, which
    /// keeps the search space small when capacities are uneven.
    pub fn for_capacities(g: &Multigraph, capacities: &[u64]) -> Self {
        Self::from_forest(g, &g.spanning_forest_by_weight(capacities))
    }

    fn from_forest(g: &Multigraph, forest: &SpanningForest) -> Self {
        let basis = g.fundamental_cycle_basis_of(forest);
        let forest = forest.tree_edges();
        let free: Vec<usize> = basis.iter().map(|c| c.chord).collect();
        let coeff = forest
            .iter()
            .map(|&t| basis.iter().map(|c| c.coeffs[t]).collect())
            .collect();
        FlowSpace {
            edge_count: g.edge_count(),
            free,
            forest,
            coeff,
        }
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn free_edges(&self) -> &[usize] {
        &self.free
    }

    /// Counts flows with x_e in `ranges[e]` for every edge.
    pub fn count(&self, ranges: &[EdgeRange]) -> u128 {
        match Search::new(self, ranges) {
            Some(s) => s.count(),
            None => 0,
        }
    }

    /// Visits every flow with x_e in `ranges[e]`. Partitions of the search are
    /// processed in parallel, each with its own state from `init`; the states
    /// come back in a fixed order.
    pub fn fold_partitions<S, I, V>(&self, ranges: &[EdgeRange], init: I, visit: V) -> Vec<S>
    where
        S: Send,
        I: Fn() -> S + Sync + Send,
        V: Fn(&mut S, &[i64]) + Sync + Send,
    {
        match Search::new(self, ranges) {
            Some(s) => s.fold(init, visit),
            None => Vec::new(),
        }
    }

    pub fn enumerate(&self, ranges: &[EdgeRange]) -> Vec<FlowVector> {
        self.fold_partitions(ranges, Vec::new, |out: &mut Vec<FlowVector>, x| {
            out.push(FlowVector::new(x.to_vec()))
        })
        .into_iter()
        .flatten()
        .collect()
    }

    /// Nowhere-zero counts with |x_e| < base_e + δ_e for every δ >= 0 with
    /// |δ| <= d, from a single pass over the largest box. Returns the counts in
    /// the order of `deltas`.
    pub fn count_lattice(&self, base: &[u64], d: usize, deltas: &[Vec<u32>]) -> Vec<u128> {
        assert!(d < u8::MAX as usize, "lattice order too large");
        let single = |delta: &Vec<u32>| {
            let ranges: Vec<EdgeRange> = base
                .iter()
                .zip(delta)
                .map(|(&b, &x)| {
                    let k = (b + u64::from(x)) as i64;
                    EdgeRange {
                        lo: 1 - k,
                        hi: k - 1,
                        nonzero: true,
                    }
                })
                .collect();
            self.count(&ranges)
        };
        if self.free.is_empty() {
            return deltas.iter().map(single).collect();
        }
        let ranges: Vec<EdgeRange> = base
            .iter()
            .map(|&b| {
                let k = (b + d as u64) as i64;
                EdgeRange {
                    lo: 1 - k,
                    hi: k - 1,
                    nonzero: true,
                }
            })
            .collect();
        let Some(search) = Search::new(self, &ranges) else {
            return vec![0; deltas.len()];
        };
        let hist = ExcessHistogram {
            search: &search,
            thresh: base.iter().map(|&b| b as i64 - 1).collect(),
            d: d as u32,
        }
        .run();
        deltas
            .iter()
            .map(|delta| {
                hist.iter()
                    .filter(|(n, _)| n.iter().zip(delta).all(|(&a, &b)| u32::from(a) <= b))
                    .map(|(_, &c)| c)
                    .sum()
            })
            .collect()
    }

    /// Nowhere-zero Z_k flows: nonzero residues on free edges, forest values
    /// reduced mod k and required nonzero.
    pub fn count_zk(&self, k: u64) -> u128 {
        if self.edge_count == 0 {
            return 1;
        }
        if k <= 1 {
            return 0;
        }
        ZkSearch::new(self, k as i64).map_or(0, |s| s.count())
    }
}

struct Search<'a> {
    space: &'a FlowSpace,
    ranges: &'a [EdgeRange],
    /// Free-edge indices in iteration order.
    order: Vec<usize>,
    /// For each level, the (forest index, coefficient) pairs touched.
    touched: Vec<Vec<(usize, i64)>>,
    /// Min/max contribution to each forest edge from levels >= l.
    rem_min: Vec<Vec<i64>>,
    rem_max: Vec<Vec<i64>>,
    /// Forest edges that become fully determined at each level.
    settled: Vec<Vec<usize>>,
}

impl<'a> Search<'a> {
    /// `None` when no flow can exist (an empty range, or a forest edge that no
    /// free edge touches and whose range excludes zero).
    fn new(space: &'a FlowSpace, ranges: &'a [EdgeRange]) -> Option<Self> {
        if ranges.iter().any(EdgeRange::is_empty) {
            return None;
        }
        let mut order: Vec<usize> = (0..space.free.len()).collect();
        order.sort_by_key(|&j| {
            let r = ranges[space.free[j]];
            (r.hi - r.lo, j)
        });
        let levels = order.len();
        let touched: Vec<Vec<(usize, i64)>> = order
            .iter()
            .map(|&j| {
                (0..space.forest.len())
                    .filter(|&t| space.coeff[t][j] != 0)
                    .map(|t| (t, i64::from(space.coeff[t][j])))
                    .collect()
            })
            .collect();
        let nf = space.forest.len();
        let mut rem_min = vec![vec![0i64; nf]; levels + 1];
        let mut rem_max = vec![vec![0i64; nf]; levels + 1];
        for l in (0..levels).rev() {
            let r = ranges[space.free[order[l]]];
            let (mut lo_row, mut hi_row) = (rem_min[l + 1].clone(), rem_max[l + 1].clone());
            for &(t, c) in &touched[l] {
                let (a, b) = (c * r.lo, c * r.hi);
                lo_row[t] += a.min(b);
                hi_row[t] += a.max(b);
            }
            rem_min[l] = lo_row;
            rem_max[l] = hi_row;
        }
        let mut settled = vec![Vec::new(); levels];
        for t in 0..nf {
            match (0..levels)
                .rev()
                .find(|&l| touched[l].iter().any(|&(u, _)| u == t))
            {
                Some(l) => settled[l].push(t),
                None => {
                    if !ranges[space.forest[t]].admits(0) {
                        return None;
                    }
                }
            }
        }
        Some(Search {
            space,
            ranges,
            order,
            touched,
            rem_min,
            rem_max,
            settled,
        })
    }

    fn levels(&self) -> usize {
        self.order.len()
    }

    fn free_range(&self, level: usize) -> EdgeRange {
        self.ranges[self.space.free[self.order[level]]]
    }

    fn forest_range(&self, t: usize) -> EdgeRange {
        self.ranges[self.space.forest[t]]
    }

    /// Adds `v` at `level` into the partial sums and reports whether the
    /// assignment can still be completed.
    fn assign(&self, level: usize, v: i64, partial: &mut [i64]) -> bool {
        for &(t, c) in &self.touched[level] {
            partial[t] += c * v;
        }
        let next = level + 1;
        self.touched[level].iter().all(|&(t, _)| {
            let r = self.forest_range(t);
            partial[t] + self.rem_min[next][t] <= r.hi && partial[t] + self.rem_max[next][t] >= r.lo
        }) && self.settled[level]
            .iter()
            .all(|&t| !(self.forest_range(t).nonzero && partial[t] == 0))
    }

    fn unassign(&self, level: usize, v: i64, partial: &mut [i64]) {
        for &(t, c) in &self.touched[level] {
            partial[t] -= c * v;
        }
    }

    /// Admissible interval for the last free coordinate and the values inside
    /// it that would put a zero on a nowhere-zero edge.
    fn last_interval(&self, partial: &[i64], excluded: &mut Vec<i64>) -> Option<(i64, i64)> {
        let level = self.levels() - 1;
        let r = self.free_range(level);
        let (mut lo, mut hi) = (r.lo, r.hi);
        excluded.clear();
        if r.nonzero {
            excluded.push(0);
        }
        for &(t, c) in &self.touched[level] {
            let fr = self.forest_range(t);
            let p = partial[t];
            let (a, b) = if c > 0 {
                (fr.lo - p, fr.hi - p)
            } else {
                (p - fr.hi, p - fr.lo)
            };
            lo = lo.max(a);
            hi = hi.min(b);
            if fr.nonzero {
                excluded.push(-c * p);
            }
        }
        if lo > hi {
            return None;
        }
        excluded.retain(|&y| lo <= y && y <= hi);
        excluded.sort_unstable();
        excluded.dedup();
        Some((lo, hi))
    }

    fn count_last(&self, partial: &[i64], scratch: &mut Vec<i64>) -> u128 {
        match self.last_interval(partial, scratch) {
            Some((lo, hi)) => (hi - lo + 1) as u128 - scratch.len() as u128,
            None => 0,
        }
    }

    fn count_from(&self, level: usize, partial: &mut [i64], scratch: &mut Vec<i64>) -> u128 {
        if level + 1 == self.levels() {
            return self.count_last(partial, scratch);
        }
        let r = self.free_range(level);
        let mut total = 0;
        for v in r.lo..=r.hi {
            if r.nonzero && v == 0 {
                continue;
            }
            if self.assign(level, v, partial) {
                total += self.count_from(level + 1, partial, scratch);
            }
            self.unassign(level, v, partial);
        }
        total
    }

    fn count(&self) -> u128 {
        let nf = self.space.forest.len();
        match self.levels() {
            0 => 1,
            1 => self.count_last(&vec![0; nf], &mut Vec::new()),
            _ => {
                let r = self.free_range(0);
                par::map_range(r.lo, r.hi, |v| {
                    if r.nonzero && v == 0 {
                        return 0;
                    }
                    let mut partial = vec![0; nf];
                    if !self.assign(0, v, &mut partial) {
                        return 0;
                    }
                    self.count_from(1, &mut partial, &mut Vec::new())
                })
                .into_iter()
                .sum()
            }
        }
    }

    fn emit<S>(
        &self,
        partial: &[i64],
        x: &mut [i64],
        state: &mut S,
        visit: &impl Fn(&mut S, &[i64]),
    ) {
        for (t, &e) in self.space.forest.iter().enumerate() {
            x[e] = partial[t];
        }
        visit(state, x);
    }

    fn visit_last<S>(
        &self,
        partial: &[i64],
        x: &mut [i64],
        state: &mut S,
        visit: &impl Fn(&mut S, &[i64]),
    ) {
        let mut excluded = Vec::new();
        let Some((lo, hi)) = self.last_interval(partial, &mut excluded) else {
            return;
        };
        let level = self.levels() - 1;
        let free_edge = self.space.free[self.order[level]];
        let mut full = partial.to_vec();
        for y in lo..=hi {
            if excluded.binary_search(&y).is_ok() {
                continue;
            }
            for &(t, c) in &self.touched[level] {
                full[t] = partial[t] + c * y;
            }
            x[free_edge] = y;
            self.emit(&full, x, state, visit);
        }
    }

    fn visit_from<S>(
        &self,
        level: usize,
        partial: &mut [i64],
        x: &mut [i64],
        state: &mut S,
        visit: &impl Fn(&mut S, &[i64]),
    ) {
        if level + 1 == self.levels() {
            return self.visit_last(partial, x, state, visit);
        }
        let r = self.free_range(level);
        let free_edge = self.space.free[self.order[level]];
        for v in r.lo..=r.hi {
            if r.nonzero && v == 0 {
                continue;
            }
            if self.assign(level, v, partial) {
                x[free_edge] = v;
                self.visit_from(level + 1, partial, x, state, visit);
            }
            self.unassign(level, v, partial);
        }
    }

    fn fold<S, I, V>(&self, init: I, visit: V) -> Vec<S>
    where
        S: Send,
        I: Fn() -> S + Sync + Send,
        V: Fn(&mut S, &[i64]) + Sync + Send,
    {
        let m = self.space.edge_count;
        let nf = self.space.forest.len();
        match self.levels() {
            0 => {
                let mut s = init();
                let x = vec![0; m];
                visit(&mut s, &x);
                vec![s]
            }
            1 => {
                let mut s = init();
                let mut x = vec![0; m];
                self.visit_last(&vec![0; nf], &mut x, &mut s, &visit);
                vec![s]
            }
            _ => {
                let r = self.free_range(0);
                let free_edge = self.space.free[self.order[0]];
                par::map_range(r.lo, r.hi, |v| {
                    let mut s = init();
                    if r.nonzero && v == 0 {
                        return s;
                    }
                    let mut partial = vec![0; nf];
                    if self.assign(0, v, &mut partial) {
                        let mut x = vec![0; m];
                        x[free_edge] = v;
                        self.visit_from(1, &mut partial, &mut x, &mut s, &visit);
                    }
                    s
                })
            }
        }
    }
}

/// Histogram of nowhere-zero flows in the box |x_e| <= base_e + d - 1, keyed
/// by the excess vector n_e = max(0, |x_e| - base_e + 1) and restricted to
/// total excess at most d. A flow is counted at capacity base + δ exactly
/// when n <= δ.
struct ExcessHistogram<'s, 'a> {
    search: &'s Search<'a>,
    /// base_e - 1 per edge.
    thresh: Vec<i64>,
    d: u32,
}

type Histogram = HashMap<Vec<u8>, u128>;

impl ExcessHistogram<'_, '_> {
    fn excess(&self, e: usize, w: i64) -> u32 {
        (w.abs() - self.thresh[e]).max(0) as u32
    }

    fn settled_excess(&self, level: usize, partial: &[i64]) -> u32 {
        self.search.settled[level]
            .iter()
            .map(|&t| self.excess(self.search.space.forest[t], partial[t]))
            .sum()
    }

    fn set_settled(&self, level: usize, partial: &[i64], need: &mut [u8], clear: bool) {
        for &t in &self.search.settled[level] {
            let e = self.search.space.forest[t];
            need[e] = if clear {
                0
            } else {
                self.excess(e, partial[t]) as u8
            };
        }
    }

    fn descend(
        &self,
        level: usize,
        partial: &mut [i64],
        need: &mut [u8],
        sum: u32,
        hist: &mut Histogram,
    ) {
        let s = self.search;
        if level + 1 == s.levels() {
            return self.last(partial, need, sum, hist);
        }
        let r = s.free_range(level);
        let e = s.space.free[s.order[level]];
        for v in r.lo..=r.hi {
            if r.nonzero && v == 0 {
                continue;
            }
            let nv = self.excess(e, v);
            if sum + nv > self.d {
                continue;
            }
            if s.assign(level, v, partial) {
                let total = sum + nv + self.settled_excess(level, partial);
                if total <= self.d {
                    need[e] = nv as u8;
                    self.set_settled(level, partial, need, false);
                    self.descend(level + 1, partial, need, total, hist);
                    self.set_settled(level, partial, need, true);
                    need[e] = 0;
                }
            }
            s.unassign(level, v, partial);
        }
    }

    /// Bins the last free coordinate. The total excess is convex in it, so
    /// the admissible values form an interval around a minimiser; the stretch
    /// with zero added excess is binned in one step.
    fn last(&self, partial: &[i64], need: &[u8], sum: u32, hist: &mut Histogram) {
        let s = self.search;
        let mut excluded = Vec::new();
        let Some((lo, hi)) = s.last_interval(partial, &mut excluded) else {
            return;
        };
        let level = s.levels() - 1;
        // (edge, offset, coefficient): the edge carries offset + coefficient * y
        let mut rel: Vec<(usize, i64, i64)> = vec![(s.space.free[s.order[level]], 0, 1)];
        rel.extend(
            s.touched[level]
                .iter()
                .map(|&(t, c)| (s.space.forest[t], partial[t], c)),
        );
        let budget = self.d - sum;
        let total =
            |y: i64| -> u32 { rel.iter().map(|&(e, p, c)| self.excess(e, p + c * y)).sum() };
        let bin = |y: i64, hist: &mut Histogram| {
            if excluded.binary_search(&y).is_ok() {
                return;
            }
            let mut key = need.to_vec();
            for &(e, p, c) in &rel {
                key[e] += self.excess(e, p + c * y) as u8;
            }
            *hist.entry(key).or_insert(0) += 1;
        };
        // zero-excess window for each edge: |p + c y| <= thresh
        let windows: Vec<(i64, i64)> = rel
            .iter()
            .map(|&(e, p, c)| {
                let t = self.thresh[e];
                if c > 0 {
                    (-t - p, t - p)
                } else {
                    (p - t, p + t)
                }
            })
            .collect();
        let zlo = windows.iter().map(|w| w.0).max().unwrap_or(lo).max(lo);
        let zhi = windows.iter().map(|w| w.1).min().unwrap_or(hi).min(hi);
        let (start_lo, start_hi) = if zlo <= zhi {
            let inside = excluded.iter().filter(|&&y| zlo <= y && y <= zhi).count();
            *hist.entry(need.to_vec()).or_insert(0) += (zhi - zlo + 1) as u128 - inside as u128;
            (zlo - 1, zhi + 1)
        } else {
            let mut best: Option<(u32, i64)> = None;
            for y in windows.iter().flat_map(|&(a, b)| [a, b]).chain([lo, hi]) {
                if (lo..=hi).contains(&y) {
                    let v = total(y);
                    if best.is_none_or(|(b, _)| v < b) {
                        best = Some((v, y));
                    }
                }
            }
            let (v, y) = best.expect("nonempty interval");
            if v > budget {
                return;
            }
            bin(y, hist);
            (y - 1, y + 1)
        };
        let mut y = start_hi;
        while y <= hi && total(y) <= budget {
            bin(y, hist);
            y += 1;
        }
        let mut y = start_lo;
        while y >= lo && total(y) <= budget {
            bin(y, hist);
            y -= 1;
        }
    }

    fn run(&self) -> Histogram {
        let s = self.search;
        let m = s.space.edge_count;
        let nf = s.space.forest.len();
        let merge = |parts: Vec<Histogram>| {
            let mut out = Histogram::new();
            for h in parts {
                for (k, v) in h {
                    *out.entry(k).or_insert(0) += v;
                }
            }
            out
        };
        match s.levels() {
            0 => unreachable!("handled by the caller"),
            1 => {
                let mut h = Histogram::new();
                self.last(&vec![0; nf], &vec![0; m], 0, &mut h);
                h
            }
            _ => {
                let r = s.free_range(0);
                let e = s.space.free[s.order[0]];
                merge(par::map_range(r.lo, r.hi, |v| {
                    let mut h = Histogram::new();
                    if r.nonzero && v == 0 {
                        return h;
                    }
                    let nv = self.excess(e, v);
                    let mut partial = vec![0; nf];
                    if nv <= self.d && s.assign(0, v, &mut partial) {
                        let total = nv + self.settled_excess(0, &partial);
                        if total <= self.d {
                            let mut need = vec![0u8; m];
                            need[e] = nv as u8;
                            self.set_settled(0, &partial, &mut need, false);
                            self.descend(1, &mut partial, &mut need, total, &mut h);
                        }
                    }
                    h
                }))
            }
        }
    }
}

struct ZkSearch<'a> {
    space: &'a FlowSpace,
    k: i64,
    touched: Vec<Vec<(usize, i64)>>,
    settled: Vec<Vec<usize>>,
}

impl<'a> ZkSearch<'a> {
    fn new(space: &'a FlowSpace, k: i64) -> Option<Self> {
        let levels = space.free.len();
        let touched: Vec<Vec<(usize, i64)>> = (0..levels)
            .map(|j| {
                (0..space.forest.len())
                    .filter(|&t| space.coeff[t][j] != 0)
                    .map(|t| (t, i64::from(space.coeff[t][j])))
                    .collect()
            })
            .collect();
        let mut settled = vec![Vec::new(); levels];
        for t in 0..space.forest.len() {
            let l = (0..levels)
                .rev()
                .find(|&l| touched[l].iter().any(|&(u, _)| u == t))?;
            settled[l].push(t);
        }
        Some(ZkSearch {
            space,
            k,
            touched,
            settled,
        })
    }

    fn count_last(&self, partial: &[i64]) -> u128 {
        let level = self.touched.len() - 1;
        let mut excluded: Vec<i64> = self.touched[level]
            .iter()
            .map(|&(t, c)| (-c * partial[t]).rem_euclid(self.k))
            .filter(|&y| y != 0)
            .collect();
        excluded.sort_unstable();
        excluded.dedup();
        (self.k - 1 - excluded.len() as i64) as u128
    }

    fn count_from(&self, level: usize, partial: &mut [i64]) -> u128 {
        if level + 1 == self.touched.len() {
            return self.count_last(partial);
        }
        let mut total = 0;
        for v in 1..self.k {
            for &(t, c) in &self.touched[level] {
                partial[t] = (partial[t] + c * v).rem_euclid(self.k);
            }
            if self.settled[level].iter().all(|&t| partial[t] != 0) {
                total += self.count_from(level + 1, partial);
            }
            for &(t, c) in &self.touched[level] {
                partial[t] = (partial[t] - c * v).rem_euclid(self.k);
            }
        }
        total
    }

    fn count(&self) -> u128 {
        let nf = self.space.forest.len();
        match self.touched.len() {
            0 => u128::from(nf == 0),
            1 => self.count_last(&vec![0; nf]),
            _ => par::map_range(1, self.k - 1, |v| {
                let mut partial = vec![0; nf];
                for &(t, c) in &self.touched[0] {
                    partial[t] = (c * v).rem_euclid(self.k);
                }
                if self.settled[0].iter().any(|&t| partial[t] == 0) {
                    return 0;
                }
                self.count_from(1, &mut partial)
            })
            .into_iter()
            .sum(),
        }
    }
}

fn check_query(g: &Multigraph, q: &FlowCountQuery) -> Result<()> {
    check_len("capacity vector", g.edge_count(), q.capacities.len())
}

/// All integer flows matching `q`, each once.
pub fn enumerate_flows(g: &Multigraph, q: &FlowCountQuery) -> Result<Vec<FlowVector>> {
    check_query(g, q)?;
    Ok(FlowSpace::for_capacities(g, q.capacities.values()).enumerate(&q.ranges()))
}

pub fn count_flows(g: &Multigraph, q: &FlowCountQuery) -> Result<BigUint> {
    check_query(g, q)?;
    Ok(FlowSpace::for_capacities(g, q.capacities.values())
        .count(&q.ranges())
        .into())
}

/// Number of nowhere-zero flows with |x_e| < k_e.
pub fn count_nowhere_zero_kvec(g: &Multigraph, k: &CapacityVector) -> Result<BigUint> {
    count_flows(g, &FlowCountQuery::nowhere_zero(k.clone()))
}

/// Number of nowhere-zero flows with values in {-k+1, ..., k-1}.
pub fn count_nowhere_zero_integer(g: &Multigraph, k: u64) -> Result<BigUint> {
    let caps = CapacityVector::uniform(g.edge_count(), k)
        .map_err(|_| Error::InvalidArgument("k must be at least 1".into()))?;
    count_nowhere_zero_kvec(g, &caps)
}

/// Number of nowhere-zero Z_k flows.
pub fn count_nowhere_zero_zk(g: &Multigraph, k: u64) -> Result<BigUint> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    Ok(FlowSpace::new(g).count_zk(k).into())
}

fn require_totally_cyclic(g: &Multigraph, sigma: &Orientation) -> Result<()> {
    if orientations::is_totally_cyclic(g, sigma)? {
        Ok(())
    } else {
        Err(Error::NotTotallyCyclic(sigma.to_string()))
    }
}

/// Ranges putting sigma_e * x_e in (0, k_e) or [0, k_e].
pub(crate) fn oriented_ranges(sigma: &Orientation, k: &[u64], bound: BoundMode) -> Vec<EdgeRange> {
    sigma
        .signs()
        .zip(k)
        .map(|(s, &k)| {
            let (lo, hi) = match bound {
                BoundMode::Open => (1, k as i64 - 1),
                BoundMode::Closed => (0, k as i64),
            };
            match s {
                Sign::Plus => EdgeRange {
                    lo,
                    hi,
                    nonzero: false,
                },
                Sign::Minus => EdgeRange {
                    lo: -hi,
                    hi: -lo,
                    nonzero: false,
                },
            }
        })
        .collect()
}

/// #{x : A_sigma x = 0, 0 < x_e < k_e}, counted in reference coordinates
/// (the reoriented flow x' relates to x by x'_e = sigma_e x_e).
pub fn per_orientation_open_count(
    g: &Multigraph,
    sigma: &Orientation,
    k: &CapacityVector,
) -> Result<BigUint> {
    check_len("capacity vector", g.edge_count(), k.len())?;
    require_totally_cyclic(g, sigma)?;
    let ranges = oriented_ranges(sigma, k.values(), BoundMode::Open);
    Ok(FlowSpace::for_capacities(g, k.values())
        .count(&ranges)
        .into())
}

/// #{x : A_sigma x = 0, 0 <= x_e <= k_e}.
pub fn per_orientation_closed_count(
    g: &Multigraph,
    sigma: &Orientation,
    k: &CapacityVector,
) -> Result<BigUint> {
    check_len("capacity vector", g.edge_count(), k.len())?;
    require_totally_cyclic(g, sigma)?;
    let ranges = oriented_ranges(sigma, k.values(), BoundMode::Closed);
    Ok(FlowSpace::for_capacities(g, k.values())
        .count(&ranges)
        .into())
}

/// Sum over flows with |x_e| <= k_e of the number of compatible totally
/// cyclic orientations. Bounds may be zero; all-zero bounds scan only the
/// zero flow.
pub fn weighted_tco_flow_count(g: &Multigraph, bounds: &[u64]) -> Result<BigUint> {
    weighted_tco_flow_count_with(g, bounds, &orientations::enumerate_totally_cyclic(g)?)
}

/// As [`weighted_tco_flow_count`], reusing an already enumerated set of
/// totally cyclic orientations.
pub fn weighted_tco_flow_count_with(
    g: &Multigraph,
    bounds: &[u64],
    tcos: &orientations::OrientationSet,
) -> Result<BigUint> {
    check_len("bound vector", g.edge_count(), bounds.len())?;
    if g.edge_count() > 64 {
        return Err(Error::EnumerationCap {
            edges: g.edge_count(),
            cap: 64,
        });
    }
    let masks = tcos.masks();
    let ranges: Vec<EdgeRange> = bounds
        .iter()
        .map(|&b| EdgeRange {
            lo: -(b as i64),
            hi: b as i64,
            nonzero: false,
        })
        .collect();
    let partials = FlowSpace::for_capacities(g, bounds).fold_partitions(
        &ranges,
        || (0u128, HashMap::<(u64, u64), u64>::new()),
        |(total, cache), x| {
            let (support, negative) = sign_pattern(x);
            let n = *cache.entry((support, negative)).or_insert_with(|| {
                masks.iter().filter(|&&s| s & support == negative).count() as u64
            });
            *total += u128::from(n);
        },
    );
    Ok(partials.into_iter().map(|(t, _)| t).sum::<u128>().into())
}

/// Bitmasks of the nonzero edges and of the negative edges.
pub(crate) fn sign_pattern(x: &[i64]) -> (u64, u64) {
    x.iter().enumerate().fold((0, 0), |(s, n), (e, &v)| {
        let bit = 1u64 << e;
        match v.signum() {
            0 => (s, n),
            1 => (s | bit, n),
            _ => (s | bit, n | bit),
        }
    })
}
