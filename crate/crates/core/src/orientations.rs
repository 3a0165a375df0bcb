//! Totally cyclic orientations.
//!
//! An orientation is totally cyclic when every edge lies on a directed cycle.
//! For a non-loop edge u->v that means v reaches u, i.e. u and v share a
//! strongly connected component; equivalently every connected component of
//! the graph is strongly connected under the orientation. Loops are always
//! cyclic, and isolated vertices impose nothing.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::{check_len, FlowVector, Multigraph, Orientation, Sign};
use crate::par;

/// Default bound on |E| for exhaustive 2^|E| enumeration.
pub const DEFAULT_ENUMERATION_CAP: usize = 24;

/// Reusable total-cyclicity test for one graph, taking orientations as
/// bitmasks (bit e set means edge e is reversed).
pub struct CyclicityTester<'g> {
    g: &'g Multigraph,
    /// Smallest vertex of each connected component.
    roots: Vec<usize>,
}

impl<'g> CyclicityTester<'g> {
    pub fn new(g: &'g Multigraph) -> Self {
        let labels = g.component_labels();
        let mut roots = Vec::new();
        for (v, &l) in labels.iter().enumerate() {
            if l == roots.len() {
                roots.push(v);
            }
        }
        CyclicityTester { g, roots }
    }

    pub fn is_totally_cyclic_mask(&self, mask: u64) -> bool {
        let n = self.g.vertex_count();
        let mut out = vec![Vec::new(); n];
        let mut inc = vec![Vec::new(); n];
        for (e, edge) in self.g.edges().iter().enumerate() {
            if edge.is_loop() {
                continue;
            }
            let (a, b) = if mask >> e & 1 == 1 {
                (edge.head, edge.tail)
            } else {
                (edge.tail, edge.head)
            };
            out[a].push(b);
            inc[b].push(a);
        }
        let forward = reach(&out, &self.roots);
        let backward = reach(&inc, &self.roots);
        (0..n).all(|v| forward[v] && backward[v])
    }
}

fn reach(adj: &[Vec<usize>], roots: &[usize]) -> Vec<bool> {
    let mut seen = vec![false; adj.len()];
    let mut queue: VecDeque<usize> = roots.iter().copied().collect();
    for &r in roots {
        seen[r] = true;
    }
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    seen
}

pub fn is_totally_cyclic(g: &Multigraph, sigma: &Orientation) -> Result<bool> {
    check_len("orientation", g.edge_count(), sigma.len())?;
    if g.edge_count() > 64 {
        return Ok(slow_is_totally_cyclic(g, sigma));
    }
    Ok(CyclicityTester::new(g).is_totally_cyclic_mask(sigma.to_mask()))
}

fn slow_is_totally_cyclic(g: &Multigraph, sigma: &Orientation) -> bool {
    let directed = g.reoriented(sigma).expect("length checked");
    let n = g.vertex_count();
    let mut out = vec![Vec::new(); n];
    for e in directed.edges() {
        out[e.tail].push(e.head);
    }
    directed
        .edges()
        .iter()
        .all(|e| e.is_loop() || reach(&out, &[e.head])[e.tail])
}

/// Totally cyclic orientations in lexicographic order of their sign strings
/// (`+` before `-`, edge 0 first).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct OrientationSet {
    orientations: Vec<Orientation>,
}

impl OrientationSet {
    pub fn len(&self) -> usize {
        self.orientations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orientations.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Orientation> {
        self.orientations.iter()
    }

    pub fn contains(&self, sigma: &Orientation) -> bool {
        self.orientations.binary_search(sigma).is_ok()
    }

    pub fn masks(&self) -> Vec<u64> {
        self.orientations.iter().map(Orientation::to_mask).collect()
    }

    pub fn into_vec(self) -> Vec<Orientation> {
        self.orientations
    }
}

pub fn enumerate_totally_cyclic(g: &Multigraph) -> Result<OrientationSet> {
    enumerate_totally_cyclic_capped(g, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_totally_cyclic_capped(g: &Multigraph, cap: usize) -> Result<OrientationSet> {
    let m = g.edge_count();
    if m > cap || m > 63 {
        return Err(Error::EnumerationCap { edges: m, cap });
    }
    let tester = CyclicityTester::new(g);
    // Walk lexicographic ranks; rank bit (m-1-e) is the sign of edge e.
    let to_mask = |rank: u64| (0..m).fold(0u64, |acc, e| acc | ((rank >> (m - 1 - e)) & 1) << e);
    let total = 1u64 << m;
    let chunk = 1u64 << m.min(12);
    let chunks: Vec<u64> = (0..total.div_ceil(chunk)).collect();
    let found: Vec<Vec<Orientation>> = par::map(&chunks, |&c| {
        (c * chunk..((c + 1) * chunk).min(total))
            .map(to_mask)
            .filter(|&mask| tester.is_totally_cyclic_mask(mask))
            .map(|mask| Orientation::from_mask(m, mask))
            .collect()
    });
    Ok(OrientationSet {
        orientations: found.into_iter().flatten().collect(),
    })
}

/// Per-edge constraint on a compatible orientation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Constraint {
    Fixed(Sign),
    Free,
}

/// The orientations compatible with a flow: negative edges reversed,
/// positive edges kept, zero edges free.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompatibilityPattern(Vec<Constraint>);

impl CompatibilityPattern {
    pub fn from_flow(x: &FlowVector) -> Self {
        CompatibilityPattern(
            x.values()
                .iter()
                .map(|&v| match v.signum() {
                    1 => Constraint::Fixed(Sign::Plus),
                    -1 => Constraint::Fixed(Sign::Minus),
                    _ => Constraint::Free,
                })
                .collect(),
        )
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.0
    }

    pub fn free_edges(&self) -> Vec<usize> {
        (0..self.0.len())
            .filter(|&e| self.0[e] == Constraint::Free)
            .collect()
    }

    pub fn admits(&self, sigma: &Orientation) -> bool {
        self.0.iter().zip(sigma.signs()).all(|(c, s)| match c {
            Constraint::Fixed(f) => *f == s,
            Constraint::Free => true,
        })
    }
}

/// Number of totally cyclic orientations compatible with the flow `x`,
/// found by completing the sign pattern on the zero edges in every way.
pub fn count_compatible_tco(g: &Multigraph, x: &FlowVector) -> Result<u64> {
    let reference = Orientation::reference(g.edge_count());
    if let Some(vertex) = g.conservation_violation(&reference, x)? {
        return Err(Error::NotAFlow { vertex });
    }
    let pattern = CompatibilityPattern::from_flow(x);
    let free = pattern.free_edges();
    if free.len() > DEFAULT_ENUMERATION_CAP || g.edge_count() > 64 {
        return Err(Error::EnumerationCap {
            edges: free.len(),
            cap: DEFAULT_ENUMERATION_CAP,
        });
    }
    let forced = x
        .values()
        .iter()
        .enumerate()
        .filter(|(_, &v)| v < 0)
        .fold(0u64, |m, (e, _)| m | 1 << e);
    let tester = CyclicityTester::new(g);
    Ok(par::sum_range_u64(0, 1u64 << free.len(), |bits| {
        let mask = free
            .iter()
            .enumerate()
            .filter(|(i, _)| bits >> i & 1 == 1)
            .fold(forced, |m, (_, &e)| m | 1 << e);
        u64::from(tester.is_totally_cyclic_mask(mask))
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn tc(g: &Multigraph, s: &str) -> bool {
        is_totally_cyclic(g, &s.parse().unwrap()).unwrap()
    }

    /// Direct search: edge u->v is on a directed cycle iff v reaches u.
    fn brute_tc(g: &Multigraph, sigma: &Orientation) -> bool {
        slow_is_totally_cyclic(g, sigma)
    }

    #[test]
    fn k3_examples() {
        let g = corpus::k3();
        assert!(tc(&g, "+++"));
        assert!(!tc(&g, "++-"));
    }

    #[test]
    fn three_k2_examples() {
        let g = corpus::three_k2();
        assert!(!tc(&g, "+++"));
        assert!(tc(&g, "++-"));
        for mask in 0..8 {
            let s = Orientation::from_mask(3, mask);
            assert_eq!(is_totally_cyclic(&g, &s).unwrap(), brute_tc(&g, &s));
        }
    }

    #[test]
    fn tester_matches_direct_search_on_corpus() {
        for (_, g) in corpus::all() {
            let m = g.edge_count();
            let tester = CyclicityTester::new(&g);
            for mask in (0..1u64 << m).step_by(7) {
                let s = Orientation::from_mask(m, mask);
                assert_eq!(tester.is_totally_cyclic_mask(mask), brute_tc(&g, &s));
            }
        }
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_totally_cyclic(&corpus::k3()).unwrap().len(), 2);
        assert_eq!(
            enumerate_totally_cyclic(&corpus::three_k2()).unwrap().len(),
            6
        );
        let two = enumerate_totally_cyclic(&corpus::two_k2()).unwrap();
        let names: Vec<String> = two.iter().map(|o| o.to_string()).collect();
        assert_eq!(names, vec!["+-", "-+"]);
        let k3: Vec<String> = enumerate_totally_cyclic(&corpus::k3())
            .unwrap()
            .iter()
            .map(|o| o.to_string())
            .collect();
        assert_eq!(k3, vec!["+++", "---"]);
        assert!(enumerate_totally_cyclic(&corpus::bridge())
            .unwrap()
            .is_empty());
        let edgeless = Multigraph::new(2, []).unwrap();
        assert_eq!(enumerate_totally_cyclic(&edgeless).unwrap().len(), 1);
    }

    #[test]
    fn enumeration_is_sorted_and_closed_under_reversal() {
        for (_, g) in corpus::all() {
            let set = enumerate_totally_cyclic(&g).unwrap();
            let v = set.clone().into_vec();
            let mut s = v.clone();
            s.sort();
            s.dedup();
            assert_eq!(v, s);
            for o in set.iter() {
                assert!(set.contains(&o.reversed()));
            }
            if g.edge_count() > 0 {
                assert_eq!(set.len() % 2, 0);
            }
        }
    }

    #[test]
    fn enumeration_cap() {
        let err = enumerate_totally_cyclic_capped(&corpus::prism(), 8).unwrap_err();
        assert_eq!(err, Error::EnumerationCap { edges: 9, cap: 8 });
    }

    #[test]
    fn compatible_examples() {
        let g = corpus::three_k2();
        assert_eq!(count_compatible_tco(&g, &vec![0, 0, 0].into()).unwrap(), 6);
        assert_eq!(count_compatible_tco(&g, &vec![1, 1, -2].into()).unwrap(), 1);
        assert_eq!(count_compatible_tco(&g, &vec![1, -1, 0].into()).unwrap(), 2);
        assert!(matches!(
            count_compatible_tco(&g, &vec![1, 1, 1].into()),
            Err(Error::NotAFlow { .. })
        ));
    }

    #[test]
    fn compatible_count_matches_filter_of_tco_set() {
        let g = corpus::k4();
        let set = enumerate_totally_cyclic(&g).unwrap();
        let q = crate::count::FlowCountQuery::new(
            crate::graph::CapacityVector::new(vec![1; 6]).unwrap(),
            crate::count::BoundMode::Closed,
            crate::count::ZeroMode::ZerosAllowed,
        );
        for x in crate::count::enumerate_flows(&g, &q).unwrap() {
            let p = CompatibilityPattern::from_flow(&x);
            let expected = set.iter().filter(|s| p.admits(s)).count() as u64;
            assert_eq!(count_compatible_tco(&g, &x).unwrap(), expected);
        }
    }
}
