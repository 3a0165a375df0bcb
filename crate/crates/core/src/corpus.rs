//! Small named graphs used as fixtures and by the CLI's `--example` flag.
//!
//! Reference orientations are fixed here: K3 is stored as the directed cycle
//! 0->1->2->0, and every edge of 2K2 and 3K2 points from vertex 0 to vertex 1.

use crate::graph::Multigraph;

fn build(n: usize, edges: &[(usize, usize)]) -> Multigraph {
    Multigraph::new(n, edges.iter().copied()).expect("corpus graphs are well formed")
}

pub fn k3() -> Multigraph {
    build(3, &[(0, 1), (1, 2), (2, 0)])
}

pub fn two_k2() -> Multigraph {
    build(2, &[(0, 1), (0, 1)])
}

pub fn three_k2() -> Multigraph {
    build(2, &[(0, 1), (0, 1), (0, 1)])
}

pub fn k4() -> Multigraph {
    build(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
}

/// Triangular prism: two triangles joined by a perfect matching.
pub fn prism() -> Multigraph {
    build(
        6,
        &[
            (0, 1),
            (1, 2),
            (2, 0),
            (3, 4),
            (4, 5),
            (5, 3),
            (0, 3),
            (1, 4),
            (2, 5),
        ],
    )
}

/// Triangle with a pendant edge; the pendant edge is a bridge.
pub fn bridge() -> Multigraph {
    build(4, &[(0, 1), (1, 2), (2, 0), (2, 3)])
}

/// Triangle with a loop at vertex 0.
pub fn triangle_with_loop() -> Multigraph {
    build(3, &[(0, 1), (1, 2), (2, 0), (0, 0)])
}

/// K3 and 3K2 side by side.
pub fn k3_plus_three_k2() -> Multigraph {
    k3().disjoint_union(&three_k2())
}

pub const NAMES: &[&str] = &["k3", "2k2", "3k2", "k4", "prism", "bridge", "loop", "union"];

pub fn by_name(name: &str) -> Option<Multigraph> {
    Some(match name {
        "k3" => k3(),
        "2k2" => two_k2(),
        "3k2" => three_k2(),
        "k4" => k4(),
        "prism" => prism(),
        "bridge" => bridge(),
        "loop" => triangle_with_loop(),
        "union" => k3_plus_three_k2(),
        _ => return None,
    })
}

/// Every corpus graph with its name.
pub fn all() -> Vec<(&'static str, Multigraph)> {
    NAMES
        .iter()
        .map(|&n| (n, by_name(n).expect("listed name")))
        .collect()
}

/// The corpus graphs without bridges.
pub fn bridgeless() -> Vec<(&'static str, Multigraph)> {
    all()
        .into_iter()
        .filter(|(_, g)| g.is_bridgeless())
        .collect()
}
