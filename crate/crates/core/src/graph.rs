//! Multigraphs with a stored reference orientation.
//!
//! Edge identity is list position: parallel edges and loops keep distinct
//! indices, and each edge's stored `(tail, head)` pair is its reference
//! direction. A loop imposes no conservation constraint and never lies on a
//! cut, so it is never a bridge and its flow value ranges freely. The edgeless
//! graph is legal; its unique (empty) labeling is vacuously a nowhere-zero flow.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    pub tail: usize,
    pub head: usize,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.tail == self.head
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Multigraph {
    vertex_count: usize,
    edges: Vec<Edge>,
}

impl Multigraph {
    pub fn new(
        vertex_count: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let edges: Vec<Edge> = edges
            .into_iter()
            .map(|(tail, head)| Edge { tail, head })
            .collect();
        for (i, e) in edges.iter().enumerate() {
            for v in [e.tail, e.head] {
                if v >= vertex_count {
                    return Err(Error::VertexOutOfRange {
                        edge: i,
                        vertex: v,
                        vertex_count,
                    });
                }
            }
        }
        Ok(Multigraph {
            vertex_count,
            edges,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> Edge {
        self.edges[e]
    }

    /// Disjoint union; vertices of `other` are shifted past ours.
    pub fn disjoint_union(&self, other: &Multigraph) -> Multigraph {
        let shift = self.vertex_count;
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|e| Edge {
            tail: e.tail + shift,
            head: e.head + shift,
        }));
        Multigraph {
            vertex_count: shift + other.vertex_count,
            edges,
        }
    }

    /// The graph with edge `e` removed (later edges shift down by one).
    pub fn without_edge(&self, e: usize) -> Multigraph {
        let mut edges = self.edges.clone();
        edges.remove(e);
        Multigraph {
            vertex_count: self.vertex_count,
            edges,
        }
    }

    /// The same graph with each edge's reference direction replaced by its
    /// direction under `sigma`.
    pub fn reoriented(&self, sigma: &Orientation) -> Result<Multigraph> {
        check_len("orientation", self.edge_count(), sigma.len())?;
        let edges = self
            .edges
            .iter()
            .zip(sigma.signs())
            .map(|(e, s)| match s {
                Sign::Plus => *e,
                Sign::Minus => Edge {
                    tail: e.head,
                    head: e.tail,
                },
            })
            .collect();
        Ok(Multigraph {
            vertex_count: self.vertex_count,
            edges,
        })
    }

    /// Connected components, each sorted, listed by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let labels = self.component_labels();
        let count = labels.iter().map(|&l| l + 1).max().unwrap_or(0);
        let mut comps = vec![Vec::new(); count];
        for (v, &l) in labels.iter().enumerate() {
            comps[l].push(v);
        }
        comps
    }

    pub fn component_count(&self) -> usize {
        self.components().len()
    }

    /// Component index of every vertex, numbered in order of first appearance.
    pub fn component_labels(&self) -> Vec<usize> {
        let adj = self.adjacency();
        let mut label = vec![usize::MAX; self.vertex_count];
        let mut next = 0;
        let mut stack = Vec::new();
        for start in 0..self.vertex_count {
            if label[start] != usize::MAX {
                continue;
            }
            label[start] = next;
            stack.push(start);
            while let Some(v) = stack.pop() {
                for &(w, _) in &adj[v] {
                    if label[w] == usize::MAX {
                        label[w] = next;
                        stack.push(w);
                    }
                }
            }
            next += 1;
        }
        label
    }

    /// |E| - |V| + #components.
    pub fn cyclomatic_number(&self) -> usize {
        self.edge_count() + self.component_count() - self.vertex_count
    }

    /// Edges whose deletion increases the number of components, ascending.
    pub fn bridges(&self) -> Vec<usize> {
        let n = self.vertex_count;
        let adj = self.adjacency();
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut time = 0;
        let mut out = Vec::new();

        // Iterative DFS; frames are (vertex, edge used to enter, next adjacency index).
        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            let mut stack: Vec<(usize, Option<usize>, usize)> = vec![(root, None, 0)];
            disc[root] = time;
            low[root] = time;
            time += 1;
            while let Some(frame) = stack.last_mut() {
                let (v, via, idx) = *frame;
                if idx < adj[v].len() {
                    frame.2 += 1;
                    let (w, e) = adj[v][idx];
                    if Some(e) == via || w == v {
                        continue;
                    }
                    if disc[w] == usize::MAX {
                        disc[w] = time;
                        low[w] = time;
                        time += 1;
                        stack.push((w, Some(e), 0));
                    } else {
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if let (Some(&(parent, _, _)), Some(e)) = (stack.last(), via) {
                        low[parent] = low[parent].min(low[v]);
                        if low[v] > disc[parent] {
                            out.push(e);
                        }
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn is_bridgeless(&self) -> bool {
        self.bridges().is_empty()
    }

    /// Signed incidence matrix of the graph reoriented by `sigma`.
    pub fn incidence_matrix(&self, sigma: &Orientation) -> Result<IncidenceMatrix> {
        check_len("orientation", self.edge_count(), sigma.len())?;
        let rows = self.vertex_count;
        let cols = self.edge_count();
        let mut entries = vec![0i8; rows * cols];
        for (e, (edge, s)) in self.edges.iter().zip(sigma.signs()).enumerate() {
            if edge.is_loop() {
                continue;
            }
            let s = s.value() as i8;
            entries[edge.head * cols + e] = s;
            entries[edge.tail * cols + e] = -s;
        }
        Ok(IncidenceMatrix {
            rows,
            cols,
            entries,
        })
    }

    /// Whether `x` satisfies conservation at every vertex under `sigma`.
    pub fn is_flow(&self, sigma: &Orientation, x: &FlowVector) -> Result<bool> {
        Ok(self.conservation_violation(sigma, x)?.is_none())
    }

    /// First vertex at which conservation fails, if any.
    pub fn conservation_violation(
        &self,
        sigma: &Orientation,
        x: &FlowVector,
    ) -> Result<Option<usize>> {
        check_len("orientation", self.edge_count(), sigma.len())?;
        check_len("flow vector", self.edge_count(), x.len())?;
        let mut balance = vec![0i128; self.vertex_count];
        for ((edge, s), &v) in self.edges.iter().zip(sigma.signs()).zip(x.values()) {
            let v = i128::from(v) * i128::from(s.value());
            balance[edge.head] += v;
            balance[edge.tail] -= v;
        }
        Ok(balance.iter().position(|&b| b != 0))
    }

    /// Breadth-first spanning forest; roots are the smallest vertex of each
    /// component and edges are scanned in stored order.
    pub fn spanning_forest(&self) -> SpanningForest {
        let n = self.vertex_count;
        let adj = self.adjacency();
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut depth = vec![usize::MAX; n];
        let mut in_tree = vec![false; self.edge_count()];
        let mut queue = std::collections::VecDeque::new();
        for root in 0..n {
            if depth[root] != usize::MAX {
                continue;
            }
            depth[root] = 0;
            queue.push_back(root);
            while let Some(v) = queue.pop_front() {
                for &(w, e) in &adj[v] {
                    if depth[w] == usize::MAX {
                        depth[w] = depth[v] + 1;
                        parent[w] = Some((v, e));
                        in_tree[e] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
        SpanningForest {
            parent,
            depth,
            in_tree,
        }
    }

    /// Maximum-weight spanning forest: edges are taken greedily by
    /// decreasing weight (ties in stored order) whenever they join two
    /// components. Roots are the smallest vertex of each component.
    pub fn spanning_forest_by_weight(&self, weights: &[u64]) -> SpanningForest {
        assert_eq!(weights.len(), self.edge_count(), "one weight per edge");
        let n = self.vertex_count;
        let mut order: Vec<usize> = (0..self.edge_count()).collect();
        order.sort_by_key(|&e| std::cmp::Reverse(weights[e]));
        let mut root: Vec<usize> = (0..n).collect();
        fn find(root: &mut [usize], mut v: usize) -> usize {
            while root[v] != v {
                root[v] = root[root[v]];
                v = root[v];
            }
            v
        }
        let mut adj = vec![Vec::new(); n];
        let mut in_tree = vec![false; self.edge_count()];
        for e in order {
            let Edge { tail, head } = self.edges[e];
            let (a, b) = (find(&mut root, tail), find(&mut root, head));
            if a != b {
                root[a] = b;
                in_tree[e] = true;
                adj[tail].push((head, e));
                adj[head].push((tail, e));
            }
        }
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut depth = vec![usize::MAX; n];
        let mut queue = std::collections::VecDeque::new();
        for r in 0..n {
            if depth[r] != usize::MAX {
                continue;
            }
            depth[r] = 0;
            queue.push_back(r);
            while let Some(v) = queue.pop_front() {
                for &(w, e) in &adj[v] {
                    if depth[w] == usize::MAX {
                        depth[w] = depth[v] + 1;
                        parent[w] = Some((v, e));
                        queue.push_back(w);
                    }
                }
            }
        }
        SpanningForest {
            parent,
            depth,
            in_tree,
        }
    }

    /// One signed cycle per non-forest edge (loops included), in edge order.
    pub fn fundamental_cycle_basis(&self) -> Vec<SignedCycle> {
        self.fundamental_cycle_basis_of(&self.spanning_forest())
    }

    /// Fundamental cycles with respect to a given spanning forest of this graph.
    pub fn fundamental_cycle_basis_of(&self, forest: &SpanningForest) -> Vec<SignedCycle> {
        (0..self.edge_count())
            .filter(|&e| !forest.in_tree[e])
            .map(|chord| forest.fundamental_cycle(self, chord))
            .collect()
    }

    /// One signed cut per forest edge: the edges crossing between the two
    /// sides obtained by deleting that forest edge from its tree.
    pub fn fundamental_cut_basis(&self) -> Vec<SignedCut> {
        let forest = self.spanning_forest();
        let n = self.vertex_count;
        (0..self.edge_count())
            .filter(|&e| forest.in_tree[e])
            .map(|tree_edge| {
                let edge = self.edges[tree_edge];
                // The side not containing the root is the subtree below the deeper endpoint.
                let low = if forest.depth[edge.head] > forest.depth[edge.tail] {
                    edge.head
                } else {
                    edge.tail
                };
                let side: Vec<bool> = (0..n).map(|v| forest.is_descendant(v, low)).collect();
                // Sign chosen so the tree edge itself gets +1.
                let tree_dir = if side[edge.tail] { 1 } else { -1 };
                let coeffs = self
                    .edges
                    .iter()
                    .map(|f| match (side[f.tail], side[f.head]) {
                        (true, false) => tree_dir,
                        (false, true) => -tree_dir,
                        _ => 0,
                    })
                    .collect();
                SignedCut { tree_edge, coeffs }
            })
            .collect()
    }

    fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for (e, edge) in self.edges.iter().enumerate() {
            adj[edge.tail].push((edge.head, e));
            if !edge.is_loop() {
                adj[edge.head].push((edge.tail, e));
            }
        }
        adj
    }

    /// Plain-text form: `n m` followed by one `t h` line per edge.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.vertex_count, self.edge_count());
        for e in &self.edges {
            s.push_str(&format!("{} {}\n", e.tail, e.head));
        }
        s
    }

    /// Parses the plain-text format. Blank lines and `#` comments are ignored.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (line, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            message: "missing `n m` header".into(),
        })?;
        let (n, m) = parse_pair(line, header)?;
        let mut edges = Vec::with_capacity(m);
        for (line, l) in lines {
            if edges.len() == m {
                return Err(Error::Parse {
                    line,
                    message: format!("more than the {m} declared edges"),
                });
            }
            let (t, h) = parse_pair(line, l)?;
            if t >= n || h >= n {
                return Err(Error::Parse {
                    line,
                    message: format!("vertex out of range 0..{n}"),
                });
            }
            edges.push((t, h));
        }
        if edges.len() != m {
            return Err(Error::Parse {
                line: text.lines().count(),
                message: format!("expected {m} edges, found {}", edges.len()),
            });
        }
        Multigraph::new(n, edges)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(GraphJson::from(self)).expect("graph serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let g: GraphJson = serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            message: e.to_string(),
        })?;
        Multigraph::new(g.vertices, g.edges.into_iter().map(|[t, h]| (t, h)))
    }

    /// Parses either format, choosing JSON when the text starts with `{`.
    pub fn parse(text: &str) -> Result<Self> {
        if text.trim_start().starts_with('{') {
            Self::from_json(text)
        } else {
            Self::from_text(text)
        }
    }
}

fn parse_pair(line: usize, s: &str) -> Result<(usize, usize)> {
    let parts: Vec<&str> = s.split_whitespace().collect();
    let bad = |message: String| Error::Parse { line, message };
    if parts.len() != 2 {
        return Err(bad(format!("expected two integers, found `{s}`")));
    }
    let a = parts[0]
        .parse()
        .map_err(|_| bad(format!("invalid integer `{}`", parts[0])))?;
    let b = parts[1]
        .parse()
        .map_err(|_| bad(format!("invalid integer `{}`", parts[1])))?;
    Ok((a, b))
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    vertices: usize,
    edges: Vec<[usize; 2]>,
}

impl From<&Multigraph> for GraphJson {
    fn from(g: &Multigraph) -> Self {
        GraphJson {
            vertices: g.vertex_count,
            edges: g.edges.iter().map(|e| [e.tail, e.head]).collect(),
        }
    }
}

pub(crate) fn check_len(what: &'static str, expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::LengthMismatch {
            what,
            expected,
            found,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// Per-edge signs relative to the reference orientation: `+` keeps an edge's
/// stored direction, `-` reverses it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Orientation(Vec<Sign>);

impl Orientation {
    pub fn new(signs: Vec<Sign>) -> Self {
        Orientation(signs)
    }

    /// The stored reference orientation on `m` edges.
    pub fn reference(m: usize) -> Self {
        Orientation(vec![Sign::Plus; m])
    }

    /// Orientation whose `i`-th sign is `-` iff bit `i` of `mask` is set.
    pub fn from_mask(m: usize, mask: u64) -> Self {
        Orientation(
            (0..m)
                .map(|i| {
                    if mask >> i & 1 == 1 {
                        Sign::Minus
                    } else {
                        Sign::Plus
                    }
                })
                .collect(),
        )
    }

    pub fn to_mask(&self) -> u64 {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, s)| **s == Sign::Minus)
            .fold(0, |m, (i, _)| m | 1 << i)
    }

    pub fn signs(&self) -> impl Iterator<Item = Sign> + '_ {
        self.0.iter().copied()
    }

    pub fn sign(&self, e: usize) -> Sign {
        self.0[e]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn reversed(&self) -> Orientation {
        Orientation(self.0.iter().map(|s| s.flip()).collect())
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            f.write_str(match s {
                Sign::Plus => "+",
                Sign::Minus => "-",
            })?;
        }
        Ok(())
    }
}

impl FromStr for Orientation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '+' => Ok(Sign::Plus),
                '-' | '\u{2212}' => Ok(Sign::Minus),
                other => Err(Error::InvalidArgument(format!(
                    "orientation strings use `+` and `-`, found `{other}`"
                ))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Orientation)
    }
}

/// An integer edge labeling.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FlowVector(Vec<i64>);

impl FlowVector {
    pub fn new(values: Vec<i64>) -> Self {
        FlowVector(values)
    }

    pub fn zeros(m: usize) -> Self {
        FlowVector(vec![0; m])
    }

    pub fn values(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_nowhere_zero(&self) -> bool {
        self.0.iter().all(|&v| v != 0)
    }

    pub fn negated(&self) -> FlowVector {
        FlowVector(self.0.iter().map(|v| -v).collect())
    }
}

impl From<Vec<i64>> for FlowVector {
    fn from(v: Vec<i64>) -> Self {
        FlowVector(v)
    }
}

/// Strictly positive per-edge capacities.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CapacityVector(Vec<u64>);

impl CapacityVector {
    pub fn new(values: Vec<u64>) -> Result<Self> {
        if let Some(edge) = values.iter().position(|&k| k == 0) {
            return Err(Error::NonPositiveCapacity { edge });
        }
        Ok(CapacityVector(values))
    }

    pub fn uniform(m: usize, k: u64) -> Result<Self> {
        Self::new(vec![k; m])
    }

    pub fn ones(m: usize) -> Self {
        CapacityVector(vec![1; m])
    }

    pub fn values(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn scaled(&self, factor: u64) -> CapacityVector {
        CapacityVector(self.0.iter().map(|k| k * factor).collect())
    }
}

impl fmt::Display for CapacityVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, k) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{k}")?;
        }
        write!(f, ")")
    }
}

/// Dense |V| x |E| signed incidence matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<i8>,
}

impl IncidenceMatrix {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, v: usize, e: usize) -> i8 {
        self.entries[v * self.cols + e]
    }

    pub fn column(&self, e: usize) -> Vec<i8> {
        (0..self.rows).map(|v| self.get(v, e)).collect()
    }

    pub fn negated(&self) -> IncidenceMatrix {
        IncidenceMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| -a).collect(),
        }
    }

    pub fn apply(&self, x: &[i64]) -> Vec<i64> {
        (0..self.rows)
            .map(|v| {
                (0..self.cols)
                    .map(|e| i64::from(self.get(v, e)) * x[e])
                    .sum()
            })
            .collect()
    }
}

#[derive(Debug, Clone)]
pub struct SpanningForest {
    /// (parent vertex, edge to parent) for every non-root vertex.
    parent: Vec<Option<(usize, usize)>>,
    depth: Vec<usize>,
    in_tree: Vec<bool>,
}

impl SpanningForest {
    pub fn tree_edges(&self) -> Vec<usize> {
        (0..self.in_tree.len())
            .filter(|&e| self.in_tree[e])
            .collect()
    }

    pub fn non_tree_edges(&self) -> Vec<usize> {
        (0..self.in_tree.len())
            .filter(|&e| !self.in_tree[e])
            .collect()
    }

    pub fn contains(&self, e: usize) -> bool {
        self.in_tree[e]
    }

    fn is_descendant(&self, mut v: usize, ancestor: usize) -> bool {
        loop {
            if v == ancestor {
                return true;
            }
            match self.parent[v] {
                Some((p, _)) => v = p,
                None => return false,
            }
        }
    }

    fn fundamental_cycle(&self, g: &Multigraph, chord: usize) -> SignedCycle {
        let mut coeffs = vec![0i8; g.edge_count()];
        coeffs[chord] = 1;
        let Edge { tail, head } = g.edge(chord);
        // Close the cycle by walking the tree from head back to tail.
        let (mut a, mut b) = (head, tail);
        let mut from_a = Vec::new();
        let mut from_b = Vec::new();
        while a != b {
            if self.depth[a] >= self.depth[b] {
                let (p, e) = self.parent[a].expect("non-root");
                from_a.push((a, p, e));
                a = p;
            } else {
                let (p, e) = self.parent[b].expect("non-root");
                from_b.push((p, b, e));
                b = p;
            }
        }
        for (from, to, e) in from_a.into_iter().chain(from_b.into_iter().rev()) {
            let edge = g.edge(e);
            coeffs[e] = if edge.tail == from && edge.head == to {
                1
            } else {
                -1
            };
        }
        SignedCycle { chord, coeffs }
    }
}

/// A {-1,0,+1} edge vector in the cycle space, with +1 on its chord.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedCycle {
    pub chord: usize,
    pub coeffs: Vec<i8>,
}

impl SignedCycle {
    pub fn support(&self) -> Vec<usize> {
        (0..self.coeffs.len())
            .filter(|&e| self.coeffs[e] != 0)
            .collect()
    }
}

/// A {-1,0,+1} edge vector of a fundamental cut, with +1 on its tree edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedCut {
    pub tree_edge: usize,
    pub coeffs: Vec<i8>,
}

impl SignedCut {
    pub fn support(&self) -> Vec<usize> {
        (0..self.coeffs.len())
            .filter(|&e| self.coeffs[e] != 0)
            .collect()
    }
}
