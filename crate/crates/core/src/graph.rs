//! Simple undirected graphs over dense vertex ids, the edge-list text format,
//! and the instance families used throughout the test-suite and the CLI.

use std::fmt;

use fixedbitset::FixedBitSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

pub type VertexId = usize;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("vertex id {id} out of range for graph of order {n}")]
    OutOfRange { id: VertexId, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

/// A set of vertices of a graph of fixed order. Iteration is in ascending id order.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct VertexSet(FixedBitSet);

impl VertexSet {
    pub fn new(n: usize) -> Self {
        VertexSet(FixedBitSet::with_capacity(n))
    }

    pub fn full(n: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(n);
        bits.insert_range(..);
        VertexSet(bits)
    }

    pub fn from_vertices(n: usize, vertices: impl IntoIterator<Item = VertexId>) -> Self {
        let mut set = Self::new(n);
        for v in vertices {
            set.insert(v);
        }
        set
    }

    /// Order of the graph this set lives in.
    pub fn capacity(&self) -> usize {
        self.0.len()
    }

    pub fn insert(&mut self, v: VertexId) -> bool {
        !self.0.put(v)
    }

    pub fn remove(&mut self, v: VertexId) {
        self.0.set(v, false);
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.0.contains(v)
    }

    pub fn len(&self) -> usize {
        self.0.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_clear()
    }

    pub fn clear(&mut self) {
        self.0.clear();
    }

    pub fn iter(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.0.ones()
    }

    pub fn first(&self) -> Option<VertexId> {
        self.0.minimum()
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        self.0.union_with(&other.0);
    }

    pub fn intersect_with(&mut self, other: &VertexSet) {
        self.0.intersect_with(&other.0);
    }

    pub fn difference_with(&mut self, other: &VertexSet) {
        self.0.difference_with(&other.0);
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut out = self.clone();
        out.union_with(other);
        out
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        let mut out = self.clone();
        out.intersect_with(other);
        out
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        let mut out = self.clone();
        out.difference_with(other);
        out
    }

    /// Size of `self ∩ other` without allocating.
    pub fn intersection_count(&self, other: &VertexSet) -> usize {
        self.0.intersection_count(&other.0)
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.0.is_disjoint(&other.0)
    }

    /// Advances to the next subset in ascending bit-pattern order (binary
    /// increment, vertex 0 least significant). Returns false on wrap-around.
    pub fn increment(&mut self) -> bool {
        for v in 0..self.capacity() {
            if self.contains(v) {
                self.remove(v);
            } else {
                self.insert(v);
                return true;
            }
        }
        false
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Simple undirected graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
}

impl Graph {
    /// Edge-less graph of order `n`.
    pub fn new(n: usize) -> Self {
        Graph {
            n,
            adj: vec![VertexSet::new(n); n],
        }
    }

    pub fn from_edges(
        n: usize,
        edges: impl IntoIterator<Item = (VertexId, VertexId)>,
    ) -> Result<Self, GraphError> {
        let mut g = Graph::new(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(VertexSet::len).sum::<usize>() / 2
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<(), GraphError> {
        for id in [u, v] {
            if id >= self.n {
                return Err(GraphError::OutOfRange { id, n: self.n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        Ok(())
    }

    pub fn remove_edge(&mut self, u: VertexId, v: VertexId) {
        self.adj[u].remove(v);
        self.adj[v].remove(u);
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.adj[u].contains(v)
    }

    /// Open neighborhood N(v).
    pub fn neighbors(&self, v: VertexId) -> &VertexSet {
        &self.adj[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v].len()
    }

    /// Closed neighborhood N[v].
    pub fn closed_neighbors(&self, v: VertexId) -> VertexSet {
        let mut out = self.adj[v].clone();
        out.insert(v);
        out
    }

    /// N[S]: `s` together with every neighbor of a vertex in `s`.
    pub fn closed_neighborhood(&self, s: &VertexSet) -> VertexSet {
        let mut out = s.clone();
        for u in s.iter() {
            out.union_with(&self.adj[u]);
        }
        out
    }

    pub fn vertices(&self) -> std::ops::Range<VertexId> {
        0..self.n
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.vertices().flat_map(move |u| {
            self.adj[u]
                .iter()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    /// Checks symmetry, irreflexivity and id bounds of the adjacency structure.
    pub fn validate(&self) -> bool {
        self.adj.len() == self.n
            && self.vertices().all(|u| {
                self.adj[u].capacity() == self.n
                    && !self.adj[u].contains(u)
                    && self.adj[u]
                        .iter()
                        .all(|v| v < self.n && self.adj[v].contains(u))
            })
    }

    /// Renders the graph in the edge-list text format.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.edge_count());
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    /// Parses the edge-list format: a header `n m` followed by `m` lines `u v`.
    /// Lines starting with `#` and blank lines are ignored; duplicate edges collapse.
    pub fn parse_edge_list(text: &str) -> Result<Self, GraphError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        let (header_line, header) = lines.next().ok_or(GraphError::Parse {
            line: 1,
            msg: "missing header line \"n m\"".into(),
        })?;
        let (n, m) = parse_pair(header_line, header)?;
        let mut g = Graph::new(n);
        let mut seen = 0;
        for (line, text) in lines {
            if seen == m {
                return Err(GraphError::Parse {
                    line,
                    msg: format!("more than the declared {m} edges"),
                });
            }
            let (u, v) = parse_pair(line, text)?;
            g.add_edge(u, v).map_err(|e| GraphError::Parse {
                line,
                msg: e.to_string(),
            })?;
            seen += 1;
        }
        if seen != m {
            return Err(GraphError::Parse {
                line: text.lines().count().max(1),
                msg: format!("expected {m} edges, found {seen}"),
            });
        }
        Ok(g)
    }
}

fn parse_pair(line: usize, text: &str) -> Result<(usize, usize), GraphError> {
    let err = |msg: String| GraphError::Parse { line, msg };
    let mut fields = text.split_whitespace();
    let mut next = || -> Result<usize, GraphError> {
        let field = fields
            .next()
            .ok_or_else(|| err(format!("expected two integers, got {text:?}")))?;
        field
            .parse()
            .map_err(|_| err(format!("not a non-negative integer: {field:?}")))
    };
    let pair = (next()?, next()?);
    if fields.next().is_some() {
        return Err(err(format!("expected two integers, got {text:?}")));
    }
    Ok(pair)
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Graph(n={}, edges={:?})",
            self.n,
            self.edges().collect::<Vec<_>>()
        )
    }
}

/// Cycle C_k on vertices `0..k`.
pub fn gen_cycle(k: usize) -> Result<Graph, GraphError> {
    if k < 3 {
        return Err(GraphError::InvalidParameter(format!(
            "cycle length must be at least 3, got {k}"
        )));
    }
    Graph::from_edges(k, (0..k).map(|i| (i, (i + 1) % k)))
}

/// Star K_{1,rays}; the center is vertex 0.
pub fn gen_star(rays: usize) -> Result<Graph, GraphError> {
    if rays < 1 {
        return Err(GraphError::InvalidParameter(
            "a star needs at least one ray".into(),
        ));
    }
    Graph::from_edges(rays + 1, (1..=rays).map(|r| (0, r)))
}

pub fn gen_null(n: usize) -> Graph {
    Graph::new(n)
}

pub fn gen_path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("path edges are in range")
}

pub fn gen_complete(n: usize) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            g.add_edge(u, v).expect("in range");
        }
    }
    g
}

/// Disjoint union; part `i` is shifted by the total order of parts `0..i`.
pub fn gen_disjoint_union(parts: &[Graph]) -> Graph {
    let n = parts.iter().map(Graph::order).sum();
    let mut g = Graph::new(n);
    let mut offset = 0;
    for part in parts {
        for (u, v) in part.edges() {
            g.add_edge(u + offset, v + offset)
                .expect("relabelled ids stay in range");
        }
        offset += part.order();
    }
    g
}

/// `c` disjoint copies of C5 (order 5c).
pub fn gen_c5_power(c: usize) -> Graph {
    let c5 = gen_cycle(5).expect("5 >= 3");
    gen_disjoint_union(&vec![c5; c])
}

/// Erdős–Rényi G(n, p), deterministic in `seed`.
pub fn gen_random(n: usize, p: f64, seed: u64) -> Result<Graph, GraphError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(GraphError::InvalidParameter(format!(
            "edge probability must lie in [0, 1], got {p}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v)?;
            }
        }
    }
    Ok(g)
}
