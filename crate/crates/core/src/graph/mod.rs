//! Immutable undirected graphs on dense integer labels.
//!
//! Every topology in this crate (the guest cube and all four hosts) is a
//! [`LabeledGraph`] whose vertices are `0..vertex_count`. Orderings such as
//! the lexicographic order of ternary words are plain label orderings.

mod cut;
mod export;

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use cut::{CutFamily, EdgeCut};
pub use export::{export, ExportFormat};

/// Graphs up to this many vertices get an all-pairs distance table by default.
pub const DEFAULT_DISTANCE_CACHE_BUDGET: usize = 1024;

/// An undirected edge with endpoints stored in ascending order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "[usize; 2]", into = "[usize; 2]")]
pub struct Edge(usize, usize);

impl Edge {
    pub fn new(a: usize, b: usize) -> Self {
        if a <= b {
            Edge(a, b)
        } else {
            Edge(b, a)
        }
    }

    pub fn lo(self) -> usize {
        self.0
    }

    pub fn hi(self) -> usize {
        self.1
    }

    /// The endpoint opposite `v`, if `v` is an endpoint.
    pub fn other(self, v: usize) -> Option<usize> {
        if v == self.0 {
            Some(self.1)
        } else if v == self.1 {
            Some(self.0)
        } else {
            None
        }
    }
}

impl From<[usize; 2]> for Edge {
    fn from([a, b]: [usize; 2]) -> Self {
        Edge::new(a, b)
    }
}

impl From<Edge> for [usize; 2] {
    fn from(e: Edge) -> Self {
        [e.0, e.1]
    }
}

impl From<(usize, usize)> for Edge {
    fn from((a, b): (usize, usize)) -> Self {
        Edge::new(a, b)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.0, self.1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledGraph {
    vertex_count: usize,
    edges: Vec<Edge>,
    adjacency: Vec<Vec<usize>>,
    roles: BTreeMap<usize, String>,
}

/// Builds a graph from an edge list, normalizing endpoint order and
/// dropping duplicates.
pub fn build_graph<I, E>(vertex_count: usize, edges: I) -> Result<LabeledGraph>
where
    I: IntoIterator<Item = E>,
    E: Into<Edge>,
{
    LabeledGraph::new(vertex_count, edges)
}

impl LabeledGraph {
    pub fn new<I, E>(vertex_count: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: Into<Edge>,
    {
        if vertex_count == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut list = Vec::new();
        for e in edges {
            let e: Edge = e.into();
            if e.lo() == e.hi() {
                return Err(Error::SelfLoop(e.lo(), e.hi()));
            }
            if e.hi() >= vertex_count {
                return Err(Error::EndpointOutOfRange {
                    u: e.lo(),
                    v: e.hi(),
                    vertex_count,
                });
            }
            list.push(e);
        }
        list.sort_unstable();
        list.dedup();

        let mut adjacency = vec![Vec::new(); vertex_count];
        for e in &list {
            adjacency[e.lo()].push(e.hi());
            adjacency[e.hi()].push(e.lo());
        }
        for nbrs in &mut adjacency {
            nbrs.sort_unstable();
        }

        Ok(LabeledGraph {
            vertex_count,
            edges: list,
            adjacency,
            roles: BTreeMap::new(),
        })
    }

    /// Attaches role tags. Labels must be valid vertices.
    pub fn with_roles<I, S>(mut self, roles: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, S)>,
        S: Into<String>,
    {
        for (v, tag) in roles {
            self.check_vertex(v)?;
            self.roles.insert(v, tag.into());
        }
        Ok(self)
    }

    pub fn without_roles(mut self) -> Self {
        self.roles.clear();
        self
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in ascending `(lo, hi)` order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.vertex_count && self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Position of `e` in [`edges`](Self::edges); a dense edge id.
    pub fn edge_index(&self, e: Edge) -> Option<usize> {
        self.edges.binary_search(&e).ok()
    }

    pub fn role(&self, v: usize) -> Option<&str> {
        self.roles.get(&v).map(String::as_str)
    }

    pub fn roles(&self) -> &BTreeMap<usize, String> {
        &self.roles
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.vertex_count {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v))
        }
    }

    /// BFS distances from `source`; `None` marks unreachable vertices.
    pub fn bfs_from(&self, source: usize) -> Result<Vec<Option<usize>>> {
        self.check_vertex(source)?;
        let mut dist = vec![None; self.vertex_count];
        let mut queue = VecDeque::new();
        dist[source] = Some(0);
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap_or_default();
            for &w in &self.adjacency[u] {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        Ok(dist)
    }

    /// Length of a shortest `u`-`v` path.
    pub fn bfs_distance(&self, u: usize, v: usize) -> Result<usize> {
        self.check_vertex(v)?;
        self.bfs_from(u)?[v].ok_or(Error::Unreachable(u, v))
    }

    /// Partition of the vertices into connected components of the graph
    /// with `removed` edges deleted. Components are listed by smallest
    /// member, each sorted ascending.
    pub fn connected_components(&self, removed: &[Edge]) -> Result<Vec<Vec<usize>>> {
        let mut gone = vec![false; self.edges.len()];
        for &e in removed {
            let idx = self.edge_index(e).ok_or(Error::UnknownEdge(e))?;
            gone[idx] = true;
        }
        let mut comp = vec![usize::MAX; self.vertex_count];
        let mut out: Vec<Vec<usize>> = Vec::new();
        let mut stack = Vec::new();
        for start in 0..self.vertex_count {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            comp[start] = id;
            stack.push(start);
            let mut members = Vec::new();
            while let Some(u) = stack.pop() {
                members.push(u);
                for &w in &self.adjacency[u] {
                    if comp[w] != usize::MAX {
                        continue;
                    }
                    let idx = self.edge_index(Edge::new(u, w)).expect("adjacent pair is an edge");
                    if gone[idx] {
                        continue;
                    }
                    comp[w] = id;
                    stack.push(w);
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        Ok(out)
    }

    pub fn is_connected(&self) -> bool {
        self.bfs_from(0)
            .map(|d| d.iter().all(Option::is_some))
            .unwrap_or(false)
    }

    pub fn is_tree(&self) -> bool {
        self.edges.len() + 1 == self.vertex_count && self.is_connected()
    }

    /// Number of edges with both endpoints in `members`.
    pub fn induced_edge_count(&self, members: &[usize]) -> usize {
        let mut inside = vec![false; self.vertex_count];
        for &v in members {
            if v < self.vertex_count {
                inside[v] = true;
            }
        }
        self.edges
            .iter()
            .filter(|e| inside[e.lo()] && inside[e.hi()])
            .count()
    }
}

/// Cartesian product `g × h`. Vertex `(a, b)` gets label `a·|V(h)| + b`.
pub fn cartesian_product(g: &LabeledGraph, h: &LabeledGraph) -> Result<LabeledGraph> {
    let width = h.vertex_count();
    let mut edges = Vec::with_capacity(g.vertex_count() * h.edge_count() + width * g.edge_count());
    for a in 0..g.vertex_count() {
        for e in h.edges() {
            edges.push(Edge::new(a * width + e.lo(), a * width + e.hi()));
        }
    }
    for e in g.edges() {
        for b in 0..width {
            edges.push(Edge::new(e.lo() * width + b, e.hi() * width + b));
        }
    }
    LabeledGraph::new(g.vertex_count() * width, edges)
}

/// Shortest-path distances, either precomputed for all pairs or by BFS on
/// each query.
#[derive(Debug, Clone)]
pub struct Distances<'g> {
    graph: &'g LabeledGraph,
    table: Option<Vec<u32>>,
}

impl<'g> Distances<'g> {
    /// Precomputes all pairs when the graph has at most `budget` vertices.
    pub fn new(graph: &'g LabeledGraph, budget: usize) -> Self {
        let n = graph.vertex_count();
        let table = (n <= budget).then(|| {
            let mut table = vec![u32::MAX; n * n];
            for s in 0..n {
                let row = graph.bfs_from(s).expect("valid source");
                for (t, d) in row.into_iter().enumerate() {
                    if let Some(d) = d {
                        table[s * n + t] = d as u32;
                    }
                }
            }
            table
        });
        Distances { graph, table }
    }

    pub fn with_default_budget(graph: &'g LabeledGraph) -> Self {
        Self::new(graph, DEFAULT_DISTANCE_CACHE_BUDGET)
    }

    pub fn is_cached(&self) -> bool {
        self.table.is_some()
    }

    pub fn graph(&self) -> &'g LabeledGraph {
        self.graph
    }

    pub fn get(&self, u: usize, v: usize) -> Result<usize> {
        match &self.table {
            Some(table) => {
                self.graph.check_vertex(u)?;
                self.graph.check_vertex(v)?;
                match table[u * self.graph.vertex_count() + v] {
                    u32::MAX => Err(Error::Unreachable(u, v)),
                    d => Ok(d as usize),
                }
            }
            None => self.graph.bfs_distance(u, v),
        }
    }

    /// Unchecked lookup for hot loops; panics on unreachable pairs.
    pub(crate) fn get_fast(&self, u: usize, v: usize) -> u64 {
        match &self.table {
            Some(table) => {
                let d = table[u * self.graph.vertex_count() + v];
                assert!(d != u32::MAX, "unreachable pair ({u}, {v})");
                d as u64
            }
            None => self.get(u, v).expect("connected host") as u64,
        }
    }
}
