//! Embeddings of the cube into a host, and two independent ways to price
//! them: summing shortest-path distances, and summing edge-cut
//! congestions after mechanically checking that each cut qualifies.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{CutFamily, Distances, Edge, LabeledGraph};
use crate::hosts::{HostKind, HostSpec};
use crate::qcube::{iso_closed_form, QCube};

/// How a guest edge is turned into a host path.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Routing {
    /// The unique path of an acyclic host.
    TreeUnique,
    /// Column step first (if the rows differ), then along the row.
    DimensionOrderedCylinder,
}

impl Routing {
    pub fn name(self) -> &'static str {
        match self {
            Routing::TreeUnique => "tree-unique",
            Routing::DimensionOrderedCylinder => "dimension-ordered-cylinder",
        }
    }

    pub fn for_kind(kind: HostKind) -> Self {
        if kind.is_tree() {
            Routing::TreeUnique
        } else {
            Routing::DimensionOrderedCylinder
        }
    }
}

#[derive(Debug, Clone)]
enum Router {
    Tree { parent: Vec<usize>, depth: Vec<usize> },
    Cylinder { cols: usize },
}

impl Router {
    fn new(host: &LabeledGraph, routing: Routing) -> Result<Self> {
        match routing {
            Routing::TreeUnique => {
                if !host.is_tree() {
                    return Err(Error::InvalidRouting {
                        routing: routing.name(),
                        reason: "host is not a tree".into(),
                    });
                }
                let mut parent = vec![usize::MAX; host.vertex_count()];
                let mut depth = vec![0; host.vertex_count()];
                let mut stack = vec![0usize];
                parent[0] = 0;
                while let Some(v) = stack.pop() {
                    for &w in host.neighbors(v) {
                        if parent[w] == usize::MAX {
                            parent[w] = v;
                            depth[w] = depth[v] + 1;
                            stack.push(w);
                        }
                    }
                }
                Ok(Router::Tree { parent, depth })
            }
            Routing::DimensionOrderedCylinder => {
                let size = host.vertex_count();
                let cols = size / 3;
                let shaped = size.is_multiple_of(3)
                    && cols >= 1
                    && host.edge_count() == 3 * cols + 3 * (cols - 1)
                    && host
                        .edges()
                        .iter()
                        .all(|e| e.lo() / 3 == e.hi() / 3 || e.hi() == e.lo() + 3);
                if !shaped {
                    return Err(Error::InvalidRouting {
                        routing: routing.name(),
                        reason: "host is not a 3-row cylinder with column-major labels".into(),
                    });
                }
                Ok(Router::Cylinder { cols })
            }
        }
    }

    fn path(&self, a: usize, b: usize) -> Vec<usize> {
        match self {
            Router::Tree { parent, depth } => {
                let (mut x, mut y) = (a, b);
                let mut front = vec![x];
                let mut back = vec![y];
                while depth[x] > depth[y] {
                    x = parent[x];
                    front.push(x);
                }
                while depth[y] > depth[x] {
                    y = parent[y];
                    back.push(y);
                }
                while x != y {
                    x = parent[x];
                    y = parent[y];
                    front.push(x);
                    back.push(y);
                }
                back.pop();
                front.extend(back.into_iter().rev());
                front
            }
            Router::Cylinder { cols } => {
                debug_assert!(a < 3 * cols && b < 3 * cols);
                let (row_a, col_a) = (a % 3, a / 3);
                let (row_b, col_b) = (b % 3, b / 3);
                let mut path = vec![a];
                if row_a != row_b {
                    path.push(3 * col_a + row_b);
                }
                let mut col = col_a;
                while col != col_b {
                    col = if col < col_b { col + 1 } else { col - 1 };
                    path.push(3 * col + row_b);
                }
                path
            }
        }
    }
}

/// A bijection from cube labels to host labels plus a routing rule.
#[derive(Debug, Clone)]
pub struct EmbeddingInstance<'a> {
    guest: &'a QCube,
    host: &'a LabeledGraph,
    map: Vec<usize>,
    routing: Routing,
    router: Router,
}

/// The identity map between canonical labelings, routed per host kind.
pub fn lex_embedding<'a>(guest: &'a QCube, host: &'a HostSpec) -> Result<EmbeddingInstance<'a>> {
    let size = guest.vertex_count();
    EmbeddingInstance::new(guest, &host.graph, (0..size).collect(), Routing::for_kind(host.kind))
}

impl<'a> EmbeddingInstance<'a> {
    pub fn new(
        guest: &'a QCube,
        host: &'a LabeledGraph,
        map: Vec<usize>,
        routing: Routing,
    ) -> Result<Self> {
        let router = Router::new(host, routing)?;
        let mut inst = EmbeddingInstance {
            guest,
            host,
            map: Vec::new(),
            routing,
            router,
        };
        inst.set_map(map)?;
        Ok(inst)
    }

    /// Same host and routing, different map.
    pub fn with_map(&self, map: Vec<usize>) -> Result<Self> {
        let mut inst = self.clone();
        inst.set_map(map)?;
        Ok(inst)
    }

    fn set_map(&mut self, map: Vec<usize>) -> Result<()> {
        let (g, h) = (self.guest.vertex_count(), self.host.vertex_count());
        if g != h {
            return Err(Error::SizeMismatch { guest: g, host: h });
        }
        if map.len() != g {
            return Err(Error::NotBijective(format!(
                "map has {} entries for {g} guest vertices",
                map.len()
            )));
        }
        let mut hit = vec![false; h];
        for (u, &x) in map.iter().enumerate() {
            if x >= h || hit[x] {
                return Err(Error::NotBijective(format!(
                    "guest {u} maps to {x}, which is out of range or already used"
                )));
            }
            hit[x] = true;
        }
        self.map = map;
        Ok(())
    }

    pub fn guest(&self) -> &'a QCube {
        self.guest
    }

    pub fn host(&self) -> &'a LabeledGraph {
        self.host
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn routing(&self) -> Routing {
        self.routing
    }

    /// Host vertex sequence carrying guest edge `(u, v)`.
    pub fn route(&self, u: usize, v: usize) -> Result<Vec<usize>> {
        if u >= self.map.len() || v >= self.map.len() || !self.guest.graph().has_edge(u, v) {
            return Err(Error::NotAGuestEdge(u, v));
        }
        Ok(self.router.path(self.map[u], self.map[v]))
    }

    /// Host edge ids of every guest edge's route, in guest edge order.
    fn routes_as_edge_ids(&self) -> Vec<Vec<usize>> {
        self.guest
            .graph()
            .edges()
            .iter()
            .map(|e| {
                self.router
                    .path(self.map[e.lo()], self.map[e.hi()])
                    .windows(2)
                    .map(|w| {
                        self.host
                            .edge_index(Edge::new(w[0], w[1]))
                            .expect("router only walks host edges")
                    })
                    .collect()
            })
            .collect()
    }

    /// Guest labels whose images lie in `host_side`.
    pub fn preimage(&self, host_side: &[usize]) -> Vec<usize> {
        let mut inside = vec![false; self.host.vertex_count()];
        for &x in host_side {
            inside[x] = true;
        }
        let mut out: Vec<usize> = (0..self.map.len()).filter(|&u| inside[self.map[u]]).collect();
        out.sort_unstable();
        out
    }
}

/// Σ over guest edges of the host distance between their images.
pub fn wirelength_by_distance(e: &EmbeddingInstance<'_>) -> Result<u64> {
    let dist = Distances::with_default_budget(e.host);
    let mut total = 0u64;
    for edge in e.guest.graph().edges() {
        total += dist.get(e.map[edge.lo()], e.map[edge.hi()])? as u64;
    }
    Ok(total)
}

/// Congestion of each host edge and of each named cut.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongestionReport {
    /// `[[u, v], count]` for every host edge, in edge order.
    pub per_edge: Vec<(Edge, u64)>,
    /// `(cut name, Σ of its edges' congestion)`, in family order.
    pub per_cut: Vec<(String, u64)>,
    pub wirelength: u64,
}

pub fn congestion_per_edge(e: &EmbeddingInstance<'_>) -> CongestionReport {
    let mut counts = vec![0u64; e.host.edge_count()];
    for route in e.routes_as_edge_ids() {
        for id in route {
            counts[id] += 1;
        }
    }
    let wirelength = counts.iter().sum();
    CongestionReport {
        per_edge: e.host.edges().iter().copied().zip(counts).collect(),
        per_cut: Vec::new(),
        wirelength,
    }
}

impl CongestionReport {
    pub fn edge(&self, edge: Edge) -> Option<u64> {
        self.per_edge.iter().find(|(e, _)| *e == edge).map(|&(_, c)| c)
    }

    pub fn cut(&self, name: &str) -> Option<u64> {
        self.per_cut.iter().find(|(n, _)| n == name).map(|&(_, c)| c)
    }

    /// Fills `per_cut` by summing the per-edge congestion over each cut.
    pub fn with_cuts(mut self, family: &CutFamily) -> Self {
        self.per_cut = family
            .cuts
            .iter()
            .map(|cut| {
                let total = cut.edges.iter().filter_map(|&e| self.edge(e)).sum();
                (cut.name.clone(), total)
            })
            .collect();
        self
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("host_edge_u,host_edge_v,congestion\n");
        for (e, c) in &self.per_edge {
            let _ = writeln!(out, "{},{},{}", e.lo(), e.hi(), c);
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string(self).expect("report serializes");
        s.push('\n');
        s
    }
}

/// Σ_{v ∈ side} deg(v) − 2·|E(side)|: the number of guest edges leaving
/// `side`, computed from degrees and induced edges only.
pub fn congestion_lemma_value(guest: &QCube, side: &[usize]) -> Result<u64> {
    let g = guest.graph();
    let mut members = side.to_vec();
    members.sort_unstable();
    members.dedup();
    if members.is_empty() || members.len() >= g.vertex_count() {
        return Err(Error::OutOfRange {
            k: members.len() as u64,
            n: guest.n(),
            reason: "side must be a non-empty proper subset".into(),
        });
    }
    for &v in &members {
        g.check_vertex(v)?;
    }
    let degrees: u64 = members.iter().map(|&v| g.degree(v) as u64).sum();
    Ok(degrees - 2 * g.induced_edge_count(&members) as u64)
}

/// Guest edges with exactly one endpoint in `side`, counted directly.
pub fn crossing_edges(guest: &QCube, side: &[usize]) -> u64 {
    let mut inside = vec![false; guest.vertex_count()];
    for &v in side {
        inside[v] = true;
    }
    guest
        .graph()
        .edges()
        .iter()
        .filter(|e| inside[e.lo()] != inside[e.hi()])
        .count() as u64
}

/// Outcome of checking one cut against the congestion-lemma hypotheses.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutCheck {
    pub name: String,
    /// (a) removal leaves exactly two components, one being `small_side`.
    pub separates: bool,
    /// (b) routes of guest edges inside one side avoid the cut.
    pub intra_avoids_cut: bool,
    /// (c) routes of crossing guest edges use exactly one cut edge.
    pub crossing_once: bool,
    /// (d) the preimage of `small_side` induces the maximum number of edges.
    pub maximal: bool,
    pub induced: u64,
    pub max_induced: Option<u64>,
    /// Congestion-lemma value of the preimage of `small_side`.
    pub lemma_value: Option<u64>,
    /// Σ of routed congestion over the cut's edges.
    pub routed_congestion: u64,
}

impl CutCheck {
    pub fn passed(&self) -> bool {
        self.separates && self.intra_avoids_cut && self.crossing_once && self.maximal
    }

    pub fn failures(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.separates {
            out.push("a:separation");
        }
        if !self.intra_avoids_cut {
            out.push("b:intra-avoids-cut");
        }
        if !self.crossing_once {
            out.push("c:crossing-once");
        }
        if !self.maximal {
            out.push("d:maximal");
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub multiplicity: usize,
    /// Each host edge lies in exactly `multiplicity` cuts.
    pub partition_ok: bool,
    pub cuts: Vec<CutCheck>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.partition_ok && self.cuts.iter().all(CutCheck::passed)
    }

    pub fn summary(&self) -> String {
        let mut parts = Vec::new();
        if !self.partition_ok {
            parts.push(format!("edge multiset is not {}-covered", self.multiplicity));
        }
        for c in self.cuts.iter().filter(|c| !c.passed()) {
            parts.push(format!("{}: {}", c.name, c.failures().join(",")));
        }
        if parts.is_empty() {
            "all conditions hold".into()
        } else {
            parts.join("; ")
        }
    }
}

/// Checks every cut of `family` against the embedding: separation, the two
/// routing conditions, maximality of the small side's preimage, and the
/// multiset covering of the host edges.
pub fn verify_cut_family(e: &EmbeddingInstance<'_>, family: &CutFamily) -> VerificationReport {
    let routes = e.routes_as_edge_ids();
    let guest_edges = e.guest.graph().edges();
    let host_size = e.host.vertex_count();
    let mut cut_mark = vec![false; e.host.edge_count()];
    let mut on_small = vec![false; host_size];

    let cuts = family
        .cuts
        .iter()
        .map(|cut| {
            for &edge in &cut.edges {
                if let Some(id) = e.host.edge_index(edge) {
                    cut_mark[id] = true;
                }
            }
            for &x in &cut.small_side {
                on_small[x] = true;
            }

            let mut intra_avoids_cut = true;
            let mut crossing_once = true;
            let mut routed_congestion = 0u64;
            for (edge, route) in guest_edges.iter().zip(&routes) {
                let hits = route.iter().filter(|&&id| cut_mark[id]).count();
                routed_congestion += hits as u64;
                let crosses = on_small[e.map[edge.lo()]] != on_small[e.map[edge.hi()]];
                if crosses {
                    crossing_once &= hits == 1;
                } else {
                    intra_avoids_cut &= hits == 0;
                }
            }

            let side = e.preimage(&cut.small_side);
            let induced = e.guest.graph().induced_edge_count(&side) as u64;
            let max_induced = iso_closed_form(side.len() as u64, e.guest.n()).ok();
            let check = CutCheck {
                name: cut.name.clone(),
                separates: cut.separates(e.host),
                intra_avoids_cut,
                crossing_once,
                maximal: max_induced == Some(induced),
                induced,
                max_induced,
                lemma_value: congestion_lemma_value(e.guest, &side).ok(),
                routed_congestion,
            };

            for &edge in &cut.edges {
                if let Some(id) = e.host.edge_index(edge) {
                    cut_mark[id] = false;
                }
            }
            for &x in &cut.small_side {
                on_small[x] = false;
            }
            check
        })
        .collect();

    VerificationReport {
        multiplicity: family.multiplicity,
        partition_ok: family.partitions(e.host),
        cuts,
    }
}

/// `(1/k)·Σ` of congestion-lemma values over a family that passes
/// [`verify_cut_family`].
pub fn wirelength_by_cuts(e: &EmbeddingInstance<'_>, family: &CutFamily) -> Result<u64> {
    let report = verify_cut_family(e, family);
    if !report.passed() {
        return Err(Error::UnverifiedFamily(report.summary()));
    }
    let mut total = 0u64;
    for c in &report.cuts {
        total += c
            .lemma_value
            .ok_or_else(|| Error::Inconsistent(format!("cut {} has no lemma value", c.name)))?;
    }
    let k = family.multiplicity as u64;
    if !total.is_multiple_of(k) {
        return Err(Error::Inconsistent(format!(
            "cut total {total} is not divisible by multiplicity {k}"
        )));
    }
    Ok(total / k)
}
