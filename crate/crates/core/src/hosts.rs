//! Host topologies with the labelings used by the lexicographic embeddings,
//! and the edge-cut families that certify their wirelength.
//!
//! All hosts have `3^n` vertices. With `M = 3^{n-1}`:
//!
//! * cylinder `C3 × P_M`: column `r` (0-based) holds labels `3r, 3r+1, 3r+2`
//!   top to bottom; columns are triangles, rows are paths;
//! * caterpillar: spine vertex `i` is `3i`, its two leaves `3i+1`, `3i+2`;
//! * firecracker `F_{M,3}`: unit `i` is link leaf `3i`, center `3i+1`, free
//!   leaf `3i+2`; consecutive link leaves are joined;
//! * banana tree `B_{2,m}` with `m = ⌊3^n/2⌋`: star 1 occupies `0..m`
//!   (center 0, link leaf `m-1`), the root is `m`, star 2 occupies
//!   `m+1..=2m` (link leaf `m+1`, center `m+2`).
//!
//! The tree labelings are depth-first preorders, produced by
//! [`preorder_labels`] from an unlabeled shape.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{CutFamily, Edge, EdgeCut, LabeledGraph};
use crate::qcube::{pow3, DEFAULT_MAX_DIMENSION};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HostKind {
    Cylinder,
    Caterpillar,
    Firecracker,
    Banana,
}

impl HostKind {
    pub const ALL: [HostKind; 4] = [
        HostKind::Cylinder,
        HostKind::Caterpillar,
        HostKind::Firecracker,
        HostKind::Banana,
    ];

    pub fn name(self) -> &'static str {
        match self {
            HostKind::Cylinder => "cylinder",
            HostKind::Caterpillar => "caterpillar",
            HostKind::Firecracker => "firecracker",
            HostKind::Banana => "banana",
        }
    }

    pub fn is_tree(self) -> bool {
        !matches!(self, HostKind::Cylinder)
    }
}

impl fmt::Display for HostKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for HostKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cylinder" => Ok(HostKind::Cylinder),
            "caterpillar" | "caterpillar2" => Ok(HostKind::Caterpillar),
            "firecracker" | "firecracker3" => Ok(HostKind::Firecracker),
            "banana" | "banana2" => Ok(HostKind::Banana),
            other => Err(Error::Parse(format!("unknown host kind {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HostSpec {
    pub kind: HostKind,
    pub n: u32,
    pub graph: LabeledGraph,
    pub cut_family: CutFamily,
}

pub fn build_host(kind: HostKind, n: u32) -> Result<HostSpec> {
    match kind {
        HostKind::Cylinder => build_cylinder(n),
        HostKind::Caterpillar => build_caterpillar(n),
        HostKind::Firecracker => build_firecracker(n),
        HostKind::Banana => build_banana(n),
    }
}

fn check_dimension(kind: HostKind, n: u32) -> Result<()> {
    if n < 2 {
        return Err(Error::Domain {
            n,
            reason: format!("{kind} host requires n >= 2"),
        });
    }
    if n > DEFAULT_MAX_DIMENSION {
        return Err(Error::Domain {
            n,
            reason: format!("{kind} host supports n <= {DEFAULT_MAX_DIMENSION}"),
        });
    }
    Ok(())
}

/// `C3 × P_{3^{n-1}}` with cuts `X_i^t` (the row edges between columns `i`
/// and `i+1`, each listed twice) and `Y_j` (every column edge touching row
/// `j`). Multiplicity 2.
pub fn build_cylinder(n: u32) -> Result<HostSpec> {
    check_dimension(HostKind::Cylinder, n)?;
    let cols = pow3(n - 1) as usize;
    let mut edges = Vec::new();
    for r in 0..cols {
        let base = 3 * r;
        edges.extend([(base, base + 1), (base + 1, base + 2), (base, base + 2)]);
        if r + 1 < cols {
            edges.extend((0..3).map(|j| (base + j, base + 3 + j)));
        }
    }
    let roles = (0..3 * cols).map(|v| (v, format!("row:{};col:{}", v % 3, v / 3 + 1)));
    let graph = LabeledGraph::new(3 * cols, edges)?.with_roles(roles)?;

    let mut cuts = Vec::new();
    for t in 1..=2 {
        for i in 1..cols {
            cuts.push(EdgeCut::new(
                &graph,
                format!("X_{i}^{t}"),
                (0..3).map(|j| (3 * (i - 1) + j, 3 * i + j)),
                0..3 * i,
            )?);
        }
    }
    for j in 0..3 {
        let cut_edges = (0..cols).flat_map(|r| {
            (0..3)
                .filter(move |&other| other != j)
                .map(move |other| (3 * r + j, 3 * r + other))
        });
        cuts.push(EdgeCut::new(
            &graph,
            format!("Y_{j}"),
            cut_edges,
            (0..cols).map(|r| 3 * r + j),
        )?);
    }
    Ok(HostSpec {
        kind: HostKind::Cylinder,
        n,
        graph,
        cut_family: CutFamily::new(2, cuts),
    })
}

/// Spine of `3^{n-1}` vertices, two leaves on each. Cuts `S_i` (spine
/// edges) and `T_j` (leaf edges).
pub fn build_caterpillar(n: u32) -> Result<HostSpec> {
    check_dimension(HostKind::Caterpillar, n)?;
    let spine = pow3(n - 1) as usize;
    // shape ids: spine i -> i, leaves of i -> spine + 2i, spine + 2i + 1
    let mut shape = Vec::new();
    for i in 0..spine {
        shape.push((i, spine + 2 * i));
        shape.push((i, spine + 2 * i + 1));
        if i + 1 < spine {
            shape.push((i, i + 1));
        }
    }
    let shape = LabeledGraph::new(3 * spine, shape)?;
    let leaves_first = |v: usize| if v >= spine { v } else { usize::MAX - (spine - v) };
    let perm = preorder_labels(&shape, 0, ChildOrder::Key(&leaves_first))?;
    let roles = (0..3 * spine).map(|v| (perm[v], if v < spine { "spine" } else { "leaf" }));
    let graph = relabel(&shape, &perm)?.with_roles(roles)?;

    let mut cuts = Vec::new();
    for i in 1..spine {
        cuts.push(EdgeCut::new(&graph, format!("S_{i}"), [(3 * (i - 1), 3 * i)], 0..3 * i)?);
    }
    let leaves = (0..3 * spine).filter(|v| v % 3 != 0);
    for (j, leaf) in leaves.enumerate() {
        cuts.push(EdgeCut::new(
            &graph,
            format!("T_{}", j + 1),
            [(leaf - leaf % 3, leaf)],
            [leaf],
        )?);
    }
    Ok(HostSpec {
        kind: HostKind::Caterpillar,
        n,
        graph,
        cut_family: CutFamily::new(1, cuts),
    })
}

/// `3^{n-1}` three-vertex stars chained through one leaf each. Cuts `S_i`
/// (link edges), `R_j` (link leaf to center), `T_k` (center to free leaf).
pub fn build_firecracker(n: u32) -> Result<HostSpec> {
    check_dimension(HostKind::Firecracker, n)?;
    let units = pow3(n - 1) as usize;
    // shape ids: link leaf i -> i, center i -> units + i, free leaf i -> 2·units + i
    let mut shape = Vec::new();
    for i in 0..units {
        shape.push((i, units + i));
        shape.push((units + i, 2 * units + i));
        if i + 1 < units {
            shape.push((i, i + 1));
        }
    }
    let shape = LabeledGraph::new(3 * units, shape)?;
    // from a link leaf, descend into its own star before the next link leaf
    let star_first = |v: usize| if v >= units { v } else { usize::MAX - (units - v) };
    let perm = preorder_labels(&shape, 0, ChildOrder::Key(&star_first))?;
    let roles = (0..3 * units).map(|v| {
        let tag = match v / units {
            0 => "link-leaf",
            1 => "center",
            _ => "leaf",
        };
        (perm[v], tag)
    });
    let graph = relabel(&shape, &perm)?.with_roles(roles)?;

    let mut cuts = Vec::new();
    for i in 1..units {
        cuts.push(EdgeCut::new(&graph, format!("S_{i}"), [(3 * (i - 1), 3 * i)], 0..3 * i)?);
    }
    for j in 0..units {
        cuts.push(EdgeCut::new(
            &graph,
            format!("R_{}", j + 1),
            [(3 * j, 3 * j + 1)],
            [3 * j + 1, 3 * j + 2],
        )?);
    }
    for k in 0..units {
        cuts.push(EdgeCut::new(
            &graph,
            format!("T_{}", k + 1),
            [(3 * k + 1, 3 * k + 2)],
            [3 * k + 2],
        )?);
    }
    Ok(HostSpec {
        kind: HostKind::Firecracker,
        n,
        graph,
        cut_family: CutFamily::new(1, cuts),
    })
}

/// Two stars on `m = ⌊3^n/2⌋` vertices whose link leaves hang off a common
/// root. Preorder starts at the first star's center so that every R/T
/// component is a label prefix or suffix.
pub fn build_banana(n: u32) -> Result<HostSpec> {
    check_dimension(HostKind::Banana, n)?;
    let total = pow3(n) as usize;
    let m = total / 2;
    let free = m - 2;
    // shape ids: center1 0, free leaves of star 1 1..=free, link1 free+1,
    // root free+2, link2 free+3, center2 free+4, free leaves of star 2 after
    let (c1, l1, root, l2, c2) = (0, free + 1, free + 2, free + 3, free + 4);
    let mut shape: Vec<(usize, usize)> = Vec::new();
    shape.extend((1..=free).map(|x| (c1, x)));
    shape.extend([(c1, l1), (l1, root), (root, l2), (l2, c2)]);
    shape.extend((c2 + 1..total).map(|x| (c2, x)));
    let shape = LabeledGraph::new(total, shape)?;
    let perm = preorder_labels(&shape, c1, ChildOrder::Ascending)?;
    let roles = (0..total).map(|v| {
        let tag = match v {
            _ if v == c1 || v == c2 => "center",
            _ if v == l1 || v == l2 => "link-leaf",
            _ if v == root => "root",
            _ => "leaf",
        };
        (perm[v], tag)
    });
    let graph = relabel(&shape, &perm)?.with_roles(roles)?;

    let (c1, l1, root, l2, c2) = (0, m - 1, m, m + 1, m + 2);
    let mut cuts = Vec::new();
    for (i, leaf) in (1..=free).enumerate() {
        cuts.push(EdgeCut::new(&graph, format!("S1_{}", i + 1), [(c1, leaf)], [leaf])?);
    }
    for (i, leaf) in (c2 + 1..total).enumerate() {
        cuts.push(EdgeCut::new(&graph, format!("S2_{}", i + 1), [(c2, leaf)], [leaf])?);
    }
    cuts.push(EdgeCut::new(&graph, "R_1", [(c1, l1)], 0..m - 1)?);
    cuts.push(EdgeCut::new(&graph, "R_2", [(c2, l2)], c2..total)?);
    cuts.push(EdgeCut::new(&graph, "T_1", [(root, l1)], 0..m)?);
    cuts.push(EdgeCut::new(&graph, "T_2", [(root, l2)], l2..total)?);
    Ok(HostSpec {
        kind: HostKind::Banana,
        n,
        graph,
        cut_family: CutFamily::new(1, cuts),
    })
}

/// Order in which preorder visits the children of a vertex.
#[derive(Clone, Copy)]
pub enum ChildOrder<'a> {
    Ascending,
    Descending,
    /// Ascending by the given key.
    Key(&'a dyn Fn(usize) -> usize),
}

impl ChildOrder<'_> {
    fn compare(&self, a: usize, b: usize) -> Ordering {
        match self {
            ChildOrder::Ascending => a.cmp(&b),
            ChildOrder::Descending => b.cmp(&a),
            ChildOrder::Key(key) => key(a).cmp(&key(b)).then(a.cmp(&b)),
        }
    }
}

/// Depth-first preorder numbering of a tree. Returns `perm` with
/// `perm[v]` = position of `v` in the traversal.
pub fn preorder_labels(tree: &LabeledGraph, root: usize, order: ChildOrder<'_>) -> Result<Vec<usize>> {
    tree.check_vertex(root)?;
    if !tree.is_tree() {
        return Err(Error::NotATree(if tree.is_connected() {
            "contains a cycle"
        } else {
            "disconnected"
        }));
    }
    let mut perm = vec![usize::MAX; tree.vertex_count()];
    let mut next = 0;
    let mut stack = vec![(root, usize::MAX)];
    while let Some((v, parent)) = stack.pop() {
        perm[v] = next;
        next += 1;
        let mut children: Vec<usize> = tree
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&w| w != parent)
            .collect();
        children.sort_by(|&a, &b| order.compare(a, b));
        stack.extend(children.into_iter().rev().map(|w| (w, v)));
    }
    Ok(perm)
}

fn relabel(g: &LabeledGraph, perm: &[usize]) -> Result<LabeledGraph> {
    LabeledGraph::new(
        g.vertex_count(),
        g.edges().iter().map(|e| Edge::new(perm[e.lo()], perm[e.hi()])),
    )
}
