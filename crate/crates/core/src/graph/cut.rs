use serde::{Deserialize, Serialize};

use super::{Edge, LabeledGraph};
use crate::error::{Error, Result};

/// A named set of host edges together with the component it is meant to
/// cut off.
///
/// Construction only checks that the edges belong to the graph. Whether
/// removing them really leaves exactly two components, one of them
/// `small_side`, is a property checked by [`EdgeCut::separates`], so that
/// malformed cuts can be represented and reported.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeCut {
    pub name: String,
    pub edges: Vec<Edge>,
    pub small_side: Vec<usize>,
}

impl EdgeCut {
    pub fn new<E: Into<Edge>>(
        graph: &LabeledGraph,
        name: impl Into<String>,
        edges: impl IntoIterator<Item = E>,
        small_side: impl IntoIterator<Item = usize>,
    ) -> Result<Self> {
        let name = name.into();
        let mut edges: Vec<Edge> = edges.into_iter().map(Into::into).collect();
        edges.sort_unstable();
        edges.dedup();
        if edges.is_empty() {
            return Err(Error::EmptyCut(name));
        }
        if let Some(&bad) = edges.iter().find(|&&e| graph.edge_index(e).is_none()) {
            return Err(Error::UnknownEdge(bad));
        }
        let mut small_side: Vec<usize> = small_side.into_iter().collect();
        small_side.sort_unstable();
        small_side.dedup();
        for &v in &small_side {
            graph.check_vertex(v)?;
        }
        Ok(EdgeCut {
            name,
            edges,
            small_side,
        })
    }

    /// True iff removing the cut leaves exactly two components and one of
    /// them is `small_side`.
    pub fn separates(&self, graph: &LabeledGraph) -> bool {
        match graph.connected_components(&self.edges) {
            Ok(comps) => comps.len() == 2 && comps.contains(&self.small_side),
            Err(_) => false,
        }
    }
}

/// Edge cuts covering the host edge multiset with every edge exactly
/// `multiplicity` times.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutFamily {
    pub multiplicity: usize,
    pub cuts: Vec<EdgeCut>,
}

impl CutFamily {
    pub fn new(multiplicity: usize, cuts: Vec<EdgeCut>) -> Self {
        CutFamily { multiplicity, cuts }
    }

    /// Multiset check: each host edge appears in exactly `multiplicity` cuts.
    pub fn partitions(&self, graph: &LabeledGraph) -> bool {
        if self.multiplicity == 0 {
            return false;
        }
        let mut seen = vec![0usize; graph.edge_count()];
        for cut in &self.cuts {
            for &e in &cut.edges {
                match graph.edge_index(e) {
                    Some(i) => seen[i] += 1,
                    None => return false,
                }
            }
        }
        seen.iter().all(|&c| c == self.multiplicity)
    }

    pub fn get(&self, name: &str) -> Option<&EdgeCut> {
        self.cuts.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string(self).expect("cut family serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::super::build_graph;
    use super::*;

    fn path4() -> LabeledGraph {
        build_graph(4, [(0, 1), (1, 2), (2, 3)]).unwrap()
    }

    #[test]
    fn separation() {
        let g = path4();
        let cut = EdgeCut::new(&g, "S", [(1, 2)], [0, 1]).unwrap();
        assert!(cut.separates(&g));
        let wrong_side = EdgeCut::new(&g, "S", [(1, 2)], [0]).unwrap();
        assert!(!wrong_side.separates(&g));
        let three = EdgeCut::new(&g, "S", [(0, 1), (2, 3)], [0]).unwrap();
        assert!(!three.separates(&g));
    }

    #[test]
    fn rejects_empty_and_foreign_edges() {
        let g = path4();
        assert!(matches!(
            EdgeCut::new(&g, "e", Vec::<Edge>::new(), [0]),
            Err(Error::EmptyCut(_))
        ));
        assert_eq!(
            EdgeCut::new(&g, "x", [(0, 3)], [0]).unwrap_err(),
            Error::UnknownEdge(Edge::new(0, 3))
        );
    }

    #[test]
    fn multiset_partition() {
        let g = path4();
        let cuts: Vec<_> = g
            .edges()
            .iter()
            .enumerate()
            .map(|(i, &e)| EdgeCut::new(&g, format!("S_{i}"), [e], 0..=i).unwrap())
            .collect();
        assert!(CutFamily::new(1, cuts.clone()).partitions(&g));
        assert!(!CutFamily::new(2, cuts.clone()).partitions(&g));
        let mut doubled = cuts.clone();
        doubled.extend(cuts.iter().cloned());
        assert!(CutFamily::new(2, doubled).partitions(&g));
        assert!(!CutFamily::new(1, cuts[..2].to_vec()).partitions(&g));
    }

    #[test]
    fn json_schema() {
        let g = path4();
        let fam = CutFamily::new(1, vec![EdgeCut::new(&g, "S_1", [(1, 2)], [1, 0]).unwrap()]);
        let json = fam.to_json();
        assert_eq!(
            json,
            "{\"multiplicity\":1,\"cuts\":[{\"name\":\"S_1\",\"edges\":[[1,2]],\"small_side\":[0,1]}]}\n"
        );
        assert_eq!(CutFamily::from_json(&json).unwrap(), fam);
    }
}
