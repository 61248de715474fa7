use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{Edge, LabeledGraph};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Dot,
    JsonEdgeList,
}

impl FromStr for ExportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dot" => Ok(ExportFormat::Dot),
            "json" | "json-edgelist" => Ok(ExportFormat::JsonEdgeList),
            other => Err(Error::Parse(format!("unknown graph format {other:?}"))),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct EdgeListDoc {
    vertex_count: usize,
    edges: Vec<Edge>,
    #[serde(default)]
    roles: BTreeMap<usize, String>,
}

pub fn export(g: &LabeledGraph, format: ExportFormat) -> String {
    match format {
        ExportFormat::Dot => g.to_dot(),
        ExportFormat::JsonEdgeList => g.to_json(),
    }
}

impl LabeledGraph {
    /// `graph G { u -- v; ... }`, one edge per line. Isolated vertices are
    /// listed on their own so the vertex set survives.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph G {\n");
        for v in 0..self.vertex_count {
            if self.adjacency[v].is_empty() {
                let _ = writeln!(out, "  {v};");
            }
        }
        for e in &self.edges {
            let _ = writeln!(out, "  {} -- {};", e.lo(), e.hi());
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> String {
        let doc = EdgeListDoc {
            vertex_count: self.vertex_count,
            edges: self.edges.clone(),
            roles: self.roles.clone(),
        };
        let mut s = serde_json::to_string(&doc).expect("edge list serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: EdgeListDoc =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        LabeledGraph::new(doc.vertex_count, doc.edges)?.with_roles(doc.roles)
    }
}

#[cfg(test)]
mod tests {
    use super::super::build_graph;
    use super::*;

    #[test]
    fn dot_lists_edges() {
        let g = build_graph(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let dot = export(&g, ExportFormat::Dot);
        assert!(dot.starts_with("graph G {\n"));
        assert_eq!(dot.lines().filter(|l| l.contains("--")).count(), 3);
        assert!(dot.contains("  0 -- 2;\n"));
    }

    #[test]
    fn json_shape_and_round_trip() {
        let g = build_graph(3, [(2, 1), (0, 1)])
            .unwrap()
            .with_roles([(1, "center")])
            .unwrap();
        let json = g.to_json();
        assert_eq!(
            json,
            "{\"vertex_count\":3,\"edges\":[[0,1],[1,2]],\"roles\":{\"1\":\"center\"}}\n"
        );
        let back = LabeledGraph::from_json(&json).unwrap();
        assert_eq!(back, g);
        assert_eq!(back.to_json(), json);
    }

    #[test]
    fn malformed_json_is_a_parse_error() {
        assert!(matches!(
            LabeledGraph::from_json("{\"vertex_count\": 3, \"edges\": [[0"),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            LabeledGraph::from_json("{\"vertex_count\": 2, \"edges\": [[0, 5]]}"),
            Err(Error::EndpointOutOfRange { .. })
        ));
    }
}
