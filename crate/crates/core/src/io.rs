// SPDX-License-Identifier: Apache-2.0

//! JSON graph files and DOT export.
//!
//! JSON layout: `{n, edges: [[u, v, w], ...], labels: {id: name},
//! partition: {id: "A" | "B"}}`, plus `kind`, `params`, `x`, `y` when the
//! graph is a generated instance.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::comm::BitString;
use crate::error::{Error, Result};
use crate::gadgets::{InstanceKind, LowerBoundInstance, Params};
use crate::graph::{Graph, NodeId, Partition, Side};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphFile {
    pub n: usize,
    pub edges: Vec<(NodeId, NodeId, i64)>,
    #[serde(default)]
    pub labels: BTreeMap<NodeId, String>,
    #[serde(default)]
    pub partition: BTreeMap<NodeId, Side>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<Params>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<BitString>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y: Option<BitString>,
}

/// A parsed graph file.
#[derive(Clone, Debug)]
pub struct Loaded {
    pub graph: Graph,
    pub partition: Option<Partition>,
    pub kind: Option<InstanceKind>,
    pub params: Option<Params>,
    pub x: Option<BitString>,
    pub y: Option<BitString>,
}

impl Loaded {
    /// The full instance; fails unless kind, partition and params are present.
    pub fn into_instance(self) -> Result<LowerBoundInstance> {
        let missing = |what: &str| Error::Parse(format!("graph file has no {what}"));
        Ok(LowerBoundInstance {
            kind: self.kind.ok_or_else(|| missing("kind"))?,
            partition: self.partition.ok_or_else(|| missing("partition"))?,
            params: self.params.ok_or_else(|| missing("params"))?,
            graph: self.graph,
            x: self.x,
            y: self.y,
        })
    }
}

impl GraphFile {
    pub fn from_graph(g: &Graph, partition: Option<&Partition>) -> Self {
        GraphFile {
            n: g.n(),
            edges: g.edges().iter().map(|e| (e.u, e.v, e.w as i64)).collect(),
            labels: (0..g.n())
                .filter(|&u| !g.label(u).is_empty())
                .map(|u| (u, g.label(u).to_string()))
                .collect(),
            partition: partition
                .map(|p| p.sides().iter().copied().enumerate().collect())
                .unwrap_or_default(),
            kind: None,
            params: None,
            x: None,
            y: None,
        }
    }

    pub fn from_instance(inst: &LowerBoundInstance) -> Self {
        GraphFile {
            kind: Some(inst.kind.name().to_string()),
            params: Some(inst.params.clone()),
            x: inst.x.clone(),
            y: inst.y.clone(),
            ..Self::from_graph(&inst.graph, Some(&inst.partition))
        }
    }

    pub fn load(self) -> Result<Loaded> {
        let mut labels = vec![String::new(); self.n];
        for (u, l) in self.labels {
            if u >= self.n {
                return Err(Error::NodeOutOfRange { node: u, n: self.n });
            }
            labels[u] = l;
        }
        let mut g = Graph::with_labels(labels);
        for (u, v, w) in self.edges {
            if w < 0 {
                return Err(Error::NegativeWeight { u, v, w });
            }
            g.add_edge(u, v, w as u64)?;
        }
        let partition = if self.partition.is_empty() {
            None
        } else {
            let mut sides = vec![None; self.n];
            for (u, s) in self.partition {
                if u >= self.n {
                    return Err(Error::NodeOutOfRange { node: u, n: self.n });
                }
                sides[u] = Some(s);
            }
            Some(Partition::from_partial(self.n, &sides)?)
        };
        let kind = match self.kind {
            Some(k) => Some(
                InstanceKind::from_name(&k)
                    .ok_or_else(|| Error::Parse(format!("unknown kind {k:?}")))?,
            ),
            None => None,
        };
        Ok(Loaded {
            graph: g,
            partition,
            kind,
            params: self.params,
            x: self.x,
            y: self.y,
        })
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn parse(s: &str) -> Result<Loaded> {
        let f: GraphFile = serde_json::from_str(s)?;
        f.load()
    }
}

/// DOT source; cut edges are drawn red and bold, sides as clusters.
pub fn to_dot(g: &Graph, partition: Option<&Partition>) -> String {
    let mut s = String::from("graph G {\n  node [shape=circle];\n");
    let node_line = |s: &mut String, u: NodeId, indent: &str| {
        let label = if g.label(u).is_empty() {
            u.to_string()
        } else {
            g.label(u).replace('"', "\\\"")
        };
        let _ = writeln!(s, "{indent}{u} [label=\"{label}\"];");
    };
    match partition {
        Some(p) => {
            for side in [Side::A, Side::B] {
                let _ = writeln!(s, "  subgraph cluster_{side} {{\n    label=\"{side}\";");
                for u in p.nodes(side) {
                    node_line(&mut s, u, "    ");
                }
                s.push_str("  }\n");
            }
        }
        None => (0..g.n()).for_each(|u| node_line(&mut s, u, "  ")),
    }
    for e in g.edges() {
        let crossing = partition.is_some_and(|p| p.side(e.u) != p.side(e.v));
        let style = if crossing {
            ", color=red, style=bold"
        } else {
            ""
        };
        let _ = writeln!(s, "  {} -- {} [label=\"{}\"{style}];", e.u, e.v, e.w);
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn negative_weights_are_rejected() {
        let err = GraphFile::parse(r#"{"n": 2, "edges": [[0, 1, -3]]}"#).unwrap_err();
        assert!(matches!(err, Error::NegativeWeight { w: -3, .. }));
    }

    #[test]
    fn partial_partitions_are_rejected() {
        let err = GraphFile::parse(r#"{"n": 3, "edges": [], "partition": {"0": "A", "1": "B"}}"#)
            .unwrap_err();
        assert!(matches!(err, Error::PartialPartition { got: 2, n: 3 }));
    }

    #[test]
    fn dot_marks_cut_edges() {
        let g = Graph::from_edges(3, [(0, 1, 1), (1, 2, 2)]).unwrap();
        let p = Partition::from_a_side(3, [0, 1]);
        let dot = to_dot(&g, Some(&p));
        assert!(dot.contains("1 -- 2 [label=\"2\", color=red, style=bold]"));
        assert!(dot.contains("0 -- 1 [label=\"1\"]"));
    }
}
