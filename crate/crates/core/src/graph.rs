// SPDX-License-Identifier: Apache-2.0

//! Undirected weighted graphs over dense node indices, two-sided and
//! multi-block partitions, cuts, connectivity and exact all-pairs distances.
//!
//! Graphs are immutable once handed out by a builder; every other module
//! treats them as shared read-only data.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type NodeId = usize;

/// An undirected edge stored with `u < v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub u: NodeId,
    pub v: NodeId,
    pub w: u64,
}

impl Edge {
    pub fn other(&self, x: NodeId) -> NodeId {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<(NodeId, u64)>>,
    edges: Vec<Edge>,
    labels: Vec<String>,
}

impl Graph {
    /// An edgeless graph on `n` nodes labelled by their indices.
    pub fn new(n: usize) -> Self {
        Self {
            adj: vec![Vec::new(); n],
            edges: Vec::new(),
            labels: (0..n).map(|i| i.to_string()).collect(),
        }
    }

    pub fn with_labels(labels: Vec<String>) -> Self {
        let n = labels.len();
        Self {
            adj: vec![Vec::new(); n],
            edges: Vec::new(),
            labels,
        }
    }

    pub fn from_edges(
        n: usize,
        edges: impl IntoIterator<Item = (NodeId, NodeId, u64)>,
    ) -> Result<Self> {
        let mut g = Self::new(n);
        for (u, v, w) in edges {
            g.add_edge(u, v, w)?;
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn add_edge(&mut self, u: NodeId, v: NodeId, w: u64) -> Result<()> {
        let n = self.n();
        for x in [u, v] {
            if x >= n {
                return Err(Error::NodeOutOfRange { node: x, n });
            }
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        let pos = match self.adj[u].binary_search_by_key(&v, |&(x, _)| x) {
            Ok(_) => return Err(Error::ParallelEdge(u.min(v), u.max(v))),
            Err(pos) => pos,
        };
        self.adj[u].insert(pos, (v, w));
        let pos = self.adj[v]
            .binary_search_by_key(&u, |&(x, _)| x)
            .unwrap_err();
        self.adj[v].insert(pos, (u, w));
        self.edges.push(Edge {
            u: u.min(v),
            v: u.max(v),
            w,
        });
        Ok(())
    }

    /// Removes an edge if present. Only used by fault-injection builders.
    pub fn remove_edge(&mut self, u: NodeId, v: NodeId) -> bool {
        let Ok(pos) = self.adj[u].binary_search_by_key(&v, |&(x, _)| x) else {
            return false;
        };
        self.adj[u].remove(pos);
        let pos = self.adj[v].binary_search_by_key(&u, |&(x, _)| x).unwrap();
        self.adj[v].remove(pos);
        let (a, b) = (u.min(v), u.max(v));
        self.edges.retain(|e| !(e.u == a && e.v == b));
        true
    }

    /// Neighbors of `u` with edge weights, sorted by neighbor id.
    pub fn neighbors(&self, u: NodeId) -> &[(NodeId, u64)] {
        &self.adj[u]
    }

    pub fn degree(&self, u: NodeId) -> usize {
        self.adj[u].len()
    }

    pub fn weight(&self, u: NodeId, v: NodeId) -> Option<u64> {
        self.adj[u]
            .binary_search_by_key(&v, |&(x, _)| x)
            .ok()
            .map(|pos| self.adj[u][pos].1)
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        self.weight(u, v).is_some()
    }

    /// Edges in insertion order (deterministic for every builder).
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Edges sorted by `(u, v)`.
    pub fn sorted_edges(&self) -> Vec<Edge> {
        let mut e = self.edges.clone();
        e.sort_unstable();
        e
    }

    pub fn label(&self, u: NodeId) -> &str {
        &self.labels[u]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn max_weight(&self) -> u64 {
        self.edges.iter().map(|e| e.w).max().unwrap_or(0)
    }

    /// Subgraph induced by `nodes`, re-indexed in the given order.
    pub fn induced(&self, nodes: &[NodeId]) -> Graph {
        let mut index = vec![usize::MAX; self.n()];
        for (i, &u) in nodes.iter().enumerate() {
            index[u] = i;
        }
        let mut g = Graph::with_labels(nodes.iter().map(|&u| self.labels[u].clone()).collect());
        for e in &self.edges {
            let (a, b) = (index[e.u], index[e.v]);
            if a != usize::MAX && b != usize::MAX {
                g.add_edge(a, b, e.w).expect("induced edges are simple");
            }
        }
        g
    }

    pub fn is_connected(&self) -> bool {
        if self.n() == 0 {
            return true;
        }
        self.bfs_depths(0).iter().all(Option::is_some)
    }

    /// Hop distances from `root`; `None` for unreachable nodes.
    pub fn bfs_depths(&self, root: NodeId) -> Vec<Option<usize>> {
        let mut depth = vec![None; self.n()];
        let mut queue = VecDeque::from([root]);
        depth[root] = Some(0);
        while let Some(u) = queue.pop_front() {
            let d = depth[u].unwrap();
            for &(v, _) in &self.adj[u] {
                if depth[v].is_none() {
                    depth[v] = Some(d + 1);
                    queue.push_back(v);
                }
            }
        }
        depth
    }

    /// Hop diameter, or `None` if disconnected.
    pub fn diameter(&self) -> Option<usize> {
        (0..self.n())
            .map(|u| {
                self.bfs_depths(u)
                    .into_iter()
                    .try_fold(0, |m, d| d.map(|d| m.max(d)))
            })
            .try_fold(0, |m, e| e.map(|e| m.max(e)))
    }

    /// Hop eccentricity of `u`, or `None` if some node is unreachable.
    pub fn eccentricity(&self, u: NodeId) -> Option<usize> {
        self.bfs_depths(u)
            .into_iter()
            .try_fold(0, |m, d| d.map(|d| m.max(d)))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    A,
    B,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::A => Side::B,
            Side::B => Side::A,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::A => "A",
            Side::B => "B",
        })
    }
}

/// A total assignment of nodes to Alice's side `A` or Bob's side `B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    side: Vec<Side>,
}

impl Partition {
    pub fn new(side: Vec<Side>) -> Self {
        Self { side }
    }

    /// Nodes in `a_nodes` go to `A`, every other node of `0..n` to `B`.
    pub fn from_a_side(n: usize, a_nodes: impl IntoIterator<Item = NodeId>) -> Self {
        let mut side = vec![Side::B; n];
        for u in a_nodes {
            side[u] = Side::A;
        }
        Self { side }
    }

    /// Builds a partition from an optional per-node assignment, rejecting gaps.
    pub fn from_partial(n: usize, sides: &[Option<Side>]) -> Result<Self> {
        let got = sides.iter().filter(|s| s.is_some()).count();
        if sides.len() != n || got != n {
            return Err(Error::PartialPartition { got, n });
        }
        Ok(Self {
            side: sides.iter().map(|s| s.unwrap()).collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.side.len()
    }

    pub fn is_empty(&self) -> bool {
        self.side.is_empty()
    }

    pub fn side(&self, u: NodeId) -> Side {
        self.side[u]
    }

    pub fn sides(&self) -> &[Side] {
        &self.side
    }

    pub fn nodes(&self, s: Side) -> Vec<NodeId> {
        (0..self.side.len())
            .filter(|&u| self.side[u] == s)
            .collect()
    }

    pub fn check(&self, g: &Graph) -> Result<()> {
        if self.side.len() != g.n() {
            return Err(Error::PartialPartition {
                got: self.side.len().min(g.n()),
                n: g.n(),
            });
        }
        Ok(())
    }
}

/// The cut `C = E(V_A, V_B)` together with the nodes touching it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cut {
    pub edges: Vec<Edge>,
    /// `C_A = V(C) ∩ V_A`, sorted.
    pub c_a: Vec<NodeId>,
    /// `C_B = V(C) ∩ V_B`, sorted.
    pub c_b: Vec<NodeId>,
}

impl Cut {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// `|V(C)|`.
    pub fn touching(&self) -> usize {
        self.c_a.len() + self.c_b.len()
    }
}

pub fn cut_edges(g: &Graph, p: &Partition) -> Result<Cut> {
    p.check(g)?;
    let mut edges = Vec::new();
    let mut touch = vec![false; g.n()];
    for e in g.sorted_edges() {
        if p.side(e.u) != p.side(e.v) {
            touch[e.u] = true;
            touch[e.v] = true;
            edges.push(e);
        }
    }
    let pick = |s| (0..g.n()).filter(|&u| touch[u] && p.side(u) == s).collect();
    Ok(Cut {
        edges,
        c_a: pick(Side::A),
        c_b: pick(Side::B),
    })
}

pub fn is_connected(g: &Graph) -> bool {
    g.is_connected()
}

/// A distance value: exact non-negative integer or unreachable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Distance {
    Finite(u64),
    Infinite,
}

impl Distance {
    pub const ZERO: Distance = Distance::Finite(0);

    pub fn finite(self) -> Option<u64> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Distance::Finite(_))
    }
}

impl std::ops::Add for Distance {
    type Output = Distance;

    fn add(self, rhs: Distance) -> Distance {
        match (self, rhs) {
            (Distance::Finite(a), Distance::Finite(b)) => Distance::Finite(a + b),
            _ => Distance::Infinite,
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Infinite => f.write_str("inf"),
        }
    }
}

/// Dense `n × n` matrix of exact distances.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    dist: Vec<Distance>,
}

impl DistanceMatrix {
    pub fn filled(n: usize, d: Distance) -> Self {
        Self {
            n,
            dist: vec![d; n * n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, u: NodeId, v: NodeId) -> Distance {
        self.dist[u * self.n + v]
    }

    pub fn set(&mut self, u: NodeId, v: NodeId, d: Distance) {
        self.dist[u * self.n + v] = d;
    }

    pub fn row(&self, u: NodeId) -> &[Distance] {
        &self.dist[u * self.n..(u + 1) * self.n]
    }
}

#[derive(PartialEq, Eq)]
struct HeapItem(u64, NodeId);

impl Ord for HeapItem {
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.cmp(&self.0).then_with(|| other.1.cmp(&self.1))
    }
}

impl PartialOrd for HeapItem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Single-source Dijkstra.
pub fn sssp(g: &Graph, src: NodeId) -> Vec<Distance> {
    let mut dist = vec![Distance::Infinite; g.n()];
    let mut heap = BinaryHeap::new();
    dist[src] = Distance::ZERO;
    heap.push(HeapItem(0, src));
    while let Some(HeapItem(d, u)) = heap.pop() {
        if Distance::Finite(d) > dist[u] {
            continue;
        }
        for &(v, w) in g.neighbors(u) {
            let nd = d + w;
            if Distance::Finite(nd) < dist[v] {
                dist[v] = Distance::Finite(nd);
                heap.push(HeapItem(nd, v));
            }
        }
    }
    dist
}

/// Exact all-pairs shortest paths, one Dijkstra per source.
pub fn apsp_exact(g: &Graph) -> DistanceMatrix {
    let n = g.n();
    let mut m = DistanceMatrix::filled(n, Distance::Infinite);
    for u in 0..n {
        m.dist[u * n..(u + 1) * n].copy_from_slice(&sssp(g, u));
    }
    m
}

/// A partition of the node set into `t` blocks for the blackboard model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockPartition {
    block: Vec<usize>,
    t: usize,
}

impl BlockPartition {
    pub fn new(block: Vec<usize>, t: usize) -> Result<Self> {
        if t < 2 {
            return Err(Error::ParameterTooSmall {
                name: "t",
                value: t,
                min: 2,
            });
        }
        let mut sizes = vec![0usize; t];
        for &b in &block {
            if b >= t {
                return Err(Error::IndexOutOfRange { index: b, bound: t });
            }
            sizes[b] += 1;
        }
        if let Some(empty) = sizes.iter().position(|&s| s == 0) {
            return Err(Error::EmptyBlock(empty));
        }
        Ok(Self { block, t })
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn len(&self) -> usize {
        self.block.len()
    }

    pub fn is_empty(&self) -> bool {
        self.block.is_empty()
    }

    pub fn block(&self, u: NodeId) -> usize {
        self.block[u]
    }

    pub fn members(&self, b: usize) -> Vec<NodeId> {
        (0..self.block.len())
            .filter(|&u| self.block[u] == b)
            .collect()
    }

    pub fn from_partition(p: &Partition) -> Result<Self> {
        Self::new(
            p.sides()
                .iter()
                .map(|s| if *s == Side::A { 0 } else { 1 })
                .collect(),
            2,
        )
    }
}
