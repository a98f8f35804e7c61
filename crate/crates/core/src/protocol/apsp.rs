// SPDX-License-Identifier: Apache-2.0

//! Exact weighted APSP between two parties, and among `t` players on a
//! shared blackboard.
//!
//! Distances travel as fixed-width fields of `F = ceil(log2(n W + 1)) + 1`
//! bits, in canonical node order, so no indices are sent. The all-ones field
//! is the Infinity codeword; every finite distance is at most `(n - 1) W` and
//! fits in `F - 1` bits.

use serde::{Deserialize, Serialize};

use super::{Direction, Transcript};
use crate::error::{Error, Result};
use crate::graph::{sssp, BlockPartition, Distance, Edge, Graph, NodeId, Partition, Side};
use crate::sim::{width_for, BitReader, BitWriter};

pub fn distance_field_bits(n: usize, w_max: u64) -> usize {
    width_for((n as u64).saturating_mul(w_max)) + 1
}

pub fn encode_distance(w: BitWriter, d: Distance, f: usize) -> BitWriter {
    match d {
        Distance::Finite(v) => w.uint(v, f),
        Distance::Infinite => w.uint(u64::MAX >> (64 - f), f),
    }
}

pub fn decode_distance(r: &mut BitReader<'_>, f: usize) -> Option<Distance> {
    let v = r.uint(f)?;
    Some(if v == u64::MAX >> (64 - f) {
        Distance::Infinite
    } else {
        Distance::Finite(v)
    })
}

/// One party's input: its side of the graph, the cut with weights, and the
/// far endpoints of the cut.
#[derive(Clone, Debug)]
pub struct PartyView {
    pub side: Side,
    /// Own nodes, ascending.
    pub nodes: Vec<NodeId>,
    /// Own-side edges on the global node ids; other nodes are isolated.
    pub local: Graph,
    pub cut: Vec<Edge>,
    /// Own cut endpoints, ascending.
    pub near: Vec<NodeId>,
    /// Far cut endpoints, ascending.
    pub far: Vec<NodeId>,
}

impl PartyView {
    pub fn new(g: &Graph, p: &Partition, side: Side) -> Result<Self> {
        let cut = crate::graph::cut_edges(g, p)?;
        let mut local = Graph::with_labels(g.labels().to_vec());
        for e in g.edges() {
            if p.side(e.u) == side && p.side(e.v) == side {
                local.add_edge(e.u, e.v, e.w)?;
            }
        }
        let (near, far) = match side {
            Side::A => (cut.c_a.clone(), cut.c_b.clone()),
            Side::B => (cut.c_b.clone(), cut.c_a.clone()),
        };
        Ok(PartyView {
            side,
            nodes: p.nodes(side),
            local,
            cut: cut.edges,
            near,
            far,
        })
    }

    /// `wdist_{G_side}(u, v)` for `u` in the near cut endpoints and every own
    /// node `v`, encoded row by row.
    fn cut_rows(&self, f: usize) -> Vec<bool> {
        let mut w = BitWriter::new();
        for &u in &self.near {
            let d = sssp(&self.local, u);
            for &v in &self.nodes {
                w = encode_distance(w, d[v], f);
            }
        }
        w.into_bits()
    }
}

/// `V_A ∪ C_B` with edges `E_A ∪ C ∪ (C_B × C_B)`, the last weighted by the
/// other party's internal distances.
#[derive(Clone, Debug)]
pub struct VirtualGraph {
    pub nodes: Vec<NodeId>,
    pub graph: Graph,
}

impl VirtualGraph {
    fn build(view: &PartyView, far_rows: &[Vec<Distance>], far_nodes: &[NodeId]) -> Result<Self> {
        let mut graph = view.local.clone();
        for e in &view.cut {
            graph.add_edge(e.u, e.v, e.w)?;
        }
        let col: std::collections::HashMap<NodeId, usize> =
            far_nodes.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        for (i, &u) in view.far.iter().enumerate() {
            for &v in &view.far[i + 1..] {
                if let Distance::Finite(d) = far_rows[i][col[&v]] {
                    graph.add_edge(u, v, d)?;
                }
            }
        }
        let mut nodes = view.nodes.clone();
        nodes.extend(&view.far);
        nodes.sort_unstable();
        Ok(VirtualGraph { nodes, graph })
    }
}

/// Distance rows computed by one party, one per own node.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartyDistances {
    pub sources: Vec<NodeId>,
    pub rows: Vec<Vec<Distance>>,
}

#[derive(Clone, Debug)]
pub struct ApspTwoParty {
    pub alice: PartyDistances,
    pub bob: PartyDistances,
    pub transcript: Transcript,
    pub field_bits: usize,
    pub cut_nodes: usize,
    pub n: usize,
    pub alice_virtual: VirtualGraph,
    pub bob_virtual: VirtualGraph,
}

impl ApspTwoParty {
    /// `|V(C)| n F`.
    pub fn bound(&self) -> u64 {
        (self.cut_nodes * self.n * self.field_bits) as u64
    }
}

fn decode_rows(bits: &[bool], rows: usize, cols: usize, f: usize) -> Result<Vec<Vec<Distance>>> {
    let mut r = BitReader::over(bits);
    (0..rows)
        .map(|_| {
            (0..cols)
                .map(|_| {
                    decode_distance(&mut r, f)
                        .ok_or_else(|| Error::Parse("truncated distance row".into()))
                })
                .collect()
        })
        .collect()
}

/// Distances from every own node given the virtual graph and, for each far
/// node `v`, `far_rows[x][v]` from the far cut endpoints.
fn finish_party(
    n: usize,
    view: &PartyView,
    virt: &VirtualGraph,
    far_cut: &[NodeId],
    far_nodes: &[NodeId],
    far_rows: &[Vec<Distance>],
) -> PartyDistances {
    let rows = view
        .nodes
        .iter()
        .map(|&u| {
            let d = sssp(&virt.graph, u);
            let mut row = vec![Distance::Infinite; n];
            for &v in &view.nodes {
                row[v] = d[v];
            }
            for (col, &v) in far_nodes.iter().enumerate() {
                row[v] = far_cut
                    .iter()
                    .enumerate()
                    .map(|(i, &x)| d[x] + far_rows[i][col])
                    .min()
                    .unwrap_or(Distance::Infinite);
            }
            row
        })
        .collect();
    PartyDistances {
        sources: view.nodes.clone(),
        rows,
    }
}

/// Bob sends `wdist_{G_B}(C_B, V_B)`, Alice builds her virtual graph and
/// answers with `wdist_{G_A}(C_A, V_A)`; each then outputs its own rows.
pub fn apsp_two_party(g: &Graph, p: &Partition) -> Result<ApspTwoParty> {
    let n = g.n();
    let f = distance_field_bits(n, g.max_weight());
    let alice_view = PartyView::new(g, p, Side::A)?;
    let bob_view = PartyView::new(g, p, Side::B)?;
    let mut transcript = Transcript::default();

    let msg_b = bob_view.cut_rows(f);
    transcript.push(1, None, Direction::BobToAlice, msg_b.clone());
    let rows_b = decode_rows(&msg_b, alice_view.far.len(), bob_view.nodes.len(), f)?;
    let far_cols: Vec<Vec<Distance>> = {
        let cols: Vec<usize> = alice_view
            .far
            .iter()
            .map(|x| bob_view.nodes.binary_search(x).expect("far node is Bob's"))
            .collect();
        rows_b
            .iter()
            .map(|r| cols.iter().map(|&c| r[c]).collect())
            .collect()
    };
    let alice_virtual = VirtualGraph::build(&alice_view, &far_cols, &alice_view.far)?;
    let alice = finish_party(
        n,
        &alice_view,
        &alice_virtual,
        &alice_view.far,
        &bob_view.nodes,
        &rows_b,
    );

    let msg_a = alice_view.cut_rows(f);
    transcript.push(2, None, Direction::AliceToBob, msg_a.clone());
    let rows_a = decode_rows(&msg_a, bob_view.far.len(), alice_view.nodes.len(), f)?;
    let far_cols: Vec<Vec<Distance>> = {
        let cols: Vec<usize> = bob_view
            .far
            .iter()
            .map(|x| {
                alice_view
                    .nodes
                    .binary_search(x)
                    .expect("far node is Alice's")
            })
            .collect();
        rows_a
            .iter()
            .map(|r| cols.iter().map(|&c| r[c]).collect())
            .collect()
    };
    let bob_virtual = VirtualGraph::build(&bob_view, &far_cols, &bob_view.far)?;
    let bob = finish_party(
        n,
        &bob_view,
        &bob_virtual,
        &bob_view.far,
        &alice_view.nodes,
        &rows_a,
    );

    Ok(ApspTwoParty {
        alice,
        bob,
        transcript,
        field_bits: f,
        cut_nodes: alice_view.near.len() + alice_view.far.len(),
        n,
        alice_virtual,
        bob_virtual,
    })
}

#[derive(Clone, Debug)]
pub struct BlackboardRun {
    pub players: Vec<PartyDistances>,
    pub transcript: Transcript,
    pub field_bits: usize,
    pub cut_edges: usize,
    pub cut_nodes: usize,
    pub n: usize,
}

impl BlackboardRun {
    /// `|C| (2 ceil(log2 n) + F) + |V(C)| n F`.
    pub fn bound(&self) -> u64 {
        let id = width_for(self.n.saturating_sub(1) as u64);
        (self.cut_edges * (2 * id + self.field_bits) + self.cut_nodes * self.n * self.field_bits)
            as u64
    }
}

/// Every cut edge is published once, then each player `P_i` writes
/// `wdist_{G_i}(u, v)` for `u` in `V_i` and `v` in `V(C) ∩ V_i`. Each player
/// then computes its rows from its own block, the cut, and the board.
pub fn apsp_blackboard(g: &Graph, parts: &BlockPartition) -> Result<BlackboardRun> {
    let n = g.n();
    if parts.len() != n {
        return Err(Error::PartialPartition {
            got: parts.len(),
            n,
        });
    }
    let t = parts.t();
    let f = distance_field_bits(n, g.max_weight());
    let id = width_for(n.saturating_sub(1) as u64);
    let members: Vec<Vec<NodeId>> = (0..t).map(|b| parts.members(b)).collect();
    let mut locals: Vec<Graph> = (0..t).map(|_| Graph::new(n)).collect();
    let mut cut: Vec<Edge> = Vec::new();
    for e in g.sorted_edges() {
        let (bu, bv) = (parts.block(e.u), parts.block(e.v));
        if bu == bv {
            locals[bu].add_edge(e.u, e.v, e.w)?;
        } else {
            cut.push(e);
        }
    }
    let mut is_cut_node = vec![false; n];
    for e in &cut {
        is_cut_node[e.u] = true;
        is_cut_node[e.v] = true;
    }
    let cut_nodes: Vec<Vec<NodeId>> = members
        .iter()
        .map(|m| m.iter().copied().filter(|&u| is_cut_node[u]).collect())
        .collect();

    let mut transcript = Transcript::default();
    for e in &cut {
        let writer = parts.block(e.u).min(parts.block(e.v));
        let bits = BitWriter::new()
            .uint(e.u as u64, id)
            .uint(e.v as u64, id)
            .uint(e.w, f)
            .into_bits();
        transcript.push(1, None, Direction::Board(writer), bits);
    }
    for (i, m) in members.iter().enumerate() {
        let mut w = BitWriter::new();
        for &x in &cut_nodes[i] {
            let d = sssp(&locals[i], x);
            for &v in m {
                w = encode_distance(w, d[v], f);
            }
        }
        transcript.push(2, None, Direction::Board(i), w.into_bits());
    }

    // Everything below reads only the board plus the player's own block.
    let mut board_cut: Vec<Edge> = Vec::new();
    let mut board_rows: Vec<Vec<Vec<Distance>>> = Vec::with_capacity(t);
    for rec in &transcript.records {
        let mut r = BitReader::over(&rec.bits);
        match rec.round {
            1 => {
                let (u, v, w) = (r.uint(id), r.uint(id), r.uint(f));
                let (u, v, w) = (u.zip(v).zip(w))
                    .map(|((u, v), w)| (u as usize, v as usize, w))
                    .ok_or_else(|| Error::Parse("truncated cut edge".into()))?;
                board_cut.push(Edge { u, v, w });
            }
            _ => {
                let Direction::Board(i) = rec.direction else {
                    unreachable!()
                };
                board_rows.push(decode_rows(
                    &rec.bits,
                    cut_nodes[i].len(),
                    members[i].len(),
                    f,
                )?);
            }
        }
    }

    let players = (0..t)
        .map(|i| {
            let mut h = locals[i].clone();
            for e in &board_cut {
                h.add_edge(e.u, e.v, e.w)?;
            }
            for j in (0..t).filter(|&j| j != i) {
                let cn = &cut_nodes[j];
                for (a, &u) in cn.iter().enumerate() {
                    for &v in &cn[a + 1..] {
                        let col = members[j].binary_search(&v).expect("member");
                        if let Distance::Finite(d) = board_rows[j][a][col] {
                            h.add_edge(u, v, d)?;
                        }
                    }
                }
            }
            let rows = members[i]
                .iter()
                .map(|&u| {
                    let d = sssp(&h, u);
                    let mut row = vec![Distance::Infinite; n];
                    for &v in &members[i] {
                        row[v] = d[v];
                    }
                    for j in (0..t).filter(|&j| j != i) {
                        for (col, &v) in members[j].iter().enumerate() {
                            row[v] = cut_nodes[j]
                                .iter()
                                .enumerate()
                                .map(|(a, &x)| d[x] + board_rows[j][a][col])
                                .min()
                                .unwrap_or(Distance::Infinite);
                        }
                    }
                    row
                })
                .collect();
            Ok(PartyDistances {
                sources: members[i].clone(),
                rows,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(BlackboardRun {
        players,
        transcript,
        field_bits: f,
        cut_edges: cut.len(),
        cut_nodes: is_cut_node.iter().filter(|&&c| c).count(),
        n,
    })
}
