// SPDX-License-Identifier: Apache-2.0

//! Weighted 8-cycle family: four stars with zero-weight spokes, joined by
//! two zero-weight center edges and weighted input edges.

use super::{disj_inputs, IndexSet, InstanceKind, LowerBoundInstance, Params};
use crate::comm::BitString;
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId, Partition};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CycleLayout {
    pub k: usize,
}

impl CycleLayout {
    pub fn node(&self, s: IndexSet, i: usize) -> NodeId {
        s.ordinal() * self.k + i
    }

    /// The center `c_S`.
    pub fn center(&self, s: IndexSet) -> NodeId {
        4 * self.k + s.ordinal()
    }

    /// Whether `u` is one of the `4k` index-set nodes (not a center).
    pub fn is_index_node(&self, u: NodeId) -> bool {
        u < 4 * self.k
    }

    /// `k^3 + k i + j` on Alice's side, `k^3 - (k i + j)` on Bob's.
    pub fn input_weight(&self, alice: bool, i: usize, j: usize) -> u64 {
        let k = self.k as u64;
        let t = k * i as u64 + j as u64;
        if alice {
            k * k * k + t
        } else {
            k * k * k - t
        }
    }

    /// The target weight `2k^3`.
    pub fn target_weight(&self) -> u64 {
        2 * (self.k as u64).pow(3)
    }
}

pub fn build_weighted_cycle(k: usize, x: &BitString, y: &BitString) -> Result<LowerBoundInstance> {
    if k < 3 {
        return Err(Error::ParameterTooSmall {
            name: "k",
            value: k,
            min: 3,
        });
    }
    let (xp, yp) = disj_inputs(k, x, y)?;
    if x.is_all_zeros() && y.is_all_zeros() {
        return Err(Error::AllZeroInputs);
    }
    let layout = CycleLayout { k };
    let mut labels = Vec::with_capacity(4 * k + 4);
    for s in IndexSet::ALL {
        labels.extend((0..k).map(|i| format!("{}[{i}]", s.name())));
    }
    labels.extend(IndexSet::ALL.iter().map(|s| format!("c_{{{}}}", s.name())));
    let mut g = Graph::with_labels(labels);
    for s in IndexSet::ALL {
        for i in 0..k {
            g.add_edge(layout.center(s), layout.node(s, i), 0)?;
        }
    }
    g.add_edge(layout.center(IndexSet::A1), layout.center(IndexSet::B1), 0)?;
    g.add_edge(layout.center(IndexSet::A2), layout.center(IndexSet::B2), 0)?;
    for (input, alice, s1, s2) in [
        (&xp, true, IndexSet::A1, IndexSet::A2),
        (&yp, false, IndexSet::B1, IndexSet::B2),
    ] {
        for i in 0..k {
            for j in 0..k {
                if input.get(i, j) {
                    g.add_edge(
                        layout.node(s1, i),
                        layout.node(s2, j),
                        layout.input_weight(alice, i, j),
                    )?;
                }
            }
        }
    }
    let mut alice: Vec<NodeId> = (0..2 * k).collect();
    alice.push(layout.center(IndexSet::A1));
    alice.push(layout.center(IndexSet::A2));
    let n = g.n();
    let kk = k as u64;
    Ok(LowerBoundInstance {
        kind: InstanceKind::Cycle8,
        partition: Partition::from_a_side(n, alice),
        graph: g,
        params: Params {
            k,
            c: None,
            n,
            w_max: kk * kk * kk + kk * kk - 1,
            w_bound: None,
        },
        x: Some(x.clone()),
        y: Some(y.clone()),
    })
}

/// Number of input edges (`A1–A2` or `B1–B2`) along a cycle.
pub fn cycle_input_edge_count(layout: &CycleLayout, cycle: &[NodeId]) -> usize {
    (0..cycle.len())
        .filter(|&t| {
            let (u, v) = (cycle[t], cycle[(t + 1) % cycle.len()]);
            layout.is_index_node(u) && layout.is_index_node(v)
        })
        .count()
}
