// SPDX-License-Identifier: Apache-2.0

//! Identical-subgraphs family: two weighted `k`-cliques bridged by `(a_0, b_0)`.

use super::{InstanceKind, LowerBoundInstance, Params};
use crate::comm::BitString;
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId, Partition};

/// Default exclusive weight bound `W = n^2` with `n = 2k`.
pub fn identical_weight_bound(k: usize) -> u64 {
    let n = 2 * k as u64;
    n * n
}

/// Bits per weight, `ceil(log2 W)` (at least one).
pub fn weight_bits(w_bound: u64) -> usize {
    (64 - (w_bound.max(2) - 1).leading_zeros()) as usize
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IdenticalLayout {
    pub k: usize,
}

impl IdenticalLayout {
    pub fn a(&self, i: usize) -> NodeId {
        i
    }

    pub fn b(&self, i: usize) -> NodeId {
        self.k + i
    }

    /// Index of pair `(i, j)`, `i < j`, in lexicographic enumeration.
    pub fn pair_index(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < j && j < self.k);
        i * self.k - i * (i + 1) / 2 + (j - i - 1)
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.k).flat_map(move |i| (i + 1..self.k).map(move |j| (i, j)))
    }

    pub fn pair_count(&self) -> usize {
        self.k * (self.k - 1) / 2
    }
}

/// Builds the instance from weight vectors over the pairs `i < j`.
///
/// `x` and `y` are the concatenated big-endian weights, `ceil(log2 W)` bits
/// each; every weight must lie in `[0, W)`. `w_bound` defaults to `n^2`.
pub fn build_identical_subgraphs(
    k: usize,
    x: &BitString,
    y: &BitString,
    w_bound: Option<u64>,
) -> Result<LowerBoundInstance> {
    if k < 2 {
        return Err(Error::ParameterTooSmall {
            name: "k",
            value: k,
            min: 2,
        });
    }
    let layout = IdenticalLayout { k };
    let w_bound = w_bound.unwrap_or_else(|| identical_weight_bound(k));
    let width = weight_bits(w_bound);
    let expected = layout.pair_count() * width;
    let mut weights = Vec::with_capacity(2);
    for s in [x, y] {
        if s.len() != expected {
            return Err(Error::LengthMismatch {
                expected,
                got: s.len(),
            });
        }
        let w = s.batches(width)?;
        if let Some(&bad) = w.iter().find(|&&w| w >= w_bound) {
            return Err(Error::WeightOutOfRange {
                w: bad,
                bound: w_bound,
            });
        }
        weights.push(w);
    }
    let mut labels: Vec<String> = (0..k).map(|i| format!("a[{i}]")).collect();
    labels.extend((0..k).map(|i| format!("b[{i}]")));
    let mut g = Graph::with_labels(labels);
    for (i, j) in layout.pairs() {
        let t = layout.pair_index(i, j);
        g.add_edge(layout.a(i), layout.a(j), weights[0][t])?;
    }
    for (i, j) in layout.pairs() {
        let t = layout.pair_index(i, j);
        g.add_edge(layout.b(i), layout.b(j), weights[1][t])?;
    }
    g.add_edge(layout.a(0), layout.b(0), 0)?;
    let n = g.n();
    Ok(LowerBoundInstance {
        kind: InstanceKind::Identical,
        partition: Partition::from_a_side(n, 0..k),
        graph: g,
        params: Params {
            k,
            c: None,
            n,
            w_max: w_bound - 1,
            w_bound: Some(w_bound),
        },
        x: Some(x.clone()),
        y: Some(y.clone()),
    })
}
