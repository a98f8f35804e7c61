// SPDX-License-Identifier: Apache-2.0

//! Minimum vertex cover family: four `k`-cliques joined through bit gadgets.

use super::{
    disj_inputs, BitGadgetLayout, BuildFault, IndexSet, InstanceKind, LowerBoundInstance, Params,
};
use crate::comm::BitString;
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId, Partition};

pub type MvcLayout = BitGadgetLayout;

/// The lemma's threshold `M = 4(k-1) + 4 log k`.
pub fn mvc_cover_size(k: usize) -> usize {
    let logk = k.trailing_zeros() as usize;
    4 * (k - 1) + 4 * logk
}

pub fn build_mvc(k: usize, x: &BitString, y: &BitString) -> Result<LowerBoundInstance> {
    build_mvc_with_fault(k, x, y, None)
}

pub fn build_mvc_with_fault(
    k: usize,
    x: &BitString,
    y: &BitString,
    fault: Option<BuildFault>,
) -> Result<LowerBoundInstance> {
    let layout = BitGadgetLayout::new(k)?;
    let (xp, yp) = disj_inputs(k, x, y)?;
    let mut g = Graph::with_labels(layout.base_labels());
    for s in IndexSet::ALL {
        for i in 0..k {
            for j in i + 1..k {
                g.add_edge(layout.node(s, i), layout.node(s, j), 1)?;
            }
        }
    }
    layout.add_bit_gadgets(&mut g)?;
    layout.add_zero_bit_edges(&mut g, &xp, &yp)?;
    if fault == Some(BuildFault::DropBinEdge) {
        let a = layout.node(IndexSet::A1, 0);
        g.remove_edge(a, layout.bin(IndexSet::A1, 0)[0]);
    }
    let n = g.n();
    Ok(LowerBoundInstance {
        kind: InstanceKind::Mvc,
        partition: Partition::from_a_side(n, layout.alice_nodes()),
        graph: g,
        params: Params {
            k,
            c: None,
            n,
            w_max: 1,
            w_bound: None,
        },
        x: Some(x.clone()),
        y: Some(y.clone()),
    })
}

/// The explicit cover from the lemma: every clique node except
/// `a1^i, a2^j, b1^i, b2^j`, plus the bin sets of those four nodes.
pub fn construct_mvc_cover(inst: &LowerBoundInstance, i: usize, j: usize) -> Result<Vec<NodeId>> {
    inst.kind.expect(InstanceKind::Mvc)?;
    let layout = BitGadgetLayout::new(inst.params.k)?;
    let k = layout.k;
    for idx in [i, j] {
        if idx >= k {
            return Err(Error::IndexOutOfRange {
                index: idx,
                bound: k,
            });
        }
    }
    let (x, y) = inst
        .pair_inputs()
        .ok_or(Error::Parse("instance lacks inputs".into()))?;
    if !(x.get(i, j) && y.get(i, j)) {
        return Err(Error::BitNotSet { i, j });
    }
    let excluded = [
        (IndexSet::A1, i),
        (IndexSet::A2, j),
        (IndexSet::B1, i),
        (IndexSet::B2, j),
    ];
    let mut cover = Vec::with_capacity(mvc_cover_size(k));
    for (s, keep_out) in excluded {
        cover.extend((0..k).filter(|&t| t != keep_out).map(|t| layout.node(s, t)));
    }
    for (s, idx) in excluded {
        cover.extend(layout.bin(s, idx));
    }
    cover.sort_unstable();
    Ok(cover)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::cut_edges;

    fn pair_bits(k: usize, set: &[(usize, usize)]) -> BitString {
        let mut b = BitString::zeros(k * k);
        for &(i, j) in set {
            b.set(k * i + j, true);
        }
        b
    }

    #[test]
    fn k4_counts() {
        let z = BitString::zeros(16);
        let inst = build_mvc(4, &z, &z).unwrap();
        assert_eq!(inst.n(), 32);
        assert_eq!(cut_edges(&inst.graph, &inst.partition).unwrap().len(), 8);
        assert!(inst.graph.is_connected());
        assert_eq!(inst.graph.label(0), "A1[0]");
        assert_eq!(inst.graph.label(16), "F_{A1}[0]");
    }

    #[test]
    fn rejects_bad_inputs() {
        let z = BitString::zeros(9);
        assert!(matches!(build_mvc(3, &z, &z), Err(Error::NotPowerOfTwo(3))));
        let z = BitString::zeros(16);
        assert!(matches!(
            build_mvc(4, &BitString::zeros(15), &z),
            Err(Error::LengthMismatch {
                expected: 16,
                got: 15
            })
        ));
        assert!(matches!(
            build_mvc(4, &BitString::ones(16), &z),
            Err(Error::AllOnesInput)
        ));
    }

    #[test]
    fn cover_sizes() {
        let x = pair_bits(4, &[(1, 2)]);
        let inst = build_mvc(4, &x, &x).unwrap();
        let cover = construct_mvc_cover(&inst, 1, 2).unwrap();
        assert_eq!(cover.len(), 20);
        let clique_nodes = cover.iter().filter(|&&u| u < 16).count();
        assert_eq!(clique_nodes, 16 - 4);

        let x = pair_bits(2, &[(0, 0)]);
        let inst = build_mvc(2, &x, &x).unwrap();
        assert_eq!(construct_mvc_cover(&inst, 0, 0).unwrap().len(), 8);
        assert!(matches!(
            construct_mvc_cover(&inst, 0, 1),
            Err(Error::BitNotSet { i: 0, j: 1 })
        ));
    }
}
