// SPDX-License-Identifier: Apache-2.0

//! 3-coloring family and its `c`-coloring and approximation variants.
//!
//! Layout after the shared bit-gadget block: for each index set `S` (in
//! canonical order) the single-bar copies `S'` then the double-bar copies
//! `S''`, then `C_a^0..2` and `C_b^0..2`. The `c`-coloring extension appends
//! `C_a^3..c-1` followed by `C_b^3..c-1`.

use super::{
    disj_inputs, BitGadgetLayout, BuildFault, IndexSet, InstanceKind, LowerBoundInstance, Params,
};
use crate::comm::BitString;
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId, Partition, Side};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ColoringLayout {
    pub bits: BitGadgetLayout,
}

impl ColoringLayout {
    pub fn new(k: usize) -> Result<Self> {
        Ok(Self {
            bits: BitGadgetLayout::new(k)?,
        })
    }

    pub fn k(&self) -> usize {
        self.bits.k
    }

    pub fn node(&self, s: IndexSet, i: usize) -> NodeId {
        self.bits.node(s, i)
    }

    pub fn single_bar(&self, s: IndexSet, i: usize) -> NodeId {
        self.bits.base_nodes() + 2 * s.ordinal() * self.k() + i
    }

    pub fn double_bar(&self, s: IndexSet, i: usize) -> NodeId {
        self.bits.base_nodes() + (2 * s.ordinal() + 1) * self.k() + i
    }

    /// `C_a^t` (`side = A`) or `C_b^t` (`side = B`) for `t < 3`.
    pub fn triangle(&self, side: Side, t: usize) -> NodeId {
        debug_assert!(t < 3);
        let base = self.bits.base_nodes() + 8 * self.k();
        match side {
            Side::A => base + t,
            Side::B => base + 3 + t,
        }
    }

    /// `12k + 8 log k + 6`.
    pub fn node_count(&self) -> usize {
        12 * self.k() + 8 * self.bits.logk + 6
    }

    /// Colors `(p, q)` of the triangle nodes a layer attaches to: layer 1
    /// sets hang off `C^2` with bit-nodes on `C^1`; layer 2 swaps them.
    fn layer_colors(s: IndexSet) -> (usize, usize) {
        match s {
            IndexSet::A1 | IndexSet::B1 => (2, 1),
            IndexSet::A2 | IndexSet::B2 => (1, 2),
        }
    }

    fn side_of(s: IndexSet) -> Side {
        if s.is_alice() {
            Side::A
        } else {
            Side::B
        }
    }

    fn labels(&self) -> Vec<String> {
        let mut labels = self.bits.base_labels();
        for s in IndexSet::ALL {
            labels.extend((0..self.k()).map(|i| format!("{}'[{i}]", s.name())));
            labels.extend((0..self.k()).map(|i| format!("{}''[{i}]", s.name())));
        }
        for side in ["a", "b"] {
            labels.extend((0..3).map(|t| format!("C_{side}[{t}]")));
        }
        labels
    }

    fn alice_nodes(&self) -> Vec<NodeId> {
        let mut a = self.bits.alice_nodes();
        for s in [IndexSet::A1, IndexSet::A2] {
            for i in 0..self.k() {
                a.push(self.single_bar(s, i));
                a.push(self.double_bar(s, i));
            }
        }
        a.extend((0..3).map(|t| self.triangle(Side::A, t)));
        a
    }
}

pub fn build_coloring3(k: usize, x: &BitString, y: &BitString) -> Result<LowerBoundInstance> {
    build_coloring3_with_fault(k, x, y, None)
}

pub fn build_coloring3_with_fault(
    k: usize,
    x: &BitString,
    y: &BitString,
    fault: Option<BuildFault>,
) -> Result<LowerBoundInstance> {
    let layout = ColoringLayout::new(k)?;
    let (xp, yp) = disj_inputs(k, x, y)?;
    let mut g = Graph::with_labels(layout.labels());
    layout.bits.add_bit_gadgets(&mut g)?;

    for side in [Side::A, Side::B] {
        for t in 0..3 {
            for u in t + 1..3 {
                g.add_edge(layout.triangle(side, t), layout.triangle(side, u), 1)?;
            }
        }
    }
    for t in 0..3 {
        for u in 0..3 {
            if t != u {
                g.add_edge(layout.triangle(Side::A, t), layout.triangle(Side::B, u), 1)?;
            }
        }
    }

    for s in IndexSet::ALL {
        let (p, q) = ColoringLayout::layer_colors(s);
        let side = ColoringLayout::side_of(s);
        let (cp, cq) = (layout.triangle(side, p), layout.triangle(side, q));
        for b in layout.bits.bit_nodes(s) {
            g.add_edge(b, cq, 1)?;
        }
        for i in 0..k {
            g.add_edge(layout.node(s, i), layout.single_bar(s, i), 1)?;
            g.add_edge(layout.single_bar(s, i), layout.double_bar(s, i), 1)?;
            if i + 1 < k {
                g.add_edge(layout.double_bar(s, i), layout.single_bar(s, i + 1), 1)?;
            }
            g.add_edge(cp, layout.node(s, i), 1)?;
            g.add_edge(cq, layout.double_bar(s, i), 1)?;
        }
        g.add_edge(cp, layout.single_bar(s, 0), 1)?;
        g.add_edge(cp, layout.double_bar(s, k - 1), 1)?;
    }

    layout.bits.add_zero_bit_edges(&mut g, &xp, &yp)?;
    if fault == Some(BuildFault::DropBinEdge) {
        let a = layout.node(IndexSet::A1, 0);
        g.remove_edge(a, layout.bits.bin(IndexSet::A1, 0)[0]);
    }
    let n = g.n();
    Ok(LowerBoundInstance {
        kind: InstanceKind::Coloring3,
        partition: Partition::from_a_side(n, layout.alice_nodes()),
        graph: g,
        params: Params {
            k,
            c: Some(3),
            n,
            w_max: 1,
            w_bound: None,
        },
        x: Some(x.clone()),
        y: Some(y.clone()),
    })
}

/// The explicit proper 3-coloring for an instance with `x_{i,j} = y_{i,j} = 1`.
pub fn construct_3coloring(inst: &LowerBoundInstance, i: usize, j: usize) -> Result<Vec<usize>> {
    inst.kind.expect(InstanceKind::Coloring3)?;
    let layout = ColoringLayout::new(inst.params.k)?;
    let k = layout.k();
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

    let mut col = vec![usize::MAX; inst.n()];
    for side in [Side::A, Side::B] {
        for t in 0..3 {
            col[layout.triangle(side, t)] = t;
        }
    }
    for s in IndexSet::ALL {
        let (p, q) = ColoringLayout::layer_colors(s);
        let idx = if matches!(s, IndexSet::A1 | IndexSet::B1) {
            i
        } else {
            j
        };
        for t in 0..k {
            col[layout.node(s, t)] = if t == idx { 0 } else { q };
            col[layout.single_bar(s, t)] = match t.cmp(&idx) {
                std::cmp::Ordering::Less => 0,
                std::cmp::Ordering::Equal => q,
                std::cmp::Ordering::Greater => p,
            };
            col[layout.double_bar(s, t)] = if t < idx { p } else { 0 };
        }
        for b in layout.bits.bin(s, idx) {
            col[b] = p;
        }
        for b in layout.bits.bin_complement(s, idx) {
            col[b] = 0;
        }
    }
    debug_assert!(col.iter().all(|&c| c < 3));
    Ok(col)
}

/// Adds `C_a^3..c-1` (wired to all of `V_A` and each other) and
/// `C_b^3..c-1` (wired to all of `V_B`, each other and `C_a^0..2`).
pub fn extend_coloring_c(inst: &LowerBoundInstance, c: usize) -> Result<LowerBoundInstance> {
    inst.kind.expect(InstanceKind::Coloring3)?;
    if c < 3 {
        return Err(Error::ParameterTooSmall {
            name: "c",
            value: c,
            min: 3,
        });
    }
    let layout = ColoringLayout::new(inst.params.k)?;
    let n0 = inst.n();
    let extra = c - 3;
    let mut labels = inst.graph.labels().to_vec();
    labels.extend((3..c).map(|t| format!("C_a[{t}]")));
    labels.extend((3..c).map(|t| format!("C_b[{t}]")));
    let mut g = Graph::with_labels(labels);
    for e in inst.graph.edges() {
        g.add_edge(e.u, e.v, e.w)?;
    }
    let c_a = |t: usize| n0 + (t - 3);
    let c_b = |t: usize| n0 + extra + (t - 3);
    let v_a = inst.partition.nodes(Side::A);
    let v_b = inst.partition.nodes(Side::B);
    for t in 3..c {
        for u in t + 1..c {
            g.add_edge(c_a(t), c_a(u), 1)?;
            g.add_edge(c_b(t), c_b(u), 1)?;
        }
        for &v in &v_a {
            g.add_edge(c_a(t), v, 1)?;
        }
        for &v in &v_b {
            g.add_edge(c_b(t), v, 1)?;
        }
        for r in 0..3 {
            g.add_edge(c_b(t), layout.triangle(Side::A, r), 1)?;
        }
    }
    let mut sides = inst.partition.sides().to_vec();
    sides.extend(std::iter::repeat_n(Side::A, extra));
    sides.extend(std::iter::repeat_n(Side::B, extra));
    let n = g.n();
    Ok(LowerBoundInstance {
        kind: InstanceKind::ColoringC,
        graph: g,
        partition: Partition::new(sides),
        params: Params {
            c: Some(c),
            n,
            ..inst.params.clone()
        },
        x: inst.x.clone(),
        y: inst.y.clone(),
    })
}

/// `c` disjoint copies of the 3-coloring gadget; the `A` sides of distinct
/// copies are completely joined, and likewise the `B` sides.
pub fn build_approx_coloring(
    k: usize,
    c: usize,
    x: &BitString,
    y: &BitString,
) -> Result<LowerBoundInstance> {
    if c < 1 {
        return Err(Error::ParameterTooSmall {
            name: "c",
            value: c,
            min: 1,
        });
    }
    let base = build_coloring3(k, x, y)?;
    if c == 1 {
        return Ok(LowerBoundInstance {
            kind: InstanceKind::ColoringApprox,
            params: Params {
                c: Some(1),
                ..base.params.clone()
            },
            ..base
        });
    }
    let n0 = base.n();
    let mut labels = Vec::with_capacity(c * n0);
    for copy in 0..c {
        labels.extend(base.graph.labels().iter().map(|l| format!("G{copy}:{l}")));
    }
    let mut g = Graph::with_labels(labels);
    for copy in 0..c {
        for e in base.graph.edges() {
            g.add_edge(copy * n0 + e.u, copy * n0 + e.v, e.w)?;
        }
    }
    for side in [Side::A, Side::B] {
        let members = base.partition.nodes(side);
        for ci in 0..c {
            for cj in ci + 1..c {
                for &u in &members {
                    for &v in &members {
                        g.add_edge(ci * n0 + u, cj * n0 + v, 1)?;
                    }
                }
            }
        }
    }
    let sides: Vec<Side> = (0..c)
        .flat_map(|_| base.partition.sides().iter().copied())
        .collect();
    let n = g.n();
    Ok(LowerBoundInstance {
        kind: InstanceKind::ColoringApprox,
        graph: g,
        partition: Partition::new(sides),
        params: Params {
            k,
            c: Some(c),
            n,
            w_max: 1,
            w_bound: None,
        },
        x: Some(x.clone()),
        y: Some(y.clone()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::cut_edges;

    fn one_bit(k: usize, i: usize, j: usize) -> BitString {
        let mut b = BitString::zeros(k * k);
        b.set(k * i + j, true);
        b
    }

    #[test]
    fn k2_counts() {
        let x = one_bit(2, 0, 1);
        let inst = build_coloring3(2, &x, &x).unwrap();
        assert_eq!(inst.n(), 38);
        assert_eq!(cut_edges(&inst.graph, &inst.partition).unwrap().len(), 10);
        assert!(inst.graph.is_connected());
    }

    #[test]
    fn k4_counts() {
        let z = BitString::zeros(16);
        let inst = build_coloring3(4, &z, &z).unwrap();
        assert_eq!(inst.n(), 12 * 4 + 8 * 2 + 6);
        assert_eq!(inst.cut().len(), 6 + 4 * 2);
    }

    #[test]
    fn proof_coloring_shape() {
        let x = one_bit(2, 0, 1);
        let inst = build_coloring3(2, &x, &x).unwrap();
        let col = construct_3coloring(&inst, 0, 1).unwrap();
        let layout = ColoringLayout::new(2).unwrap();
        for side in [Side::A, Side::B] {
            let mut tri: Vec<usize> = (0..3).map(|t| col[layout.triangle(side, t)]).collect();
            tri.sort_unstable();
            assert_eq!(tri, vec![0, 1, 2]);
        }
        for s in IndexSet::ALL {
            let zeros = (0..2).filter(|&t| col[layout.node(s, t)] == 0).count();
            assert_eq!(zeros, 1, "{s:?}");
        }
        for e in inst.graph.edges() {
            assert_ne!(
                col[e.u],
                col[e.v],
                "{} - {}",
                inst.graph.label(e.u),
                inst.graph.label(e.v)
            );
        }
    }

    #[test]
    fn proof_coloring_requires_shared_bit() {
        let x = one_bit(2, 0, 1);
        let y = one_bit(2, 1, 1);
        let inst = build_coloring3(2, &x, &y).unwrap();
        assert!(matches!(
            construct_3coloring(&inst, 0, 1),
            Err(Error::BitNotSet { .. })
        ));
    }

    #[test]
    fn extension_sizes() {
        let x = one_bit(2, 0, 1);
        let inst = build_coloring3(2, &x, &x).unwrap();
        let same = extend_coloring_c(&inst, 3).unwrap();
        assert_eq!(same.graph, inst.graph);
        let ext = extend_coloring_c(&inst, 5).unwrap();
        assert_eq!(ext.n(), 38 + 4);
        assert_eq!(ext.cut().len(), 10 + 3 * 2);
        assert!(extend_coloring_c(&inst, 2).is_err());
    }

    #[test]
    fn approx_with_one_copy_is_the_base_graph() {
        let x = one_bit(2, 1, 1);
        let base = build_coloring3(2, &x, &x).unwrap();
        let one = build_approx_coloring(2, 1, &x, &x).unwrap();
        assert_eq!(one.graph, base.graph);
        assert_eq!(one.partition, base.partition);
        let two = build_approx_coloring(2, 2, &x, &x).unwrap();
        assert_eq!(two.n(), 76);
        assert_eq!(two.cut().len(), 20);
    }
}
