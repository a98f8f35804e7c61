// SPDX-License-Identifier: Apache-2.0

//! Deterministic generators for the lower-bound graph families.
//!
//! Every builder returns a [`LowerBoundInstance`]: the graph, its fixed
//! Alice/Bob partition, the encoded inputs and the family parameters. Node
//! order is canonical (the four index sets, then bit gadgets, then auxiliary
//! nodes), so two calls with the same arguments produce identical graphs.

mod coloring;
mod cycle;
mod identical;
mod mvc;
mod star;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use self::coloring::{
    build_approx_coloring, build_coloring3, build_coloring3_with_fault, construct_3coloring,
    extend_coloring_c, ColoringLayout,
};
pub use self::cycle::{build_weighted_cycle, cycle_input_edge_count, CycleLayout};
pub use self::identical::{
    build_identical_subgraphs, identical_weight_bound, weight_bits, IdenticalLayout,
};
pub use self::mvc::{
    build_mvc, build_mvc_with_fault, construct_mvc_cover, mvc_cover_size, MvcLayout,
};
pub use self::star::{build_apsp_star, decode_star_row, star_batch_width};

use crate::comm::{BitString, PairIndexedString};
use crate::error::{Error, Result};
use crate::graph::{cut_edges, Cut, Graph, NodeId, Partition};

/// Serialized under the same short names the command line accepts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum InstanceKind {
    #[serde(rename = "mvc")]
    Mvc,
    #[serde(rename = "col3")]
    Coloring3,
    #[serde(rename = "colc")]
    ColoringC,
    #[serde(rename = "colapprox")]
    ColoringApprox,
    #[serde(rename = "cycle8")]
    Cycle8,
    #[serde(rename = "ident")]
    Identical,
    #[serde(rename = "star")]
    ApspStar,
}

impl InstanceKind {
    pub fn name(self) -> &'static str {
        match self {
            InstanceKind::Mvc => "mvc",
            InstanceKind::Coloring3 => "col3",
            InstanceKind::ColoringC => "colc",
            InstanceKind::ColoringApprox => "colapprox",
            InstanceKind::Cycle8 => "cycle8",
            InstanceKind::Identical => "ident",
            InstanceKind::ApspStar => "star",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Some(match s {
            "mvc" => InstanceKind::Mvc,
            "col3" => InstanceKind::Coloring3,
            "colc" => InstanceKind::ColoringC,
            "colapprox" => InstanceKind::ColoringApprox,
            "cycle8" | "cycle" => InstanceKind::Cycle8,
            "ident" => InstanceKind::Identical,
            "star" => InstanceKind::ApspStar,
            _ => return None,
        })
    }

    pub fn expect(self, want: InstanceKind) -> Result<()> {
        if self == want {
            Ok(())
        } else {
            Err(Error::WrongKind {
                expected: want.name(),
                got: self.name(),
            })
        }
    }
}

impl fmt::Display for InstanceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Family parameters recorded with each instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    pub k: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<usize>,
    pub n: usize,
    pub w_max: u64,
    /// Exclusive weight bound `W` for identical-subgraphs instances.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub w_bound: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LowerBoundInstance {
    pub kind: InstanceKind,
    pub graph: Graph,
    pub partition: Partition,
    pub params: Params,
    pub x: Option<BitString>,
    pub y: Option<BitString>,
}

impl LowerBoundInstance {
    pub fn cut(&self) -> Cut {
        cut_edges(&self.graph, &self.partition).expect("builders emit total partitions")
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn k(&self) -> usize {
        self.params.k
    }

    /// Both DISJ inputs as pair-indexed strings.
    pub fn pair_inputs(&self) -> Option<(PairIndexedString, PairIndexedString)> {
        let k = self.params.k;
        let x = PairIndexedString::new(k, self.x.clone()?).ok()?;
        let y = PairIndexedString::new(k, self.y.clone()?).ok()?;
        Some((x, y))
    }
}

/// The four index sets of the bit-gadget constructions, in canonical order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IndexSet {
    A1,
    A2,
    B1,
    B2,
}

impl IndexSet {
    pub const ALL: [IndexSet; 4] = [IndexSet::A1, IndexSet::A2, IndexSet::B1, IndexSet::B2];

    pub fn ordinal(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            IndexSet::A1 => "A1",
            IndexSet::A2 => "A2",
            IndexSet::B1 => "B1",
            IndexSet::B2 => "B2",
        }
    }

    pub fn is_alice(self) -> bool {
        matches!(self, IndexSet::A1 | IndexSet::A2)
    }

    /// The same-layer set on the other side (`A1 <-> B1`, `A2 <-> B2`).
    pub fn mirror(self) -> IndexSet {
        match self {
            IndexSet::A1 => IndexSet::B1,
            IndexSet::A2 => IndexSet::B2,
            IndexSet::B1 => IndexSet::A1,
            IndexSet::B2 => IndexSet::A2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Polarity {
    F,
    T,
}

/// Identifies one bit-node `f^h_S` or `t^h_S`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BitGadgetLabel {
    pub set: IndexSet,
    pub polarity: Polarity,
    pub h: usize,
}

impl fmt::Display for BitGadgetLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = match self.polarity {
            Polarity::F => "F",
            Polarity::T => "T",
        };
        write!(f, "{p}_{{{}}}[{}]", self.set.name(), self.h)
    }
}

/// The bit-gadget selectors `bin(s^i)`: `(F, h)` where bit `h` of `i` is 0,
/// `(T, h)` where it is 1.
pub fn bin_selector(i: usize, logk: usize) -> Result<Vec<(Polarity, usize)>> {
    if logk >= usize::BITS as usize || i >= 1usize << logk {
        return Err(Error::IndexOutOfRange {
            index: i,
            bound: 1usize.checked_shl(logk as u32).unwrap_or(usize::MAX),
        });
    }
    Ok((0..logk)
        .map(|h| {
            if (i >> h) & 1 == 0 {
                (Polarity::F, h)
            } else {
                (Polarity::T, h)
            }
        })
        .collect())
}

/// Node offsets shared by the vertex-cover and coloring gadgets: four sets
/// of size `k` followed by the `8 log k` bit-nodes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BitGadgetLayout {
    pub k: usize,
    pub logk: usize,
}

impl BitGadgetLayout {
    pub fn new(k: usize) -> Result<Self> {
        if k < 2 || !k.is_power_of_two() {
            return Err(Error::NotPowerOfTwo(k));
        }
        Ok(Self {
            k,
            logk: k.trailing_zeros() as usize,
        })
    }

    pub fn node(&self, s: IndexSet, i: usize) -> NodeId {
        debug_assert!(i < self.k);
        s.ordinal() * self.k + i
    }

    pub fn bit(&self, s: IndexSet, p: Polarity, h: usize) -> NodeId {
        debug_assert!(h < self.logk);
        4 * self.k + (2 * s.ordinal() + p as usize) * self.logk + h
    }

    /// Node ids of `bin(s^i)`.
    pub fn bin(&self, s: IndexSet, i: usize) -> Vec<NodeId> {
        bin_selector(i, self.logk)
            .expect("index below k")
            .into_iter()
            .map(|(p, h)| self.bit(s, p, h))
            .collect()
    }

    /// Bit-nodes of `S` that are not in `bin(s^i)`.
    pub fn bin_complement(&self, s: IndexSet, i: usize) -> Vec<NodeId> {
        bin_selector(i, self.logk)
            .expect("index below k")
            .into_iter()
            .map(|(p, h)| {
                let flipped = match p {
                    Polarity::F => Polarity::T,
                    Polarity::T => Polarity::F,
                };
                self.bit(s, flipped, h)
            })
            .collect()
    }

    pub fn bit_nodes(&self, s: IndexSet) -> Vec<NodeId> {
        [Polarity::F, Polarity::T]
            .into_iter()
            .flat_map(|p| (0..self.logk).map(move |h| self.bit(s, p, h)))
            .collect()
    }

    pub fn base_nodes(&self) -> usize {
        4 * self.k + 8 * self.logk
    }

    pub(crate) fn base_labels(&self) -> Vec<String> {
        let mut labels = Vec::with_capacity(self.base_nodes());
        for s in IndexSet::ALL {
            labels.extend((0..self.k).map(|i| format!("{}[{i}]", s.name())));
        }
        for s in IndexSet::ALL {
            for p in [Polarity::F, Polarity::T] {
                labels.extend((0..self.logk).map(|h| {
                    BitGadgetLabel {
                        set: s,
                        polarity: p,
                        h,
                    }
                    .to_string()
                }));
            }
        }
        labels
    }

    /// The `2 log k` bit 4-cycles `(f^h_A, t^h_A, f^h_B, t^h_B)` and every
    /// `s^i` wired to `bin(s^i)`.
    pub(crate) fn add_bit_gadgets(&self, g: &mut Graph) -> Result<()> {
        use Polarity::{F, T};
        for (sa, sb) in [(IndexSet::A1, IndexSet::B1), (IndexSet::A2, IndexSet::B2)] {
            for h in 0..self.logk {
                let ring = [
                    self.bit(sa, F, h),
                    self.bit(sa, T, h),
                    self.bit(sb, F, h),
                    self.bit(sb, T, h),
                ];
                for t in 0..4 {
                    g.add_edge(ring[t], ring[(t + 1) % 4], 1)?;
                }
            }
        }
        for s in IndexSet::ALL {
            for i in 0..self.k {
                for b in self.bin(s, i) {
                    g.add_edge(self.node(s, i), b, 1)?;
                }
            }
        }
        Ok(())
    }

    /// Input edges `(a1^i, a2^j)` for `x_{i,j} = 0` and `(b1^i, b2^j)` for
    /// `y_{i,j} = 0`.
    pub(crate) fn add_zero_bit_edges(
        &self,
        g: &mut Graph,
        x: &PairIndexedString,
        y: &PairIndexedString,
    ) -> Result<()> {
        for (input, s1, s2) in [
            (x, IndexSet::A1, IndexSet::A2),
            (y, IndexSet::B1, IndexSet::B2),
        ] {
            for i in 0..self.k {
                for j in 0..self.k {
                    if !input.get(i, j) {
                        g.add_edge(self.node(s1, i), self.node(s2, j), 1)?;
                    }
                }
            }
        }
        Ok(())
    }

    /// `A1 ∪ A2` and their bit-nodes.
    pub(crate) fn alice_nodes(&self) -> Vec<NodeId> {
        let mut a: Vec<NodeId> = (0..2 * self.k).collect();
        a.extend(self.bit_nodes(IndexSet::A1));
        a.extend(self.bit_nodes(IndexSet::A2));
        a
    }
}

/// Checks the shared preconditions of the DISJ-based families.
pub(crate) fn disj_inputs(
    k: usize,
    x: &BitString,
    y: &BitString,
) -> Result<(PairIndexedString, PairIndexedString)> {
    let x = PairIndexedString::new(k, x.clone())?;
    let y = PairIndexedString::new(k, y.clone())?;
    if x.bits().is_all_ones() || y.bits().is_all_ones() {
        return Err(Error::AllOnesInput);
    }
    Ok((x, y))
}

/// Deliberate generator defects for mutation-testing the lemma harness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BuildFault {
    /// Omit the edge from `a1^0` to its first bin node.
    DropBinEdge,
}
