// SPDX-License-Identifier: Apache-2.0

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::fingerprint::{fingerprint_len, pair_bit_positions};
use super::message::{push_uint, width_for, BitReader};
use super::primes::{modpow, nth_primes};
use super::tree::{RoundBound, TreeAlgorithm, TreeProgram};
use super::{run, Message, NodeContext, NodeProgram, SimConfig, SimTrace};
use crate::error::{Error, Result};
use crate::gadgets::{weight_bits, IdenticalLayout, InstanceKind, LowerBoundInstance};
use crate::graph::{Graph, NodeId};

/// Token flooding from `root`; each node outputs the round distance at which
/// the token reached it.
#[derive(Clone, Copy, Debug)]
pub struct Flood {
    pub root: NodeId,
}

pub fn flood_program(root: NodeId) -> Flood {
    Flood { root }
}

#[derive(Clone, Debug, Default)]
pub struct FloodState {
    dist: Option<usize>,
    halted: bool,
}

impl NodeProgram for Flood {
    type State = FloodState;
    type Output = Option<usize>;

    fn init(&self, _ctx: &NodeContext) -> FloodState {
        FloodState::default()
    }

    fn round(
        &self,
        ctx: &NodeContext,
        st: &mut FloodState,
        round: usize,
        inbox: &[(NodeId, Message)],
        _rng: &mut ChaCha8Rng,
    ) -> Vec<(NodeId, Message)> {
        let token = || Message::from_bits(vec![true]);
        if ctx.id == self.root && round == 1 {
            st.dist = Some(0);
            st.halted = true;
            return ctx.neighbors.iter().map(|&(v, _)| (v, token())).collect();
        }
        if st.dist.is_some() || inbox.is_empty() {
            return Vec::new();
        }
        st.dist = Some(round - 1);
        st.halted = true;
        ctx.neighbors
            .iter()
            .filter(|&&(v, _)| inbox.iter().all(|(f, _)| *f != v))
            .map(|&(v, _)| (v, token()))
            .collect()
    }

    fn halted(&self, st: &FloodState) -> bool {
        st.halted
    }

    fn output(&self, st: &FloodState) -> Option<usize> {
        st.dist
    }
}

/// Sums the local summands modulo `p` at the root over a BFS tree, then sends
/// the sum back down so every node outputs it.
#[derive(Clone, Debug)]
pub struct ConvergecastSum {
    pub root: NodeId,
    pub summands: Vec<u64>,
    pub p: u64,
}

pub fn bfs_convergecast_program(
    root: NodeId,
    summands: Vec<u64>,
    p: u64,
) -> Result<TreeProgram<ConvergecastSum>> {
    if p < 2 {
        return Err(Error::ParameterTooSmall {
            name: "p",
            value: p as usize,
            min: 2,
        });
    }
    if let Some(&w) = summands.iter().find(|&&s| s >= p) {
        return Err(Error::WeightOutOfRange { w, bound: p });
    }
    Ok(TreeProgram(ConvergecastSum { root, summands, p }))
}

impl ConvergecastSum {
    fn width(&self) -> usize {
        width_for(self.p - 1)
    }
}

impl TreeAlgorithm for ConvergecastSum {
    type Output = u64;

    fn root(&self) -> NodeId {
        self.root
    }

    fn local(&self, ctx: &NodeContext, _b: &[bool]) -> Vec<bool> {
        let mut v = Vec::new();
        push_uint(&mut v, self.summands[ctx.id], self.width());
        v
    }

    fn merge(
        &self,
        _ctx: &NodeContext,
        _b: &[bool],
        own: Vec<bool>,
        children: Vec<Vec<bool>>,
    ) -> Vec<bool> {
        let w = self.width();
        let sum = std::iter::once(own)
            .chain(children)
            .map(|c| BitReader::over(&c).uint(w).unwrap_or(0))
            .fold(0u64, |acc, s| (acc + s) % self.p);
        let mut v = Vec::new();
        push_uint(&mut v, sum, w);
        v
    }

    fn decide(&self, _ctx: &NodeContext, _b: &[bool], merged: &[bool]) -> Vec<bool> {
        merged.to_vec()
    }

    fn output(&self, _ctx: &NodeContext, _b: &[bool], verdict: &[bool]) -> u64 {
        BitReader::over(verdict).uint(self.width()).unwrap_or(0)
    }
}

/// What every node reports after identical-subgraphs detection.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentVerdict {
    pub identical: bool,
    pub prime: u64,
}

/// Randomized identical-subgraphs detection rooted at `a_0`.
///
/// `a_0` samples `p` among the first `K^2` primes and broadcasts it. Node
/// `a_i` (resp. `b_i`) adds `2^l mod p` for every set bit `l` of the pairs
/// `(i, j)`, `j > i`, it encodes. Both residues travel up in one payload; the
/// root compares them and sends the one-bit verdict down.
#[derive(Clone)]
pub struct IdentDetect {
    pub k: usize,
    pub w_bound: u64,
    pub primes: Arc<Vec<u64>>,
}

impl fmt::Debug for IdentDetect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IdentDetect")
            .field("k", &self.k)
            .field("w_bound", &self.w_bound)
            .field("primes", &self.primes.len())
            .finish()
    }
}

impl IdentDetect {
    fn prime_width(&self) -> usize {
        width_for(*self.primes.last().expect("nonempty prime table"))
    }

    fn prime(&self, b: &[bool]) -> u64 {
        BitReader::over(b).uint(self.prime_width()).unwrap_or(2)
    }

    fn residues(&self, payload: &[bool]) -> (u64, u64) {
        let w = self.prime_width();
        let mut r = BitReader::over(payload);
        (r.uint(w).unwrap_or(0), r.uint(w).unwrap_or(0))
    }

    fn pack(&self, x: u64, y: u64) -> Vec<bool> {
        let mut v = Vec::new();
        push_uint(&mut v, x, self.prime_width());
        push_uint(&mut v, y, self.prime_width());
        v
    }
}

impl IdentDetect {
    /// Round constants at bandwidth `bandwidth`: `p` in one broadcast, both
    /// residues in one upcast payload, a one-bit verdict.
    pub fn round_bound(&self, bandwidth: usize) -> RoundBound {
        let w = self.prime_width();
        RoundBound::for_tree(bandwidth, Some(w), 2 * w, 1)
    }
}

pub fn ident_program(k: usize, w_bound: u64, primes: Arc<Vec<u64>>) -> TreeProgram<IdentDetect> {
    TreeProgram(IdentDetect { k, w_bound, primes })
}

impl TreeAlgorithm for IdentDetect {
    type Output = IdentVerdict;

    fn root(&self) -> NodeId {
        0
    }

    fn has_broadcast(&self) -> bool {
        true
    }

    fn broadcast_value(&self, _ctx: &NodeContext, rng: &mut ChaCha8Rng) -> Vec<bool> {
        let p = self.primes[rng.random_range(0..self.primes.len())];
        let mut v = Vec::new();
        push_uint(&mut v, p, self.prime_width());
        v
    }

    fn local(&self, ctx: &NodeContext, b: &[bool]) -> Vec<bool> {
        let p = self.prime(b);
        let l = IdenticalLayout { k: self.k };
        let (alice, i) = if ctx.id < self.k {
            (true, ctx.id)
        } else {
            (false, ctx.id - self.k)
        };
        let offset = if alice { 0 } else { self.k };
        let width = weight_bits(self.w_bound);
        let mut acc = 0u64;
        for j in i + 1..self.k {
            let t = l.pair_index(i, j);
            let weight = ctx.weight_to(offset + j);
            for (pos, bit) in pair_bit_positions(t, width, weight) {
                if bit {
                    acc = (acc + modpow(2, pos as u64, p)) % p;
                }
            }
        }
        if alice {
            self.pack(acc, 0)
        } else {
            self.pack(0, acc)
        }
    }

    fn merge(
        &self,
        _ctx: &NodeContext,
        b: &[bool],
        own: Vec<bool>,
        children: Vec<Vec<bool>>,
    ) -> Vec<bool> {
        let p = self.prime(b);
        let (mut x, mut y) = self.residues(&own);
        for c in children {
            let (cx, cy) = self.residues(&c);
            x = (x + cx) % p;
            y = (y + cy) % p;
        }
        self.pack(x, y)
    }

    fn decide(&self, _ctx: &NodeContext, _b: &[bool], merged: &[bool]) -> Vec<bool> {
        let (x, y) = self.residues(merged);
        vec![x == y]
    }

    fn output(&self, _ctx: &NodeContext, b: &[bool], verdict: &[bool]) -> IdentVerdict {
        IdentVerdict {
            identical: verdict.first().copied().unwrap_or(false),
            prime: self.prime(b),
        }
    }
}

pub fn identical_subgraphs_detect(
    inst: &LowerBoundInstance,
    cfg: &SimConfig,
) -> Result<(Vec<IdentVerdict>, SimTrace)> {
    let w_bound = inst.params.w_bound.unwrap_or_else(|| inst.params.w_max + 1);
    let primes = nth_primes(fingerprint_len(inst.params.k, w_bound).pow(2));
    identical_subgraphs_detect_with(inst, cfg, Arc::new(primes))
}

/// As [`identical_subgraphs_detect`] with a precomputed table of the first
/// `K^2` primes.
pub fn identical_subgraphs_detect_with(
    inst: &LowerBoundInstance,
    cfg: &SimConfig,
    primes: Arc<Vec<u64>>,
) -> Result<(Vec<IdentVerdict>, SimTrace)> {
    inst.kind.expect(InstanceKind::Identical)?;
    let w_bound = inst.params.w_bound.unwrap_or_else(|| inst.params.w_max + 1);
    let prog = ident_program(inst.params.k, w_bound, primes);
    let (out, trace) = run(&inst.graph, &prog, cfg)?;
    let verdicts = out
        .into_iter()
        .map(|o| o.ok_or(Error::MaxRoundsExceeded(cfg.max_rounds)))
        .collect::<Result<Vec<_>>>()?;
    Ok((verdicts, trace))
}

pub type Predicate = Arc<dyn Fn(&Graph) -> bool + Send + Sync>;

/// Upcasts every edge to the root, which evaluates `predicate` on the
/// reassembled graph and sends the one-bit verdict down.
#[derive(Clone)]
pub struct GatherDecider {
    pub root: NodeId,
    pub w_max: u64,
    pub predicate: Predicate,
}

impl fmt::Debug for GatherDecider {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GatherDecider")
            .field("root", &self.root)
            .field("w_max", &self.w_max)
            .finish_non_exhaustive()
    }
}

pub fn gather_decider(
    root: NodeId,
    w_max: u64,
    predicate: Predicate,
) -> TreeProgram<GatherDecider> {
    TreeProgram(GatherDecider {
        root,
        w_max,
        predicate,
    })
}

impl GatherDecider {
    fn widths(&self, n: usize) -> (usize, usize) {
        (width_for(n.saturating_sub(1) as u64), width_for(self.w_max))
    }
}

impl TreeAlgorithm for GatherDecider {
    type Output = bool;

    fn root(&self) -> NodeId {
        self.root
    }

    fn local(&self, ctx: &NodeContext, _b: &[bool]) -> Vec<bool> {
        let (iw, ww) = self.widths(ctx.n);
        let mut v = Vec::new();
        for &(u, w) in ctx.neighbors.iter().filter(|&&(u, _)| u > ctx.id) {
            push_uint(&mut v, ctx.id as u64, iw);
            push_uint(&mut v, u as u64, iw);
            push_uint(&mut v, w.min(self.w_max), ww);
        }
        v
    }

    fn merge(
        &self,
        _ctx: &NodeContext,
        _b: &[bool],
        mut own: Vec<bool>,
        children: Vec<Vec<bool>>,
    ) -> Vec<bool> {
        for c in children {
            own.extend(c);
        }
        own
    }

    fn decide(&self, ctx: &NodeContext, _b: &[bool], merged: &[bool]) -> Vec<bool> {
        let (iw, ww) = self.widths(ctx.n);
        let mut r = BitReader::over(merged);
        let mut g = Graph::new(ctx.n);
        while r.remaining() >= 2 * iw + ww {
            let (u, v, w) = (r.uint(iw), r.uint(iw), r.uint(ww));
            if let (Some(u), Some(v), Some(w)) = (u, v, w) {
                if g.add_edge(u as usize, v as usize, w).is_err() {
                    return vec![false];
                }
            }
        }
        vec![(self.predicate)(&g)]
    }

    fn output(&self, _ctx: &NodeContext, _b: &[bool], verdict: &[bool]) -> bool {
        verdict.first().copied().unwrap_or(false)
    }
}
