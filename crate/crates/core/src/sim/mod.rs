// SPDX-License-Identifier: Apache-2.0

//! Round-synchronous CONGEST simulator with per-edge bandwidth enforcement.
//!
//! In round `t` every live node sees exactly the messages sent to it in round
//! `t - 1`, then emits at most one message per incident edge. Node steps
//! within a round are independent and may run in parallel; validation and
//! trace assembly are single-threaded. Node `v` draws randomness from a
//! ChaCha8 stream seeded by the run seed with stream id `v`.

mod fingerprint;
mod message;
mod primes;
mod programs;
mod tree;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Debug;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub use self::fingerprint::{
    bad_primes, encode_pair_bits, fingerprint_len, residue, to_biguint, IdentEncoding,
};
pub use self::message::{width_for, BitReader, BitWriter, Message};
pub use self::primes::{modpow, mulmod, nth_primes};
pub use self::programs::{
    bfs_convergecast_program, flood_program, gather_decider, ident_program,
    identical_subgraphs_detect, identical_subgraphs_detect_with, ConvergecastSum, Flood,
    GatherDecider, IdentDetect, IdentVerdict, Predicate,
};
pub use self::tree::{
    frames_needed, RoundBound, TreeAlgorithm, TreeProgram, TreeState, FRAME_HEADER_BITS,
};

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::graph::{Graph, NodeId};

/// What a node knows before the first round.
#[derive(Clone, Debug)]
pub struct NodeContext {
    pub id: NodeId,
    pub n: usize,
    /// Sorted `(neighbor, edge weight)` pairs.
    pub neighbors: Vec<(NodeId, u64)>,
    pub bandwidth: usize,
}

impl NodeContext {
    pub fn weight_to(&self, v: NodeId) -> Option<u64> {
        self.neighbors
            .binary_search_by_key(&v, |&(u, _)| u)
            .ok()
            .map(|i| self.neighbors[i].1)
    }
}

/// A per-node state machine.
pub trait NodeProgram: Sync {
    type State: Send;
    type Output: Clone + Debug + PartialEq + Send;

    fn init(&self, ctx: &NodeContext) -> Self::State;

    /// One synchronous step: consume the inbox, return the outbox.
    fn round(
        &self,
        ctx: &NodeContext,
        state: &mut Self::State,
        round: usize,
        inbox: &[(NodeId, Message)],
        rng: &mut ChaCha8Rng,
    ) -> Vec<(NodeId, Message)>;

    fn halted(&self, state: &Self::State) -> bool;

    fn output(&self, state: &Self::State) -> Self::Output;

    fn min_bandwidth(&self) -> usize {
        1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimConfig {
    pub bandwidth_bits: usize,
    pub max_rounds: usize,
    pub seed: u64,
    #[serde(default)]
    pub exec: Exec,
}

/// Multiplier `c` in the default bandwidth `ceil(c log2 n)`.
pub const BANDWIDTH_LOG_FACTOR: usize = 2;

/// `ceil(2 log2 n)`, at least one bit.
pub fn default_bandwidth(n: usize) -> usize {
    let sq = (n as u64).saturating_mul(n as u64);
    (64 - sq.saturating_sub(1).leading_zeros() as usize).max(1)
}

impl SimConfig {
    pub fn for_graph(g: &Graph, seed: u64) -> Self {
        SimConfig {
            bandwidth_bits: default_bandwidth(g.n()),
            max_rounds: 100_000,
            seed,
            exec: Exec::default(),
        }
    }

    pub fn with_bandwidth(mut self, bits: usize) -> Self {
        self.bandwidth_bits = bits;
        self
    }

    pub fn with_exec(mut self, exec: Exec) -> Self {
        self.exec = exec;
        self
    }

    pub fn with_max_rounds(mut self, rounds: usize) -> Self {
        self.max_rounds = rounds;
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MessageRecord {
    pub round: usize,
    pub from: NodeId,
    pub to: NodeId,
    pub bits: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeBits {
    pub u: NodeId,
    pub v: NodeId,
    pub bits: u64,
    pub messages: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimTrace {
    /// Last round in which any message was sent.
    pub rounds_used: usize,
    /// Rounds executed until every node halted.
    pub rounds_executed: usize,
    pub bandwidth_bits: usize,
    pub messages: Vec<MessageRecord>,
    /// Totals per edge `u < v`, both directions.
    pub per_edge: Vec<EdgeBits>,
}

impl SimTrace {
    pub fn total_bits(&self) -> u64 {
        self.messages.iter().map(|m| m.bits as u64).sum()
    }

    pub fn max_message_bits(&self) -> usize {
        self.messages.iter().map(|m| m.bits).max().unwrap_or(0)
    }

    fn finish(&mut self) {
        let mut acc: BTreeMap<(NodeId, NodeId), (u64, u64)> = BTreeMap::new();
        for m in &self.messages {
            let e = acc.entry((m.from.min(m.to), m.from.max(m.to))).or_default();
            e.0 += m.bits as u64;
            e.1 += 1;
        }
        self.per_edge = acc
            .into_iter()
            .map(|((u, v), (bits, messages))| EdgeBits {
                u,
                v,
                bits,
                messages,
            })
            .collect();
    }
}

pub(crate) struct Slot<S> {
    ctx: NodeContext,
    state: S,
    rng: ChaCha8Rng,
    inbox: Vec<(NodeId, Message)>,
    halted: bool,
}

/// The nodes one party simulates: all of them for [`run`], one side of the
/// cut for the two-party simulation.
pub(crate) struct Cluster<'p, P: NodeProgram> {
    prog: &'p P,
    slots: Vec<Slot<P::State>>,
    index: Vec<Option<usize>>,
}

impl<'p, P: NodeProgram> Cluster<'p, P> {
    pub(crate) fn new(g: &Graph, prog: &'p P, cfg: &SimConfig, nodes: &[NodeId]) -> Self {
        let mut index = vec![None; g.n()];
        let slots = nodes
            .iter()
            .enumerate()
            .map(|(pos, &id)| {
                index[id] = Some(pos);
                let ctx = NodeContext {
                    id,
                    n: g.n(),
                    neighbors: g.neighbors(id).to_vec(),
                    bandwidth: cfg.bandwidth_bits,
                };
                let state = prog.init(&ctx);
                let halted = prog.halted(&state);
                let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
                rng.set_stream(id as u64);
                Slot {
                    ctx,
                    state,
                    rng,
                    inbox: Vec::new(),
                    halted,
                }
            })
            .collect();
        Cluster { prog, slots, index }
    }

    pub(crate) fn all_halted(&self) -> bool {
        self.slots.iter().all(|s| s.halted)
    }

    /// Steps every live node; returns each sender's outbox.
    pub(crate) fn step(
        &mut self,
        round: usize,
        exec: Exec,
    ) -> Vec<(NodeId, Vec<(NodeId, Message)>)> {
        let prog = self.prog;
        exec.map_mut(&mut self.slots, |slot| {
            let inbox = std::mem::take(&mut slot.inbox);
            if slot.halted {
                return (slot.ctx.id, Vec::new());
            }
            let mut inbox = inbox;
            inbox.sort_by_key(|(from, _)| *from);
            let out = prog.round(&slot.ctx, &mut slot.state, round, &inbox, &mut slot.rng);
            slot.halted = prog.halted(&slot.state);
            (slot.ctx.id, out)
        })
    }

    pub(crate) fn deliver(&mut self, from: NodeId, to: NodeId, msg: Message) {
        if let Some(pos) = self.index[to] {
            if !self.slots[pos].halted {
                self.slots[pos].inbox.push((from, msg));
            }
        }
    }

    pub(crate) fn outputs(&self) -> Vec<(NodeId, P::Output)> {
        self.slots
            .iter()
            .map(|s| (s.ctx.id, self.prog.output(&s.state)))
            .collect()
    }
}

/// Checks one node's outbox against the model's rules.
pub(crate) fn validate_outbox(
    g: &Graph,
    bandwidth: usize,
    round: usize,
    from: NodeId,
    out: &[(NodeId, Message)],
) -> Result<()> {
    let mut seen = BTreeSet::new();
    for (to, msg) in out {
        let to = *to;
        if to >= g.n() || !g.has_edge(from, to) {
            return Err(Error::NotNeighbor { round, from, to });
        }
        if !seen.insert(to) {
            return Err(Error::DuplicateMessage { round, from, to });
        }
        if msg.len() > bandwidth {
            return Err(Error::BandwidthViolation {
                round,
                from,
                to,
                bits: msg.len(),
                limit: bandwidth,
            });
        }
    }
    Ok(())
}

pub(crate) fn check_bandwidth<P: NodeProgram>(prog: &P, cfg: &SimConfig) -> Result<()> {
    let needed = prog.min_bandwidth().max(1);
    if cfg.bandwidth_bits < needed {
        return Err(Error::BandwidthTooSmall {
            bandwidth: cfg.bandwidth_bits,
            needed,
        });
    }
    Ok(())
}

/// Runs `prog` on every node of `g` until all nodes halt.
pub fn run<P: NodeProgram>(
    g: &Graph,
    prog: &P,
    cfg: &SimConfig,
) -> Result<(Vec<P::Output>, SimTrace)> {
    check_bandwidth(prog, cfg)?;
    let nodes: Vec<NodeId> = (0..g.n()).collect();
    let mut cluster = Cluster::new(g, prog, cfg, &nodes);
    let mut trace = SimTrace {
        bandwidth_bits: cfg.bandwidth_bits,
        ..SimTrace::default()
    };
    let mut round = 0;
    while !cluster.all_halted() {
        round += 1;
        if round > cfg.max_rounds {
            return Err(Error::MaxRoundsExceeded(cfg.max_rounds));
        }
        let outs = cluster.step(round, cfg.exec);
        for (from, out) in outs {
            validate_outbox(g, cfg.bandwidth_bits, round, from, &out)?;
            for (to, msg) in out {
                trace.messages.push(MessageRecord {
                    round,
                    from,
                    to,
                    bits: msg.len(),
                });
                trace.rounds_used = round;
                cluster.deliver(from, to, msg);
            }
        }
    }
    trace.rounds_executed = round;
    trace.finish();
    Ok((
        cluster.outputs().into_iter().map(|(_, o)| o).collect(),
        trace,
    ))
}
