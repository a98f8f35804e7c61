// SPDX-License-Identifier: Apache-2.0

use super::{Direction, Transcript};
use crate::error::Result;
use crate::gadgets::LowerBoundInstance;
use crate::graph::{cut_edges, Graph, NodeId, Partition, Side};
use crate::sim::{check_bandwidth, validate_outbox, Cluster, NodeProgram, SimConfig};

#[derive(Clone, Debug)]
pub struct TwoPartyRun<O> {
    pub outputs: Vec<O>,
    pub transcript: Transcript,
    /// Last round with any message, as in [`crate::sim::SimTrace`].
    pub rounds_used: usize,
    pub cut_size: usize,
    pub bandwidth_bits: usize,
}

impl<O> TwoPartyRun<O> {
    /// `rounds * |C| * 2 * B`.
    pub fn bit_bound(&self) -> u64 {
        (self.rounds_used * self.cut_size * 2 * self.bandwidth_bits) as u64
    }
}

/// Alice steps the nodes of `V_A`, Bob those of `V_B`; only messages on cut
/// edges pass between them and enter the transcript.
pub fn simulate_two_party<P: NodeProgram>(
    inst: &LowerBoundInstance,
    prog: &P,
    cfg: &SimConfig,
) -> Result<TwoPartyRun<P::Output>> {
    simulate_two_party_on(&inst.graph, &inst.partition, prog, cfg)
}

/// [`simulate_two_party`] on any graph and partition.
pub fn simulate_two_party_on<P: NodeProgram>(
    g: &Graph,
    p: &Partition,
    prog: &P,
    cfg: &SimConfig,
) -> Result<TwoPartyRun<P::Output>> {
    p.check(g)?;
    check_bandwidth(prog, cfg)?;
    let cut_size = cut_edges(g, p)?.len();
    let mut alice = Cluster::new(g, prog, cfg, &p.nodes(Side::A));
    let mut bob = Cluster::new(g, prog, cfg, &p.nodes(Side::B));
    let mut transcript = Transcript::default();
    let mut rounds_used = 0;
    let mut round = 0;
    while !(alice.all_halted() && bob.all_halted()) {
        round += 1;
        if round > cfg.max_rounds {
            return Err(crate::error::Error::MaxRoundsExceeded(cfg.max_rounds));
        }
        let from_alice = alice.step(round, cfg.exec);
        let from_bob = bob.step(round, cfg.exec);
        for (side, outs) in [(Side::A, from_alice), (Side::B, from_bob)] {
            for (from, out) in outs {
                validate_outbox(g, cfg.bandwidth_bits, round, from, &out)?;
                for (to, msg) in out {
                    rounds_used = round;
                    let target_side = p.side(to);
                    if target_side != side {
                        let dir = if side == Side::A {
                            Direction::AliceToBob
                        } else {
                            Direction::BobToAlice
                        };
                        transcript.push(round, Some((from, to)), dir, msg.bits().to_vec());
                    }
                    match target_side {
                        Side::A => alice.deliver(from, to, msg),
                        Side::B => bob.deliver(from, to, msg),
                    }
                }
            }
        }
    }
    let mut outs: Vec<(NodeId, P::Output)> = alice.outputs();
    outs.extend(bob.outputs());
    outs.sort_by_key(|(u, _)| *u);
    Ok(TwoPartyRun {
        outputs: outs.into_iter().map(|(_, o)| o).collect(),
        transcript,
        rounds_used,
        cut_size,
        bandwidth_bits: cfg.bandwidth_bits,
    })
}
