// SPDX-License-Identifier: Apache-2.0

//! Two-party and blackboard protocols with exact bit accounting.

mod apsp;
mod report;
mod two_party;

use serde::{Deserialize, Serialize};

pub use self::apsp::{
    apsp_blackboard, apsp_two_party, decode_distance, distance_field_bits, encode_distance,
    ApspTwoParty, BlackboardRun, PartyDistances, PartyView, VirtualGraph,
};
pub use self::report::{reduction_report, ReductionReport};
pub use self::two_party::{simulate_two_party, simulate_two_party_on, TwoPartyRun};

use crate::graph::NodeId;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    AliceToBob,
    BobToAlice,
    /// A write to the shared blackboard by player `i`.
    Board(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranscriptRecord {
    /// Simulated round, or protocol phase for the explicit protocols.
    pub round: usize,
    /// The cut edge `(sender, receiver)` for simulated messages.
    pub edge: Option<(NodeId, NodeId)>,
    pub direction: Direction,
    pub bits: Vec<bool>,
}

/// Ordered record of everything the parties communicate.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transcript {
    pub records: Vec<TranscriptRecord>,
    pub total_bits: u64,
}

impl Transcript {
    pub fn push(
        &mut self,
        round: usize,
        edge: Option<(NodeId, NodeId)>,
        direction: Direction,
        bits: Vec<bool>,
    ) {
        self.total_bits += bits.len() as u64;
        self.records.push(TranscriptRecord {
            round,
            edge,
            direction,
            bits,
        });
    }

    pub fn bits_in(&self, direction: Direction) -> u64 {
        self.records
            .iter()
            .filter(|r| r.direction == direction)
            .map(|r| r.bits.len() as u64)
            .sum()
    }
}
