// SPDX-License-Identifier: Apache-2.0

use crate::graph::NodeId;

/// Errors raised by constructors, oracles, the simulator and the protocols.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("node {node} out of range for a graph on {n} nodes")]
    NodeOutOfRange { node: NodeId, n: usize },
    #[error("self-loop at node {0}")]
    SelfLoop(NodeId),
    #[error("parallel edge ({0}, {1})")]
    ParallelEdge(NodeId, NodeId),
    #[error("negative edge weight {w} on ({u}, {v})")]
    NegativeWeight { u: NodeId, v: NodeId, w: i64 },
    #[error("partition covers {got} of {n} nodes")]
    PartialPartition { got: usize, n: usize },
    #[error("partition block {0} is empty")]
    EmptyBlock(usize),
    #[error("length mismatch: expected {expected} bits, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("all-ones input string is not admissible")]
    AllOnesInput,
    #[error("both input strings are all-zeros; the instance would be disconnected")]
    AllZeroInputs,
    #[error("k = {0} is not a power of two >= 2")]
    NotPowerOfTwo(usize),
    #[error("parameter {name} = {value} is below the minimum {min}")]
    ParameterTooSmall {
        name: &'static str,
        value: usize,
        min: usize,
    },
    #[error("index {index} out of range (bound {bound})")]
    IndexOutOfRange { index: usize, bound: usize },
    #[error("weight {w} outside [0, {bound})")]
    WeightOutOfRange { w: u64, bound: u64 },
    #[error("expected instance kind {expected}, got {got}")]
    WrongKind {
        expected: &'static str,
        got: &'static str,
    },
    #[error("input bit ({i}, {j}) is not set in both strings")]
    BitNotSet { i: usize, j: usize },
    #[error("partial coloring: node {0} has no color")]
    PartialColoring(NodeId),
    #[error("bandwidth violation in round {round} on edge {from}->{to}: {bits} bits > {limit}")]
    BandwidthViolation {
        round: usize,
        from: NodeId,
        to: NodeId,
        bits: usize,
        limit: usize,
    },
    #[error("node {from} sent to non-neighbor {to} in round {round}")]
    NotNeighbor {
        round: usize,
        from: NodeId,
        to: NodeId,
    },
    #[error("node {from} sent two messages to {to} in round {round}")]
    DuplicateMessage {
        round: usize,
        from: NodeId,
        to: NodeId,
    },
    #[error("not all nodes halted within {0} rounds")]
    MaxRoundsExceeded(usize),
    #[error("bandwidth of {bandwidth} bits is too small for this program (needs {needed})")]
    BandwidthTooSmall { bandwidth: usize, needed: usize },
    #[error("graph is not connected")]
    Disconnected,
    #[error("malformed input: {0}")]
    Parse(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
