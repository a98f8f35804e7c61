// SPDX-License-Identifier: Apache-2.0

use serde::{Deserialize, Serialize};

use super::simulate_two_party;
use crate::comm::CommFunction;
use crate::error::{Error, Result};
use crate::gadgets::{InstanceKind, LowerBoundInstance};
use crate::sim::{NodeProgram, SimConfig};

/// The three verdicts of a reduction on one instance and the bit accounting
/// of its two-party simulation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionReport {
    pub kind: InstanceKind,
    pub function: CommFunction,
    /// `f(x, y)`.
    pub f_value: bool,
    /// The graph predicate per the exact oracle, phrased so that it should
    /// equal `f(x, y)`.
    pub predicate: bool,
    /// The predicate as decided by the distributed program.
    pub program: Option<bool>,
    pub rounds: usize,
    pub cut_size: usize,
    pub bandwidth_bits: usize,
    pub transcript_bits: u64,
    /// `rounds * |C| * 2 * B`.
    pub bit_bound: u64,
    pub bound_holds: bool,
    pub verdicts_agree: bool,
}

/// Runs `prog` as a two-party protocol on `inst` and cross-checks it.
///
/// `predicate` evaluates the graph property with an oracle; `extract` turns
/// the per-node outputs into the program's verdict (`None` when the outputs
/// do not determine one). A disagreement is reported, not raised.
pub fn reduction_report<P, Q, X>(
    inst: &LowerBoundInstance,
    prog: &P,
    cfg: &SimConfig,
    function: CommFunction,
    predicate: Q,
    extract: X,
) -> Result<ReductionReport>
where
    P: NodeProgram,
    Q: FnOnce(&LowerBoundInstance) -> Result<bool>,
    X: FnOnce(&[P::Output]) -> Option<bool>,
{
    let (x, y) = match (&inst.x, &inst.y) {
        (Some(x), Some(y)) => (x, y),
        _ => return Err(Error::Parse("instance carries no (x, y) pair".into())),
    };
    let f_value = function.eval(x, y)?;
    let oracle = predicate(inst)?;
    let run = simulate_two_party(inst, prog, cfg)?;
    let program = extract(&run.outputs);
    let bit_bound = run.bit_bound();
    Ok(ReductionReport {
        kind: inst.kind,
        function,
        f_value,
        predicate: oracle,
        program,
        rounds: run.rounds_used,
        cut_size: run.cut_size,
        bandwidth_bits: run.bandwidth_bits,
        transcript_bits: run.transcript.total_bits,
        bit_bound,
        bound_holds: run.transcript.total_bits <= bit_bound,
        verdicts_agree: program == Some(f_value) && oracle == f_value,
    })
}
