// SPDX-License-Identifier: Apache-2.0

//! BFS tree construction followed by broadcast, convergecast and a downcast
//! verdict, with every payload split into bandwidth-sized frames.
//!
//! Frame layout: a 2-bit tag (`JOIN`, `ACK`, `UP`, `DOWN`); data frames add a
//! `last` bit and up to `B - 3` payload bits. Each edge direction carries a
//! FIFO queue and sends its head frame once per round.
//!
//! Round schedule: the root sends `JOIN` in round 1. A node first reached in
//! round `r` takes the smallest-id `JOIN` sender as parent, answers `ACK` and
//! forwards `JOIN` in round `r`, and knows its children in round `r + 2`.
//! Downward frames are forwarded as soon as the children are known; upward
//! payloads are merged once every child has finished.

use std::collections::{BTreeMap, VecDeque};
use std::fmt::Debug;

use rand_chacha::ChaCha8Rng;

use super::{Message, NodeContext, NodeProgram};
use crate::graph::NodeId;

/// Tag plus `last` bit.
pub const FRAME_HEADER_BITS: usize = 3;

const JOIN: u64 = 0;
const ACK: u64 = 1;
const UP: u64 = 2;
const DOWN: u64 = 3;

/// The per-algorithm part of a tree computation. Payloads are bit vectors
/// of any length.
pub trait TreeAlgorithm: Sync {
    type Output: Clone + Debug + PartialEq + Send;

    fn root(&self) -> NodeId;

    /// Whether the root broadcasts a value before the convergecast.
    fn has_broadcast(&self) -> bool {
        false
    }

    fn broadcast_value(&self, _ctx: &NodeContext, _rng: &mut ChaCha8Rng) -> Vec<bool> {
        Vec::new()
    }

    /// This node's own contribution.
    fn local(&self, ctx: &NodeContext, broadcast: &[bool]) -> Vec<bool>;

    /// Combines the own contribution with the children's, in child-id order.
    fn merge(
        &self,
        ctx: &NodeContext,
        broadcast: &[bool],
        own: Vec<bool>,
        children: Vec<Vec<bool>>,
    ) -> Vec<bool>;

    /// Root only: the verdict sent down the tree.
    fn decide(&self, ctx: &NodeContext, broadcast: &[bool], merged: &[bool]) -> Vec<bool>;

    fn output(&self, ctx: &NodeContext, broadcast: &[bool], verdict: &[bool]) -> Self::Output;
}

#[derive(Clone, Debug)]
pub struct TreeProgram<A>(pub A);

#[derive(Clone, Debug)]
pub struct TreeState<O> {
    pub joined: Option<usize>,
    pub parent: Option<NodeId>,
    pub children: Vec<NodeId>,
    queues: BTreeMap<NodeId, VecDeque<Message>>,
    down_frames: Vec<Message>,
    forwarded: usize,
    down_msgs: Vec<Vec<bool>>,
    down_partial: Vec<bool>,
    up: BTreeMap<NodeId, (Vec<bool>, bool)>,
    own: Option<Vec<bool>>,
    sent_up: bool,
    verdict: Option<Vec<bool>>,
    output: Option<O>,
    halted: bool,
}

impl<O> TreeState<O> {
    fn children_known(&self, round: usize) -> bool {
        self.joined.is_some_and(|r| round >= r + 2)
    }

    fn enqueue(&mut self, to: NodeId, m: Message) {
        self.queues.entry(to).or_default().push_back(m);
    }
}

/// Frames needed for a payload of `bits` bits at bandwidth `bandwidth`.
pub fn frames_needed(bits: usize, bandwidth: usize) -> usize {
    bits.div_ceil(bandwidth - FRAME_HEADER_BITS).max(1)
}

/// `rounds_used <= c_sim * D + c0` for a tree computation whose payload sizes
/// are fixed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct RoundBound {
    pub c_sim: usize,
    pub c0: usize,
}

impl RoundBound {
    /// With `f_b`, `f_u`, `f_v` the frame counts of the broadcast, of one
    /// upcast payload and of the verdict: the deepest node at depth `h`
    /// finishes the upcast chain after `h (f_u + 1)` rounds past the
    /// broadcast, which itself needs `f_b + 2` rounds past the tree, so
    /// `c_sim = f_u + 2` and `c0 = f_b + f_v + 2`.
    pub fn for_tree(
        bandwidth: usize,
        broadcast_bits: Option<usize>,
        upcast_bits: usize,
        verdict_bits: usize,
    ) -> Self {
        RoundBound {
            c_sim: frames_needed(upcast_bits, bandwidth) + 2,
            c0: broadcast_bits.map_or(0, |b| frames_needed(b, bandwidth))
                + frames_needed(verdict_bits, bandwidth)
                + 2,
        }
    }

    pub fn rounds(&self, diameter: usize) -> usize {
        self.c_sim * diameter + self.c0
    }
}

fn frames(tag: u64, payload: &[bool], chunk: usize) -> Vec<Message> {
    let pieces: Vec<&[bool]> = if payload.is_empty() {
        vec![&[]]
    } else {
        payload.chunks(chunk).collect()
    };
    let count = pieces.len();
    pieces
        .into_iter()
        .enumerate()
        .map(|(t, p)| {
            super::BitWriter::new()
                .uint(tag, 2)
                .bit(t + 1 == count)
                .bits(p)
                .finish()
        })
        .collect()
}

fn control(tag: u64) -> Message {
    super::BitWriter::new().uint(tag, 2).finish()
}

impl<A: TreeAlgorithm> TreeProgram<A> {
    fn broadcast<'s>(&self, st: &'s TreeState<A::Output>) -> Option<&'s [bool]> {
        if !self.0.has_broadcast() {
            return Some(&[]);
        }
        st.down_msgs.first().map(|v| v.as_slice())
    }
}

impl<A: TreeAlgorithm> NodeProgram for TreeProgram<A> {
    type State = TreeState<A::Output>;
    type Output = Option<A::Output>;

    fn init(&self, _ctx: &NodeContext) -> Self::State {
        TreeState {
            joined: None,
            parent: None,
            children: Vec::new(),
            queues: BTreeMap::new(),
            down_frames: Vec::new(),
            forwarded: 0,
            down_msgs: Vec::new(),
            down_partial: Vec::new(),
            up: BTreeMap::new(),
            own: None,
            sent_up: false,
            verdict: None,
            output: None,
            halted: false,
        }
    }

    fn round(
        &self,
        ctx: &NodeContext,
        st: &mut Self::State,
        round: usize,
        inbox: &[(NodeId, Message)],
        rng: &mut ChaCha8Rng,
    ) -> Vec<(NodeId, Message)> {
        let alg = &self.0;
        let chunk = ctx.bandwidth - FRAME_HEADER_BITS;
        let is_root = ctx.id == alg.root();

        if is_root && round == 1 {
            st.joined = Some(1);
            for &(v, _) in &ctx.neighbors {
                st.enqueue(v, control(JOIN));
            }
            if alg.has_broadcast() {
                let value = alg.broadcast_value(ctx, rng);
                st.down_frames.extend(frames(DOWN, &value, chunk));
                st.down_msgs.push(value);
            }
        }

        let mut join_from = None;
        for (from, msg) in inbox {
            let mut r = msg.reader();
            match r.uint(2) {
                Some(JOIN) => {
                    join_from = Some(join_from.map_or(*from, |f: NodeId| f.min(*from)));
                }
                Some(ACK) => st.children.push(*from),
                Some(UP) => {
                    let last = r.bit().unwrap_or(true);
                    let e = st.up.entry(*from).or_default();
                    e.0.extend_from_slice(r.rest());
                    e.1 = last;
                }
                Some(DOWN) => {
                    st.down_frames.push(msg.clone());
                    let last = r.bit().unwrap_or(true);
                    st.down_partial.extend_from_slice(r.rest());
                    if last {
                        st.down_msgs.push(std::mem::take(&mut st.down_partial));
                    }
                }
                _ => {}
            }
        }
        if st.joined.is_none() {
            if let Some(p) = join_from {
                st.joined = Some(round);
                st.parent = Some(p);
                for &(v, _) in &ctx.neighbors {
                    st.enqueue(v, control(if v == p { ACK } else { JOIN }));
                }
            }
        }
        let known = st.children_known(round);
        if known {
            st.children.sort_unstable();
        }

        if st.own.is_none() {
            if let Some(b) = self.broadcast(st) {
                let own = alg.local(ctx, b);
                st.own = Some(own);
            }
        }

        let children_done = st
            .children
            .iter()
            .all(|c| st.up.get(c).is_some_and(|e| e.1));
        if known && !st.sent_up && st.own.is_some() && children_done {
            let own = st.own.clone().expect("checked");
            let kids = st.children.iter().map(|c| st.up[c].0.clone()).collect();
            let b = self.broadcast(st).expect("own implies broadcast").to_vec();
            let merged = alg.merge(ctx, &b, own, kids);
            st.sent_up = true;
            if is_root {
                let verdict = alg.decide(ctx, &b, &merged);
                st.down_frames.extend(frames(DOWN, &verdict, chunk));
                st.down_msgs.push(verdict);
            } else {
                let parent = st.parent.expect("non-root has a parent");
                for f in frames(UP, &merged, chunk) {
                    st.enqueue(parent, f);
                }
            }
        }

        if st.verdict.is_none() {
            let at = alg.has_broadcast() as usize;
            if let Some(v) = st.down_msgs.get(at) {
                let v = v.clone();
                let b = self
                    .broadcast(st)
                    .expect("verdict follows broadcast")
                    .to_vec();
                st.output = Some(alg.output(ctx, &b, &v));
                st.verdict = Some(v);
            }
        }

        if known && st.forwarded < st.down_frames.len() {
            let fresh: Vec<Message> = st.down_frames[st.forwarded..].to_vec();
            st.forwarded = st.down_frames.len();
            for c in st.children.clone() {
                for f in &fresh {
                    st.enqueue(c, f.clone());
                }
            }
        }

        let mut out = Vec::new();
        for (&to, q) in st.queues.iter_mut() {
            if let Some(m) = q.pop_front() {
                out.push((to, m));
            }
        }
        st.halted = st.verdict.is_some()
            && known
            && st.forwarded == st.down_frames.len()
            && st.queues.values().all(VecDeque::is_empty);
        out
    }

    fn halted(&self, st: &Self::State) -> bool {
        st.halted
    }

    fn output(&self, st: &Self::State) -> Self::Output {
        st.output.clone()
    }

    fn min_bandwidth(&self) -> usize {
        FRAME_HEADER_BITS + 1
    }
}
