// SPDX-License-Identifier: Apache-2.0

//! Laboratory for CONGEST lower-bound constructions.
//!
//! Builds the graph families used in two-party reductions, checks their
//! properties with exact oracles, runs distributed algorithms in a
//! round-synchronous simulator with per-edge bandwidth limits, and replays
//! those runs as two-party protocols over the cut.

pub mod comm;
pub mod error;
pub mod exec;
pub mod gadgets;
pub mod graph;
pub mod io;
pub mod lemma;
pub mod oracles;
pub mod protocol;
pub mod rng;
pub mod sim;

pub use error::{Error, Result};
