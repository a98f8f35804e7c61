// SPDX-License-Identifier: Apache-2.0

//! Exact sequential solvers used as ground truth for every predicate.

mod coloring;
mod cycle;
mod vertex_cover;

pub use self::coloring::{chromatic_number, is_c_colorable, verify_coloring, Coloring};
pub use self::cycle::{cycles_with_weight, find_cycle_with_weight, has_cycle_len8_weight};
pub use self::vertex_cover::{min_vc_size, verify_vertex_cover};

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::gadgets::{IdenticalLayout, InstanceKind, LowerBoundInstance};

/// Result of a budgeted search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Bounded {
    /// The optimum and a witness (cover nodes or per-node colors).
    Exact {
        value: usize,
        witness: Vec<usize>,
    },
    Exceeds,
}

impl Bounded {
    pub fn value(&self) -> Option<usize> {
        match self {
            Bounded::Exact { value, .. } => Some(*value),
            Bounded::Exceeds => None,
        }
    }

    pub fn witness(&self) -> Option<&[usize]> {
        match self {
            Bounded::Exact { witness, .. } => Some(witness),
            Bounded::Exceeds => None,
        }
    }
}

/// Single pass over the pairs `i < j`: same existence and same weight.
pub fn check_identical(inst: &LowerBoundInstance) -> Result<bool> {
    inst.kind.expect(InstanceKind::Identical)?;
    let l = IdenticalLayout { k: inst.params.k };
    let g = &inst.graph;
    let same = l
        .pairs()
        .all(|(i, j)| g.weight(l.a(i), l.a(j)) == g.weight(l.b(i), l.b(j)));
    Ok(same)
}
