// SPDX-License-Identifier: Apache-2.0

//! Exact coloring by DSATUR backtracking with forward checking.

use super::Bounded;
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};

/// Color index per node.
pub type Coloring = Vec<usize>;

/// True iff no edge is monochromatic. Errors unless every node has a color.
pub fn verify_coloring(g: &Graph, col: &[usize]) -> Result<bool> {
    if col.len() != g.n() {
        return Err(Error::PartialColoring(col.len().min(g.n())));
    }
    Ok(g.edges().iter().all(|e| col[e.u] != col[e.v]))
}

/// A proper coloring with at most `c` colors, if one exists.
///
/// A greedy maximum clique is colored first; afterwards a node may open at
/// most one fresh color, so permuted palettes are never revisited.
pub fn is_c_colorable(g: &Graph, c: usize) -> Option<Coloring> {
    assert!(c <= 64, "at most 64 colors");
    let n = g.n();
    if n == 0 {
        return Some(Vec::new());
    }
    if c == 0 {
        return None;
    }
    let clique = greedy_clique(g);
    if clique.len() > c {
        return None;
    }
    let full: u64 = if c == 64 { u64::MAX } else { (1u64 << c) - 1 };
    let mut state = State {
        color: vec![None; n],
        domain: vec![full; n],
        used: 0,
    };
    for (t, &u) in clique.iter().enumerate() {
        if !state.assign(g, u, t) {
            return None;
        }
    }
    if solve(g, &mut state) {
        Some(
            state
                .color
                .into_iter()
                .map(|c| c.expect("complete"))
                .collect(),
        )
    } else {
        None
    }
}

/// Least `c <= c_max` admitting a proper coloring, with the coloring.
pub fn chromatic_number(g: &Graph, c_max: usize) -> Bounded {
    if g.n() == 0 {
        return Bounded::Exact {
            value: 0,
            witness: Vec::new(),
        };
    }
    let start = greedy_clique(g).len();
    for c in start..=c_max.min(64) {
        if let Some(col) = is_c_colorable(g, c) {
            return Bounded::Exact {
                value: c,
                witness: col,
            };
        }
    }
    Bounded::Exceeds
}

#[derive(Clone)]
struct State {
    color: Vec<Option<usize>>,
    domain: Vec<u64>,
    /// Number of distinct colors opened so far (colors are `0..used`).
    used: usize,
}

impl State {
    /// Colors `u` and prunes neighbor domains; false on a wipe-out.
    fn assign(&mut self, g: &Graph, u: NodeId, c: usize) -> bool {
        if self.domain[u] & (1 << c) == 0 {
            return false;
        }
        self.color[u] = Some(c);
        self.used = self.used.max(c + 1);
        for &(v, _) in g.neighbors(u) {
            if self.color[v].is_none() {
                self.domain[v] &= !(1u64 << c);
                if self.domain[v] == 0 {
                    return false;
                }
            }
        }
        true
    }
}

fn solve(g: &Graph, state: &mut State) -> bool {
    let pick = (0..g.n())
        .filter(|&u| state.color[u].is_none())
        .min_by_key(|&u| {
            let free_deg = g
                .neighbors(u)
                .iter()
                .filter(|&&(v, _)| state.color[v].is_none())
                .count();
            (state.domain[u].count_ones(), std::cmp::Reverse(free_deg), u)
        });
    let Some(u) = pick else {
        return true;
    };
    let limit = state.used + 1;
    let mut options = state.domain[u];
    while options != 0 {
        let c = options.trailing_zeros() as usize;
        options &= options - 1;
        if c >= limit {
            break;
        }
        let saved = state.clone();
        if state.assign(g, u, c) && solve(g, state) {
            return true;
        }
        *state = saved;
    }
    false
}

/// Largest clique found by greedy extension from every start node.
pub(crate) fn greedy_clique(g: &Graph) -> Vec<NodeId> {
    let mut best: Vec<NodeId> = Vec::new();
    for s in 0..g.n() {
        let mut clique = vec![s];
        let mut cand: Vec<NodeId> = g.neighbors(s).iter().map(|&(v, _)| v).collect();
        while !cand.is_empty() {
            let &next = cand
                .iter()
                .max_by_key(|&&v| {
                    let inside = cand.iter().filter(|&&w| g.has_edge(v, w)).count();
                    (inside, std::cmp::Reverse(v))
                })
                .expect("nonempty");
            clique.push(next);
            cand.retain(|&w| w != next && g.has_edge(next, w));
        }
        if clique.len() > best.len() {
            best = clique;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n, 1))).unwrap()
    }

    #[test]
    fn triangle_and_odd_cycle() {
        let t = cycle(3);
        assert!(is_c_colorable(&t, 3).is_some());
        assert!(is_c_colorable(&t, 2).is_none());
        assert_eq!(chromatic_number(&cycle(5), 5).value(), Some(3));
        assert_eq!(chromatic_number(&cycle(6), 5).value(), Some(2));
        assert_eq!(chromatic_number(&cycle(5), 2), Bounded::Exceeds);
        assert_eq!(chromatic_number(&Graph::new(3), 2).value(), Some(1));
    }

    #[test]
    fn verify_checks_edges_and_totality() {
        let t = cycle(3);
        assert!(!verify_coloring(&t, &[0, 0, 0]).unwrap());
        assert!(verify_coloring(&t, &[0, 1, 2]).unwrap());
        assert!(verify_coloring(&Graph::new(2), &[0, 0]).unwrap());
        assert!(matches!(
            verify_coloring(&t, &[0, 1]),
            Err(Error::PartialColoring(2))
        ));
        let w = is_c_colorable(&cycle(7), 3).unwrap();
        assert!(verify_coloring(&cycle(7), &w).unwrap());
    }
}
