// SPDX-License-Identifier: Apache-2.0

//! Simple cycles of a fixed length and total weight, by DFS.
//!
//! Each cycle is reported once: it starts at its smallest node and its second
//! node is smaller than its last.

use crate::graph::{Graph, NodeId};

/// A simple 8-node cycle of total weight `w`, if any.
pub fn has_cycle_len8_weight(g: &Graph, w: u64) -> Option<Vec<NodeId>> {
    find_cycle_with_weight(g, 8, w)
}

pub fn find_cycle_with_weight(g: &Graph, len: usize, w: u64) -> Option<Vec<NodeId>> {
    let mut found = None;
    enumerate(g, len, w, &mut |c| {
        found = Some(c.to_vec());
        false
    });
    found
}

/// Every simple cycle on `len` nodes with total weight `w`.
pub fn cycles_with_weight(g: &Graph, len: usize, w: u64) -> Vec<Vec<NodeId>> {
    let mut all = Vec::new();
    enumerate(g, len, w, &mut |c| {
        all.push(c.to_vec());
        true
    });
    all
}

/// Calls `visit` per cycle until it returns false.
fn enumerate(g: &Graph, len: usize, w: u64, visit: &mut dyn FnMut(&[NodeId]) -> bool) {
    if len < 3 {
        return;
    }
    let mut on_path = vec![false; g.n()];
    let mut path = Vec::with_capacity(len);
    for s in 0..g.n() {
        path.push(s);
        on_path[s] = true;
        let go_on = extend(g, len, w, 0, &mut path, &mut on_path, visit);
        on_path[s] = false;
        path.pop();
        if !go_on {
            return;
        }
    }
}

fn extend(
    g: &Graph,
    len: usize,
    target: u64,
    sum: u64,
    path: &mut Vec<NodeId>,
    on_path: &mut [bool],
    visit: &mut dyn FnMut(&[NodeId]) -> bool,
) -> bool {
    let start = path[0];
    let last = *path.last().expect("nonempty");
    if path.len() == len {
        if path[1] < last {
            if let Some(closing) = g.weight(last, start) {
                if sum + closing == target {
                    return visit(path);
                }
            }
        }
        return true;
    }
    for &(v, wt) in g.neighbors(last) {
        if v <= start || on_path[v] || sum + wt > target {
            continue;
        }
        path.push(v);
        on_path[v] = true;
        let go_on = extend(g, len, target, sum + wt, path, on_path, visit);
        on_path[v] = false;
        path.pop();
        if !go_on {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plain_eight_cycle() {
        let g = Graph::from_edges(8, (0..8).map(|i| (i, (i + 1) % 8, 1))).unwrap();
        assert_eq!(
            has_cycle_len8_weight(&g, 8),
            Some(vec![0, 1, 2, 3, 4, 5, 6, 7])
        );
        assert_eq!(has_cycle_len8_weight(&g, 7), None);
        assert_eq!(cycles_with_weight(&g, 8, 8).len(), 1);
    }

    #[test]
    fn k4_has_three_four_cycles() {
        let g = Graph::from_edges(
            4,
            [
                (0, 1, 1),
                (0, 2, 1),
                (0, 3, 1),
                (1, 2, 1),
                (1, 3, 1),
                (2, 3, 1),
            ],
        )
        .unwrap();
        assert_eq!(cycles_with_weight(&g, 4, 4).len(), 3);
        assert_eq!(cycles_with_weight(&g, 3, 3).len(), 4);
    }
}
