// SPDX-License-Identifier: Apache-2.0

//! Branch-and-bound minimum vertex cover.

use fixedbitset::FixedBitSet;

use super::Bounded;
use crate::graph::{Graph, NodeId};

pub fn verify_vertex_cover(g: &Graph, cover: &[NodeId]) -> bool {
    let mut inside = vec![false; g.n()];
    for &u in cover {
        if u >= g.n() {
            return false;
        }
        inside[u] = true;
    }
    g.edges().iter().all(|e| inside[e.u] || inside[e.v])
}

/// Exact minimum cover size if it is at most `budget`.
///
/// Branches on a maximum-degree node `v` (either `v` joins the cover or all
/// of `N(v)` does), takes the neighbor of every degree-one node, and prunes
/// with the larger of a greedy matching and a greedy clique partition.
pub fn min_vc_size(g: &Graph, budget: usize) -> Bounded {
    let n = g.n();
    let adj: Vec<FixedBitSet> = (0..n)
        .map(|u| {
            let mut s = FixedBitSet::with_capacity(n);
            for &(v, _) in g.neighbors(u) {
                s.insert(v);
            }
            s
        })
        .collect();
    let mut alive = FixedBitSet::with_capacity(n);
    alive.insert_range(..);
    let mut search = Search {
        adj: &adj,
        best_size: budget + 1,
        best: None,
        chosen: Vec::new(),
    };
    search.run(alive);
    match search.best {
        Some(mut cover) => {
            cover.sort_unstable();
            Bounded::Exact {
                value: cover.len(),
                witness: cover,
            }
        }
        None => Bounded::Exceeds,
    }
}

struct Search<'a> {
    adj: &'a [FixedBitSet],
    best_size: usize,
    best: Option<Vec<NodeId>>,
    chosen: Vec<NodeId>,
}

impl Search<'_> {
    fn degree(&self, alive: &FixedBitSet, v: NodeId) -> usize {
        self.adj[v].intersection_count(alive)
    }

    fn take(&mut self, alive: &mut FixedBitSet, v: NodeId) {
        alive.set(v, false);
        self.chosen.push(v);
    }

    fn run(&mut self, mut alive: FixedBitSet) {
        let mark = self.chosen.len();
        self.reduce(&mut alive);
        self.branch(alive);
        self.chosen.truncate(mark);
    }

    fn reduce(&mut self, alive: &mut FixedBitSet) {
        loop {
            let mut changed = false;
            let nodes: Vec<NodeId> = alive.ones().collect();
            for v in nodes {
                if !alive.contains(v) {
                    continue;
                }
                match self.degree(alive, v) {
                    0 => {
                        alive.set(v, false);
                        changed = true;
                    }
                    1 => {
                        let mut nb = self.adj[v].clone();
                        nb.intersect_with(alive);
                        let u = nb.minimum().expect("degree one");
                        self.take(alive, u);
                        alive.set(v, false);
                        changed = true;
                    }
                    _ => {}
                }
            }
            if !changed {
                return;
            }
        }
    }

    fn branch(&mut self, alive: FixedBitSet) {
        let taken = self.chosen.len();
        if alive.is_clear() {
            if taken < self.best_size {
                self.best_size = taken;
                self.best = Some(self.chosen.clone());
            }
            return;
        }
        if taken + self.lower_bound(&alive) >= self.best_size {
            return;
        }
        let v = alive
            .ones()
            .max_by_key(|&v| (self.degree(&alive, v), std::cmp::Reverse(v)))
            .expect("nonempty");

        let mut with_v = alive.clone();
        self.chosen.push(v);
        with_v.set(v, false);
        self.run(with_v);
        self.chosen.pop();

        let mut nb = self.adj[v].clone();
        nb.intersect_with(&alive);
        if taken + nb.count_ones(..) < self.best_size {
            let mut without_v = alive;
            without_v.set(v, false);
            without_v.difference_with(&nb);
            let mark = self.chosen.len();
            self.chosen.extend(nb.ones());
            self.run(without_v);
            self.chosen.truncate(mark);
        }
    }

    fn lower_bound(&self, alive: &FixedBitSet) -> usize {
        let mut free = alive.clone();
        let mut matching = 0;
        for v in alive.ones() {
            if !free.contains(v) {
                continue;
            }
            let mut nb = self.adj[v].clone();
            nb.intersect_with(&free);
            if let Some(u) = nb.minimum() {
                free.set(v, false);
                free.set(u, false);
                matching += 1;
            }
        }

        let mut order: Vec<NodeId> = alive.ones().collect();
        order.sort_by_key(|&v| std::cmp::Reverse(self.degree(alive, v)));
        let mut free = alive.clone();
        let mut cliques = 0;
        for v in order {
            if !free.contains(v) {
                continue;
            }
            free.set(v, false);
            let mut cand = self.adj[v].clone();
            cand.intersect_with(&free);
            while let Some(u) = cand.minimum() {
                free.set(u, false);
                cliques += 1;
                cand.intersect_with(&self.adj[u]);
            }
        }
        matching.max(cliques)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn clique(k: usize) -> Graph {
        Graph::from_edges(k, (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j, 1)))).unwrap()
    }

    #[test]
    fn small_graphs() {
        assert_eq!(min_vc_size(&clique(5), 10).value(), Some(4));
        let c4 = Graph::from_edges(4, [(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 0, 1)]).unwrap();
        assert_eq!(min_vc_size(&c4, 10).value(), Some(2));
        assert_eq!(min_vc_size(&c4, 1), Bounded::Exceeds);
        assert_eq!(min_vc_size(&Graph::new(3), 0).value(), Some(0));
    }

    #[test]
    fn verify_triangle() {
        let t = clique(3);
        assert!(verify_vertex_cover(&t, &[0, 1]));
        assert!(!verify_vertex_cover(&t, &[0]));
        let best = min_vc_size(&t, 3);
        assert!(verify_vertex_cover(&t, best.witness().unwrap()));
    }
}
