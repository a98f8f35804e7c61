// SPDX-License-Identifier: Apache-2.0

//! Exact oracles against brute force on small graphs.

use congest_core::graph::{apsp_exact, Distance, Graph};
use congest_core::oracles::{
    chromatic_number, cycles_with_weight, find_cycle_with_weight, is_c_colorable, min_vc_size,
    verify_coloring, verify_vertex_cover, Bounded,
};
use itertools::Itertools;
use proptest::prelude::*;

fn graph(n: usize, mask: &[bool], weights: &[u64]) -> Graph {
    let mut g = Graph::new(n);
    let mut t = 0;
    for u in 0..n {
        for v in u + 1..n {
            if mask[t] {
                g.add_edge(u, v, weights[t]).unwrap();
            }
            t += 1;
        }
    }
    g
}

prop_compose! {
    fn small_graph(max_n: usize, p: f64, w_max: u64)(n in 1..=max_n)
        (mask in proptest::collection::vec(proptest::bool::weighted(p), n * (n - 1) / 2),
         weights in proptest::collection::vec(0..=w_max, n * (n - 1) / 2),
         n in Just(n)) -> Graph {
        graph(n, &mask, &weights)
    }
}

fn brute_vc(g: &Graph) -> usize {
    let n = g.n();
    (0u32..1 << n)
        .filter(|&s| {
            g.edges()
                .iter()
                .all(|e| s >> e.u & 1 == 1 || s >> e.v & 1 == 1)
        })
        .map(|s| s.count_ones() as usize)
        .min()
        .unwrap()
}

fn brute_mis(g: &Graph) -> usize {
    let n = g.n();
    (0u32..1 << n)
        .filter(|&s| {
            g.edges()
                .iter()
                .all(|e| !(s >> e.u & 1 == 1 && s >> e.v & 1 == 1))
        })
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap()
}

fn brute_colorable(g: &Graph, c: usize) -> bool {
    let n = g.n();
    (0..c.pow(n as u32)).any(|mut code| {
        let col: Vec<usize> = (0..n)
            .map(|_| {
                let d = code % c;
                code /= c;
                d
            })
            .collect();
        g.edges().iter().all(|e| col[e.u] != col[e.v])
    })
}

/// Number of `len`-cycles of weight `w`, each counted once.
fn brute_cycles(g: &Graph, len: usize, w: u64) -> usize {
    let mut hits = 0;
    for perm in (0..g.n()).permutations(len) {
        let mut total = 0;
        let closed = (0..len).all(|t| match g.weight(perm[t], perm[(t + 1) % len]) {
            Some(x) => {
                total += x;
                true
            }
            None => false,
        });
        if closed && total == w {
            hits += 1;
        }
    }
    // Each cycle appears once per starting node and direction.
    hits / (2 * len)
}

fn floyd_warshall(g: &Graph) -> Vec<Vec<Option<u64>>> {
    let n = g.n();
    let mut d = vec![vec![None; n]; n];
    for (u, row) in d.iter_mut().enumerate() {
        row[u] = Some(0);
    }
    for e in g.edges() {
        let best = d[e.u][e.v].map_or(e.w, |x: u64| x.min(e.w));
        d[e.u][e.v] = Some(best);
        d[e.v][e.u] = Some(best);
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if let (Some(a), Some(b)) = (d[i][k], d[k][j]) {
                    if d[i][j].is_none_or(|x| a + b < x) {
                        d[i][j] = Some(a + b);
                    }
                }
            }
        }
    }
    d
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn vertex_cover_matches_subset_search(g in small_graph(14, 0.35, 1)) {
        let want = brute_vc(&g);
        match min_vc_size(&g, g.n()) {
            Bounded::Exact { value, witness } => {
                prop_assert_eq!(value, want);
                prop_assert_eq!(witness.len(), want);
                prop_assert!(verify_vertex_cover(&g, &witness));
            }
            Bounded::Exceeds => prop_assert!(false, "budget n always suffices"),
        }
        if want > 0 {
            prop_assert_eq!(min_vc_size(&g, want - 1), Bounded::Exceeds);
        }
        prop_assert_eq!(brute_mis(&g), g.n() - want);
    }

    #[test]
    fn coloring_matches_assignment_search(g in small_graph(9, 0.45, 1)) {
        for c in 1..=4 {
            let found = is_c_colorable(&g, c);
            prop_assert_eq!(found.is_some(), brute_colorable(&g, c), "c = {}", c);
            if let Some(col) = found {
                prop_assert!(verify_coloring(&g, &col).unwrap());
                prop_assert!(col.iter().all(|&x| x < c));
            }
        }
        let chi = (1..=g.n()).find(|&c| brute_colorable(&g, c)).unwrap();
        prop_assert_eq!(chromatic_number(&g, g.n()).value(), Some(chi));
        if chi > 1 {
            prop_assert_eq!(chromatic_number(&g, chi - 1), Bounded::Exceeds);
        }
    }

    #[test]
    fn eight_cycles_match_permutation_search(g in small_graph(9, 0.55, 3), w in 0u64..16) {
        let found = cycles_with_weight(&g, 8, w);
        prop_assert_eq!(found.len(), brute_cycles(&g, 8, w));
        prop_assert_eq!(find_cycle_with_weight(&g, 8, w).is_some(), !found.is_empty());
        for c in &found {
            let total: u64 = (0..8).map(|t| g.weight(c[t], c[(t + 1) % 8]).unwrap()).sum();
            prop_assert_eq!(total, w);
            prop_assert_eq!(c.iter().unique().count(), 8);
        }
    }

    #[test]
    fn short_cycles_match_permutation_search(g in small_graph(7, 0.5, 2), len in 3usize..=5, w in 0u64..8) {
        prop_assert_eq!(cycles_with_weight(&g, len, w).len(), brute_cycles(&g, len, w));
    }

    #[test]
    fn apsp_matches_floyd_warshall(g in small_graph(10, 0.3, 20)) {
        let got = apsp_exact(&g);
        let want = floyd_warshall(&g);
        for (u, row) in want.iter().enumerate() {
            for (v, &cell) in row.iter().enumerate() {
                let d = match cell {
                    Some(x) => Distance::Finite(x),
                    None => Distance::Infinite,
                };
                prop_assert_eq!(got.get(u, v), d);
            }
        }
    }
}
