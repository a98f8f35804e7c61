// SPDX-License-Identifier: Apache-2.0

//! Structural properties of the generated families.

use std::collections::BTreeSet;

use congest_core::comm::{disj, BitString};
use congest_core::gadgets::{
    build_apsp_star, build_identical_subgraphs, construct_3coloring, construct_mvc_cover,
    cycle_input_edge_count, decode_star_row, identical_weight_bound, mvc_cover_size,
    star_batch_width, weight_bits, CycleLayout, IndexSet, InstanceKind, LowerBoundInstance,
    MvcLayout,
};
use congest_core::graph::{apsp_exact, Side};
use congest_core::lemma::LemmaSpec;
use congest_core::oracles::{
    cycles_with_weight, min_vc_size, verify_coloring, verify_vertex_cover,
};
use congest_core::rng::random_clique_weights;
use proptest::prelude::*;

fn disj_string(bits: usize) -> impl Strategy<Value = BitString> {
    proptest::collection::vec(proptest::bool::weighted(0.3), bits)
        .prop_map(BitString::from_bools)
        .prop_filter("all-ones input", |b| !b.is_all_ones())
}

type EdgeSet = BTreeSet<(usize, usize, u64)>;

/// Edges inside `V_B`, and the cut.
fn b_view(inst: &LowerBoundInstance) -> (EdgeSet, EdgeSet) {
    let p = &inst.partition;
    let inner = inst
        .graph
        .edges()
        .iter()
        .filter(|e| p.side(e.u) == Side::B && p.side(e.v) == Side::B)
        .map(|e| (e.u, e.v, e.w))
        .collect();
    let cut = inst.cut().edges.iter().map(|e| (e.u, e.v, e.w)).collect();
    (inner, cut)
}

fn a_inner(inst: &LowerBoundInstance) -> EdgeSet {
    let p = &inst.partition;
    inst.graph
        .edges()
        .iter()
        .filter(|e| p.side(e.u) == Side::A && p.side(e.v) == Side::A)
        .map(|e| (e.u, e.v, e.w))
        .collect()
}

fn families() -> Vec<LemmaSpec> {
    vec![
        LemmaSpec::new(InstanceKind::Mvc, 2),
        LemmaSpec::new(InstanceKind::Mvc, 4),
        LemmaSpec::new(InstanceKind::Coloring3, 2),
        LemmaSpec::new(InstanceKind::Coloring3, 4),
        LemmaSpec::new(InstanceKind::ColoringC, 2).with_c(5),
        LemmaSpec::new(InstanceKind::ColoringApprox, 2).with_c(2),
        LemmaSpec::new(InstanceKind::Cycle8, 3),
        LemmaSpec::new(InstanceKind::Cycle8, 4),
    ]
}

fn log2(k: usize) -> usize {
    k.trailing_zeros() as usize
}

#[test]
fn node_and_cut_counts() {
    for k in [2, 4, 8, 16] {
        let z = BitString::zeros(k * k);
        let mvc = LemmaSpec::new(InstanceKind::Mvc, k).build(&z, &z).unwrap();
        assert_eq!(mvc.n(), 4 * k + 8 * log2(k));
        assert_eq!(mvc.cut().len(), 4 * log2(k));
        let col = LemmaSpec::new(InstanceKind::Coloring3, k)
            .build(&z, &z)
            .unwrap();
        assert_eq!(col.n(), 12 * k + 8 * log2(k) + 6);
        assert_eq!(col.cut().len(), 6 + 4 * log2(k));
        for c in [4, 6] {
            let ext = LemmaSpec::new(InstanceKind::ColoringC, k)
                .with_c(c)
                .build(&z, &z)
                .unwrap();
            assert_eq!(ext.n(), col.n() + 2 * (c - 3));
            assert_eq!(ext.cut().len(), col.cut().len() + 3 * (c - 3));
        }
        let kc = k.max(3);
        let mut one = BitString::zeros(kc * kc);
        one.set(0, true);
        let cyc = LemmaSpec::new(InstanceKind::Cycle8, kc)
            .build(&BitString::zeros(kc * kc), &one)
            .unwrap();
        assert_eq!(cyc.n(), 4 * kc + 4);
        assert_eq!(cyc.cut().len(), 2);
        let w = identical_weight_bound(k);
        let x = BitString::zeros(k * (k - 1) / 2 * weight_bits(w));
        let ident = build_identical_subgraphs(k, &x, &x, None).unwrap();
        assert_eq!(ident.n(), 2 * k);
        assert_eq!(ident.cut().len(), 1);
    }
}

#[test]
fn mvc_minimum_covers_have_the_claimed_shape() {
    for k in [2usize, 4] {
        let layout = MvcLayout::new(k).unwrap();
        let bit_nodes: BTreeSet<usize> = IndexSet::ALL
            .iter()
            .flat_map(|&s| layout.bit_nodes(s))
            .collect();
        let mut pairs = vec![];
        for t in 0..k * k {
            let mut x = BitString::zeros(k * k);
            let mut y = BitString::zeros(k * k);
            x.set(t, true);
            y.set(t, true);
            pairs.push((x.clone(), y.clone()));
            y.set(t, false);
            y.set((t + 1) % (k * k), true);
            pairs.push((x, y));
        }
        for (x, y) in pairs {
            let inst = LemmaSpec::new(InstanceKind::Mvc, k).build(&x, &y).unwrap();
            let best = min_vc_size(&inst.graph, mvc_cover_size(k) + 2);
            let cover: BTreeSet<usize> = best
                .witness()
                .expect("within budget")
                .iter()
                .copied()
                .collect();
            assert!(verify_vertex_cover(
                &inst.graph,
                &cover.iter().copied().collect::<Vec<_>>()
            ));
            for s in IndexSet::ALL {
                let in_clique = (0..k)
                    .filter(|&i| cover.contains(&layout.node(s, i)))
                    .count();
                assert!(in_clique >= k - 1, "k={k} {s:?}: {in_clique}");
            }
            assert!(cover.intersection(&bit_nodes).count() >= 4 * log2(k));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn varying_x_keeps_bob_side_and_cut(
        x1 in disj_string(16), x2 in disj_string(16), y in disj_string(16)
    ) {
        for spec in families() {
            let bits = spec.k * spec.k;
            let (x1, x2, y) = (trunc(&x1, bits), trunc(&x2, bits), trunc(&y, bits));
            let (Ok(a), Ok(b)) = (spec.build(&x1, &y), spec.build(&x2, &y)) else { continue };
            prop_assert_eq!(&a.partition, &b.partition);
            prop_assert_eq!(b_view(&a), b_view(&b), "{:?}", spec);
        }
    }

    #[test]
    fn varying_y_keeps_alice_side_and_cut(
        x in disj_string(16), y1 in disj_string(16), y2 in disj_string(16)
    ) {
        for spec in families() {
            let bits = spec.k * spec.k;
            let (x, y1, y2) = (trunc(&x, bits), trunc(&y1, bits), trunc(&y2, bits));
            let (Ok(a), Ok(b)) = (spec.build(&x, &y1), spec.build(&x, &y2)) else { continue };
            prop_assert_eq!(a_inner(&a), a_inner(&b));
            prop_assert_eq!(a.cut(), b.cut());
        }
    }

    #[test]
    fn generated_graphs_are_connected(x in disj_string(16), y in disj_string(16)) {
        for spec in families() {
            let bits = spec.k * spec.k;
            if let Ok(inst) = spec.build(&trunc(&x, bits), &trunc(&y, bits)) {
                prop_assert!(inst.graph.is_connected(), "{:?}", spec);
                prop_assert!(inst.partition.check(&inst.graph).is_ok());
            }
        }
    }

    #[test]
    fn identical_side_dependence(k in 2usize..7, seed in any::<u64>()) {
        let w = identical_weight_bound(k);
        let mut rng = congest_core::rng::named_rng(seed, "ident");
        let x1 = random_clique_weights(k, w, &mut rng);
        let x2 = random_clique_weights(k, w, &mut rng);
        let y = random_clique_weights(k, w, &mut rng);
        let a = build_identical_subgraphs(k, &x1, &y, None).unwrap();
        let b = build_identical_subgraphs(k, &x2, &y, None).unwrap();
        prop_assert_eq!(b_view(&a), b_view(&b));
        prop_assert!(a.graph.is_connected());
    }

    #[test]
    fn explicit_witnesses_are_valid(k in prop_oneof![Just(2usize), Just(4), Just(8)], i in 0usize..8, j in 0usize..8, seed in any::<u64>()) {
        let (i, j) = (i % k, j % k);
        let mut rng = congest_core::rng::named_rng(seed, "witness");
        let mut x = congest_core::rng::random_disj_input(k * k, 0.5, &mut rng);
        let mut y = congest_core::rng::random_disj_input(k * k, 0.5, &mut rng);
        x.set(k * i + j, true);
        y.set(k * i + j, true);
        prop_assume!(!x.is_all_ones() && !y.is_all_ones());
        let mvc = LemmaSpec::new(InstanceKind::Mvc, k).build(&x, &y).unwrap();
        let cover = construct_mvc_cover(&mvc, i, j).unwrap();
        prop_assert_eq!(cover.len(), mvc_cover_size(k));
        prop_assert!(verify_vertex_cover(&mvc.graph, &cover));
        let col = LemmaSpec::new(InstanceKind::Coloring3, k).build(&x, &y).unwrap();
        prop_assert!(verify_coloring(&col.graph, &construct_3coloring(&col, i, j).unwrap()).unwrap());
    }

    #[test]
    fn weight_2k3_cycles_use_two_input_edges(x in disj_string(16), y in disj_string(16)) {
        let k = 4;
        let spec = LemmaSpec::new(InstanceKind::Cycle8, k);
        let Ok(inst) = spec.build(&x, &y) else { return Ok(()) };
        let layout = CycleLayout { k };
        let cycles = cycles_with_weight(&inst.graph, 8, layout.target_weight());
        prop_assert_eq!(cycles.is_empty(), disj(&x, &y).unwrap());
        for c in &cycles {
            prop_assert_eq!(cycle_input_edge_count(&layout, c), 2);
        }
    }

    #[test]
    fn star_row_decodes_to_x(n in 3usize..48, seed in any::<u64>()) {
        let mut rng = congest_core::rng::named_rng(seed, "star");
        let x = BitString::random((n - 2) * star_batch_width(n), &mut rng);
        let inst = build_apsp_star(n, &x).unwrap();
        prop_assert_eq!(inst.cut().len(), 1);
        let d = apsp_exact(&inst.graph);
        prop_assert_eq!(decode_star_row(n, d.row(n - 1)), Some(x));
    }
}

fn trunc(b: &BitString, len: usize) -> BitString {
    let out = BitString::from_bools(b.bits()[..len].to_vec());
    if out.is_all_ones() {
        BitString::zeros(len)
    } else {
        out
    }
}
