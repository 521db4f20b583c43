use std::collections::BTreeSet;

use proptest::prelude::*;

use chroma::canon::canonical_form;
use chroma::feasibility::{brute_force_feasible, check_certificate, decide_feasible};
use chroma::graph::{components_in, k_core, ColoredGraph, Coloring, Graph};
use chroma::graph6::{emit_graph6, parse_graph6};
use chroma::search::paths::{all_path_endpoint_pairs, find_bichromatic_path};
use chroma::search::tree::{classify_tree, odd_leaf_path, LeafProfile, TreePattern};
use chroma::search::validate::{validate_double_star, validate_embedding, validate_path};
use chroma::search::{enumerate_leaf_image_sets, find_double_star, PathWitness};
use chroma::witness::{
    embed_tree_bichromatic, extract_bichromatic_path, find_double_star_bichromatic,
    scan_forced_chain, ForcedChain,
};

fn graph_from_bits(n: usize, bits: &[bool]) -> Graph {
    let mut g = Graph::empty(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bits[k] {
                g.add_edge(i, j);
            }
            k += 1;
        }
    }
    g
}

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2)
            .prop_map(move |bits| graph_from_bits(n, &bits))
    })
}

fn graph_with_perm(max_n: usize) -> impl Strategy<Value = (Graph, Vec<usize>)> {
    graph(max_n).prop_flat_map(|g| {
        let n = g.n();
        (Just(g), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
    })
}

/// A graph on at most `max_n` vertices with more than `num / den * n`
/// edges, first-fit colored in a random order.
fn dense_above(num: usize, den: usize, max_n: usize) -> impl Strategy<Value = ColoredGraph> {
    let need = move |n: usize| num * n / den + 1;
    let min_n = (1..=max_n).find(|&n| need(n) <= n * (n - 1) / 2).unwrap_or(max_n);
    (min_n..=max_n)
        .prop_flat_map(move |n| {
            let total = n * (n - 1) / 2;
            (
                Just(n),
                proptest::sample::subsequence((0..total).collect::<Vec<_>>(), need(n)..=total),
                Just((0..n).collect::<Vec<_>>()).prop_shuffle(),
            )
        })
        .prop_map(|(n, chosen, order)| {
            let mut bits = vec![false; n * (n - 1) / 2];
            for c in chosen {
                bits[c] = true;
            }
            let g = graph_from_bits(n, &bits);
            let c = Coloring::greedy_in_order(&g, &order);
            ColoredGraph::new(g, c).unwrap()
        })
}

fn dense_colored(max_n: usize) -> impl Strategy<Value = (usize, ColoredGraph)> {
    (1..=3usize).prop_flat_map(move |k| (Just(k), dense_above(k, 1, max_n)))
}

/// A random labeled tree with `k` edges from a parent array.
fn tree(max_k: usize) -> impl Strategy<Value = TreePattern> {
    (1..=max_k).prop_flat_map(|k| {
        proptest::collection::vec(any::<proptest::sample::Index>(), k).prop_map(move |picks| {
            let edges = picks
                .iter()
                .enumerate()
                .map(|(i, ix)| (ix.index(i + 1), i + 1))
                .collect();
            TreePattern::new(k, edges).unwrap()
        })
    })
}

/// Endpoint pairs of all injective vertex sequences of `len + 1` vertices
/// that walk along edges.
fn naive_pairs(g: &Graph, len: usize) -> BTreeSet<(usize, usize)> {
    fn go(g: &Graph, seq: &mut Vec<usize>, len: usize, out: &mut BTreeSet<(usize, usize)>) {
        if seq.len() == len + 1 {
            let (a, b) = (seq[0], *seq.last().unwrap());
            out.insert((a.min(b), a.max(b)));
            return;
        }
        for v in 0..g.n() {
            if seq.contains(&v) {
                continue;
            }
            if let Some(&last) = seq.last() {
                if !g.has_edge(last, v) {
                    continue;
                }
            }
            seq.push(v);
            go(g, seq, len, out);
            seq.pop();
        }
    }
    let mut out = BTreeSet::new();
    go(g, &mut Vec::new(), len, &mut out);
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn graph6_round_trip(g in graph(10)) {
        prop_assert_eq!(parse_graph6(&emit_graph6(&g)).unwrap(), g);
    }

    #[test]
    fn canonical_form_ignores_labels((g, p) in graph_with_perm(10)) {
        prop_assert_eq!(canonical_form(&g).unwrap(), canonical_form(&g.permute(&p)).unwrap());
    }

    #[test]
    fn canonical_graph_is_isomorphic_representative(g in graph(8)) {
        let c = canonical_form(&g).unwrap();
        prop_assert_eq!(c.edge_count(), g.edge_count());
        prop_assert_eq!(canonical_form(&c.to_graph()).unwrap(), c);
    }

    #[test]
    fn endpoint_pairs_match_naive(g in graph(7), len in 1..=5usize) {
        prop_assert_eq!(all_path_endpoint_pairs(&g, len), naive_pairs(&g, len));
    }

    #[test]
    fn leaf_sets_of_paths_are_endpoint_pairs(g in graph(8), len in 1..=5usize) {
        let sets: BTreeSet<(usize, usize)> = enumerate_leaf_image_sets(&g, &TreePattern::path(len))
            .into_iter()
            .map(|s| {
                let m = s.members();
                (m[0], m[1])
            })
            .collect();
        prop_assert_eq!(sets, all_path_endpoint_pairs(&g, len));
    }

    #[test]
    fn bichromatic_path_absent_iff_pairs_monochromatic(g in graph(9), len in 1..=5usize, order_seed in any::<u64>()) {
        let mut order: Vec<usize> = (0..g.n()).collect();
        order.rotate_left((order_seed as usize) % g.n().max(1));
        let cg = ColoredGraph::new(g.clone(), Coloring::greedy_in_order(&g, &order)).unwrap();
        let found = find_bichromatic_path(&cg, len);
        let mono = all_path_endpoint_pairs(&g, len).iter().all(|&(a, b)| cg.color(a) == cg.color(b));
        prop_assert_eq!(found.is_none(), mono);
        if let Some(p) = found {
            prop_assert!(validate_path(&g, &p, len).is_ok());
            prop_assert!(p.is_bichromatic(cg.coloring()));
        }
    }

    #[test]
    fn mixed_sides_iff_odd_leaf_path(t in tree(8)) {
        let mixed = classify_tree(&t) == LeafProfile::MixedSides;
        let odd = odd_leaf_path(&t);
        prop_assert_eq!(mixed, odd.is_ok());
        if let Ok(p) = odd {
            prop_assert_eq!(p.len() % 2, 1);
            prop_assert!(validate_path(t.graph(), &p, p.len()).is_ok());
        }
    }

    #[test]
    fn feasibility_is_sound_and_certified(g in graph(8), t in tree(4)) {
        let out = decide_feasible(&g, &t);
        prop_assert!(check_certificate(&g, &t, &out));
    }

    #[test]
    fn feasibility_matches_brute_force(g in graph(6), t in tree(4)) {
        prop_assert_eq!(decide_feasible(&g, &t).is_feasible(), brute_force_feasible(&g, &t).unwrap());
    }

    #[test]
    fn adding_an_edge_keeps_infeasible(g in graph(8), t in tree(4), pick in any::<proptest::sample::Index>()) {
        let missing: Vec<(usize, usize)> = (0..g.n())
            .flat_map(|j| (0..j).map(move |i| (i, j)))
            .filter(|&(i, j)| !g.has_edge(i, j))
            .collect();
        if missing.is_empty() {
            return Ok(());
        }
        let (i, j) = missing[pick.index(missing.len())];
        let mut h = g.clone();
        h.add_edge(i, j);
        if !decide_feasible(&g, &t).is_feasible() {
            prop_assert!(!decide_feasible(&h, &t).is_feasible());
        }
    }

    #[test]
    fn k_core_keeps_density((k, cg) in dense_colored(16)) {
        let g = cg.graph();
        let core = k_core(g, k);
        prop_assert!(core.graph.n() > 0);
        prop_assert!(core.graph.edge_count() > k * core.graph.n());
        prop_assert!(core.graph.min_degree().unwrap() >= k);
        prop_assert!(core.trace.removals.iter().all(|r| r.degree < k));
        let dense_component = components_in(g, g.vertex_mask())
            .into_iter()
            .any(|c| g.edge_count_in(c) > k * c.count_ones() as usize);
        prop_assert!(dense_component);
    }

    #[test]
    fn extraction_succeeds_above_the_bound((k, cg) in dense_colored(14)) {
        let (p, trace) = extract_bichromatic_path(&cg, k).unwrap();
        prop_assert!(validate_path(cg.graph(), &p, 2 * k + 1).is_ok());
        prop_assert!(p.is_bichromatic(cg.coloring()));
        prop_assert!(trace.replay(&cg).is_ok());
        prop_assert!(trace.depth <= cg.graph().n());
    }

    #[test]
    fn tree_embedding_above_the_bound(
        (t, cg) in tree(4)
            .prop_filter("leaves on one side", |t| classify_tree(t) == LeafProfile::MixedSides)
            .prop_flat_map(|t| {
                let k = t.k();
                (Just(t), dense_above(k - 1, 1, 12))
            })
    ) {
        let g = cg.graph();
        let emb = embed_tree_bichromatic(&cg, &t).unwrap();
        prop_assert!(validate_embedding(g, &t, &emb.images).is_ok());
        prop_assert!(cg.coloring().distinct_colors(emb.leaf_images(&t)) >= 2);
    }

    #[test]
    fn double_star_above_the_bound(
        (a, b, cg) in (1..=3usize, 1..=3usize)
            .prop_flat_map(|(a, b)| (Just(a), Just(b), dense_above(a + b, 2, 12)))
    ) {
        let g = cg.graph();
        let out = find_double_star_bichromatic(&cg, a, b).unwrap();
        prop_assert!(validate_double_star(g, &out.witness, a, b).is_ok());
        prop_assert!(cg.coloring().distinct_colors(out.witness.leaves()) >= 2);
        prop_assert!(find_double_star(g, a, b).is_some());
    }

    #[test]
    fn forced_chain_pigeonhole(links in 1..=5usize, step in 1..=3usize, colors in proptest::collection::vec(0u32..4, 16)) {
        // A cycle cut into equal links; the extremes are adjacent.
        let n = links * step + 1;
        prop_assume!(n >= 3);
        let mut c: Vec<u32> = colors[..n].to_vec();
        for v in 0..n {
            let prev = if v == 0 { None } else { Some(c[v - 1]) };
            let next = if v == n - 1 { Some(c[0]) } else { None };
            while Some(c[v]) == prev || Some(c[v]) == next {
                c[v] = (c[v] + 1) % 5;
            }
        }
        let cg = ColoredGraph::new(Graph::cycle(n), Coloring::new(c)).unwrap();
        let chain = ForcedChain::new(
            step,
            (0..links).map(|i| PathWitness::new((i * step..=(i + 1) * step).collect())).collect(),
        );
        prop_assert!(chain.validate(cg.graph()).is_ok());
        let p = scan_forced_chain(&chain, &cg).unwrap();
        prop_assert!(validate_path(cg.graph(), &p, step).is_ok());
        prop_assert!(p.is_bichromatic(cg.coloring()));
    }
}
