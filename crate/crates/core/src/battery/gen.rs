//! Seeded random instances.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::graph::{ColoredGraph, Coloring, Graph};

pub type Rng8 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng8 {
    rand::SeedableRng::seed_from_u64(seed)
}

/// Uniform graph with exactly `m` edges on `n` vertices.
pub fn random_graph(rng: &mut Rng8, n: usize, m: usize) -> Graph {
    let mut pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|j| (0..j).map(move |i| (i, j)))
        .collect();
    pairs.shuffle(rng);
    let mut g = Graph::empty(n);
    for &(i, j) in pairs.iter().take(m) {
        g.add_edge(i, j);
    }
    g
}

/// Each edge present independently with probability `p`.
pub fn gnp(rng: &mut Rng8, n: usize, p: f64) -> Graph {
    let mut g = Graph::empty(n);
    for j in 1..n {
        for i in 0..j {
            if rng.gen_bool(p) {
                g.add_edge(i, j);
            }
        }
    }
    g
}

pub fn permutation(rng: &mut Rng8, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

/// First-fit coloring in a random vertex order.
pub fn greedy_random(rng: &mut Rng8, g: &Graph) -> ColoredGraph {
    let order = permutation(rng, g.n());
    ColoredGraph::new(g.clone(), Coloring::greedy_in_order(g, &order)).expect("first fit is proper")
}

fn max_edges(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// A graph on `n` vertices with more than `num / den * n` edges: uniform
/// with an edge count drawn above the threshold, or, with `near_extremal`,
/// disjoint cliques of size `clique` topped up with random edges until the
/// threshold is just passed.
pub fn dense_graph(
    rng: &mut Rng8,
    n: usize,
    num: usize,
    den: usize,
    clique: usize,
    near_extremal: bool,
) -> Option<Graph> {
    let need = num * n / den + 1;
    if need > max_edges(n) {
        return None;
    }
    if !near_extremal || clique < 2 {
        let m = rng.gen_range(need..=max_edges(n));
        return Some(random_graph(rng, n, m));
    }
    let mut g = Graph::empty(n);
    for base in (0..n - n % clique).step_by(clique) {
        for i in base..base + clique {
            for j in i + 1..base + clique {
                g.add_edge(i, j);
            }
        }
    }
    let mut missing: Vec<(usize, usize)> = (0..n)
        .flat_map(|j| (0..j).map(move |i| (i, j)))
        .filter(|&(i, j)| !g.has_edge(i, j))
        .collect();
    missing.shuffle(rng);
    let mut extra = missing.into_iter();
    while g.edge_count() < need {
        let (i, j) = extra.next()?;
        g.add_edge(i, j);
    }
    let p = permutation(rng, n);
    Some(g.permute(&p))
}

/// Random bipartite graph with sides `a` and `n - a` and more than
/// `num / den * n` edges, or `None` if the sides cannot carry that many.
pub fn dense_bipartite(rng: &mut Rng8, n: usize, num: usize, den: usize) -> Option<Graph> {
    let need = num * n / den + 1;
    let a = rng.gen_range(1..n);
    let mut pairs: Vec<(usize, usize)> = (0..a).flat_map(|i| (a..n).map(move |j| (i, j))).collect();
    if pairs.len() < need {
        return None;
    }
    pairs.shuffle(rng);
    let m = rng.gen_range(need..=pairs.len());
    let mut g = Graph::empty(n);
    for &(i, j) in pairs.iter().take(m) {
        g.add_edge(i, j);
    }
    let p = permutation(rng, n);
    Some(g.permute(&p))
}
