//! Small simple graphs stored as one neighbor bitmask per vertex, proper
//! colorings, and the degree-based reductions used throughout the crate.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A set of vertices, bit `v` set iff vertex `v` is a member.
pub type VertexMask = u32;

/// Width of [`VertexMask`]; no graph can have more vertices than this.
pub const MASK_BITS: usize = 32;

#[inline]
pub const fn bit(v: usize) -> VertexMask {
    1 << v
}

/// Mask with the lowest `n` bits set.
#[inline]
pub const fn full_mask(n: usize) -> VertexMask {
    if n >= MASK_BITS {
        VertexMask::MAX
    } else {
        (1 << n) - 1
    }
}

/// Iterates the members of a mask in ascending order.
pub fn members(mut mask: VertexMask) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}

pub fn mask_of(vertices: &[usize]) -> VertexMask {
    vertices.iter().fold(0, |m, &v| m | bit(v))
}

/// Simple undirected graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexMask>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    ///
    /// Panics if `n` exceeds the mask width; callers reading untrusted input
    /// go through the parsers, which return an error instead.
    pub fn empty(n: usize) -> Self {
        assert!(n <= MASK_BITS, "graph with {n} vertices exceeds mask width");
        Graph { n, adj: vec![0; n] }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n > MASK_BITS {
            return Err(Error::UnsupportedSize {
                what: "graph",
                n,
                limit: MASK_BITS,
            });
        }
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::Argument(format!(
                    "edge {{{u}, {v}}} out of range for {n} vertices"
                )));
            }
            if u == v {
                return Err(Error::Argument(format!("self-loop at vertex {u}")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    /// Builds a graph from raw adjacency rows, checking symmetry and loops.
    pub fn from_adjacency(adj: Vec<VertexMask>) -> Result<Self> {
        let n = adj.len();
        if n > MASK_BITS {
            return Err(Error::UnsupportedSize {
                what: "graph",
                n,
                limit: MASK_BITS,
            });
        }
        let allowed = full_mask(n);
        for (v, &row) in adj.iter().enumerate() {
            if row & !allowed != 0 {
                return Err(Error::Argument(format!("row {v} names vertices >= {n}")));
            }
            if row & bit(v) != 0 {
                return Err(Error::Argument(format!("self-loop at vertex {v}")));
            }
            for u in members(row) {
                if adj[u] & bit(v) == 0 {
                    return Err(Error::Argument(format!("asymmetric edge {{{v}, {u}}}")));
                }
            }
        }
        Ok(Graph { n, adj })
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for v in 0..n {
            g.adj[v] = full_mask(n) & !bit(v);
        }
        g
    }

    /// Path with `len` edges on vertices `0..=len` in order.
    pub fn path(len: usize) -> Self {
        let mut g = Graph::empty(len + 1);
        for v in 0..len {
            g.add_edge(v, v + 1);
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        let mut g = Graph::path(n - 1);
        g.add_edge(n - 1, 0);
        g
    }

    /// Star with center 0 and leaves `1..=leaves`.
    pub fn star(leaves: usize) -> Self {
        let mut g = Graph::empty(leaves + 1);
        for v in 1..=leaves {
            g.add_edge(0, v);
        }
        g
    }

    /// `K_{a,b}` with sides `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut g = Graph::empty(a + b);
        for u in 0..a {
            for v in a..a + b {
                g.add_edge(u, v);
            }
        }
        g
    }

    /// Places `other` on fresh vertices after those of `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Self {
        let n = self.n + other.n;
        let mut g = Graph::empty(n);
        g.adj[..self.n].copy_from_slice(&self.adj);
        for v in 0..other.n {
            g.adj[self.n + v] = other.adj[v] << self.n;
        }
        g
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn vertex_mask(&self) -> VertexMask {
        full_mask(self.n)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexMask {
        self.adj[v]
    }

    pub fn adjacency(&self) -> &[VertexMask] {
        &self.adj
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] & bit(v) != 0
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    /// Degree of `v` counting only neighbors inside `within`.
    #[inline]
    pub fn degree_in(&self, v: usize, within: VertexMask) -> usize {
        (self.adj[v] & within).count_ones() as usize
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v && u < self.n && v < self.n);
        self.adj[u] |= bit(v);
        self.adj[v] |= bit(u);
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u] &= !bit(v);
        self.adj[v] &= !bit(u);
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges of the subgraph induced by `within`.
    pub fn edge_count_in(&self, within: VertexMask) -> usize {
        members(within)
            .map(|v| self.degree_in(v, within))
            .sum::<usize>()
            / 2
    }

    /// All edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in members(self.adj[u] & !full_mask(u + 1)) {
                out.push((u, v));
            }
        }
        out
    }

    pub fn min_degree(&self) -> Option<usize> {
        (0..self.n).map(|v| self.degree(v)).min()
    }

    /// Relabels vertex `v` to `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut g = Graph::empty(self.n);
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v]);
        }
        g
    }

    /// Subgraph induced by `within`, relabeled to `0..m` in ascending order
    /// of the original ids, which are returned alongside.
    pub fn induced(&self, within: VertexMask) -> (Graph, Vec<usize>) {
        let within = within & self.vertex_mask();
        let ids: Vec<usize> = members(within).collect();
        let mut pos = vec![usize::MAX; self.n];
        for (i, &v) in ids.iter().enumerate() {
            pos[v] = i;
        }
        let mut g = Graph::empty(ids.len());
        for (i, &v) in ids.iter().enumerate() {
            for u in members(self.adj[v] & within) {
                g.adj[i] |= bit(pos[u]);
            }
        }
        (g, ids)
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph::empty(self.n);
        for v in 0..self.n {
            g.adj[v] = !self.adj[v] & self.vertex_mask() & !bit(v);
        }
        g
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || components_in(self, self.vertex_mask()).len() == 1
    }
}

/// Color classes are compared by integer equality only; there is no bound on
/// how many colors a coloring may use.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Coloring(pub Vec<u32>);

impl Coloring {
    pub fn new(colors: Vec<u32>) -> Self {
        Coloring(colors)
    }

    /// Every vertex gets its own color.
    pub fn distinct(n: usize) -> Self {
        Coloring((0..n as u32).collect())
    }

    /// First-fit coloring in ascending vertex order.
    pub fn greedy(g: &Graph) -> Self {
        Self::greedy_in_order(g, &(0..g.n()).collect::<Vec<_>>())
    }

    /// First-fit coloring visiting vertices in `order`.
    pub fn greedy_in_order(g: &Graph, order: &[usize]) -> Self {
        let mut colors: Vec<Option<u32>> = vec![None; g.n()];
        for &v in order {
            let used: Vec<u32> = members(g.neighbors(v)).filter_map(|u| colors[u]).collect();
            let c = (0..).find(|c| !used.contains(c)).unwrap();
            colors[v] = Some(c);
        }
        Coloring(colors.into_iter().map(|c| c.unwrap_or(0)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn color(&self, v: usize) -> u32 {
        self.0[v]
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn distinct_colors(&self, vertices: impl IntoIterator<Item = usize>) -> usize {
        let mut seen: Vec<u32> = vertices.into_iter().map(|v| self.0[v]).collect();
        seen.sort_unstable();
        seen.dedup();
        seen.len()
    }
}

/// First monochromatic edge, if any.
pub fn first_violation(g: &Graph, c: &Coloring) -> Result<Option<(usize, usize)>> {
    if c.len() != g.n() {
        return Err(Error::Argument(format!(
            "coloring has {} entries for a graph on {} vertices",
            c.len(),
            g.n()
        )));
    }
    Ok(g.edges().into_iter().find(|&(u, v)| c.color(u) == c.color(v)))
}

pub fn is_proper(g: &Graph, c: &Coloring) -> Result<bool> {
    Ok(first_violation(g, c)?.is_none())
}

/// A graph together with a proper coloring of it.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ColoredGraph {
    graph: Graph,
    coloring: Coloring,
}

impl ColoredGraph {
    pub fn new(graph: Graph, coloring: Coloring) -> Result<Self> {
        if let Some((u, v)) = first_violation(&graph, &coloring)? {
            return Err(Error::ImproperColoring(u, v));
        }
        Ok(ColoredGraph { graph, coloring })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn coloring(&self) -> &Coloring {
        &self.coloring
    }

    #[inline]
    pub fn color(&self, v: usize) -> u32 {
        self.coloring.color(v)
    }
}

/// Vertex deletions performed by a degree reduction, in order.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub struct RemovalTrace {
    pub removals: Vec<Removal>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Removal {
    pub vertex: usize,
    pub degree: usize,
}

impl RemovalTrace {
    pub fn len(&self) -> usize {
        self.removals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.removals.is_empty()
    }

    pub fn removed_mask(&self) -> VertexMask {
        self.removals.iter().fold(0, |m, r| m | bit(r.vertex))
    }
}

/// Result of [`k_core`]: the core relabeled to `0..m`, its original vertex
/// ids, and the deletions that produced it.
#[derive(Clone, Debug)]
pub struct KCore {
    pub graph: Graph,
    pub vertices: Vec<usize>,
    pub trace: RemovalTrace,
}

/// Repeatedly deletes the smallest vertex whose degree inside `alive` is
/// below `k`. Returns the surviving mask and the deletions.
pub fn k_core_in(g: &Graph, alive: VertexMask, k: usize) -> (VertexMask, RemovalTrace) {
    min_degree_reduce(g, alive, |deg| deg < k)
}

/// Generic peeling: deletes the smallest live vertex whose degree satisfies
/// `too_small` until none remains.
pub(crate) fn min_degree_reduce(
    g: &Graph,
    mut alive: VertexMask,
    too_small: impl Fn(usize) -> bool,
) -> (VertexMask, RemovalTrace) {
    let mut trace = RemovalTrace::default();
    'outer: loop {
        for v in members(alive) {
            let degree = g.degree_in(v, alive);
            if too_small(degree) {
                alive &= !bit(v);
                trace.removals.push(Removal { vertex: v, degree });
                continue 'outer;
            }
        }
        break;
    }
    (alive, trace)
}

/// Maximal subgraph of minimum degree at least `k`.
pub fn k_core(g: &Graph, k: usize) -> KCore {
    let (alive, trace) = k_core_in(g, g.vertex_mask(), k);
    let (graph, vertices) = g.induced(alive);
    KCore {
        graph,
        vertices,
        trace,
    }
}

/// Connected components of the subgraph induced by `within`, ordered by
/// smallest member.
pub fn components_in(g: &Graph, within: VertexMask) -> Vec<VertexMask> {
    let mut left = within;
    let mut out = Vec::new();
    while left != 0 {
        let start = left.trailing_zeros() as usize;
        let mut comp = bit(start);
        let mut frontier = comp;
        while frontier != 0 {
            let mut next = 0;
            for v in members(frontier) {
                next |= g.neighbors(v) & within;
            }
            frontier = next & !comp;
            comp |= next;
        }
        left &= !comp;
        out.push(comp);
    }
    out
}

pub fn connected_components(g: &Graph) -> Vec<Vec<usize>> {
    components_in(g, g.vertex_mask())
        .into_iter()
        .map(|c| members(c).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn proper_colorings() {
        let k3 = Graph::complete(3);
        assert!(is_proper(&k3, &Coloring::new(vec![0, 1, 2])).unwrap());
        assert!(!is_proper(&k3, &Coloring::new(vec![0, 0, 1])).unwrap());
        let c6 = Graph::cycle(6);
        assert!(is_proper(&c6, &Coloring::new(vec![0, 1, 2, 0, 1, 2])).unwrap());
        assert!(is_proper(&k3, &Coloring::new(vec![0, 1])).is_err());
    }

    #[test]
    fn improper_colored_graph_names_the_edge() {
        let err = ColoredGraph::new(Graph::complete(3), Coloring::new(vec![0, 0, 1])).unwrap_err();
        assert!(matches!(err, Error::ImproperColoring(0, 1)));
    }

    #[test]
    fn k_core_path_cascades() {
        let core = k_core(&Graph::path(3), 2);
        assert_eq!(core.graph.n(), 0);
        assert_eq!(core.trace.len(), 4);
    }

    #[test]
    fn k_core_keeps_k5() {
        let core = k_core(&Graph::complete(5), 2);
        assert_eq!(core.graph, Graph::complete(5));
        assert!(core.trace.is_empty());
    }

    #[test]
    fn k_core_drops_pendant() {
        let mut g = Graph::complete(5).disjoint_union(&Graph::empty(1));
        g.add_edge(2, 5);
        let core = k_core(&g, 3);
        assert_eq!(core.graph, Graph::complete(5));
        assert_eq!(core.vertices, vec![0, 1, 2, 3, 4]);
        assert_eq!(core.trace.removals, vec![Removal { vertex: 5, degree: 1 }]);
    }

    #[test]
    fn components() {
        let two_triangles = Graph::complete(3).disjoint_union(&Graph::complete(3));
        assert_eq!(
            connected_components(&two_triangles),
            vec![vec![0, 1, 2], vec![3, 4, 5]]
        );
        assert_eq!(connected_components(&Graph::complete(5)).len(), 1);
        assert_eq!(
            connected_components(&Graph::empty(3)),
            vec![vec![0], vec![1], vec![2]]
        );
    }

    #[test]
    fn induced_relabels_in_order() {
        let (h, ids) = Graph::cycle(5).induced(0b10110);
        assert_eq!(ids, vec![1, 2, 4]);
        assert_eq!(h.edges(), vec![(0, 1)]);
    }

    #[test]
    fn adjacency_validation() {
        assert!(Graph::from_adjacency(vec![0b10, 0b00]).is_err());
        assert!(Graph::from_adjacency(vec![0b01]).is_err());
        assert!(Graph::from_adjacency(vec![0b10, 0b01]).is_ok());
    }
}
