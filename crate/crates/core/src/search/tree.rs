use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{bit, members, Graph, VertexMask};
use crate::search::paths::PathWitness;

/// Whether the unique proper 2-coloring of a tree puts all leaves on one side.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum LeafProfile {
    AllSameSide,
    MixedSides,
}

/// A tree with `k` edges on vertices `0..=k`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TreePattern {
    k: usize,
    edges: Vec<(usize, usize)>,
    graph: Graph,
    leaves: VertexMask,
    /// `side[v]` is the color of `v` in the 2-coloring with vertex 0 on side false.
    side: Vec<bool>,
    profile: LeafProfile,
}

impl TreePattern {
    pub fn new(k: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if k == 0 {
            return Err(Error::Argument("a tree pattern needs at least one edge".into()));
        }
        if edges.len() != k {
            return Err(Error::Argument(format!(
                "expected {k} edges, found {}",
                edges.len()
            )));
        }
        let graph = Graph::from_edges(k + 1, &edges)?;
        if graph.edge_count() != k {
            return Err(Error::Argument("repeated edge in tree".into()));
        }
        if !graph.is_connected() {
            return Err(Error::Argument("tree edges do not form a connected graph".into()));
        }
        let leaves = (0..=k)
            .filter(|&v| graph.degree(v) == 1)
            .fold(0, |m, v| m | bit(v));
        let dist = bfs_distances(&graph, 0);
        let side: Vec<bool> = dist.iter().map(|d| d % 2 == 1).collect();
        let mut leaf_sides = members(leaves).map(|v| side[v]);
        let first = leaf_sides.next().unwrap();
        let profile = if leaf_sides.all(|s| s == first) {
            LeafProfile::AllSameSide
        } else {
            LeafProfile::MixedSides
        };
        Ok(TreePattern {
            k,
            edges,
            graph,
            leaves,
            side,
            profile,
        })
    }

    /// Path with `len` edges.
    pub fn path(len: usize) -> Self {
        Self::new(len, (0..len).map(|v| (v, v + 1)).collect()).expect("path is a tree")
    }

    /// Star `K_{1,leaves}` centered at 0.
    pub fn star(leaves: usize) -> Self {
        Self::new(leaves, (1..=leaves).map(|v| (0, v)).collect()).expect("star is a tree")
    }

    /// Double star `S_{a,b}`: centers 0 and 1, leaves `2..2+a` on 0 and the
    /// remaining `b` on 1.
    pub fn double_star(a: usize, b: usize) -> Self {
        let mut edges = vec![(0, 1)];
        edges.extend((0..a).map(|i| (0, 2 + i)));
        edges.extend((0..b).map(|i| (1, 2 + a + i)));
        Self::new(a + b + 1, edges).expect("double star is a tree")
    }

    /// Spider with the given leg lengths joined at center 0.
    pub fn spider(legs: &[usize]) -> Self {
        let mut edges = Vec::new();
        let mut next = 1;
        for &leg in legs {
            let mut prev = 0;
            for _ in 0..leg {
                edges.push((prev, next));
                prev = next;
                next += 1;
            }
        }
        Self::new(edges.len(), edges).expect("spider is a tree")
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn vertex_count(&self) -> usize {
        self.k + 1
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn leaves(&self) -> VertexMask {
        self.leaves
    }

    pub fn leaf_count(&self) -> usize {
        self.leaves.count_ones() as usize
    }

    pub fn side(&self, v: usize) -> bool {
        self.side[v]
    }

    pub fn profile(&self) -> LeafProfile {
        self.profile
    }

    /// `Some(len)` when the tree is a path.
    pub fn as_path(&self) -> Option<usize> {
        (0..=self.k)
            .all(|v| self.graph.degree(v) <= 2)
            .then_some(self.k)
    }

    /// `Some((a, b))` with `a <= b` when the tree is a double star.
    pub fn as_double_star(&self) -> Option<(usize, usize)> {
        let centers: Vec<usize> = (0..=self.k).filter(|&v| self.graph.degree(v) > 1).collect();
        if centers.len() != 2 || !self.graph.has_edge(centers[0], centers[1]) {
            return None;
        }
        let a = self.graph.degree(centers[0]) - 1;
        let b = self.graph.degree(centers[1]) - 1;
        Some((a.min(b), a.max(b)))
    }

    /// Short human-readable name, e.g. `P_3`, `K_1,4`, `S_1,2`.
    pub fn describe(&self) -> String {
        if let Some(len) = self.as_path() {
            return format!("P_{len}");
        }
        let centers = (0..=self.k).filter(|&v| self.graph.degree(v) > 1).count();
        if centers == 1 {
            return format!("K_1,{}", self.k);
        }
        if let Some((a, b)) = self.as_double_star() {
            return format!("S_{a},{b}");
        }
        let edges: Vec<String> = self.edges.iter().map(|(u, v)| format!("{u}-{v}")).collect();
        format!("T[{}]", edges.join(","))
    }
}

impl fmt::Display for TreePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

fn bfs_distances(g: &Graph, root: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; g.n()];
    dist[root] = 0;
    let mut queue = VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        for u in members(g.neighbors(v)) {
            if dist[u] == usize::MAX {
                dist[u] = dist[v] + 1;
                queue.push_back(u);
            }
        }
    }
    dist
}

fn tree_path(g: &Graph, from: usize, to: usize) -> Vec<usize> {
    let mut parent = vec![usize::MAX; g.n()];
    parent[from] = from;
    let mut queue = VecDeque::from([from]);
    while let Some(v) = queue.pop_front() {
        for u in members(g.neighbors(v)) {
            if parent[u] == usize::MAX {
                parent[u] = v;
                queue.push_back(u);
            }
        }
    }
    let mut path = vec![to];
    while *path.last().unwrap() != from {
        path.push(parent[*path.last().unwrap()]);
    }
    path.reverse();
    path
}

pub fn classify_tree(t: &TreePattern) -> LeafProfile {
    t.profile()
}

/// A leaf-to-leaf path of odd length inside the tree: the first leaf pair
/// (ascending) at odd distance.
pub fn odd_leaf_path(t: &TreePattern) -> Result<PathWitness> {
    let leaves: Vec<usize> = members(t.leaves()).collect();
    for (i, &a) in leaves.iter().enumerate() {
        for &b in &leaves[i + 1..] {
            if t.side(a) != t.side(b) {
                return Ok(PathWitness::new(tree_path(t.graph(), a, b)));
            }
        }
    }
    Err(Error::Precondition(format!(
        "{} has all leaves on one side of its bipartition",
        t.describe()
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classification() {
        assert_eq!(classify_tree(&TreePattern::path(3)), LeafProfile::MixedSides);
        assert_eq!(classify_tree(&TreePattern::path(4)), LeafProfile::AllSameSide);
        assert_eq!(classify_tree(&TreePattern::path(1)), LeafProfile::MixedSides);
        for k in 2..6 {
            assert_eq!(classify_tree(&TreePattern::star(k)), LeafProfile::AllSameSide);
        }
        assert_eq!(
            classify_tree(&TreePattern::double_star(1, 2)),
            LeafProfile::MixedSides
        );
    }

    #[test]
    fn odd_paths() {
        let p3 = odd_leaf_path(&TreePattern::path(3)).unwrap();
        assert_eq!(p3.vertices, vec![0, 1, 2, 3]);
        let ds = odd_leaf_path(&TreePattern::double_star(1, 2)).unwrap();
        assert_eq!(ds.vertices, vec![2, 0, 1, 3]);
        // Legs 1, 1, 2: leaves 1, 2, 4; the only odd pair is (1, 4).
        let spider = odd_leaf_path(&TreePattern::spider(&[1, 1, 2])).unwrap();
        assert_eq!(spider.vertices, vec![1, 0, 3, 4]);
        assert_eq!(spider.len(), 3);
        assert!(matches!(
            odd_leaf_path(&TreePattern::star(3)),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn rejects_non_trees() {
        assert!(TreePattern::new(3, vec![(0, 1), (1, 2), (2, 0)]).is_err());
        assert!(TreePattern::new(2, vec![(0, 1)]).is_err());
        assert!(TreePattern::new(2, vec![(0, 1), (0, 1)]).is_err());
        assert!(TreePattern::new(0, vec![]).is_err());
    }

    #[test]
    fn names() {
        assert_eq!(TreePattern::path(3).describe(), "P_3");
        assert_eq!(TreePattern::star(4).describe(), "K_1,4");
        assert_eq!(TreePattern::double_star(2, 1).describe(), "S_1,2");
        assert_eq!(TreePattern::star(2).describe(), "P_2");
    }
}
