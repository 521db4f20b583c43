use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::graph::{bit, members, Graph, VertexMask};
use crate::search::tree::TreePattern;

/// Host vertices that the leaves of one copy of a tree land on.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(into = "Vec<usize>", try_from = "Vec<usize>")]
pub struct LeafImageSet(pub VertexMask);

impl LeafImageSet {
    pub fn mask(&self) -> VertexMask {
        self.0
    }

    pub fn members(&self) -> Vec<usize> {
        members(self.0).collect()
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0 & bit(v) != 0
    }
}

impl From<LeafImageSet> for Vec<usize> {
    fn from(s: LeafImageSet) -> Self {
        s.members()
    }
}

impl TryFrom<Vec<usize>> for LeafImageSet {
    type Error = String;

    fn try_from(v: Vec<usize>) -> Result<Self, Self::Error> {
        let mut mask: VertexMask = 0;
        for x in v {
            if x >= crate::graph::MASK_BITS {
                return Err(format!("vertex {x} out of range"));
            }
            mask |= bit(x);
        }
        Ok(LeafImageSet(mask))
    }
}

/// What counts as a copy of a tree in a host graph.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CopyMode {
    /// Any subgraph isomorphic to the tree; extra host edges are allowed.
    #[default]
    Subgraph,
    /// Experimental: the copy's vertex set must induce exactly the tree.
    Induced,
}

/// Embedding order: breadth-first from a maximum-degree vertex, so every
/// vertex after the first has its parent already placed.
struct Plan {
    order: Vec<usize>,
    parent: Vec<usize>,
    degree: Vec<usize>,
    leaves: VertexMask,
}

impl Plan {
    fn new(t: &TreePattern) -> Self {
        let g = t.graph();
        let root = (0..t.vertex_count())
            .max_by_key(|&v| (g.degree(v), std::cmp::Reverse(v)))
            .unwrap();
        let mut order = vec![root];
        let mut parent = vec![usize::MAX];
        let mut seen = bit(root);
        let mut i = 0;
        while i < order.len() {
            let v = order[i];
            for u in members(g.neighbors(v) & !seen) {
                seen |= bit(u);
                order.push(u);
                parent.push(i);
            }
            i += 1;
        }
        let degree = order.iter().map(|&v| g.degree(v)).collect();
        let leaves = order
            .iter()
            .enumerate()
            .filter(|&(_, &v)| t.leaves() & bit(v) != 0)
            .fold(0, |m, (i, _)| m | bit(i));
        Plan {
            order,
            parent,
            degree,
            leaves,
        }
    }
}

struct Embedder<'a, F: FnMut(&[usize]) -> bool> {
    g: &'a Graph,
    within: VertexMask,
    plan: Plan,
    mode: CopyMode,
    images: Vec<usize>,
    visit: F,
}

impl<F: FnMut(&[usize]) -> bool> Embedder<'_, F> {
    /// Returns false once `visit` asks to stop.
    fn go(&mut self, used: VertexMask) -> bool {
        let i = self.images.len();
        if i == self.plan.order.len() {
            return (self.visit)(&self.images);
        }
        let pool = if i == 0 {
            self.within
        } else {
            self.g.neighbors(self.images[self.plan.parent[i]]) & self.within & !used
        };
        for x in members(pool) {
            if self.g.degree_in(x, self.within) < self.plan.degree[i] {
                continue;
            }
            if self.mode == CopyMode::Induced
                && i > 0
                && self.g.neighbors(x) & used != bit(self.images[self.plan.parent[i]])
            {
                continue;
            }
            self.images.push(x);
            let go_on = self.go(used | bit(x));
            self.images.pop();
            if !go_on {
                return false;
            }
        }
        true
    }
}

/// Calls `visit` with the images of every embedding of `t` into the
/// subgraph induced by `within`, indexed by tree vertex. Stops early when
/// `visit` returns false.
pub fn for_each_embedding(
    g: &Graph,
    within: VertexMask,
    t: &TreePattern,
    mode: CopyMode,
    mut visit: impl FnMut(&[usize]) -> bool,
) {
    let plan = Plan::new(t);
    let order = plan.order.clone();
    let mut by_tree_vertex = vec![0usize; t.vertex_count()];
    let mut e = Embedder {
        g,
        within,
        plan,
        mode,
        images: Vec::with_capacity(t.vertex_count()),
        visit: |images: &[usize]| {
            for (pos, &x) in images.iter().enumerate() {
                by_tree_vertex[order[pos]] = x;
            }
            visit(&by_tree_vertex)
        },
    };
    e.go(0);
}

/// Distinct leaf-image sets over all copies of `t` in `g`, in discovery order.
pub fn leaf_image_sets_with(
    g: &Graph,
    within: VertexMask,
    t: &TreePattern,
    mode: CopyMode,
) -> Vec<LeafImageSet> {
    if t.vertex_count() > within.count_ones() as usize {
        return Vec::new();
    }
    let plan = Plan::new(t);
    let leaves = plan.leaves;
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut e = Embedder {
        g,
        within,
        plan,
        mode,
        images: Vec::with_capacity(t.vertex_count()),
        visit: |images: &[usize]| {
            let set = members(leaves).fold(0, |m, i| m | bit(images[i]));
            if seen.insert(set) {
                out.push(LeafImageSet(set));
            }
            true
        },
    };
    e.go(0);
    out
}

pub fn enumerate_leaf_image_sets(g: &Graph, t: &TreePattern) -> Vec<LeafImageSet> {
    leaf_image_sets_with(g, g.vertex_mask(), t, CopyMode::Subgraph)
}

/// First embedding of `t`, as host vertices indexed by tree vertex.
pub fn find_embedding(g: &Graph, t: &TreePattern, mode: CopyMode) -> Option<Vec<usize>> {
    let mut found = None;
    for_each_embedding(g, g.vertex_mask(), t, mode, |images| {
        found = Some(images.to_vec());
        false
    });
    found
}

pub fn contains_tree(g: &Graph, t: &TreePattern) -> bool {
    find_embedding(g, t, CopyMode::Subgraph).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sets(v: Vec<LeafImageSet>) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = v.into_iter().map(|s| s.members()).collect();
        out.sort();
        out
    }

    #[test]
    fn examples() {
        let p = enumerate_leaf_image_sets(&Graph::path(3), &TreePattern::path(3));
        assert_eq!(sets(p), vec![vec![0, 3]]);
        let star = enumerate_leaf_image_sets(&Graph::complete(4), &TreePattern::star(3));
        assert_eq!(
            sets(star),
            vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]]
        );
        assert!(enumerate_leaf_image_sets(&Graph::complete(3), &TreePattern::path(3)).is_empty());
    }

    #[test]
    fn embeddings_are_copies() {
        let g = Graph::complete(5);
        let t = TreePattern::double_star(1, 2);
        let mut count = 0;
        for_each_embedding(&g, g.vertex_mask(), &t, CopyMode::Subgraph, |images| {
            for &(a, b) in t.edges() {
                assert!(g.has_edge(images[a], images[b]));
            }
            count += 1;
            true
        });
        // Injective maps of 5 tree vertices onto K_5.
        assert_eq!(count, 120);
    }

    #[test]
    fn induced_mode_rejects_extra_edges() {
        let g = Graph::complete(4);
        assert!(contains_tree(&g, &TreePattern::path(3)));
        assert!(find_embedding(&g, &TreePattern::path(3), CopyMode::Induced).is_none());
        assert!(find_embedding(&Graph::cycle(5), &TreePattern::path(3), CopyMode::Induced).is_some());
    }
}
