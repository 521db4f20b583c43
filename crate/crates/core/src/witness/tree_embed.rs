use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{bit, k_core_in, members, ColoredGraph, RemovalTrace};
use crate::search::paths::PathWitness;
use crate::search::tree::{odd_leaf_path, LeafProfile, TreePattern};
use crate::search::validate::validate_embedding;
use crate::witness::extract::{extract_in, ExtractionTrace};

/// A copy of a tree whose leaf images carry at least two colors.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct TreeEmbedding {
    /// `images[t]` is the host vertex of tree vertex `t`.
    pub images: Vec<usize>,
    /// Odd leaf-to-leaf path inside the tree that was embedded first.
    pub odd_path: PathWitness,
    /// Its image in the host graph.
    pub host_path: PathWitness,
    pub reduction: RemovalTrace,
    pub trace: Option<ExtractionTrace>,
}

impl TreeEmbedding {
    pub fn leaf_images(&self, t: &TreePattern) -> Vec<usize> {
        members(t.leaves()).map(|v| self.images[v]).collect()
    }
}

pub fn embed_tree_bichromatic(cg: &ColoredGraph, t: &TreePattern) -> Result<TreeEmbedding> {
    let g = cg.graph();
    let k = t.k();
    if t.profile() != LeafProfile::MixedSides {
        return Err(Error::Precondition(format!(
            "{} has all leaves on one side of its bipartition",
            t.describe()
        )));
    }
    let n = g.n();
    let e = g.edge_count();
    if e <= (k - 1) * n {
        return Err(Error::Precondition(format!(
            "{e} edges on {n} vertices is not more than (k - 1) * n = {}",
            (k - 1) * n
        )));
    }

    // Deleting a vertex of degree below k costs at most k - 1 edges.
    let (core, reduction) = k_core_in(g, g.vertex_mask(), k);
    let odd_path = odd_leaf_path(t)?;
    let l = (odd_path.len() - 1) / 2;

    let (host_path, trace) = if l == 0 {
        let (u, v) = members(core)
            .flat_map(|u| members(g.neighbors(u) & core).map(move |v| (u, v)))
            .next()
            .ok_or_else(|| Error::invariant("core is empty despite the density bound"))?;
        (PathWitness::new(vec![u, v]), None)
    } else {
        let (p, trace) = extract_in(cg, core, l)?;
        (p, Some(trace))
    };

    let mut images = vec![usize::MAX; t.vertex_count()];
    let mut used = 0;
    let mut queue = std::collections::VecDeque::new();
    for (&tv, &hv) in odd_path.vertices.iter().zip(&host_path.vertices) {
        images[tv] = hv;
        used |= bit(hv);
        queue.push_back(tv);
    }
    while let Some(tv) = queue.pop_front() {
        for child in members(t.graph().neighbors(tv)) {
            if images[child] != usize::MAX {
                continue;
            }
            // The core has minimum degree k and the tree has k + 1 vertices,
            // so a free neighbor always remains.
            let free = g.neighbors(images[tv]) & core & !used;
            let Some(x) = members(free).next() else {
                return Err(Error::invariant(format!(
                    "no free neighbor to extend tree vertex {tv}"
                )));
            };
            images[child] = x;
            used |= bit(x);
            queue.push_back(child);
        }
    }

    let out = TreeEmbedding {
        images,
        odd_path,
        host_path,
        reduction,
        trace,
    };
    validate_embedding(g, t, &out.images).map_err(Error::invariant)?;
    if cg.coloring().distinct_colors(out.leaf_images(t)) < 2 {
        return Err(Error::invariant("embedded leaves are monochromatic"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Coloring, Graph};

    #[test]
    fn double_star_in_k8() {
        let cg = ColoredGraph::new(Graph::complete(8), Coloring::distinct(8)).unwrap();
        let t = TreePattern::double_star(1, 2);
        let emb = embed_tree_bichromatic(&cg, &t).unwrap();
        validate_embedding(cg.graph(), &t, &emb.images).unwrap();
    }

    #[test]
    fn path_in_k6() {
        let cg = ColoredGraph::new(Graph::complete(6), Coloring::distinct(6)).unwrap();
        let t = TreePattern::path(3);
        let emb = embed_tree_bichromatic(&cg, &t).unwrap();
        let leaves = emb.leaf_images(&t);
        assert_ne!(cg.color(leaves[0]), cg.color(leaves[1]));
    }

    #[test]
    fn single_edge_and_spider() {
        let cg = ColoredGraph::new(Graph::path(1), Coloring::distinct(2)).unwrap();
        embed_tree_bichromatic(&cg, &TreePattern::path(1)).unwrap();
        let cg = ColoredGraph::new(Graph::complete(6), Coloring::distinct(6)).unwrap();
        embed_tree_bichromatic(&cg, &TreePattern::spider(&[1, 2])).unwrap();
    }

    #[test]
    fn rejects_same_side_trees_and_sparse_hosts() {
        let cg = ColoredGraph::new(Graph::complete(6), Coloring::distinct(6)).unwrap();
        assert!(matches!(
            embed_tree_bichromatic(&cg, &TreePattern::star(3)),
            Err(Error::Precondition(_))
        ));
        let c6 = ColoredGraph::new(Graph::cycle(6), Coloring::new(vec![0, 1, 2, 0, 1, 2])).unwrap();
        assert!(embed_tree_bichromatic(&c6, &TreePattern::path(3)).is_err());
    }
}
