use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{bit, members, min_degree_reduce, ColoredGraph, RemovalTrace, VertexMask};
use crate::search::double_star::{find_double_star_in, DoubleStarWitness};
use crate::search::embed::{for_each_embedding, CopyMode};
use crate::search::tree::TreePattern;
use crate::search::validate::validate_double_star;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DoubleStarRoute {
    /// The first plain copy already had leaves of two colors.
    Direct,
    /// Re-centered on `{v, w}` for a leaf `w` of `v` not adjacent to `u`.
    PivotNonAdjacent,
    /// `u` is adjacent to every leaf of `v`; re-centered on `{u, x}`.
    PivotDominated,
    /// Exhaustive search over copies.
    Fallback,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct DoubleStarOutcome {
    pub witness: DoubleStarWitness,
    pub route: DoubleStarRoute,
    /// The plain copy the pivot started from, if one was found.
    pub initial: Option<DoubleStarWitness>,
    pub reduction: RemovalTrace,
    pub fallback_reason: Option<String>,
}

fn leaf_colors(cg: &ColoredGraph, w: &DoubleStarWitness) -> usize {
    cg.coloring().distinct_colors(w.leaves())
}

fn smallest(mask: VertexMask, count: usize) -> Vec<usize> {
    members(mask).take(count).collect()
}

/// Rebuilds a non-monochromatic copy from a monochromatic one, with `a <= b`.
fn pivot(
    cg: &ColoredGraph,
    within: VertexMask,
    w: &DoubleStarWitness,
    a: usize,
) -> Option<(DoubleStarWitness, DoubleStarRoute)> {
    let g = cg.graph();
    let (u, v) = (w.u, w.v);
    let b_mask = crate::graph::mask_of(&w.b_leaves);
    if let Some(x) = members(b_mask & !g.neighbors(u)).next() {
        // v keeps b leaves: u replaces x. x takes a fresh leaves; none of them
        // lie in the independent leaf set, so they avoid the new b-side.
        let new_b = (b_mask & !bit(x)) | bit(u);
        let pool = g.neighbors(x) & within & !bit(v) & !new_b;
        let c = smallest(pool, a);
        if c.len() < a {
            return None;
        }
        let out = DoubleStarWitness {
            u: x,
            v,
            a_leaves: c,
            b_leaves: members(new_b).collect(),
        };
        return Some((out, DoubleStarRoute::PivotNonAdjacent));
    }
    // u sees all of B. Re-center on {u, x}: u keeps B - x plus one a-leaf y,
    // x takes a neighbors other than u.
    let x = *w.b_leaves.first()?;
    let y = *w.a_leaves.first()?;
    let new_b = (b_mask & !bit(x)) | bit(y);
    let pool = g.neighbors(x) & within & !bit(u) & !new_b;
    let c = smallest(pool, a);
    if c.len() < a {
        return None;
    }
    let out = DoubleStarWitness {
        u: x,
        v: u,
        a_leaves: c,
        b_leaves: members(new_b).collect(),
    };
    Some((out, DoubleStarRoute::PivotDominated))
}

/// Exhaustive search for a copy of `S_{a,b}` with leaves of two colors.
fn exhaustive(cg: &ColoredGraph, a: usize, b: usize) -> Option<DoubleStarWitness> {
    let g = cg.graph();
    let t = TreePattern::double_star(a, b);
    let mut found = None;
    for_each_embedding(g, g.vertex_mask(), &t, CopyMode::Subgraph, |images| {
        let leaves = &images[2..];
        if cg.coloring().distinct_colors(leaves.iter().copied()) >= 2 {
            let mut a_leaves = leaves[..a].to_vec();
            let mut b_leaves = leaves[a..].to_vec();
            a_leaves.sort_unstable();
            b_leaves.sort_unstable();
            found = Some(DoubleStarWitness {
                u: images[0],
                v: images[1],
                a_leaves,
                b_leaves,
            });
            return false;
        }
        true
    });
    found
}

pub fn find_double_star_bichromatic(
    cg: &ColoredGraph,
    a: usize,
    b: usize,
) -> Result<DoubleStarOutcome> {
    if a == 0 || b == 0 {
        return Err(Error::Argument("a and b must be at least 1".into()));
    }
    if a > b {
        let mut out = find_double_star_bichromatic(cg, b, a)?;
        out.witness = out.witness.swapped();
        out.initial = out.initial.map(DoubleStarWitness::swapped);
        return Ok(out);
    }
    let g = cg.graph();
    let (n, e) = (g.n(), g.edge_count());
    if 2 * e <= (a + b) * n {
        return Err(Error::Precondition(format!(
            "{e} edges on {n} vertices is not more than (a + b) / 2 * n = {}",
            (a + b) as f64 * n as f64 / 2.0
        )));
    }

    // Deleting a vertex of degree at most (a + b) / 2 keeps the density.
    let (core, reduction) = min_degree_reduce(g, g.vertex_mask(), |d| 2 * d <= a + b);
    let initial = find_double_star_in(g, core, a, b);

    let mut route = None;
    let mut fallback_reason = None;
    if let Some(w) = &initial {
        if leaf_colors(cg, w) >= 2 {
            route = Some((w.clone(), DoubleStarRoute::Direct));
        } else {
            match pivot(cg, core, w, a) {
                Some((p, r)) if leaf_colors(cg, &p) >= 2 => route = Some((p, r)),
                Some(_) => fallback_reason = Some("pivot left the leaves monochromatic".into()),
                None => fallback_reason = Some("pivot center lacks free neighbors".into()),
            }
        }
    } else {
        fallback_reason = Some("no plain copy in the reduced graph".into());
    }
    let (witness, route) = match route {
        Some(found) => found,
        None => match exhaustive(cg, a, b) {
            Some(w) => (w, DoubleStarRoute::Fallback),
            None => {
                return Err(Error::invariant(format!(
                    "no S_{{{a},{b}}} with two leaf colors in a graph above the bound"
                )))
            }
        },
    };

    validate_double_star(g, &witness, a, b).map_err(Error::invariant)?;
    if leaf_colors(cg, &witness) < 2 {
        return Err(Error::invariant("double star leaves are monochromatic"));
    }
    Ok(DoubleStarOutcome {
        witness,
        route,
        initial,
        reduction,
        fallback_reason,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Coloring, Graph};

    #[test]
    fn k6_two_two() {
        let cg = ColoredGraph::new(Graph::complete(6), Coloring::distinct(6)).unwrap();
        let out = find_double_star_bichromatic(&cg, 2, 2).unwrap();
        assert_eq!(out.route, DoubleStarRoute::Direct);
        assert_eq!(leaf_colors(&cg, &out.witness), 4);
    }

    #[test]
    fn pivot_dominated() {
        // 0 and 1 both see 2, 3, 4; the first copy uses leaves 2 and 3.
        let g = Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]).unwrap();
        let cg = ColoredGraph::new(g, Coloring::new(vec![0, 1, 2, 2, 2])).unwrap();
        let out = find_double_star_bichromatic(&cg, 1, 1).unwrap();
        assert_eq!(out.route, DoubleStarRoute::PivotDominated);
        assert_eq!(out.witness.u, 3);
        assert_eq!(out.witness.a_leaves, vec![1]);
        assert_eq!(out.witness.b_leaves, vec![2]);
    }

    #[test]
    fn pivot_non_adjacent() {
        let g = Graph::from_edges(5, &[(0, 1), (0, 2), (1, 3), (3, 4), (0, 4), (2, 4)]).unwrap();
        let cg = ColoredGraph::new(g, Coloring::new(vec![0, 1, 2, 2, 1])).unwrap();
        let out = find_double_star_bichromatic(&cg, 1, 1).unwrap();
        assert_eq!(out.route, DoubleStarRoute::PivotNonAdjacent);
        assert_eq!(out.witness.u, 3);
        assert_eq!(out.witness.v, 1);
    }

    #[test]
    fn swaps_when_a_exceeds_b() {
        let cg = ColoredGraph::new(Graph::complete(7), Coloring::distinct(7)).unwrap();
        let out = find_double_star_bichromatic(&cg, 3, 1).unwrap();
        validate_double_star(cg.graph(), &out.witness, 3, 1).unwrap();
    }

    #[test]
    fn rejects_sparse_hosts() {
        let cg = ColoredGraph::new(Graph::cycle(6), Coloring::new(vec![0, 1, 0, 1, 0, 1])).unwrap();
        assert!(matches!(
            find_double_star_bichromatic(&cg, 1, 1),
            Err(Error::Precondition(_))
        ));
    }
}
