use serde::{Deserialize, Serialize};

use crate::graph::{bit, members, Graph, VertexMask};

/// A copy of `S_{a,b}`: center `u` with leaves `a_leaves`, center `v` with
/// leaves `b_leaves`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct DoubleStarWitness {
    pub u: usize,
    pub v: usize,
    pub a_leaves: Vec<usize>,
    pub b_leaves: Vec<usize>,
}

impl DoubleStarWitness {
    pub fn leaves(&self) -> impl Iterator<Item = usize> + '_ {
        self.a_leaves.iter().chain(&self.b_leaves).copied()
    }

    pub fn leaf_mask(&self) -> VertexMask {
        self.leaves().fold(0, |m, x| m | bit(x))
    }

    /// The same copy read as `S_{b,a}`.
    pub fn swapped(self) -> Self {
        DoubleStarWitness {
            u: self.v,
            v: self.u,
            a_leaves: self.b_leaves,
            b_leaves: self.a_leaves,
        }
    }
}

fn smallest(mask: VertexMask, count: usize) -> VertexMask {
    members(mask).take(count).fold(0, |m, x| m | bit(x))
}

/// Disjoint leaf sets for the oriented edge `(u, v)` inside `within`, if any.
pub(crate) fn assign_leaves(
    g: &Graph,
    within: VertexMask,
    u: usize,
    v: usize,
    a: usize,
    b: usize,
) -> Option<(VertexMask, VertexMask)> {
    let nu = g.neighbors(u) & within & !bit(v);
    let nv = g.neighbors(v) & within & !bit(u);
    if (nu.count_ones() as usize) < a || (nv.count_ones() as usize) < b {
        return None;
    }
    // Greedy: smallest neighbors of u first, then whatever v has left.
    let a_set = smallest(nu, a);
    let rest = nv & !a_set;
    if rest.count_ones() as usize >= b {
        return Some((a_set, smallest(rest, b)));
    }
    // Exact assignment: each side spends its private neighbors before the
    // shared ones, which succeeds whenever any disjoint choice exists.
    let shared = nu & nv;
    let only_u = nu & !shared;
    let only_v = nv & !shared;
    let from_shared_a = a.saturating_sub(only_u.count_ones() as usize);
    let from_shared_b = b.saturating_sub(only_v.count_ones() as usize);
    if from_shared_a + from_shared_b > shared.count_ones() as usize {
        return None;
    }
    let a_set = smallest(only_u, a) | smallest(shared, from_shared_a);
    let b_set = smallest(only_v, b) | smallest(shared & !a_set, from_shared_b);
    Some((a_set, b_set))
}

pub(crate) fn find_double_star_in(
    g: &Graph,
    within: VertexMask,
    a: usize,
    b: usize,
) -> Option<DoubleStarWitness> {
    for u in members(within) {
        for v in members(g.neighbors(u) & within) {
            if let Some((a_set, b_set)) = assign_leaves(g, within, u, v, a, b) {
                return Some(DoubleStarWitness {
                    u,
                    v,
                    a_leaves: members(a_set).collect(),
                    b_leaves: members(b_set).collect(),
                });
            }
        }
    }
    None
}

/// A plain copy of `S_{a,b}`, ignoring colors.
pub fn find_double_star(g: &Graph, a: usize, b: usize) -> Option<DoubleStarWitness> {
    find_double_star_in(g, g.vertex_mask(), a, b)
}
