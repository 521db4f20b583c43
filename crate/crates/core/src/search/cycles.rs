use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::graph::{bit, full_mask, members, Graph, VertexMask};

/// A cycle `v_0, ..., v_{len-1}`, closing back to `v_0`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CycleWitness {
    pub vertices: Vec<usize>,
}

impl CycleWitness {
    pub fn new(vertices: Vec<usize>) -> Self {
        CycleWitness { vertices }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Vertex at cyclic position `i`; negative and oversized indices wrap.
    #[inline]
    pub fn at(&self, i: isize) -> usize {
        let l = self.vertices.len() as isize;
        self.vertices[i.rem_euclid(l) as usize]
    }

    pub fn mask(&self) -> VertexMask {
        crate::graph::mask_of(&self.vertices)
    }

    /// Vertices `v_from, v_{from+step}, ...` covering `edges` edges in the
    /// direction of `step` (which is `1` or `-1`).
    pub fn arc(&self, from: isize, step: isize, edges: usize) -> Vec<usize> {
        (0..=edges as isize).map(|t| self.at(from + step * t)).collect()
    }
}

/// Among all cycles of length at least `min_len` inside `within`, one of
/// minimum length; ties go to the lexicographically least vertex sequence
/// written from its smallest vertex toward its smaller neighbor.
pub fn smallest_long_cycle_in(
    g: &Graph,
    within: VertexMask,
    min_len: usize,
) -> Option<CycleWitness> {
    let n_within = within.count_ones() as usize;
    for len in min_len.max(3)..=n_within {
        for s in members(within) {
            // The cycle's smallest vertex is s.
            let allowed = within & !full_mask(s + 1);
            if (allowed.count_ones() as usize) < len - 1 {
                break;
            }
            for first in members(g.neighbors(s) & allowed) {
                let mut search = Closing {
                    g,
                    allowed,
                    s,
                    first,
                    failed: HashSet::new(),
                    path: vec![s, first],
                };
                if search.go(bit(s) | bit(first), len - 2) {
                    return Some(CycleWitness::new(search.path));
                }
            }
        }
    }
    None
}

struct Closing<'a> {
    g: &'a Graph,
    allowed: VertexMask,
    s: usize,
    first: usize,
    failed: HashSet<(VertexMask, u8)>,
    path: Vec<usize>,
}

impl Closing<'_> {
    fn go(&mut self, used: VertexMask, left: usize) -> bool {
        let end = *self.path.last().unwrap();
        if left == 0 {
            return end > self.first && self.g.has_edge(end, self.s);
        }
        if self.failed.contains(&(used, end as u8)) {
            return false;
        }
        for x in members(self.g.neighbors(end) & self.allowed & !used) {
            self.path.push(x);
            if self.go(used | bit(x), left - 1) {
                return true;
            }
            self.path.pop();
        }
        self.failed.insert((used, end as u8));
        false
    }
}

pub fn smallest_long_cycle(g: &Graph, min_len: usize) -> Option<CycleWitness> {
    smallest_long_cycle_in(g, g.vertex_mask(), min_len)
}

/// Length of the longest cycle inside `within`, if there is any cycle.
pub fn longest_cycle_len_in(g: &Graph, within: VertexMask) -> Option<usize> {
    let n_within = within.count_ones() as usize;
    (3..=n_within)
        .rev()
        .find(|&len| has_cycle_of_len(g, within, len))
}

fn has_cycle_of_len(g: &Graph, within: VertexMask, len: usize) -> bool {
    for s in members(within) {
        let allowed = within & !full_mask(s + 1);
        if (allowed.count_ones() as usize) < len - 1 {
            return false;
        }
        for first in members(g.neighbors(s) & allowed) {
            let mut search = Closing {
                g,
                allowed,
                s,
                first,
                failed: HashSet::new(),
                path: vec![s, first],
            };
            if search.go(bit(s) | bit(first), len - 2) {
                return true;
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let c6 = smallest_long_cycle(&Graph::cycle(6), 3).unwrap();
        assert_eq!(c6.vertices, vec![0, 1, 2, 3, 4, 5]);
        let k5 = smallest_long_cycle(&Graph::complete(5), 5).unwrap();
        assert_eq!(k5.vertices, vec![0, 1, 2, 3, 4]);
        assert!(smallest_long_cycle(&Graph::path(6), 3).is_none());
        assert!(smallest_long_cycle(&Graph::star(4), 3).is_none());
    }

    #[test]
    fn prefers_shortest_qualifying() {
        // Triangle 0-1-2 sharing vertex 0 with a 5-cycle 0-3-4-5-6.
        let g = Graph::from_edges(
            7,
            &[(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 5), (5, 6), (6, 0)],
        )
        .unwrap();
        assert_eq!(smallest_long_cycle(&g, 3).unwrap().len(), 3);
        assert_eq!(smallest_long_cycle(&g, 4).unwrap().vertices, vec![0, 3, 4, 5, 6]);
        assert!(smallest_long_cycle(&g, 6).is_none());
        assert_eq!(longest_cycle_len_in(&g, g.vertex_mask()), Some(5));
    }

    #[test]
    fn arcs_wrap() {
        let c = CycleWitness::new(vec![4, 5, 6, 7, 8]);
        assert_eq!(c.at(-1), 8);
        assert_eq!(c.arc(3, 1, 3), vec![7, 8, 4, 5]);
        assert_eq!(c.arc(0, -1, 2), vec![4, 8, 7]);
    }
}
