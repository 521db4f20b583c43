use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use crate::graph::{bit, members, ColoredGraph, Coloring, Graph, VertexMask};

/// A simple path given by its vertices in order.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PathWitness {
    pub vertices: Vec<usize>,
}

impl PathWitness {
    pub fn new(vertices: Vec<usize>) -> Self {
        PathWitness { vertices }
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.vertices.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn first(&self) -> usize {
        self.vertices[0]
    }

    pub fn last(&self) -> usize {
        *self.vertices.last().unwrap()
    }

    pub fn endpoints(&self) -> (usize, usize) {
        (self.first(), self.last())
    }

    pub fn reversed(&self) -> Self {
        let mut v = self.vertices.clone();
        v.reverse();
        PathWitness { vertices: v }
    }

    /// Oriented so that it starts at `start`, which must be an endpoint.
    pub fn starting_at(&self, start: usize) -> Self {
        if self.first() == start {
            self.clone()
        } else {
            debug_assert_eq!(self.last(), start);
            self.reversed()
        }
    }

    pub fn is_bichromatic(&self, c: &Coloring) -> bool {
        c.color(self.first()) != c.color(self.last())
    }

    pub fn mask(&self) -> VertexMask {
        crate::graph::mask_of(&self.vertices)
    }
}

#[inline]
fn ordered(u: usize, v: usize) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Unordered endpoint pairs of all simple paths with exactly `len` edges
/// inside `within`.
pub fn path_endpoint_pairs_in(
    g: &Graph,
    within: VertexMask,
    len: usize,
) -> BTreeSet<(usize, usize)> {
    let mut out = BTreeSet::new();
    if len == 0 {
        return out;
    }
    for s in members(within) {
        // (visited, end) states already expanded from this start.
        let mut seen: HashSet<(VertexMask, u8)> = HashSet::new();
        let mut layer = vec![(bit(s), s)];
        for _ in 0..len {
            let mut next = Vec::new();
            for (mask, end) in layer {
                for x in members(g.neighbors(end) & within & !mask) {
                    let state = (mask | bit(x), x as u8);
                    if seen.insert(state) {
                        next.push((state.0, x));
                    }
                }
            }
            layer = next;
        }
        for (_, end) in layer {
            if end > s {
                out.insert((s, end));
            }
        }
    }
    out
}

pub fn all_path_endpoint_pairs(g: &Graph, len: usize) -> BTreeSet<(usize, usize)> {
    path_endpoint_pairs_in(g, g.vertex_mask(), len)
}

/// One witness path per endpoint pair: the first one depth-first search
/// meets, starting from the smaller endpoint.
pub fn path_witnesses_in(
    g: &Graph,
    within: VertexMask,
    len: usize,
) -> BTreeMap<(usize, usize), PathWitness> {
    fn walk(
        g: &Graph,
        within: VertexMask,
        left: usize,
        path: &mut Vec<usize>,
        used: VertexMask,
        out: &mut BTreeMap<(usize, usize), PathWitness>,
    ) {
        let end = *path.last().unwrap();
        if left == 0 {
            let key = ordered(path[0], end);
            out.entry(key)
                .or_insert_with(|| PathWitness::new(path.clone()).starting_at(key.0));
            return;
        }
        for x in members(g.neighbors(end) & within & !used) {
            path.push(x);
            walk(g, within, left - 1, path, used | bit(x), out);
            path.pop();
        }
    }
    let mut out = BTreeMap::new();
    if len == 0 {
        return out;
    }
    for s in members(within) {
        let mut path = vec![s];
        walk(g, within, len, &mut path, bit(s), &mut out);
    }
    out
}

/// First path (starts ascending, neighbors ascending) with `len` edges whose
/// endpoints have different colors.
pub fn find_bichromatic_path_in(
    g: &Graph,
    coloring: &Coloring,
    within: VertexMask,
    len: usize,
) -> Option<PathWitness> {
    struct Dfs<'a> {
        g: &'a Graph,
        coloring: &'a Coloring,
        within: VertexMask,
        start_color: u32,
        failed: HashSet<(VertexMask, u8)>,
        path: Vec<usize>,
    }
    impl Dfs<'_> {
        fn go(&mut self, used: VertexMask, left: usize) -> bool {
            let end = *self.path.last().unwrap();
            if left == 0 {
                return self.coloring.color(end) != self.start_color;
            }
            if self.failed.contains(&(used, end as u8)) {
                return false;
            }
            for x in members(self.g.neighbors(end) & self.within & !used) {
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
    if len == 0 {
        return None;
    }
    let mut palette = members(within).map(|v| coloring.color(v));
    if let Some(first) = palette.next() {
        if palette.all(|c| c == first) {
            return None;
        }
    }
    for s in members(within) {
        let start_color = coloring.color(s);
        let mut dfs = Dfs {
            g,
            coloring,
            within,
            start_color,
            failed: HashSet::new(),
            path: vec![s],
        };
        if dfs.go(bit(s), len) {
            return Some(PathWitness::new(dfs.path));
        }
    }
    None
}

pub fn find_bichromatic_path(cg: &ColoredGraph, len: usize) -> Option<PathWitness> {
    find_bichromatic_path_in(cg.graph(), cg.coloring(), cg.graph().vertex_mask(), len)
}
