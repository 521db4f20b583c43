use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{members, ColoredGraph, Graph, VertexMask};
use crate::search::paths::PathWitness;
use crate::search::validate::validate_path;
use crate::unionfind::ProvenanceUnionFind;

/// Paths of a common length, each ending where the next begins, whose two
/// extreme endpoints are adjacent. Under a proper coloring at least one link
/// must have differently colored endpoints: if every link were
/// monochromatic the adjacent extremes would share a color.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ForcedChain {
    pub len: usize,
    pub links: Vec<PathWitness>,
}

impl ForcedChain {
    pub fn new(len: usize, links: Vec<PathWitness>) -> Self {
        ForcedChain { len, links }
    }

    pub fn start(&self) -> usize {
        self.links[0].first()
    }

    pub fn end(&self) -> usize {
        self.links.last().unwrap().last()
    }

    pub fn validate(&self, g: &Graph) -> Result<()> {
        let bad = |m: String| Err(Error::Certificate(m));
        if self.links.is_empty() {
            return bad("chain has no links".into());
        }
        for (i, p) in self.links.iter().enumerate() {
            validate_path(g, p, self.len).or_else(|m| bad(format!("link {i}: {m}")))?;
        }
        for (i, w) in self.links.windows(2).enumerate() {
            if w[0].last() != w[1].first() {
                return bad(format!("links {i} and {} do not share an endpoint", i + 1));
            }
        }
        let (s, e) = (self.start(), self.end());
        if s == e || !g.has_edge(s, e) {
            return bad(format!("extreme endpoints {s} and {e} are not adjacent"));
        }
        Ok(())
    }
}

/// The first link whose endpoints differ in color.
pub fn scan_forced_chain(chain: &ForcedChain, cg: &ColoredGraph) -> Result<PathWitness> {
    chain.validate(cg.graph())?;
    chain
        .links
        .iter()
        .find(|p| p.is_bichromatic(cg.coloring()))
        .cloned()
        .ok_or_else(|| Error::Certificate("every link is monochromatic; coloring is not proper".into()))
}

/// Accumulates same-color obligations, one path per obligation, and looks
/// for an edge whose endpoints ended up obliged to share a color.
pub(crate) struct ChainBuilder {
    len: usize,
    uf: ProvenanceUnionFind<usize>,
    paths: Vec<PathWitness>,
}

impl ChainBuilder {
    pub fn new(n: usize, len: usize) -> Self {
        ChainBuilder {
            len,
            uf: ProvenanceUnionFind::new(n),
            paths: Vec::new(),
        }
    }

    pub fn add(&mut self, vertices: Vec<usize>) {
        debug_assert_eq!(vertices.len(), self.len + 1);
        let p = PathWitness::new(vertices);
        let (a, b) = p.endpoints();
        let id = self.paths.len();
        if self.uf.union(a, b, id) {
            self.paths.push(p);
        }
    }

    /// A chain for the first edge (ascending) inside `within` that joins two
    /// obliged-equal vertices.
    pub fn conflict(&self, g: &Graph, within: VertexMask) -> Option<ForcedChain> {
        for u in members(within) {
            for v in members(g.neighbors(u) & within) {
                if v > u && self.uf.same(u, v) {
                    let steps = self.uf.explain(u, v)?;
                    let links = steps
                        .iter()
                        .map(|s| self.paths[*s.label].starting_at(s.from))
                        .collect();
                    return Some(ForcedChain::new(self.len, links));
                }
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Coloring;

    fn c7() -> ColoredGraph {
        ColoredGraph::new(Graph::cycle(7), Coloring::new(vec![0, 1, 0, 1, 0, 1, 2])).unwrap()
    }

    fn step_two_chain() -> ForcedChain {
        // Length-5 arcs from v_{2i} backwards to v_{2i+2}: v0~v2~v4~v6, v6-v0 adjacent.
        let cycle = crate::search::cycles::CycleWitness::new((0..7).collect());
        let links = (0..3)
            .map(|i| PathWitness::new(cycle.arc(2 * i, -1, 5)))
            .collect();
        ForcedChain::new(5, links)
    }

    #[test]
    fn single_adjacent_link() {
        let cg = ColoredGraph::new(Graph::cycle(4), Coloring::new(vec![0, 1, 0, 1])).unwrap();
        let chain = ForcedChain::new(3, vec![PathWitness::new(vec![0, 1, 2, 3])]);
        assert_eq!(scan_forced_chain(&chain, &cg).unwrap().vertices, vec![0, 1, 2, 3]);
    }

    #[test]
    fn c7_step_two_chain() {
        let chain = step_two_chain();
        let found = scan_forced_chain(&chain, &c7()).unwrap();
        // Links (0,2) and (2,4) are monochromatic in color 0; (4,6) is 0 vs 2.
        assert_eq!(found.endpoints(), (4, 6));
    }

    #[test]
    fn only_last_link_bichromatic() {
        let cg = c7();
        let chain = step_two_chain();
        let last = chain.links.last().unwrap().clone();
        assert_eq!(scan_forced_chain(&chain, &cg).unwrap(), last);
    }

    #[test]
    fn rejects_invalid_chains() {
        let cg = c7();
        let mut chain = step_two_chain();
        chain.links.pop();
        assert!(scan_forced_chain(&chain, &cg).is_err());
        let broken = ForcedChain::new(5, vec![PathWitness::new(vec![0, 1, 2])]);
        assert!(scan_forced_chain(&broken, &cg).is_err());
    }

    #[test]
    fn builder_finds_conflict() {
        let g = Graph::cycle(7);
        let cycle = crate::search::cycles::CycleWitness::new((0..7).collect());
        let mut b = ChainBuilder::new(7, 5);
        for i in 0..7 {
            b.add(cycle.arc(i, 1, 5));
        }
        let chain = b.conflict(&g, g.vertex_mask()).unwrap();
        chain.validate(&g).unwrap();
    }
}
