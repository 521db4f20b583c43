use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{ColoredGraph, Coloring, Graph};
use crate::limits;
use crate::search::cycles::smallest_long_cycle_in;
use crate::search::embed::enumerate_leaf_image_sets;
use crate::search::tree::TreePattern;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum GraphClassSpec {
    /// `n / r` disjoint copies of `K_r`.
    DisjointCliques { n: usize, r: usize },
    /// `K_{floor(n/2), ceil(n/2)}`.
    BalancedBipartite { n: usize },
    /// `(n - 1) / (l - 2)` copies of `K_{l-1}` sharing vertex 0.
    SharedVertexCliques { n: usize, l: usize },
    /// `C_n` colored `i mod p`.
    ModColoredCycle { n: usize, p: usize },
}

/// What a construction is supposed to avoid.
#[derive(Clone, Debug)]
pub enum Avoids {
    /// No copy of the pattern has leaves of two colors.
    BichromaticLeaves(TreePattern),
    /// No cycle of this length or longer.
    CyclesFrom(usize),
}

#[derive(Clone, Debug)]
pub struct Construction {
    pub spec: GraphClassSpec,
    pub colored: ColoredGraph,
    pub avoids: Avoids,
}

impl Construction {
    /// Re-checks properness and the avoided structure.
    pub fn verify(&self) -> Result<()> {
        let g = self.colored.graph();
        crate::graph::is_proper(g, self.colored.coloring())?
            .then_some(())
            .ok_or_else(|| Error::invariant("construction is not properly colored"))?;
        match &self.avoids {
            Avoids::BichromaticLeaves(t) => {
                for set in enumerate_leaf_image_sets(g, t) {
                    if self.colored.coloring().distinct_colors(set.members()) > 1 {
                        return Err(Error::invariant(format!(
                            "copy of {t} with leaves {:?} is not monochromatic",
                            set.members()
                        )));
                    }
                }
            }
            Avoids::CyclesFrom(l) => {
                if let Some(c) = smallest_long_cycle_in(g, g.vertex_mask(), *l) {
                    return Err(Error::invariant(format!(
                        "cycle {:?} has length at least {l}",
                        c.vertices
                    )));
                }
            }
        }
        Ok(())
    }
}

fn arg(message: String) -> Error {
    Error::Argument(message)
}

pub fn construct(spec: &GraphClassSpec) -> Result<Construction> {
    let n = match *spec {
        GraphClassSpec::DisjointCliques { n, .. }
        | GraphClassSpec::BalancedBipartite { n }
        | GraphClassSpec::SharedVertexCliques { n, .. }
        | GraphClassSpec::ModColoredCycle { n, .. } => n,
    };
    limits::check("construction", n, limits::MAX_N)?;
    let (g, colors, avoids) = match *spec {
        GraphClassSpec::DisjointCliques { n, r } => {
            if r == 0 || n % r != 0 {
                return Err(arg(format!("clique size {r} must divide n = {n}")));
            }
            let mut g = Graph::empty(n);
            for base in (0..n).step_by(r) {
                for i in base..base + r {
                    for j in i + 1..base + r {
                        g.add_edge(i, j);
                    }
                }
            }
            let colors = (0..n).map(|v| (v % r) as u32).collect();
            (g, colors, Avoids::BichromaticLeaves(TreePattern::path(r)))
        }
        GraphClassSpec::BalancedBipartite { n } => {
            if n < 2 {
                return Err(arg(format!("a bipartite construction needs n >= 2, got {n}")));
            }
            let g = Graph::complete_bipartite(n / 2, n - n / 2);
            let colors = (0..n).map(|v| u32::from(v >= n / 2)).collect();
            (g, colors, Avoids::BichromaticLeaves(TreePattern::path(2)))
        }
        GraphClassSpec::SharedVertexCliques { n, l } => {
            if l < 3 || n == 0 || (n - 1) % (l - 2) != 0 {
                return Err(arg(format!("need l >= 3 and (l - 2) | (n - 1), got n = {n}, l = {l}")));
            }
            let s = l - 2;
            let mut g = Graph::empty(n);
            let mut colors = vec![0u32; n];
            for block in 0..(n - 1) / s {
                let members: Vec<usize> = (1 + block * s..1 + (block + 1) * s).collect();
                for (i, &x) in members.iter().enumerate() {
                    g.add_edge(0, x);
                    colors[x] = 1 + i as u32;
                    for &y in &members[i + 1..] {
                        g.add_edge(x, y);
                    }
                }
            }
            (g, colors, Avoids::CyclesFrom(l))
        }
        GraphClassSpec::ModColoredCycle { n, p } => {
            if n < 3 || p < 2 || n % p != 0 {
                return Err(arg(format!("need n >= 3, p >= 2 and p | n, got n = {n}, p = {p}")));
            }
            let colors = (0..n).map(|v| (v % p) as u32).collect();
            (Graph::cycle(n), colors, Avoids::BichromaticLeaves(TreePattern::path(p)))
        }
    };
    Ok(Construction {
        spec: *spec,
        colored: ColoredGraph::new(g, Coloring::new(colors))?,
        avoids,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph6::emit_graph6;

    #[test]
    fn families() {
        let c = construct(&GraphClassSpec::DisjointCliques { n: 6, r: 3 }).unwrap();
        assert_eq!(c.colored.graph().edge_count(), 6);
        c.verify().unwrap();

        let c = construct(&GraphClassSpec::BalancedBipartite { n: 5 }).unwrap();
        assert_eq!(c.colored.graph().edge_count(), 6);
        c.verify().unwrap();

        let c = construct(&GraphClassSpec::ModColoredCycle { n: 6, p: 3 }).unwrap();
        assert_eq!(c.colored.coloring().as_slice(), &[0, 1, 2, 0, 1, 2]);
        c.verify().unwrap();

        let c = construct(&GraphClassSpec::SharedVertexCliques { n: 7, l: 4 }).unwrap();
        assert_eq!(c.colored.graph().edge_count(), 9);
        c.verify().unwrap();
        assert_eq!(emit_graph6(construct(&GraphClassSpec::DisjointCliques { n: 3, r: 3 }).unwrap().colored.graph()), "Bw");
    }

    #[test]
    fn divisibility_enforced() {
        assert!(construct(&GraphClassSpec::DisjointCliques { n: 5, r: 3 }).is_err());
        assert!(construct(&GraphClassSpec::SharedVertexCliques { n: 6, l: 4 }).is_err());
        assert!(construct(&GraphClassSpec::ModColoredCycle { n: 7, p: 3 }).is_err());
    }
}
