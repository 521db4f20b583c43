//! Exact canonical forms for graphs with at most ten vertices.
//!
//! The canonical code is the lexicographically largest upper-triangle bit
//! string (graph6 column order) over all vertex orderings that respect the
//! equitable partition obtained by color refinement. The search fixes one
//! position at a time, keeps only candidates whose new column is maximal,
//! skips all but one vertex of each twin class, and prunes against the best
//! code found so far. All three cuts discard only orderings that cannot beat
//! or that exactly duplicate a surviving one, so the result is exact.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::graph::{bit, Graph, VertexMask};
use crate::graph6::emit_graph6;
use crate::limits;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct CanonicalForm {
    n: u8,
    code: u64,
}

impl CanonicalForm {
    pub fn n(&self) -> usize {
        self.n as usize
    }

    /// Upper-triangle bits, column by column, most significant first.
    pub fn code(&self) -> u64 {
        self.code
    }

    /// `n` followed by the code as big-endian bytes.
    pub fn bytes(&self) -> Vec<u8> {
        let mut out = vec![self.n];
        out.extend_from_slice(&self.code.to_be_bytes());
        out
    }

    /// The canonical representative itself.
    pub fn to_graph(&self) -> Graph {
        let n = self.n();
        let total = pair_count(n);
        let mut g = Graph::empty(n);
        let mut k = 0;
        for j in 1..n {
            for i in 0..j {
                if self.code >> (total - 1 - k) & 1 == 1 {
                    g.add_edge(i, j);
                }
                k += 1;
            }
        }
        g
    }

    pub fn graph6(&self) -> String {
        emit_graph6(&self.to_graph())
    }

    pub fn edge_count(&self) -> usize {
        self.code.count_ones() as usize
    }
}

fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Color refinement to a stable partition, starting from degrees. Returns a
/// color per vertex; colors are ranks of isomorphism-invariant signatures.
fn refine(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut colors: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut classes = count_distinct(&colors);
    loop {
        let signatures: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut around: Vec<usize> = crate::graph::members(g.neighbors(v))
                    .map(|u| colors[u])
                    .collect();
                around.sort_unstable();
                (colors[v], around)
            })
            .collect();
        let mut sorted = signatures.clone();
        sorted.sort();
        sorted.dedup();
        colors = signatures
            .iter()
            .map(|s| sorted.binary_search(s).unwrap())
            .collect();
        let next = sorted.len();
        if next == classes {
            return colors;
        }
        classes = next;
    }
}

fn count_distinct(values: &[usize]) -> usize {
    let mut v = values.to_vec();
    v.sort_unstable();
    v.dedup();
    v.len()
}

struct Search<'a> {
    g: &'a Graph,
    n: usize,
    total: usize,
    /// Candidate vertices for each position.
    cell_at: Vec<VertexMask>,
    order: Vec<usize>,
    best: Option<(u64, Vec<usize>)>,
}

impl Search<'_> {
    fn column(&self, x: usize) -> u64 {
        let row = self.g.neighbors(x);
        self.order
            .iter()
            .fold(0u64, |acc, &v| (acc << 1) | u64::from(row & bit(v) != 0))
    }

    fn run(&mut self, used: VertexMask, prefix: u64, bits: usize, improving: bool) {
        let p = self.order.len();
        if p == self.n {
            let better = match &self.best {
                None => true,
                Some((code, _)) => prefix > *code,
            };
            if better {
                self.best = Some((prefix, self.order.clone()));
            }
            return;
        }
        let pool = self.cell_at[p] & !used;
        let mut top = 0u64;
        let mut candidates: Vec<usize> = Vec::new();
        for x in crate::graph::members(pool) {
            let col = self.column(x);
            if candidates.is_empty() || col > top {
                top = col;
                candidates.clear();
                candidates.push(x);
            } else if col == top {
                candidates.push(x);
            }
        }
        let bits = bits + p;
        let prefix = (prefix << p) | top;
        let mut improving = improving;
        if !improving {
            if let Some((code, _)) = &self.best {
                let best_prefix = if bits == 0 { 0 } else { code >> (self.total - bits) };
                if prefix < best_prefix {
                    return;
                }
                improving = prefix > best_prefix;
            }
        }
        let mut tried: Vec<usize> = Vec::new();
        for x in candidates {
            let is_twin = tried.iter().any(|&y| {
                self.g.neighbors(x) & !bit(y) == self.g.neighbors(y) & !bit(x)
            });
            if is_twin {
                continue;
            }
            tried.push(x);
            self.order.push(x);
            self.run(used | bit(x), prefix, bits, improving);
            self.order.pop();
            // A sibling may have raised the best code past this branch's prefix.
            if let Some((code, _)) = &self.best {
                let best_prefix = if bits == 0 { 0 } else { code >> (self.total - bits) };
                if best_prefix > prefix {
                    return;
                }
            }
            improving = false;
        }
    }
}

/// Canonical ordering of `g`: `order[p]` is the vertex placed at position `p`.
fn canonical_order(g: &Graph) -> (u64, Vec<usize>) {
    let n = g.n();
    let colors = refine(g);
    let mut by_color: Vec<usize> = (0..n).collect();
    by_color.sort_by_key(|&v| (colors[v], v));
    let cell_at: Vec<VertexMask> = by_color
        .iter()
        .map(|&v| {
            (0..n)
                .filter(|&u| colors[u] == colors[v])
                .fold(0, |m, u| m | bit(u))
        })
        .collect();
    let mut search = Search {
        g,
        n,
        total: pair_count(n),
        cell_at,
        order: Vec::with_capacity(n),
        best: None,
    };
    search.run(0, 0, 0, false);
    search.best.expect("at least one ordering exists")
}

pub fn canonical_form(g: &Graph) -> Result<CanonicalForm> {
    limits::check_with_hard(
        "canonical form",
        g.n(),
        limits::MAX_N_CANONICAL,
        limits::HARD_MAX_N_CANONICAL,
    )?;
    let (code, _) = canonical_order(g);
    Ok(CanonicalForm {
        n: g.n() as u8,
        code,
    })
}

/// `g` relabeled into its canonical representative.
pub fn canonical_graph(g: &Graph) -> Result<Graph> {
    Ok(canonical_form(g)?.to_graph())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relabelings_agree() {
        let k3 = canonical_form(&Graph::complete(3)).unwrap();
        assert_eq!(k3, canonical_form(&Graph::complete(3).permute(&[2, 0, 1])).unwrap());
        let abc = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let bac = Graph::from_edges(3, &[(1, 0), (0, 2)]).unwrap();
        assert_eq!(canonical_form(&abc).unwrap(), canonical_form(&bac).unwrap());
        assert_ne!(canonical_form(&abc).unwrap(), k3);
    }

    #[test]
    fn representative_is_isomorphic_copy() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (1, 4)]).unwrap();
        let cf = canonical_form(&g).unwrap();
        let rep = cf.to_graph();
        assert_eq!(rep.edge_count(), g.edge_count());
        assert_eq!(canonical_form(&rep).unwrap(), cf);
    }

    #[test]
    fn vertex_transitive_graphs_are_fast_and_stable() {
        let petersen = Graph::from_edges(
            10,
            &[
                (0, 1), (1, 2), (2, 3), (3, 4), (4, 0),
                (0, 5), (1, 6), (2, 7), (3, 8), (4, 9),
                (5, 7), (7, 9), (9, 6), (6, 8), (8, 5),
            ],
        )
        .unwrap();
        let cf = canonical_form(&petersen).unwrap();
        let shuffled = petersen.permute(&[3, 7, 1, 9, 0, 2, 8, 5, 4, 6]);
        assert_eq!(cf, canonical_form(&shuffled).unwrap());
        assert_eq!(canonical_form(&Graph::empty(10)).unwrap().code(), 0);
        assert_eq!(canonical_form(&Graph::complete(10)).unwrap().edge_count(), 45);
    }

    #[test]
    fn size_guard() {
        if std::env::var(limits::ENV_OVERRIDE).is_err() {
            assert!(canonical_form(&Graph::empty(11)).is_err());
        }
    }
}
