//! Does a graph admit a proper coloring, with any number of colors, in which
//! every copy of a tree has monochromatic leaves?
//!
//! Each copy forces its leaf images into one color class. Closing those
//! constraints under transitivity gives the finest forced partition. Because
//! colors are unlimited, coloring each class with its own color is optimal:
//! the graph is feasible exactly when no edge lies inside a class.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{bit, members, Coloring, Graph, VertexMask};
use crate::limits;
use crate::search::embed::{leaf_image_sets_with, CopyMode, LeafImageSet};
use crate::search::tree::TreePattern;
use crate::unionfind::ProvenanceUnionFind;

/// Closure of the leaf-set constraints, remembering which set forced each merge.
#[derive(Clone, Debug)]
pub struct ForcedPartition {
    uf: ProvenanceUnionFind<LeafImageSet>,
    sets: Vec<LeafImageSet>,
}

impl ForcedPartition {
    pub fn from_sets(n: usize, sets: Vec<LeafImageSet>) -> Self {
        let mut uf = ProvenanceUnionFind::new(n);
        for set in &sets {
            let mut it = members(set.mask());
            if let Some(first) = it.next() {
                for v in it {
                    uf.union(first, v, *set);
                }
            }
        }
        ForcedPartition { uf, sets }
    }

    /// Leaf-image sets the partition was built from.
    pub fn sets(&self) -> &[LeafImageSet] {
        &self.sets
    }

    pub fn classes(&self) -> Vec<Vec<usize>> {
        self.uf.classes()
    }

    pub fn same_class(&self, u: usize, v: usize) -> bool {
        self.uf.same(u, v)
    }

    /// Class index per vertex, classes numbered by smallest member.
    pub fn labels(&self) -> Vec<u32> {
        let mut out = vec![0; self.uf.len()];
        for (i, class) in self.classes().iter().enumerate() {
            for &v in class {
                out[v] = i as u32;
            }
        }
        out
    }

    /// Leaf sets along the merge history linking `u` to `v`. Consecutive sets
    /// share a vertex, the first contains `u` and the last contains `v`.
    pub fn chain(&self, u: usize, v: usize) -> Option<Vec<LeafImageSet>> {
        let steps = self.uf.explain(u, v)?;
        Some(steps.into_iter().map(|s| *s.label).collect())
    }
}

pub fn forced_partition(g: &Graph, t: &TreePattern) -> ForcedPartition {
    forced_partition_with(g, t, CopyMode::Subgraph)
}

pub fn forced_partition_with(g: &Graph, t: &TreePattern, mode: CopyMode) -> ForcedPartition {
    let sets = leaf_image_sets_with(g, g.vertex_mask(), t, mode);
    ForcedPartition::from_sets(g.n(), sets)
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum FeasibilityOutcome {
    Feasible {
        coloring: Coloring,
    },
    Infeasible {
        conflict_edge: (usize, usize),
        chain: Vec<LeafImageSet>,
    },
}

impl FeasibilityOutcome {
    pub fn is_feasible(&self) -> bool {
        matches!(self, FeasibilityOutcome::Feasible { .. })
    }
}

#[derive(Serialize, Deserialize)]
struct OutcomeJson {
    feasible: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    coloring: Option<Coloring>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    conflict_edge: Option<(usize, usize)>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    chain: Option<Vec<LeafImageSet>>,
}

impl Serialize for FeasibilityOutcome {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let json = match self {
            FeasibilityOutcome::Feasible { coloring } => OutcomeJson {
                feasible: true,
                coloring: Some(coloring.clone()),
                conflict_edge: None,
                chain: None,
            },
            FeasibilityOutcome::Infeasible {
                conflict_edge,
                chain,
            } => OutcomeJson {
                feasible: false,
                coloring: None,
                conflict_edge: Some(*conflict_edge),
                chain: Some(chain.clone()),
            },
        };
        json.serialize(s)
    }
}

impl<'de> Deserialize<'de> for FeasibilityOutcome {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let json = OutcomeJson::deserialize(d)?;
        match json {
            OutcomeJson {
                feasible: true,
                coloring: Some(coloring),
                ..
            } => Ok(FeasibilityOutcome::Feasible { coloring }),
            OutcomeJson {
                feasible: false,
                conflict_edge: Some(conflict_edge),
                chain: Some(chain),
                ..
            } => Ok(FeasibilityOutcome::Infeasible {
                conflict_edge,
                chain,
            }),
            _ => Err(D::Error::custom("inconsistent feasibility outcome")),
        }
    }
}

pub fn decide_feasible(g: &Graph, t: &TreePattern) -> FeasibilityOutcome {
    decide_feasible_with(g, t, CopyMode::Subgraph)
}

pub fn decide_feasible_with(g: &Graph, t: &TreePattern, mode: CopyMode) -> FeasibilityOutcome {
    let partition = forced_partition_with(g, t, mode);
    outcome_from_partition(g, &partition)
}

pub fn outcome_from_partition(g: &Graph, partition: &ForcedPartition) -> FeasibilityOutcome {
    match g.edges().into_iter().find(|&(u, v)| partition.same_class(u, v)) {
        Some((u, v)) => FeasibilityOutcome::Infeasible {
            conflict_edge: (u, v),
            chain: partition
                .chain(u, v)
                .expect("vertices in one class have an explanation"),
        },
        None => FeasibilityOutcome::Feasible {
            coloring: Coloring::new(partition.labels()),
        },
    }
}

/// Leaf-image sets by exhaustive injective assignment in tree-vertex order,
/// with no search ordering or degree pruning.
pub(crate) fn naive_leaf_sets(g: &Graph, t: &TreePattern, mode: CopyMode) -> Vec<VertexMask> {
    fn go(
        g: &Graph,
        t: &TreePattern,
        mode: CopyMode,
        images: &mut Vec<usize>,
        used: VertexMask,
        out: &mut Vec<VertexMask>,
    ) {
        let i = images.len();
        if i == t.vertex_count() {
            let set = members(t.leaves()).fold(0, |m, v| m | bit(images[v]));
            if !out.contains(&set) {
                out.push(set);
            }
            return;
        }
        'next: for x in 0..g.n() {
            if used & bit(x) != 0 {
                continue;
            }
            for j in 0..i {
                let tree_edge = t.graph().has_edge(i, j);
                let host_edge = g.has_edge(x, images[j]);
                if tree_edge && !host_edge {
                    continue 'next;
                }
                if mode == CopyMode::Induced && host_edge && !tree_edge {
                    continue 'next;
                }
            }
            images.push(x);
            go(g, t, mode, images, used | bit(x), out);
            images.pop();
        }
    }
    let mut out = Vec::new();
    go(g, t, mode, &mut Vec::new(), 0, &mut out);
    out
}

/// Exhaustive oracle over all set partitions of the vertices (restricted
/// growth strings), each read as a coloring.
pub fn brute_force_feasible(g: &Graph, t: &TreePattern) -> Result<bool> {
    brute_force_feasible_with(g, t, CopyMode::Subgraph)
}

pub fn brute_force_feasible_with(g: &Graph, t: &TreePattern, mode: CopyMode) -> Result<bool> {
    limits::check("brute-force feasibility", g.n(), limits::MAX_N_BRUTE_FORCE)?;
    let n = g.n();
    let sets = naive_leaf_sets(g, t, mode);
    let edges = g.edges();
    let mut colors = vec![0u32; n];
    fn next_rgs(colors: &mut [u32]) -> bool {
        let n = colors.len();
        for i in (1..n).rev() {
            let max_prefix = colors[..i].iter().copied().max().unwrap_or(0);
            if colors[i] <= max_prefix {
                colors[i] += 1;
                for c in colors[i + 1..].iter_mut() {
                    *c = 0;
                }
                return true;
            }
        }
        false
    }
    loop {
        let proper = edges.iter().all(|&(u, v)| colors[u] != colors[v]);
        if proper {
            let mono = sets.iter().all(|&s| {
                let mut it = members(s).map(|v| colors[v]);
                match it.next() {
                    Some(c) => it.all(|d| d == c),
                    None => true,
                }
            });
            if mono {
                return Ok(true);
            }
        }
        if !next_rgs(&mut colors) {
            return Ok(false);
        }
    }
}

/// Re-verifies an outcome from scratch against an independent copy scan.
pub fn check_certificate(g: &Graph, t: &TreePattern, out: &FeasibilityOutcome) -> bool {
    check_certificate_with(g, t, CopyMode::Subgraph, out).is_ok()
}

pub fn check_certificate_with(
    g: &Graph,
    t: &TreePattern,
    mode: CopyMode,
    out: &FeasibilityOutcome,
) -> Result<()> {
    let sets = naive_leaf_sets(g, t, mode);
    let fail = |m: String| Err(Error::Certificate(m));
    match out {
        FeasibilityOutcome::Feasible { coloring } => {
            if coloring.len() != g.n() {
                return fail(format!("coloring has {} entries", coloring.len()));
            }
            if let Some((u, v)) = g
                .edges()
                .into_iter()
                .find(|&(u, v)| coloring.color(u) == coloring.color(v))
            {
                return fail(format!("edge {{{u}, {v}}} is monochromatic"));
            }
            for s in sets {
                if coloring.distinct_colors(members(s)) > 1 {
                    let leaves: Vec<usize> = members(s).collect();
                    return fail(format!("copy with leaves {leaves:?} is not monochromatic"));
                }
            }
            Ok(())
        }
        FeasibilityOutcome::Infeasible {
            conflict_edge: (u, v),
            chain,
        } => {
            let (u, v) = (*u, *v);
            if u >= g.n() || v >= g.n() || !g.has_edge(u, v) {
                return fail(format!("{{{u}, {v}}} is not an edge"));
            }
            let (Some(first), Some(last)) = (chain.first(), chain.last()) else {
                return fail("empty chain".into());
            };
            for s in chain {
                if !sets.contains(&s.mask()) {
                    return fail(format!("{:?} is not the leaf set of any copy", s.members()));
                }
            }
            for w in chain.windows(2) {
                if w[0].mask() & w[1].mask() == 0 {
                    return fail("consecutive chain sets are disjoint".into());
                }
            }
            let forward = first.contains(u) && last.contains(v);
            let backward = first.contains(v) && last.contains(u);
            if !forward && !backward {
                return fail("chain does not link the conflict edge".into());
            }
            Ok(())
        }
    }
}
