//! Extraction of a `P_{2k+1}` with differently colored endpoints from a
//! properly colored graph with more than `k * n` edges.
//!
//! The routine peels vertices of degree below `k`, keeps a component that is
//! still too dense, and takes a shortest cycle `C` of length at least
//! `2k + 1`. Depending on `|C|` it collects paths of length `2k + 1` whose
//! endpoints would have to share a color, closes those obligations, and
//! looks for an edge inside a closed class; the linking paths form a
//! [`ForcedChain`] and one of its links is the answer. For `|C| = 2k + 1`
//! it may instead delete two consecutive cycle vertices without outside
//! neighbors and start over on the smaller graph. Any branch that does not
//! close on the concrete input falls back to exhaustive search and says so
//! in the trace.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{
    bit, components_in, k_core_in, mask_of, members, ColoredGraph, Removal, VertexMask,
};
use crate::limits;
use crate::search::cycles::{smallest_long_cycle_in, CycleWitness};
use crate::search::paths::{find_bichromatic_path_in, PathWitness};
use crate::search::validate::{validate_cycle, validate_path};
use crate::witness::chain::{scan_forced_chain, ChainBuilder, ForcedChain};

/// Length of the chosen cycle relative to the target path length `2k + 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum CycleCase {
    #[serde(rename = "2k+1")]
    Exact,
    #[serde(rename = "2k+2")]
    PlusOne,
    #[serde(rename = "2k+3")]
    PlusTwo,
    #[serde(rename = ">=2k+4")]
    Long,
}

impl CycleCase {
    pub fn of(len: usize, k: usize) -> Option<Self> {
        match len.checked_sub(2 * k + 1)? {
            0 => Some(CycleCase::Exact),
            1 => Some(CycleCase::PlusOne),
            2 => Some(CycleCase::PlusTwo),
            _ => Some(CycleCase::Long),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct OutgoingEntry {
    pub vertex: usize,
    pub outside: Vec<usize>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "step", rename_all = "snake_case")]
pub enum TraceStep {
    /// Deletions of vertices with degree below `k`.
    Reduce { removed: Vec<Removal> },
    /// Component kept for having more than `k` edges per vertex.
    Component { vertices: Vec<usize> },
    Cycle { vertices: Vec<usize>, case: CycleCase },
    /// Outside neighbors of each cycle vertex, in cycle order.
    Outgoing { map: Vec<OutgoingEntry> },
    Chain { links: Vec<PathWitness> },
    /// Two consecutive cycle vertices without outside neighbors removed.
    Recurse { deleted: [usize; 2], edges_removed: usize },
    Fallback { reason: String },
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ExtractionTrace {
    pub k: usize,
    /// Vertices of the graph the extraction started from.
    pub scope: Vec<usize>,
    pub steps: Vec<TraceStep>,
    pub depth: usize,
}

impl ExtractionTrace {
    pub fn used_fallback(&self) -> bool {
        self.steps
            .iter()
            .any(|s| matches!(s, TraceStep::Fallback { .. }))
    }

    pub fn case(&self) -> Option<CycleCase> {
        self.steps.iter().rev().find_map(|s| match s {
            TraceStep::Cycle { case, .. } => Some(*case),
            _ => None,
        })
    }

    /// Re-derives every recorded step from the input and checks it matches.
    pub fn replay(&self, cg: &ColoredGraph) -> Result<()> {
        let g = cg.graph();
        let k = self.k;
        let bad = |m: String| Err(Error::Certificate(m));
        let mut alive = mask_of(&self.scope);
        let mut cycle: Option<CycleWitness> = None;
        let mut recursions = 0;
        for (i, step) in self.steps.iter().enumerate() {
            match step {
                TraceStep::Reduce { removed } => {
                    let (core, trace) = k_core_in(g, alive, k);
                    if &trace.removals != removed {
                        return bad(format!("step {i}: reduction differs"));
                    }
                    alive = core;
                }
                TraceStep::Component { vertices } => {
                    let comp = mask_of(vertices);
                    if !components_in(g, alive).contains(&comp) {
                        return bad(format!("step {i}: not a component"));
                    }
                    if g.edge_count_in(comp) <= k * vertices.len() {
                        return bad(format!("step {i}: component is not dense"));
                    }
                    alive = comp;
                }
                TraceStep::Cycle { vertices, case } => {
                    let c = CycleWitness::new(vertices.clone());
                    validate_cycle(g, &c, 2 * k + 1).or_else(|m| bad(format!("step {i}: {m}")))?;
                    if c.mask() & !alive != 0 {
                        return bad(format!("step {i}: cycle leaves the component"));
                    }
                    let shortest = smallest_long_cycle_in(g, alive, 2 * k + 1).map(|c| c.len());
                    if shortest != Some(c.len()) {
                        return bad(format!("step {i}: cycle is not a shortest long cycle"));
                    }
                    if CycleCase::of(c.len(), k) != Some(*case) {
                        return bad(format!("step {i}: wrong case label"));
                    }
                    cycle = Some(c);
                }
                TraceStep::Outgoing { map } => {
                    let Some(c) = &cycle else {
                        return bad(format!("step {i}: outgoing map before a cycle"));
                    };
                    if *map != outgoing_map(cg, alive, c) {
                        return bad(format!("step {i}: outgoing map differs"));
                    }
                }
                TraceStep::Chain { links } => {
                    let chain = ForcedChain::new(2 * k + 1, links.clone());
                    chain.validate(g)?;
                    if links.iter().any(|p| p.mask() & !alive != 0) {
                        return bad(format!("step {i}: chain leaves the component"));
                    }
                }
                TraceStep::Recurse {
                    deleted: [x, y],
                    edges_removed,
                } => {
                    let Some(c) = &cycle else {
                        return bad(format!("step {i}: recursion before a cycle"));
                    };
                    let pos = c.vertices.iter().position(|v| v == x);
                    if pos.map(|p| c.at(p as isize + 1)) != Some(*y) {
                        return bad(format!("step {i}: deleted vertices are not consecutive"));
                    }
                    let outside = alive & !c.mask();
                    if g.neighbors(*x) & outside != 0 || g.neighbors(*y) & outside != 0 {
                        return bad(format!("step {i}: deleted vertex has an outside neighbor"));
                    }
                    let removed = g.degree_in(*x, alive) + g.degree_in(*y, alive) - 1;
                    if removed != *edges_removed {
                        return bad(format!("step {i}: edge bookkeeping differs"));
                    }
                    alive &= !(bit(*x) | bit(*y));
                    if g.edge_count_in(alive) <= k * alive.count_ones() as usize {
                        return bad(format!("step {i}: smaller graph is not dense"));
                    }
                    cycle = None;
                    recursions += 1;
                }
                TraceStep::Fallback { .. } => {}
            }
        }
        if recursions != self.depth {
            return bad("depth does not match recursion steps".into());
        }
        Ok(())
    }
}

fn outgoing_map(cg: &ColoredGraph, within: VertexMask, c: &CycleWitness) -> Vec<OutgoingEntry> {
    let outside = within & !c.mask();
    c.vertices
        .iter()
        .map(|&v| OutgoingEntry {
            vertex: v,
            outside: members(cg.graph().neighbors(v) & outside).collect(),
        })
        .collect()
}

fn with_head(head: &[usize], tail: Vec<usize>) -> Vec<usize> {
    let mut v = head.to_vec();
    v.extend(tail);
    v
}

/// Obligations for a shortest long cycle of length at least `2k + 4`.
fn long_cycle_obligations(
    cg: &ColoredGraph,
    c: &CycleWitness,
    outgoing: &[OutgoingEntry],
    k: usize,
    b: &mut ChainBuilder,
) {
    let g = cg.graph();
    let l = c.len() as isize;
    let len = 2 * k + 1;
    // Arcs along the cycle.
    for i in 0..l {
        b.add(c.arc(i, 1, len));
    }
    // A vertex with two consecutive neighbors v_j, v_{j+1} (counted from it):
    // v_1..v_j, v_0, v_{j+1}..v_{2k+1} runs parallel to the arc v_1..v_{2k+2}.
    for i in 0..l {
        let v0 = c.at(i);
        for dir in [1isize, -1] {
            let rel = |j: usize| c.at(i + dir * j as isize);
            for j in 1..=2 * k {
                if g.has_edge(v0, rel(j)) && g.has_edge(v0, rel(j + 1)) {
                    let mut p: Vec<usize> = (1..=j).map(rel).collect();
                    p.push(v0);
                    p.extend((j + 1..=len).map(rel));
                    b.add(p);
                }
            }
        }
    }
    // An outside neighbor u of v_i: u, v_i, ..., v_{i+2k} in both directions.
    for (i, entry) in outgoing.iter().enumerate() {
        for &u in &entry.outside {
            b.add(with_head(&[u], c.arc(i as isize, 1, 2 * k)));
            b.add(with_head(&[u], c.arc(i as isize, -1, 2 * k)));
        }
    }
}

/// Obligations for a shortest long cycle of length exactly `2k + 1`.
fn exact_cycle_obligations(
    cg: &ColoredGraph,
    within: VertexMask,
    c: &CycleWitness,
    outgoing: &[OutgoingEntry],
    k: usize,
    b: &mut ChainBuilder,
) {
    let g = cg.graph();
    let outside = within & !c.mask();
    for (i, entry) in outgoing.iter().enumerate() {
        let i = i as isize;
        for &u in &entry.outside {
            // u, v_i, then all the way round: ends next to v_i on either side.
            b.add(with_head(&[u], c.arc(i, 1, 2 * k)));
            b.add(with_head(&[u], c.arc(i, -1, 2 * k)));
            // w, u, v_i, then 2k - 1 steps: ends two away from v_i.
            for w in members(g.neighbors(u) & outside) {
                b.add(with_head(&[w, u], c.arc(i, 1, 2 * k - 1)));
                b.add(with_head(&[w, u], c.arc(i, -1, 2 * k - 1)));
            }
        }
    }
}

fn finish(
    cg: &ColoredGraph,
    chain: ForcedChain,
    trace: &mut ExtractionTrace,
) -> Result<PathWitness> {
    let witness = scan_forced_chain(&chain, cg)?;
    trace.steps.push(TraceStep::Chain { links: chain.links });
    Ok(witness)
}

enum Outcome {
    Found(PathWitness),
    Recurse(VertexMask),
    Fallback(String),
}

fn one_level(
    cg: &ColoredGraph,
    alive: VertexMask,
    k: usize,
    trace: &mut ExtractionTrace,
) -> Result<Outcome> {
    let g = cg.graph();
    let len = 2 * k + 1;

    let (core, removal) = k_core_in(g, alive, k);
    trace.steps.push(TraceStep::Reduce {
        removed: removal.removals,
    });
    let Some(comp) = components_in(g, core)
        .into_iter()
        .find(|&c| g.edge_count_in(c) > k * c.count_ones() as usize)
    else {
        return Err(Error::invariant("no component keeps more than k edges per vertex"));
    };
    trace.steps.push(TraceStep::Component {
        vertices: members(comp).collect(),
    });

    let Some(cycle) = smallest_long_cycle_in(g, comp, len) else {
        return Err(Error::invariant(format!(
            "dense component has no cycle of length >= {len}"
        )));
    };
    let case = CycleCase::of(cycle.len(), k).expect("cycle is long enough");
    trace.steps.push(TraceStep::Cycle {
        vertices: cycle.vertices.clone(),
        case,
    });

    match case {
        CycleCase::PlusOne => {
            // v_0..v_{2k+1} has adjacent endpoints.
            let chain = ForcedChain::new(len, vec![PathWitness::new(cycle.arc(0, 1, len))]);
            finish(cg, chain, trace).map(Outcome::Found)
        }
        CycleCase::PlusTwo => {
            // The long way from v_{2i} to v_{2i+2} has 2k + 1 edges; the
            // chain v_0 ~ v_2 ~ ... ~ v_{2k+2} closes on the edge v_{2k+2} v_0.
            let links = (0..=k as isize)
                .map(|i| PathWitness::new(cycle.arc(2 * i, -1, len)))
                .collect();
            finish(cg, ForcedChain::new(len, links), trace).map(Outcome::Found)
        }
        CycleCase::Long | CycleCase::Exact => {
            let outgoing = outgoing_map(cg, comp, &cycle);
            trace.steps.push(TraceStep::Outgoing {
                map: outgoing.clone(),
            });
            let mut builder = ChainBuilder::new(g.n(), len);
            if case == CycleCase::Long {
                long_cycle_obligations(cg, &cycle, &outgoing, k, &mut builder);
            } else {
                exact_cycle_obligations(cg, comp, &cycle, &outgoing, k, &mut builder);
            }
            if let Some(chain) = builder.conflict(g, comp) {
                return finish(cg, chain, trace).map(Outcome::Found);
            }
            if case == CycleCase::Long {
                return Ok(Outcome::Fallback(format!(
                    "cycle of length {} with no closing obligation chain",
                    cycle.len()
                )));
            }
            let is_out = |i: isize| {
                let p = i.rem_euclid(cycle.len() as isize) as usize;
                !outgoing[p].outside.is_empty()
            };
            if !(0..cycle.len() as isize).any(is_out) {
                return Err(Error::invariant(
                    "component is a single (2k+1)-vertex block yet exceeds k edges per vertex",
                ));
            }
            let Some(i) = (0..cycle.len() as isize).find(|&i| !is_out(i) && !is_out(i + 1) && is_out(i + 2))
            else {
                return Ok(Outcome::Fallback(
                    "no closing chain and no two consecutive cycle vertices without outside neighbors"
                        .into(),
                ));
            };
            let (x, y) = (cycle.at(i), cycle.at(i + 1));
            let edges_removed = g.degree_in(x, comp) + g.degree_in(y, comp) - 1;
            let rest = comp & !(bit(x) | bit(y));
            if g.edge_count_in(rest) <= k * rest.count_ones() as usize {
                return Ok(Outcome::Fallback(format!(
                    "deleting {x} and {y} removes {edges_removed} edges, more than the density slack"
                )));
            }
            trace.steps.push(TraceStep::Recurse {
                deleted: [x, y],
                edges_removed,
            });
            Ok(Outcome::Recurse(rest))
        }
    }
}

pub(crate) fn extract_in(
    cg: &ColoredGraph,
    scope: VertexMask,
    k: usize,
) -> Result<(PathWitness, ExtractionTrace)> {
    let g = cg.graph();
    if k == 0 {
        return Err(Error::Argument("k must be at least 1".into()));
    }
    limits::check("path extraction", g.n(), limits::MAX_N)?;
    let n = scope.count_ones() as usize;
    let e = g.edge_count_in(scope);
    if e <= k * n {
        return Err(Error::Precondition(format!(
            "{e} edges on {n} vertices is not more than k * n = {}",
            k * n
        )));
    }
    let len = 2 * k + 1;
    let mut trace = ExtractionTrace {
        k,
        scope: members(scope).collect(),
        steps: Vec::new(),
        depth: 0,
    };
    let mut alive = scope;
    let witness = loop {
        let outcome = one_level(cg, alive, k, &mut trace).map_err(|e| attach(e, &trace))?;
        match outcome {
            Outcome::Found(p) => break p,
            Outcome::Recurse(rest) => {
                trace.depth += 1;
                alive = rest;
            }
            Outcome::Fallback(reason) => {
                trace.steps.push(TraceStep::Fallback { reason });
                match find_bichromatic_path_in(g, cg.coloring(), scope, len) {
                    Some(p) => break p,
                    None => {
                        return Err(attach(
                            Error::invariant(format!(
                                "exhaustive search found no bichromatic P_{len} in a graph above the bound"
                            )),
                            &trace,
                        ))
                    }
                }
            }
        }
    };
    validate_path(g, &witness, len).map_err(|m| attach(Error::invariant(m), &trace))?;
    if !witness.is_bichromatic(cg.coloring()) {
        return Err(attach(Error::invariant("witness endpoints share a color"), &trace));
    }
    Ok((witness, trace))
}

fn attach(e: Error, trace: &ExtractionTrace) -> Error {
    match e {
        Error::Invariant { message, trace: None } => Error::Invariant {
            message,
            trace: Some(Box::new(trace.clone())),
        },
        other => other,
    }
}

pub fn extract_bichromatic_path(
    cg: &ColoredGraph,
    k: usize,
) -> Result<(PathWitness, ExtractionTrace)> {
    extract_in(cg, cg.graph().vertex_mask(), k)
}
