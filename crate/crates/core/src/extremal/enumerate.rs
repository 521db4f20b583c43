use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;

use crate::canon::{canonical_form, CanonicalForm};
use crate::error::Result;
use crate::graph::{bit, full_mask, Graph};
use crate::limits;

type Level = Arc<Vec<CanonicalForm>>;

fn cache() -> &'static Mutex<HashMap<usize, Level>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Level>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Every child of `parent` obtained by adding one vertex with any
/// neighborhood.
fn children(parent: &Graph) -> Vec<CanonicalForm> {
    let m = parent.n();
    let mut base = parent.adjacency().to_vec();
    base.push(0);
    (0..=full_mask(m))
        .map(|nbrs| {
            let mut adj = base.clone();
            adj[m] = nbrs;
            for v in crate::graph::members(nbrs) {
                adj[v] |= bit(m);
            }
            let g = Graph::from_adjacency(adj).expect("symmetric by construction");
            canonical_form(&g).expect("size checked by caller")
        })
        .collect()
}

/// Canonical forms of all graphs on `n` vertices up to isomorphism, in
/// ascending canonical order.
pub fn enumerate_canonical(n: usize) -> Result<Level> {
    limits::check_with_hard(
        "enumeration",
        n,
        limits::MAX_N_ENUMERATE,
        limits::HARD_MAX_N_CANONICAL,
    )?;
    if let Some(level) = cache().lock().unwrap().get(&n) {
        return Ok(level.clone());
    }
    let level: Vec<CanonicalForm> = if n == 0 {
        vec![canonical_form(&Graph::empty(0))?]
    } else {
        let parents = enumerate_canonical(n - 1)?;
        let shards: Vec<Vec<CanonicalForm>> = parents
            .par_iter()
            .map(|p| children(&p.to_graph()))
            .collect();
        let set: BTreeSet<CanonicalForm> = shards.into_iter().flatten().collect();
        set.into_iter().collect()
    };
    let level = Arc::new(level);
    cache().lock().unwrap().insert(n, level.clone());
    Ok(level)
}

/// One representative per isomorphism class on `n` vertices.
pub fn enumerate_nonisomorphic(n: usize) -> Result<Vec<Graph>> {
    Ok(enumerate_canonical(n)?.iter().map(CanonicalForm::to_graph).collect())
}

/// Independent check: canonical forms of every labeled graph on `n`
/// vertices, deduplicated.
pub fn labeled_filter(n: usize) -> Result<Vec<CanonicalForm>> {
    limits::check("labeled enumeration", n, 6)?;
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|j| (0..j).map(move |i| (i, j)))
        .collect();
    let mut set = BTreeSet::new();
    for bits in 0u64..1 << pairs.len() {
        let mut g = Graph::empty(n);
        for (k, &(i, j)) in pairs.iter().enumerate() {
            if bits >> k & 1 == 1 {
                g.add_edge(i, j);
            }
        }
        set.insert(canonical_form(&g)?);
    }
    Ok(set.into_iter().collect())
}
