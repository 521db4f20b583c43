use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::limits;
use crate::search::tree::{LeafProfile, TreePattern};

use super::enumerate::enumerate_nonisomorphic;
use super::report::{compute_ex_c, ExtremalReport};

/// All trees with `k` edges up to isomorphism.
pub fn trees_with_edges(k: usize) -> Result<Vec<TreePattern>> {
    if k == 0 {
        return Ok(Vec::new());
    }
    Ok(enumerate_nonisomorphic(k + 1)?
        .into_iter()
        .filter(|g| g.edge_count() == k && g.is_connected())
        .map(|g| TreePattern::new(k, g.edges()).expect("connected with k edges"))
        .collect())
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct ConjectureRow {
    pub tree: String,
    pub edges: Vec<(usize, usize)>,
    pub k: usize,
    pub n: usize,
    pub mixed_sides: bool,
    /// `(k - 1) * n / 2`.
    pub bound: f64,
    pub ex_classic: usize,
    pub ex_colored: Option<usize>,
    pub classic_violation: bool,
    pub colored_violation: bool,
}

impl ConjectureRow {
    pub fn status(&self) -> &'static str {
        if self.classic_violation || self.colored_violation {
            "VIOLATION"
        } else {
            "consistent"
        }
    }
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct ConjectureScan {
    pub max_edges: usize,
    pub max_n: usize,
    /// The scan is evidence at small `n`, not a proof.
    pub note: String,
    pub rows: Vec<ConjectureRow>,
}

impl ConjectureScan {
    pub fn violations(&self) -> impl Iterator<Item = &ConjectureRow> {
        self.rows.iter().filter(|r| r.status() == "VIOLATION")
    }
}

fn classic_value(n: usize, t: &TreePattern) -> Result<ExtremalReport> {
    let forbidden = t.clone();
    super::report::scan(n, format!("no {t}"), move |g| {
        !crate::search::embed::contains_tree(g, &forbidden)
    })
}

/// Tabulates `ex(n, T)` and, for trees with leaves on both sides,
/// `ex^c(n, T)` against `(k - 1) * n / 2`.
pub fn conjecture_scan(max_edges: usize, max_n: usize) -> Result<ConjectureScan> {
    if max_edges > 5 {
        return Err(Error::Argument(format!("max_edges = {max_edges} exceeds 5")));
    }
    limits::check("conjecture scan", max_n, limits::MAX_N_ENUMERATE)?;
    let mut rows = Vec::new();
    for k in 1..=max_edges {
        for t in trees_with_edges(k)? {
            let mixed = t.profile() == LeafProfile::MixedSides;
            for n in 1..=max_n {
                let bound = ((k - 1) * n) as f64 / 2.0;
                let ex_classic = classic_value(n, &t)?.value;
                let ex_colored = if mixed {
                    Some(compute_ex_c(n, &t)?.value)
                } else {
                    None
                };
                rows.push(ConjectureRow {
                    tree: t.describe(),
                    edges: t.edges().to_vec(),
                    k,
                    n,
                    mixed_sides: mixed,
                    bound,
                    ex_classic,
                    ex_colored,
                    classic_violation: ex_classic as f64 > bound + 1e-9,
                    colored_violation: ex_colored.is_some_and(|v| v as f64 > bound + 1e-9),
                });
            }
        }
    }
    Ok(ConjectureScan {
        max_edges,
        max_n,
        note: "exhaustive at small n; evidence only, not a proof".into(),
        rows,
    })
}
