//! Structural checks for witnesses, written directly against the
//! definitions and sharing no code with the searches that produce them.

use crate::graph::{bit, Graph, VertexMask};
use crate::search::cycles::CycleWitness;
use crate::search::double_star::DoubleStarWitness;
use crate::search::paths::PathWitness;
use crate::search::tree::TreePattern;

type Check = Result<(), String>;

fn distinct(g: &Graph, vertices: &[usize]) -> Result<VertexMask, String> {
    let mut seen: VertexMask = 0;
    for &v in vertices {
        if v >= g.n() {
            return Err(format!("vertex {v} out of range"));
        }
        if seen & bit(v) != 0 {
            return Err(format!("vertex {v} repeated"));
        }
        seen |= bit(v);
    }
    Ok(seen)
}

pub fn validate_path(g: &Graph, p: &PathWitness, len: usize) -> Check {
    if p.vertices.len() != len + 1 {
        return Err(format!("path has {} vertices, expected {}", p.vertices.len(), len + 1));
    }
    distinct(g, &p.vertices)?;
    for w in p.vertices.windows(2) {
        if !g.has_edge(w[0], w[1]) {
            return Err(format!("{{{}, {}}} is not an edge", w[0], w[1]));
        }
    }
    Ok(())
}

pub fn validate_cycle(g: &Graph, c: &CycleWitness, min_len: usize) -> Check {
    let l = c.vertices.len();
    if l < 3 || l < min_len {
        return Err(format!("cycle length {l} below {}", min_len.max(3)));
    }
    distinct(g, &c.vertices)?;
    for i in 0..l {
        let (x, y) = (c.vertices[i], c.vertices[(i + 1) % l]);
        if !g.has_edge(x, y) {
            return Err(format!("{{{x}, {y}}} is not an edge"));
        }
    }
    Ok(())
}

pub fn validate_double_star(g: &Graph, w: &DoubleStarWitness, a: usize, b: usize) -> Check {
    if w.a_leaves.len() != a || w.b_leaves.len() != b {
        return Err(format!(
            "leaf counts ({}, {}) differ from ({a}, {b})",
            w.a_leaves.len(),
            w.b_leaves.len()
        ));
    }
    let mut all = vec![w.u, w.v];
    all.extend(w.leaves());
    distinct(g, &all)?;
    if !g.has_edge(w.u, w.v) {
        return Err("centers are not adjacent".into());
    }
    for &x in &w.a_leaves {
        if !g.has_edge(w.u, x) {
            return Err(format!("leaf {x} is not adjacent to center {}", w.u));
        }
    }
    for &x in &w.b_leaves {
        if !g.has_edge(w.v, x) {
            return Err(format!("leaf {x} is not adjacent to center {}", w.v));
        }
    }
    Ok(())
}

/// `images[t]` is the host vertex for tree vertex `t`.
pub fn validate_embedding(g: &Graph, t: &TreePattern, images: &[usize]) -> Check {
    if images.len() != t.vertex_count() {
        return Err(format!(
            "{} images for {} tree vertices",
            images.len(),
            t.vertex_count()
        ));
    }
    distinct(g, images)?;
    for &(a, b) in t.edges() {
        if !g.has_edge(images[a], images[b]) {
            return Err(format!("tree edge {a}-{b} maps to a non-edge"));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_broken_witnesses() {
        let g = Graph::cycle(5);
        assert!(validate_path(&g, &PathWitness::new(vec![0, 1, 2]), 2).is_ok());
        assert!(validate_path(&g, &PathWitness::new(vec![0, 2]), 1).is_err());
        assert!(validate_path(&g, &PathWitness::new(vec![0, 1, 0]), 2).is_err());
        assert!(validate_path(&g, &PathWitness::new(vec![0, 1]), 2).is_err());
        assert!(validate_cycle(&g, &CycleWitness::new(vec![0, 1, 2, 3, 4]), 5).is_ok());
        assert!(validate_cycle(&g, &CycleWitness::new(vec![0, 1, 2]), 3).is_err());
        let w = DoubleStarWitness {
            u: 1,
            v: 2,
            a_leaves: vec![0],
            b_leaves: vec![3],
        };
        assert!(validate_double_star(&g, &w, 1, 1).is_ok());
        assert!(validate_double_star(&g, &w, 1, 2).is_err());
        let t = TreePattern::path(2);
        assert!(validate_embedding(&g, &t, &[4, 0, 1]).is_ok());
        assert!(validate_embedding(&g, &t, &[4, 1, 0]).is_err());
    }
}
