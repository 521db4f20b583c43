//! Disjoint sets that remember why each merge happened.
//!
//! Every successful union records a labeled edge in a separate spanning
//! forest. The forest is never compressed, so the labels on the unique forest
//! path between two members of a class form a linear-size explanation of why
//! they were merged.

#[derive(Clone, Debug)]
pub struct ProvenanceUnionFind<L> {
    parent: Vec<usize>,
    size: Vec<usize>,
    forest: Vec<Vec<(usize, usize)>>,
    labels: Vec<L>,
}

/// One forest edge on an explanation path, oriented from `from` to `to`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Step<'a, L> {
    pub from: usize,
    pub to: usize,
    pub label: &'a L,
}

impl<L> ProvenanceUnionFind<L> {
    pub fn new(n: usize) -> Self {
        ProvenanceUnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
            forest: vec![Vec::new(); n],
            labels: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[x] != root {
            let next = self.parent[x];
            self.parent[x] = root;
            x = next;
        }
        root
    }

    /// Root lookup without compression, for shared references.
    pub fn root(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    pub fn same(&self, x: usize, y: usize) -> bool {
        self.root(x) == self.root(y)
    }

    /// Merges the classes of `x` and `y`, recording `label` as the reason.
    /// Returns false, dropping the label, if they were already together.
    pub fn union(&mut self, x: usize, y: usize, label: L) -> bool {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx == ry {
            return false;
        }
        let (big, small) = if self.size[rx] >= self.size[ry] {
            (rx, ry)
        } else {
            (ry, rx)
        };
        self.parent[small] = big;
        self.size[big] += self.size[small];
        let id = self.labels.len();
        self.labels.push(label);
        self.forest[x].push((y, id));
        self.forest[y].push((x, id));
        true
    }

    pub fn merges(&self) -> usize {
        self.labels.len()
    }

    /// Forest path from `x` to `y`, or `None` if they lie in different classes.
    pub fn explain(&self, x: usize, y: usize) -> Option<Vec<Step<'_, L>>> {
        if !self.same(x, y) {
            return None;
        }
        let n = self.parent.len();
        let mut prev: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut seen = vec![false; n];
        seen[x] = true;
        let mut queue = std::collections::VecDeque::from([x]);
        while let Some(v) = queue.pop_front() {
            if v == y {
                break;
            }
            for &(u, id) in &self.forest[v] {
                if !seen[u] {
                    seen[u] = true;
                    prev[u] = Some((v, id));
                    queue.push_back(u);
                }
            }
        }
        let mut steps = Vec::new();
        let mut at = y;
        while at != x {
            let (from, id) = prev[at]?;
            steps.push(Step {
                from,
                to: at,
                label: &self.labels[id],
            });
            at = from;
        }
        steps.reverse();
        Some(steps)
    }

    /// Members of every class, each sorted, classes ordered by smallest member.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let n = self.parent.len();
        let mut by_root: Vec<Vec<usize>> = vec![Vec::new(); n];
        for v in 0..n {
            by_root[self.root(v)].push(v);
        }
        let mut out: Vec<Vec<usize>> = by_root.into_iter().filter(|c| !c.is_empty()).collect();
        out.sort_by_key(|c| c[0]);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn explanations_follow_merges() {
        let mut uf = ProvenanceUnionFind::new(6);
        assert!(uf.union(0, 1, "a"));
        assert!(uf.union(2, 3, "b"));
        assert!(uf.union(1, 3, "c"));
        assert!(!uf.union(0, 2, "redundant"));
        assert_eq!(uf.merges(), 3);
        let steps = uf.explain(0, 2).unwrap();
        let labels: Vec<&str> = steps.iter().map(|s| *s.label).collect();
        assert_eq!(labels, vec!["a", "c", "b"]);
        assert_eq!(steps[0].from, 0);
        assert_eq!(steps.last().unwrap().to, 2);
        for w in steps.windows(2) {
            assert_eq!(w[0].to, w[1].from);
        }
        assert!(uf.explain(0, 4).is_none());
        assert_eq!(uf.explain(5, 5).unwrap().len(), 0);
        assert_eq!(
            uf.classes(),
            vec![vec![0, 1, 2, 3], vec![4], vec![5]]
        );
    }
}
