//! Plain-text formats: edge lists, colorings, tree patterns, and the
//! auto-detecting graph reader used by the command line.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::{Coloring, Graph};
use crate::graph6::parse_graph6;
use crate::limits;
use crate::search::tree::TreePattern;

/// Non-blank lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
}

fn ints(line: usize, s: &str) -> Result<Vec<usize>> {
    s.split_whitespace()
        .map(|tok| {
            tok.parse::<usize>()
                .map_err(|_| Error::line(line, format!("expected a non-negative integer, found {tok:?}")))
        })
        .collect()
}

fn pair(line: usize, s: &str) -> Result<(usize, usize)> {
    match ints(line, s)?[..] {
        [a, b] => Ok((a, b)),
        _ => Err(Error::line(line, "expected two integers")),
    }
}

/// `n m` followed by `m` lines `u v`, vertices `0..n`.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = content_lines(text);
    let Some((l0, header)) = lines.next() else {
        return Err(Error::line(1, "empty edge list"));
    };
    let (n, m) = pair(l0, header)?;
    limits::check("edge list", n, limits::MAX_N).map_err(|e| Error::line(l0, e.to_string()))?;
    let mut g = Graph::empty(n);
    let mut last = l0;
    for i in 0..m {
        let Some((l, s)) = lines.next() else {
            return Err(Error::line(last + 1, format!("expected {m} edges, found {i}")));
        };
        last = l;
        let (u, v) = pair(l, s)?;
        if u >= n || v >= n {
            return Err(Error::line(l, format!("vertex out of range 0..{n}")));
        }
        if u == v {
            return Err(Error::line(l, format!("self-loop at {u}")));
        }
        if g.has_edge(u, v) {
            return Err(Error::line(l, format!("repeated edge {u} {v}")));
        }
        g.add_edge(u, v);
    }
    if let Some((l, _)) = lines.next() {
        return Err(Error::line(l, "trailing content after the declared edges"));
    }
    Ok(g)
}

pub fn emit_edge_list(g: &Graph) -> String {
    let edges = g.edges();
    let mut out = format!("{} {}\n", g.n(), edges.len());
    for (u, v) in edges {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

/// One line of space-separated colors. With `n` given, the length must match.
pub fn parse_coloring(text: &str, n: Option<usize>) -> Result<Coloring> {
    let mut lines = content_lines(text);
    let colors: Vec<u32> = match lines.next() {
        None => Vec::new(),
        Some((l, s)) => {
            if let Some((l2, _)) = lines.next() {
                return Err(Error::line(l2, "a coloring is a single line"));
            }
            s.split_whitespace()
                .map(|tok| {
                    tok.parse::<u32>()
                        .map_err(|_| Error::line(l, format!("invalid color {tok:?}")))
                })
                .collect::<Result<_>>()?
        }
    };
    if let Some(n) = n {
        if colors.len() != n {
            return Err(Error::Argument(format!(
                "coloring has {} entries for {n} vertices",
                colors.len()
            )));
        }
    }
    Ok(Coloring::new(colors))
}

pub fn emit_coloring(c: &Coloring) -> String {
    let mut out = c
        .as_slice()
        .iter()
        .map(u32::to_string)
        .collect::<Vec<_>>()
        .join(" ");
    out.push('\n');
    out
}

/// `k` followed by `k` lines `u v`, vertices `0..=k`.
pub fn parse_tree(text: &str) -> Result<TreePattern> {
    let mut lines = content_lines(text);
    let Some((l0, header)) = lines.next() else {
        return Err(Error::line(1, "empty tree file"));
    };
    let k = match ints(l0, header)?[..] {
        [k] => k,
        _ => return Err(Error::line(l0, "expected the edge count k")),
    };
    let mut edges = Vec::with_capacity(k);
    for (l, s) in lines {
        let (u, v) = pair(l, s)?;
        if u > k || v > k {
            return Err(Error::line(l, format!("vertex out of range 0..={k}")));
        }
        edges.push((u, v));
    }
    TreePattern::new(k, edges)
}

pub fn emit_tree(t: &TreePattern) -> String {
    let mut out = format!("{}\n", t.k());
    for (u, v) in t.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

/// Named trees: `path:L`, `star:L`, `double-star:A,B`, `spider:L1,L2,...`.
pub fn parse_tree_name(spec: &str) -> Result<TreePattern> {
    let (kind, args) = spec
        .split_once(':')
        .ok_or_else(|| Error::Argument(format!("tree name {spec:?} needs the form kind:args")))?;
    let nums = args
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| Error::Argument(format!("invalid number {s:?} in {spec:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    let positive = |v: &[usize]| v.iter().all(|&x| x > 0);
    match (kind, &nums[..]) {
        ("path", &[l]) if l > 0 => Ok(TreePattern::path(l)),
        ("star", &[l]) if l > 0 => Ok(TreePattern::star(l)),
        ("double-star", &[a, b]) if a > 0 && b > 0 => Ok(TreePattern::double_star(a, b)),
        ("spider", legs) if !legs.is_empty() && positive(legs) => Ok(TreePattern::spider(legs)),
        _ => Err(Error::Argument(format!("unrecognized tree {spec:?}"))),
    }
}

/// A graph given either as a single graph6 line or as an edge list.
pub fn parse_graph_text(text: &str) -> Result<Graph> {
    let first = content_lines(text).next().map(|(_, l)| l).unwrap_or("");
    let looks_numeric = first
        .split_whitespace()
        .all(|t| t.bytes().all(|b| b.is_ascii_digit()))
        && first.split_whitespace().count() == 2;
    if looks_numeric {
        return parse_edge_list(text);
    }
    let mut lines = content_lines(text);
    let Some((_, line)) = lines.next() else {
        return Err(Error::parse(0, "empty input"));
    };
    if let Some((l, _)) = lines.next() {
        return Err(Error::line(l, "expected a single graph6 line"));
    }
    parse_graph6(line.strip_prefix(">>graph6<<").unwrap_or(line))
}

fn read(path: &Path) -> Result<String> {
    Ok(std::fs::read_to_string(path)?)
}

pub fn read_graph(path: &Path) -> Result<Graph> {
    parse_graph_text(&read(path)?)
}

pub fn read_coloring(path: &Path, n: usize) -> Result<Coloring> {
    parse_coloring(&read(path)?, Some(n))
}

/// A tree from a file, or from a name such as `path:3` when no file by that
/// name exists.
pub fn read_tree(spec: &str) -> Result<TreePattern> {
    let path = Path::new(spec);
    if path.is_file() {
        parse_tree(&read(path)?)
    } else {
        parse_tree_name(spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_list_round_trip() {
        let g = Graph::cycle(5);
        let text = emit_edge_list(&g);
        assert!(text.starts_with("5 5\n"));
        assert_eq!(parse_edge_list(&text).unwrap(), g);
        assert_eq!(parse_graph_text(&text).unwrap(), g);
        assert_eq!(parse_graph_text("Bw\n").unwrap(), Graph::complete(3));
    }

    #[test]
    fn edge_list_errors_name_lines() {
        for (text, line) in [
            ("3 2\n0 1\n", 3),
            ("3 1\n0 3\n", 2),
            ("3 1\n1 1\n", 2),
            ("3 2\n0 1\n1 0\n", 3),
            ("3 1\n0 1\n1 2\n", 3),
            ("3 x\n", 1),
        ] {
            match parse_edge_list(text) {
                Err(Error::ParseLine { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn colorings() {
        let c = parse_coloring("0 1 2 0 1 2\n", Some(6)).unwrap();
        assert_eq!(c.as_slice(), &[0, 1, 2, 0, 1, 2]);
        assert_eq!(emit_coloring(&c), "0 1 2 0 1 2\n");
        assert!(parse_coloring("0 1\n", Some(3)).is_err());
        assert!(parse_coloring("0 -1\n", None).is_err());
    }

    #[test]
    fn trees() {
        let t = parse_tree("3\n0 1\n1 2\n2 3\n").unwrap();
        assert_eq!(t.as_path(), Some(3));
        assert_eq!(parse_tree(&emit_tree(&t)).unwrap().edges(), t.edges());
        assert!(parse_tree("2\n0 1\n0 1\n").is_err());
        assert!(parse_tree("3\n0 1\n1 2\n2 0\n").is_err());
        assert_eq!(parse_tree_name("double-star:1,2").unwrap().as_double_star(), Some((1, 2)));
        assert_eq!(parse_tree_name("star:3").unwrap().k(), 3);
        assert!(parse_tree_name("path:0").is_err());
        assert!(parse_tree_name("cycle:3").is_err());
    }
}
