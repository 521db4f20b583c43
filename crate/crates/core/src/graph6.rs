//! graph6 encoding (no `>>graph6<<` header), restricted to the small-n form
//! where the vertex count is a single byte.

use crate::error::{Error, Result};
use crate::graph::{bit, Graph};
use crate::limits;

const BIAS: u8 = 63;
const MAX_BYTE: u8 = 126;

fn data_len(n: usize) -> usize {
    (n * n.saturating_sub(1) / 2).div_ceil(6)
}

pub fn parse_graph6(text: &str) -> Result<Graph> {
    let bytes = text.as_bytes();
    let Some(&first) = bytes.first() else {
        return Err(Error::parse(0, "empty input"));
    };
    if !(BIAS..=MAX_BYTE).contains(&first) {
        return Err(Error::parse(0, format!("invalid length byte 0x{first:02x}")));
    }
    if first == MAX_BYTE {
        return Err(Error::parse(0, "multi-byte vertex counts (n > 62) are not supported"));
    }
    let n = (first - BIAS) as usize;
    limits::check("graph6", n, limits::MAX_N).map_err(|e| Error::parse(0, e.to_string()))?;

    let expected = data_len(n);
    let body = &bytes[1..];
    if body.len() < expected {
        return Err(Error::parse(
            bytes.len(),
            format!("truncated: {n} vertices need {expected} data bytes, found {}", body.len()),
        ));
    }
    if body.len() > expected {
        return Err(Error::parse(1 + expected, "trailing bytes after adjacency data"));
    }
    for (i, &b) in body.iter().enumerate() {
        if !(BIAS..=MAX_BYTE).contains(&b) {
            return Err(Error::parse(1 + i, format!("invalid data byte 0x{b:02x}")));
        }
    }

    let mut g = Graph::empty(n);
    let mut k = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - BIAS;
            if byte & (1 << (5 - k % 6)) != 0 {
                g.add_edge(i, j);
            }
            k += 1;
        }
    }
    if k % 6 != 0 {
        let last = body[k / 6] - BIAS;
        let pad = (1u8 << (6 - k % 6)) - 1;
        if last & pad != 0 {
            return Err(Error::parse(1 + k / 6, "nonzero padding bits"));
        }
    }
    Ok(g)
}

pub fn emit_graph6(g: &Graph) -> String {
    let n = g.n();
    assert!(n <= 62, "graph6 short form needs n <= 62");
    let mut out = Vec::with_capacity(1 + data_len(n));
    out.push(BIAS + n as u8);
    let mut acc = 0u8;
    let mut k = 0usize;
    for j in 1..n {
        let column = g.neighbors(j);
        for i in 0..j {
            acc = (acc << 1) | u8::from(column & bit(i) != 0);
            k += 1;
            if k % 6 == 0 {
                out.push(BIAS + acc);
                acc = 0;
            }
        }
    }
    if k % 6 != 0 {
        out.push(BIAS + (acc << (6 - k % 6)));
    }
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

/// Parses a newline-separated corpus, skipping blank lines and an optional
/// `>>graph6<<` header on the first line.
pub fn parse_corpus(text: &str) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim_end_matches('\r');
        if line.is_empty() {
            continue;
        }
        let line = if i == 0 {
            line.strip_prefix(">>graph6<<").unwrap_or(line)
        } else {
            line
        };
        let g = parse_graph6(line).map_err(|e| Error::line(i + 1, e.to_string()))?;
        out.push(g);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_strings() {
        assert_eq!(parse_graph6("Bw").unwrap(), Graph::complete(3));
        assert_eq!(parse_graph6("D~{").unwrap(), Graph::complete(5));
        assert_eq!(parse_graph6("A?").unwrap(), Graph::empty(2));
        assert_eq!(emit_graph6(&Graph::complete(3)), "Bw");
        assert_eq!(emit_graph6(&Graph::empty(1)), "@");
        assert_eq!(emit_graph6(&Graph::empty(0)), "?");
    }

    #[test]
    fn petgraph_reference_string() {
        // A-C, A-E, B-D, D-E on five vertices.
        let g = Graph::from_edges(5, &[(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(emit_graph6(&g), "DQc");
    }

    #[test]
    fn errors_name_offsets() {
        match parse_graph6("") {
            Err(Error::Parse { offset: 0, .. }) => {}
            other => panic!("{other:?}"),
        }
        match parse_graph6("B") {
            Err(Error::Parse { offset: 1, .. }) => {}
            other => panic!("{other:?}"),
        }
        match parse_graph6("Bww") {
            Err(Error::Parse { offset: 2, .. }) => {}
            other => panic!("{other:?}"),
        }
        match parse_graph6("B!") {
            Err(Error::Parse { offset: 1, .. }) => {}
            other => panic!("{other:?}"),
        }
        // 17 vertices is past the general guard.
        assert!(matches!(parse_graph6("P"), Err(Error::Parse { offset: 0, .. })));
        assert!(parse_graph6("~??").is_err());
        // K_3 bits are 111 followed by zero padding; 'x' sets a padding bit.
        assert!(parse_graph6("Bx").is_err());
    }

    #[test]
    fn corpus_skips_blank_lines() {
        let gs = parse_corpus(">>graph6<<Bw\n\nD~{\r\n").unwrap();
        assert_eq!(gs, vec![Graph::complete(3), Graph::complete(5)]);
        assert!(matches!(parse_corpus("Bw\nB\n"), Err(Error::ParseLine { line: 2, .. })));
    }
}
