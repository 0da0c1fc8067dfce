//! Graph text formats: the edge-list format and graph6.
//!
//! Edge-list: first effective line `n m`, then `m` lines `u v` with
//! `0 <= u < v < n`. Whitespace-separated; `#` starts a comment. graph6 is
//! the standard ASCII encoding (one graph per line).

use super::Graph;
use crate::error::{Error, Result};

/// Parse the edge-list format. Errors name the offending 1-based line.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut effective: Vec<(usize, &str)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        };
        let line = line.trim();
        if !line.is_empty() {
            effective.push((idx + 1, line));
        }
    }
    let Some(&(hline, header)) = effective.first() else {
        return Err(Error::parse(1, "empty input"));
    };
    let mut it = header.split_whitespace();
    let n: usize = it
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| Error::parse(hline, "expected vertex count"))?;
    let m: usize = it
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| Error::parse(hline, "expected edge count"))?;
    if it.next().is_some() {
        return Err(Error::parse(hline, "trailing tokens after header"));
    }
    if effective.len() - 1 != m {
        return Err(Error::parse(
            hline,
            format!("declared {m} edges but found {}", effective.len() - 1),
        ));
    }
    let mut g = Graph::new(n);
    for &(lno, line) in &effective[1..] {
        let mut it = line.split_whitespace();
        let u: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::parse(lno, "expected vertex index"))?;
        let v: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::parse(lno, "expected vertex index"))?;
        if it.next().is_some() {
            return Err(Error::parse(lno, "trailing tokens after edge"));
        }
        if u >= n || v >= n {
            return Err(Error::parse(lno, format!("vertex index out of range: {u} {v} (n = {n})")));
        }
        if u == v {
            return Err(Error::parse(lno, format!("loop edge {u} {v}")));
        }
        if u > v {
            return Err(Error::parse(lno, format!("edge must satisfy u < v: {u} {v}")));
        }
        if g.has_edge(u, v) {
            return Err(Error::parse(lno, format!("duplicate edge {u} {v}")));
        }
        g.add_edge(u, v)?;
    }
    Ok(g)
}

/// Decode a graph6 string (a single graph; trailing whitespace ignored).
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let s = text.trim();
    let s = s.strip_prefix(">>graph6<<").unwrap_or(s);
    let bytes = s.as_bytes();
    if bytes.is_empty() {
        return Err(Error::parse(1, "empty graph6 input"));
    }
    for (i, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(Error::parse(1, format!("invalid graph6 byte {b:#x} at offset {i}")));
        }
    }
    let (n, mut pos) = if bytes[0] == 126 {
        if bytes.len() >= 2 && bytes[1] == 126 {
            if bytes.len() < 8 {
                return Err(Error::parse(1, "truncated graph6 size field"));
            }
            let mut n: usize = 0;
            for &b in &bytes[2..8] {
                n = n << 6 | (b - 63) as usize;
            }
            (n, 8)
        } else {
            if bytes.len() < 4 {
                return Err(Error::parse(1, "truncated graph6 size field"));
            }
            let mut n: usize = 0;
            for &b in &bytes[1..4] {
                n = n << 6 | (b - 63) as usize;
            }
            (n, 4)
        }
    } else {
        ((bytes[0] - 63) as usize, 1)
    };
    let nbits = n * n.saturating_sub(1) / 2;
    let needed = nbits.div_ceil(6);
    if bytes.len() - pos < needed {
        return Err(Error::parse(1, format!("graph6 body too short: need {needed} chars")));
    }
    let mut g = Graph::new(n);
    let mut bit = 0usize;
    // Column-major upper triangle: (0,1), (0,2), (1,2), (0,3), ...
    'outer: for v in 1..n {
        for u in 0..v {
            let byte = bytes[pos + bit / 6] - 63;
            let set = byte >> (5 - bit % 6) & 1 == 1;
            if set {
                g.add_edge(u, v)?;
            }
            bit += 1;
            if bit == nbits {
                break 'outer;
            }
        }
    }
    pos += needed;
    if bytes.len() > pos {
        return Err(Error::parse(1, "trailing bytes after graph6 body"));
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{generate, Family};

    #[test]
    fn parse_c5() {
        let g = parse_edge_list("5 5\n0 1\n1 2\n2 3\n3 4\n0 4\n").unwrap();
        assert_eq!(g, generate(&Family::Cycle(5)).unwrap());
        assert_eq!(g.edge_count(), 5);
    }

    #[test]
    fn parse_k1() {
        let g = parse_edge_list("1 0").unwrap();
        assert_eq!(g.n(), 1);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn comments_and_whitespace() {
        let g = parse_edge_list("# triangle\n3 3 # header\n0 1\n1 2\n\n0 2\n").unwrap();
        assert_eq!(g, generate(&Family::Complete(3)).unwrap());
    }

    #[test]
    fn parse_errors_name_lines() {
        let err = parse_edge_list("3 1\n0 5\n").unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
        assert!(parse_edge_list("3 1\n1 1\n").is_err()); // loop
        assert!(parse_edge_list("3 2\n0 1\n0 1\n").is_err()); // duplicate
        assert!(parse_edge_list("3 2\n0 1\n").is_err()); // count mismatch
        assert!(parse_edge_list("3 1\n1 0\n").is_err()); // u >= v
    }

    #[test]
    fn graph6_cross_decode() {
        // "D~{" decodes to K5; cross-check against an independently
        // written edge list of the same graph.
        let g = parse_graph6("D~{").unwrap();
        let el = parse_edge_list("5 10\n0 1\n0 2\n0 3\n0 4\n1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n").unwrap();
        assert_eq!(g, el);
    }

    #[test]
    fn graph6_roundtrip_values() {
        // "Dhc" is C5 in graph6 (bits for edges 01,12,23,34,04).
        let c5 = generate(&Family::Cycle(5)).unwrap();
        let g = parse_graph6("Dhc").unwrap();
        assert_eq!(g.n(), 5);
        assert_eq!(g.edge_count(), 5);
        assert!(crate::graphs::is_isomorphic_small(&g, &c5).unwrap());
    }

    #[test]
    fn graph6_rejects_bad_bytes() {
        assert!(parse_graph6("D~\u{7f}").is_err());
        assert!(parse_graph6("").is_err());
    }
}
