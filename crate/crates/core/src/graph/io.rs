//! Edge-list text format: a header line `n m`, then `m` lines `u v` with
//! `u < v`, LF separated.

use std::fmt::Write as _;

use super::{Graph, GraphError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, message: impl Into<String>) -> Self {
        Self {
            line,
            message: message.into(),
        }
    }
}

fn two_numbers(line_no: usize, line: &str, what: &str) -> Result<(usize, usize), ParseError> {
    let mut it = line.split(' ');
    let parse = |tok: Option<&str>| -> Result<usize, ParseError> {
        let tok = tok.ok_or_else(|| ParseError::new(line_no, format!("malformed {what}: {line:?}")))?;
        if tok.is_empty() || !tok.bytes().all(|b| b.is_ascii_digit()) {
            return Err(ParseError::new(line_no, format!("malformed {what}: {line:?}")));
        }
        tok.parse()
            .map_err(|_| ParseError::new(line_no, format!("number out of range in {what}: {line:?}")))
    };
    let a = parse(it.next())?;
    let b = parse(it.next())?;
    if it.next().is_some() {
        return Err(ParseError::new(line_no, format!("malformed {what}: {line:?}")));
    }
    Ok((a, b))
}

/// Parses an edge-list document. Errors carry the 1-based line number.
pub fn parse_graph(text: &str) -> Result<Graph, GraphError> {
    let mut lines = text.split('\n').enumerate().map(|(i, l)| (i + 1, l));
    let (_, header) = lines
        .next()
        .filter(|(_, l)| !l.is_empty())
        .ok_or_else(|| ParseError::new(1, "missing header"))?;
    let (n, m) = two_numbers(1, header, "header")?;

    let mut pairs = Vec::with_capacity(m);
    let mut seen = std::collections::HashSet::with_capacity(m);
    for (line_no, line) in lines.by_ref() {
        if pairs.len() == m {
            if line.is_empty() {
                continue;
            }
            return Err(ParseError::new(line_no, format!("more than {m} edge lines")).into());
        }
        let (u, v) = two_numbers(line_no, line, "edge line")?;
        if u >= n || v >= n {
            return Err(ParseError::new(line_no, format!("vertex {} out of range for n = {n}", u.max(v))).into());
        }
        if u == v {
            return Err(ParseError::new(line_no, format!("loop at vertex {u}")).into());
        }
        if u > v {
            return Err(ParseError::new(line_no, format!("edge {u} {v} not in ascending order")).into());
        }
        if !seen.insert((u, v)) {
            return Err(ParseError::new(line_no, format!("duplicate edge {u} {v}")).into());
        }
        pairs.push((u, v));
    }
    if pairs.len() != m {
        return Err(ParseError::new(
            m.min(pairs.len()) + 2,
            format!("expected {m} edge lines, found {}", pairs.len()),
        )
        .into());
    }
    Graph::new(n, pairs)
}

/// Serializes with edges in lexicographic order and no trailing newline.
pub fn serialize_graph(g: &Graph) -> String {
    let mut out = String::with_capacity(8 + 8 * g.m());
    let _ = write!(out, "{} {}", g.n(), g.m());
    for e in g.edges() {
        let _ = write!(out, "\n{} {}", e.lo(), e.hi());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line_of(err: GraphError) -> usize {
        match err {
            GraphError::Parse(p) => p.line,
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn parses_triangle() {
        let g = parse_graph("3 3\n0 1\n1 2\n0 2").unwrap();
        assert_eq!((g.n(), g.m()), (3, 3));
        assert!(g.has_edge(0, 2));
    }

    #[test]
    fn parses_edgeless() {
        let g = parse_graph("2 0").unwrap();
        assert_eq!((g.n(), g.m()), (2, 0));
        // a trailing newline is tolerated
        assert_eq!(parse_graph("2 0\n").unwrap(), g);
    }

    #[test]
    fn loop_reported_at_line_two() {
        let err = parse_graph("3 1\n0 0").unwrap_err();
        assert!(err.to_string().contains("loop"));
        assert_eq!(line_of(err), 2);
    }

    #[test]
    fn error_lines() {
        assert_eq!(line_of(parse_graph("3 x\n").unwrap_err()), 1);
        assert_eq!(line_of(parse_graph("").unwrap_err()), 1);
        assert_eq!(line_of(parse_graph("3 2\n0 1\n0 3").unwrap_err()), 3);
        assert_eq!(line_of(parse_graph("3 2\n0 1\n0 1").unwrap_err()), 3);
        assert_eq!(line_of(parse_graph("3 2\n0 1").unwrap_err()), 3);
        assert_eq!(line_of(parse_graph("3 1\n0 1\n1 2").unwrap_err()), 3);
        assert_eq!(line_of(parse_graph("3 1\n0  1").unwrap_err()), 2);
    }

    #[test]
    fn serializes_exactly() {
        let k2 = Graph::new(2, [(0, 1)]).unwrap();
        assert_eq!(serialize_graph(&k2), "2 1\n0 1");
        assert_eq!(serialize_graph(&Graph::empty(1)), "1 0");
        let g = Graph::new(4, [(2, 3), (0, 3), (0, 1)]).unwrap();
        assert_eq!(serialize_graph(&g), "4 3\n0 1\n0 3\n2 3");
    }
}
