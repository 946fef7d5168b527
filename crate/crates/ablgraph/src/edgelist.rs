//! The edge-list text format.
//!
//! ```text
//! # optional comments
//! v 4
//! e 0 1
//! e 1 2
//! ```
//!
//! One `v <count>` line, then one `e <tail> <head>` line per edge in edge-id
//! order. Tokens are whitespace-separated decimal integers; `#` starts a
//! comment line; encoding is UTF-8 with LF line endings.

use thiserror::Error;

use crate::graph::{GraphError, Multigraph};

/// Parser guards against absurd allocations from hostile inputs.
pub const MAX_VERTICES: usize = 10_000_000;
pub const MAX_EDGES: usize = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing `v` vertex-count line")]
    MissingVertexCount,
    #[error("size limit exceeded: {0}")]
    TooLarge(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        message: message.into(),
    }
}

pub fn parse_edge_list(input: &str) -> Result<Multigraph, ParseError> {
    let mut vertex_count: Option<usize> = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for (i, raw) in input.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim_start();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let tag = tokens.next().expect("non-empty line has a token");
        match tag {
            "v" => {
                if vertex_count.is_some() {
                    return Err(syntax(line_no, "repeated `v` line"));
                }
                let n: usize = tokens
                    .next()
                    .ok_or_else(|| syntax(line_no, "`v` needs a count"))?
                    .parse()
                    .map_err(|_| syntax(line_no, "invalid vertex count"))?;
                if n > MAX_VERTICES {
                    return Err(ParseError::TooLarge(format!("{n} vertices")));
                }
                vertex_count = Some(n);
            }
            "e" => {
                let n = vertex_count.ok_or(ParseError::MissingVertexCount)?;
                let mut endpoint = || -> Result<usize, ParseError> {
                    let v: usize = tokens
                        .next()
                        .ok_or_else(|| syntax(line_no, "`e` needs tail and head"))?
                        .parse()
                        .map_err(|_| syntax(line_no, "invalid vertex id"))?;
                    if v >= n {
                        return Err(syntax(line_no, format!("vertex id {v} out of range")));
                    }
                    Ok(v)
                };
                let tail = endpoint()?;
                let head = endpoint()?;
                if edges.len() >= MAX_EDGES {
                    return Err(ParseError::TooLarge(format!("more than {MAX_EDGES} edges")));
                }
                edges.push((tail, head));
            }
            other => {
                return Err(syntax(line_no, format!("unknown directive {other:?}")));
            }
        }
        if let Some(extra) = tokens.next() {
            return Err(syntax(line_no, format!("trailing token {extra:?}")));
        }
    }
    let n = vertex_count.ok_or(ParseError::MissingVertexCount)?;
    Ok(Multigraph::new(n, edges)?)
}

pub fn write_edge_list(g: &Multigraph, comment: Option<&str>) -> String {
    let mut out = String::new();
    if let Some(c) = comment {
        for line in c.lines() {
            out.push_str("# ");
            out.push_str(line);
            out.push('\n');
        }
    }
    out.push_str(&format!("v {}\n", g.vertex_count()));
    for &(t, h) in g.edges() {
        out.push_str(&format!("e {t} {h}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::make_theta;

    #[test]
    fn round_trip() {
        let g = make_theta(1, 2, 2).unwrap();
        let text = write_edge_list(&g, Some("theta(1,2,2)"));
        assert!(text.starts_with("# theta(1,2,2)\nv 4\n"));
        assert!(text.ends_with('\n'));
        let parsed = parse_edge_list(&text).unwrap();
        assert_eq!(parsed, g);
    }

    #[test]
    fn parses_the_documented_form() {
        let g = parse_edge_list("# triangle\nv 3\ne 0 1\ne 1 2\ne 2 0\n").unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edges(), &[(0, 1), (1, 2), (2, 0)]);
        // Blank lines and comments between edges are fine.
        let g2 = parse_edge_list("v 3\n\ne 0 1\n# middle\ne 1 2\ne 2 0\n").unwrap();
        assert_eq!(g2, g);
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(matches!(
            parse_edge_list(""),
            Err(ParseError::MissingVertexCount)
        ));
        assert!(matches!(
            parse_edge_list("e 0 1\nv 2\n"),
            Err(ParseError::MissingVertexCount)
        ));
        assert!(parse_edge_list("v 2\nv 2\n").is_err());
        assert!(parse_edge_list("v 2\ne 0\n").is_err());
        assert!(parse_edge_list("v 2\ne 0 2\n").is_err());
        assert!(parse_edge_list("v 2\ne 0 1 9\n").is_err());
        assert!(parse_edge_list("v -1\n").is_err());
        assert!(parse_edge_list("w 2\n").is_err());
        assert!(parse_edge_list("v 99999999999\n").is_err());
    }

    #[test]
    fn accepts_loops_and_parallel_edges() {
        let g = parse_edge_list("v 2\ne 0 0\ne 0 1\ne 0 1\n").unwrap();
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g.degree(0), 4);
    }
}
