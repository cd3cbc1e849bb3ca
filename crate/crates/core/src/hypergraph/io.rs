//! The `uhg` text format.
//!
//! ```text
//! # optional comments
//! uhg <uniformity> <n> <m>
//! <v_1> ... <v_{r+1}>     (m lines, ascending 0-based indices)
//! ```

use super::{HypergraphError, UniformHypergraph, Vertex};
use std::io::{BufRead, Write};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum UhgError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: {source}")]
    Invalid {
        line: usize,
        #[source]
        source: HypergraphError,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn parse_err(line: usize, message: impl Into<String>) -> UhgError {
    UhgError::Parse {
        line,
        message: message.into(),
    }
}

pub fn parse_uhg(text: &str) -> Result<UniformHypergraph, UhgError> {
    read_uhg(text.as_bytes())
}

pub fn read_uhg<R: BufRead>(reader: R) -> Result<UniformHypergraph, UhgError> {
    let mut header: Option<(usize, usize, usize, usize)> = None;
    let mut edges: Vec<Vec<Vertex>> = Vec::new();
    let mut edge_lines: Vec<usize> = Vec::new();

    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        match header {
            None => {
                let fields: Vec<&str> = trimmed.split_whitespace().collect();
                if fields.len() != 4 || fields[0] != "uhg" {
                    return Err(parse_err(
                        lineno,
                        "expected header `uhg <uniformity> <n> <m>`",
                    ));
                }
                let num = |s: &str, what: &str| {
                    s.parse::<usize>()
                        .map_err(|_| parse_err(lineno, format!("invalid {what} `{s}`")))
                };
                let k = num(fields[1], "uniformity")?;
                if k < 2 {
                    return Err(UhgError::Invalid {
                        line: lineno,
                        source: HypergraphError::InvalidUniformity(k),
                    });
                }
                header = Some((
                    k,
                    num(fields[2], "vertex count")?,
                    num(fields[3], "edge count")?,
                    lineno,
                ));
            }
            Some((k, n, m, _)) => {
                if edges.len() == m {
                    return Err(parse_err(
                        lineno,
                        format!("more than the declared {m} edges"),
                    ));
                }
                let edge = trimmed
                    .split_whitespace()
                    .map(|s| {
                        s.parse::<Vertex>()
                            .map_err(|_| parse_err(lineno, format!("invalid vertex `{s}`")))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                if edge.len() != k {
                    return Err(UhgError::Invalid {
                        line: lineno,
                        source: HypergraphError::WrongArity {
                            edge: edges.len(),
                            expected: k,
                            found: edge.len(),
                        },
                    });
                }
                if let Some(&v) = edge.iter().find(|&&v| v >= n) {
                    return Err(UhgError::Invalid {
                        line: lineno,
                        source: HypergraphError::VertexOutOfRange { vertex: v, n },
                    });
                }
                edges.push(edge);
                edge_lines.push(lineno);
            }
        }
    }

    let (k, n, m, header_line) = header.ok_or_else(|| parse_err(0, "missing `uhg` header"))?;
    if edges.len() != m {
        return Err(parse_err(
            header_line,
            format!("header declares {m} edges, found {}", edges.len()),
        ));
    }
    UniformHypergraph::new(k, n, &edges).map_err(|source| {
        let line = match &source {
            HypergraphError::DuplicateVertexInEdge { edge, .. }
            | HypergraphError::WrongArity { edge, .. } => edge_lines[*edge],
            _ => header_line,
        };
        UhgError::Invalid { line, source }
    })
}

pub fn write_uhg<W: Write>(h: &UniformHypergraph, mut out: W) -> std::io::Result<()> {
    writeln!(
        out,
        "uhg {} {} {}",
        h.uniformity(),
        h.num_vertices(),
        h.num_edges()
    )?;
    for edge in h.edges() {
        let line: Vec<String> = edge.iter().map(|v| v.to_string()).collect();
        writeln!(out, "{}", line.join(" "))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_with_comments() {
        let h = parse_uhg("# fano-ish\nuhg 3 4 2\n0 1 2\n\n0 1 3\n").unwrap();
        assert_eq!(h.num_edges(), 2);
        assert_eq!(h.uniformity(), 3);
    }

    #[test]
    fn round_trips_through_text() {
        let h = UniformHypergraph::new(3, 6, [[0, 4, 5], [1, 2, 3], [0, 1, 2]]).unwrap();
        let mut buf = Vec::new();
        write_uhg(&h, &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf.clone()).unwrap(),
            "uhg 3 6 3\n0 1 2\n0 4 5\n1 2 3\n"
        );
        assert_eq!(read_uhg(&buf[..]).unwrap(), h);
    }

    #[test]
    fn reports_line_numbers() {
        let err = parse_uhg("uhg 2 3 2\n0 1\n0 x\n").unwrap_err();
        assert!(matches!(err, UhgError::Parse { line: 3, .. }), "{err}");

        let err = parse_uhg("# c\nuhg 3 3 1\n0 0 1\n").unwrap_err();
        assert!(
            matches!(
                err,
                UhgError::Invalid {
                    line: 3,
                    source: HypergraphError::DuplicateVertexInEdge { .. }
                }
            ),
            "{err}"
        );

        let err = parse_uhg("uhg 2 3 1\n0 5\n").unwrap_err();
        assert!(matches!(err, UhgError::Invalid { line: 2, .. }));

        let err = parse_uhg("uhg 2 3 2\n0 1\n").unwrap_err();
        assert!(matches!(err, UhgError::Parse { line: 1, .. }));

        let err = parse_uhg("graph 2 3\n").unwrap_err();
        assert!(matches!(err, UhgError::Parse { line: 1, .. }));
    }
}
