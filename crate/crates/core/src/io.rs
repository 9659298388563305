//! Text formats.
//!
//! Edge list: a header `n m`, then `m` lines `u v` with 0-based ids.
//! Colouring: a header `t k n`, then `n` lines `v: c1 ... ct` with strictly
//! increasing 1-based colours. Degree file: one integer per line.
//! In all three, `#` starts a comment that runs to the end of the line and
//! blank lines are ignored.

use std::io::{self, BufRead, Write};

use thiserror::Error;

use crate::graph::{Graph, GraphError, Vertex};
use crate::tone::{Color, Label, ToneColoring, ToneError};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: {source}")]
    Graph { line: usize, source: GraphError },
    #[error("line {line}: {source}")]
    Tone { line: usize, source: ToneError },
    #[error("expected {expected} {what}, found {found}")]
    Count {
        what: &'static str,
        expected: usize,
        found: usize,
    },
}

/// Non-empty lines with comments stripped, paired with 1-based line numbers.
fn content_lines<R: BufRead>(r: R) -> impl Iterator<Item = Result<(usize, String), FormatError>> {
    r.lines().enumerate().filter_map(|(i, line)| match line {
        Err(e) => Some(Err(e.into())),
        Ok(mut s) => {
            if let Some(cut) = s.find('#') {
                s.truncate(cut);
            }
            let s = s.trim();
            (!s.is_empty()).then(|| Ok((i + 1, s.to_owned())))
        }
    })
}

fn parse_fields<T: std::str::FromStr>(line: usize, s: &str, count: usize, what: &str) -> Result<Vec<T>, FormatError> {
    let fields: Vec<&str> = s.split_whitespace().collect();
    if fields.len() != count {
        return Err(FormatError::Syntax {
            line,
            msg: format!("expected {count} fields for {what}, found {}", fields.len()),
        });
    }
    fields
        .iter()
        .map(|f| {
            f.parse().map_err(|_| FormatError::Syntax {
                line,
                msg: format!("`{f}` is not a non-negative integer"),
            })
        })
        .collect()
}

pub fn read_edge_list<R: BufRead>(r: R) -> Result<Graph, FormatError> {
    let mut lines = content_lines(r);
    let (hline, header) = lines.next().transpose()?.ok_or(FormatError::Syntax {
        line: 1,
        msg: "missing `n m` header".into(),
    })?;
    let h: Vec<usize> = parse_fields(hline, &header, 2, "the `n m` header")?;
    let (n, m) = (h[0], h[1]);
    let mut edges = Vec::with_capacity(m);
    let mut line_of = Vec::with_capacity(m);
    for item in lines {
        let (line, s) = item?;
        let e: Vec<Vertex> = parse_fields(line, &s, 2, "an edge")?;
        edges.push((e[0], e[1]));
        line_of.push(line);
    }
    if edges.len() != m {
        return Err(FormatError::Count {
            what: "edges",
            expected: m,
            found: edges.len(),
        });
    }
    // Validate edge by edge so errors carry the offending line.
    let mut seen = std::collections::HashSet::with_capacity(m);
    for (&(u, v), &line) in edges.iter().zip(&line_of) {
        let err = if u >= n || v >= n {
            Some(GraphError::OutOfRange {
                vertex: u.max(v),
                n,
            })
        } else if u == v {
            Some(GraphError::SelfLoop(u))
        } else if !seen.insert((u.min(v), u.max(v))) {
            Some(GraphError::DuplicateEdge(u, v))
        } else {
            None
        };
        if let Some(source) = err {
            return Err(FormatError::Graph { line, source });
        }
    }
    Graph::from_edges(n, edges).map_err(|source| FormatError::Graph { line: hline, source })
}

pub fn write_edge_list<W: Write>(g: &Graph, mut w: W) -> io::Result<()> {
    writeln!(w, "{} {}", g.n(), g.m())?;
    for (u, v) in g.edges() {
        writeln!(w, "{u} {v}")?;
    }
    w.flush()
}

pub fn read_coloring<R: BufRead>(r: R) -> Result<ToneColoring, FormatError> {
    let mut lines = content_lines(r);
    let (hline, header) = lines.next().transpose()?.ok_or(FormatError::Syntax {
        line: 1,
        msg: "missing `t k n` header".into(),
    })?;
    let h: Vec<usize> = parse_fields(hline, &header, 3, "the `t k n` header")?;
    let (t, k, n) = (h[0], h[1], h[2]);
    let k = Color::try_from(k).map_err(|_| FormatError::Syntax {
        line: hline,
        msg: format!("palette {k} is too large"),
    })?;
    let mut coloring = ToneColoring::new(n, t, k);
    let mut count = 0;
    for item in lines {
        let (line, s) = item?;
        let (v, rest) = s.split_once(':').ok_or_else(|| FormatError::Syntax {
            line,
            msg: "expected `v: c1 ... ct`".into(),
        })?;
        let v: Vertex = parse_fields::<Vertex>(line, v, 1, "a vertex id")?[0];
        if v >= n {
            return Err(FormatError::Syntax {
                line,
                msg: format!("vertex {v} out of range for n = {n}"),
            });
        }
        if coloring.get(v).is_some() {
            return Err(FormatError::Syntax {
                line,
                msg: format!("vertex {v} labelled twice"),
            });
        }
        let colors: Vec<Color> = parse_fields(line, rest, t, "a label")?;
        if colors.windows(2).any(|w| w[0] >= w[1]) {
            return Err(FormatError::Syntax {
                line,
                msg: "colours must be strictly increasing".into(),
            });
        }
        let label = Label::new(colors).map_err(|source| FormatError::Tone { line, source })?;
        coloring.set(v, label).map_err(|source| FormatError::Tone { line, source })?;
        count += 1;
    }
    if count != n {
        return Err(FormatError::Count {
            what: "labelled vertices",
            expected: n,
            found: count,
        });
    }
    Ok(coloring)
}

/// Writes a total colouring.
pub fn write_coloring<W: Write>(c: &ToneColoring, mut w: W) -> io::Result<()> {
    assert!(c.is_total(), "only total colourings can be written");
    writeln!(w, "{} {} {}", c.t(), c.k(), c.n())?;
    for (v, label) in c.labels().iter().enumerate() {
        writeln!(w, "{v}: {}", label.as_ref().expect("total"))?;
    }
    w.flush()
}

pub fn read_degrees<R: BufRead>(r: R) -> Result<Vec<usize>, FormatError> {
    content_lines(r)
        .map(|item| {
            let (line, s) = item?;
            Ok(parse_fields::<usize>(line, &s, 1, "a degree")?[0])
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(s: &str) -> Result<Graph, FormatError> {
        read_edge_list(s.as_bytes())
    }

    #[test]
    fn edge_list_round_trip() {
        let g = Graph::petersen();
        let mut buf = Vec::new();
        write_edge_list(&g, &mut buf).unwrap();
        assert_eq!(graph(std::str::from_utf8(&buf).unwrap()).unwrap(), g);
    }

    #[test]
    fn edge_list_comments_and_isolated_vertices() {
        let g = graph("# header next\n4 2\n0 1 # first\n\n2 1\n").unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
        assert_eq!(graph("3 0\n").unwrap(), Graph::empty(3));
    }

    #[test]
    fn edge_list_rejections() {
        assert!(matches!(
            graph("3 1\n1 1\n"),
            Err(FormatError::Graph { line: 2, source: GraphError::SelfLoop(1) })
        ));
        assert!(matches!(
            graph("3 2\n0 1\n1 0\n"),
            Err(FormatError::Graph { line: 3, source: GraphError::DuplicateEdge(1, 0) })
        ));
        assert!(matches!(
            graph("3 1\n0 3\n"),
            Err(FormatError::Graph { source: GraphError::OutOfRange { vertex: 3, n: 3 }, .. })
        ));
        assert!(matches!(graph("3 2\n0 1\n"), Err(FormatError::Count { expected: 2, found: 1, .. })));
        assert!(matches!(graph("3 1\n0 x\n"), Err(FormatError::Syntax { line: 2, .. })));
        assert!(matches!(graph(""), Err(FormatError::Syntax { .. })));
    }

    #[test]
    fn coloring_round_trip() {
        let c = crate::tree::color_forest_2tone(&Graph::star(4)).unwrap();
        let mut buf = Vec::new();
        write_coloring(&c, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("2 6 5\n0: 1 2\n"));
        assert_eq!(read_coloring(text.as_bytes()).unwrap(), c);
    }

    #[test]
    fn coloring_rejections() {
        let bad = |s: &str| read_coloring(s.as_bytes()).is_err();
        assert!(bad("2 4 2\n0: 1 2\n"));
        assert!(bad("2 4 2\n0: 1 2\n1: 4 3\n"));
        assert!(bad("2 4 2\n0: 1 2\n1: 3 5\n"));
        assert!(bad("2 4 2\n0: 1 2\n0: 3 4\n"));
        assert!(bad("2 4 2\n0: 1 2\n1: 0 3\n"));
        assert!(bad("2 4 1\n0: 1 2 3\n"));
        assert!(!bad("2 4 2\n1: 3 4\n0: 1 2\n"));
    }

    #[test]
    fn degrees() {
        assert_eq!(read_degrees("2\n2 # c\n\n2\n".as_bytes()).unwrap(), vec![2, 2, 2]);
        assert!(read_degrees("2 2\n".as_bytes()).is_err());
    }
}
