//! Plain-text edge-list formats.
//!
//! Graph: a header line `n e`, then `e` lines `u v` with `u < v`.
//! Bipartite graph: a header line `m n e` (`|U| |V| e`), then `e` lines
//! `u v` joining `U`-index `u` to `V`-index `v`.
//! Clique union: a header line `n m k`, then `k` lines of `m` vertices.
//!
//! Writers emit edges in lexicographic order with a trailing newline.
//! Readers ignore blank lines and lines starting with `#`.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, CliqueUnion, Graph};

fn parse_err<T>(line: usize, message: impl Into<String>) -> Result<T> {
    Err(Error::Parse {
        line,
        message: message.into(),
    })
}

/// Content lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_fields(line_no: usize, line: &str, expected: usize) -> Result<Vec<usize>> {
    let fields: Vec<&str> = line.split_whitespace().collect();
    if fields.len() != expected {
        return parse_err(
            line_no,
            format!("expected {expected} integers, found {}", fields.len()),
        );
    }
    fields
        .iter()
        .map(|f| {
            f.parse::<usize>()
                .or_else(|_| parse_err(line_no, format!("not a non-negative integer: {f:?}")))
        })
        .collect()
}

pub fn read_graph(text: &str) -> Result<Graph> {
    let mut lines = content_lines(text);
    let Some((hl, header)) = lines.next() else {
        return parse_err(1, "missing header");
    };
    let h = parse_fields(hl, header, 2)?;
    let (n, e) = (h[0], h[1]);
    let mut seen = HashSet::with_capacity(e);
    let mut edges = Vec::with_capacity(e);
    let mut last_line = hl;
    for (line_no, line) in lines {
        last_line = line_no;
        let f = parse_fields(line_no, line, 2)?;
        let (u, v) = (f[0], f[1]);
        if u >= n || v >= n {
            return parse_err(
                line_no,
                format!("vertex {} out of range for {n} vertices", u.max(v)),
            );
        }
        if u == v {
            return parse_err(line_no, format!("self-loop at vertex {u}"));
        }
        let key = (u.min(v), u.max(v));
        if !seen.insert(key) {
            return parse_err(line_no, format!("duplicate edge {} {}", key.0, key.1));
        }
        edges.push(key);
    }
    if edges.len() != e {
        return parse_err(
            last_line,
            format!("header declares {e} edges, found {}", edges.len()),
        );
    }
    Graph::from_edges(n, edges)
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

pub fn read_bipartite(text: &str) -> Result<BipartiteGraph> {
    let mut lines = content_lines(text);
    let Some((hl, header)) = lines.next() else {
        return parse_err(1, "missing header");
    };
    let h = parse_fields(hl, header, 3)?;
    let (m, n, e) = (h[0], h[1], h[2]);
    let mut b = BipartiteGraph::new(m, n);
    let mut last_line = hl;
    for (line_no, line) in lines {
        last_line = line_no;
        let f = parse_fields(line_no, line, 2)?;
        let (u, v) = (f[0], f[1]);
        if u >= m {
            return parse_err(line_no, format!("U-vertex {u} out of range for |U| = {m}"));
        }
        if v >= n {
            return parse_err(line_no, format!("V-vertex {v} out of range for |V| = {n}"));
        }
        if !b.add_edge(u, v) {
            return parse_err(line_no, format!("duplicate edge {u} {v}"));
        }
    }
    if b.edge_count() != e {
        return parse_err(
            last_line,
            format!("header declares {e} edges, found {}", b.edge_count()),
        );
    }
    Ok(b)
}

pub fn write_bipartite(b: &BipartiteGraph) -> String {
    let mut out = format!("{} {} {}\n", b.u_size(), b.v_size(), b.edge_count());
    for (u, v) in b.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

pub fn read_clique_union(text: &str) -> Result<CliqueUnion> {
    let mut lines = content_lines(text);
    let Some((hl, header)) = lines.next() else {
        return parse_err(1, "missing header");
    };
    let h = parse_fields(hl, header, 3)?;
    let (n, m, k) = (h[0], h[1], h[2]);
    let mut cliques = Vec::with_capacity(k);
    let mut last_line = hl;
    for (line_no, line) in lines {
        last_line = line_no;
        cliques.push(parse_fields(line_no, line, m)?);
    }
    if cliques.len() != k {
        return parse_err(
            last_line,
            format!("header declares {k} cliques, found {}", cliques.len()),
        );
    }
    CliqueUnion::new(n, m, cliques).map_err(|e| Error::Parse {
        line: last_line,
        message: e.to_string(),
    })
}

pub fn write_clique_union(cu: &CliqueUnion) -> String {
    let mut out = format!("{} {} {}\n", cu.n(), cu.m(), cu.len());
    for c in cu.cliques() {
        let line: Vec<String> = c.iter().map(usize::to_string).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

pub fn load_graph(path: impl AsRef<Path>) -> Result<Graph> {
    read_graph(&read_file(path.as_ref())?)
}

pub fn load_bipartite(path: impl AsRef<Path>) -> Result<BipartiteGraph> {
    read_bipartite(&read_file(path.as_ref())?)
}

pub fn load_clique_union(path: impl AsRef<Path>) -> Result<CliqueUnion> {
    read_clique_union(&read_file(path.as_ref())?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_path() {
        let g = read_graph("3 2\n0 1\n1 2\n").unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn writes_triangle() {
        assert_eq!(write_graph(&Graph::complete(3)), "3 3\n0 1\n0 2\n1 2\n");
    }

    #[test]
    fn out_of_range_names_line() {
        match read_graph("2 1\n0 5\n") {
            Err(Error::Parse { line, message }) => {
                assert_eq!(line, 2);
                assert!(message.contains('5'), "{message}");
            }
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn duplicate_and_header_errors() {
        assert!(matches!(
            read_graph("3 2\n0 1\n1 0\n"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(
            read_graph("3\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(read_graph("3 2\n0 1\n"), Err(Error::Parse { .. })));
        assert!(read_graph("").is_err());
    }

    #[test]
    fn bipartite_round_trip() {
        let b = BipartiteGraph::from_edges(2, 3, [(0, 0), (0, 2), (1, 1)]).unwrap();
        let text = write_bipartite(&b);
        assert_eq!(text, "2 3 3\n0 0\n0 2\n1 1\n");
        assert_eq!(read_bipartite(&text).unwrap(), b);
        assert!(matches!(
            read_bipartite("1 1 1\n0 1\n"),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn clique_union_round_trip() {
        let cu = CliqueUnion::new(5, 3, vec![vec![0, 1, 2], vec![2, 3, 4]]).unwrap();
        let text = write_clique_union(&cu);
        assert_eq!(read_clique_union(&text).unwrap(), cu);
    }
}
