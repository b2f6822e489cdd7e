//! Builders for the small pattern graphs used throughout.
//!
//! Grammar (whitespace-free):
//!
//! | spec           | graph                                          |
//! |----------------|------------------------------------------------|
//! | `K5`           | complete graph on 5 vertices                   |
//! | `K2,3`         | complete bipartite; sides `0..2` and `2..5`    |
//! | `C8`           | cycle `0-1-…-7-0`                              |
//! | `P4`           | path with 4 edges (5 vertices)                 |
//! | `T:0,0,1`      | tree; vertex `i+1` hangs off the `i`-th parent |
//! | `E:4:0-1,2-3`  | explicit vertex count and edge list            |
//! | `2K2`          | disjoint copies of any of the above            |

use crate::error::{input, Result};
use crate::graph::Graph;

/// Structure recognised while parsing, used to pick specialised counters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PatternKind {
    Clique(usize),
    /// `K_{s,t}` with side `0..s` and side `s..s+t`.
    CompleteBipartite {
        s: usize,
        t: usize,
    },
    Cycle(usize),
    /// Path with the given number of edges.
    Path(usize),
    Tree,
    Other,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedGraph {
    pub spec: String,
    pub graph: Graph,
    pub kind: PatternKind,
}

pub fn clique(n: usize) -> Graph {
    Graph::complete(n)
}

pub fn complete_bipartite(s: usize, t: usize) -> Graph {
    Graph::from_edges(s + t, (0..s).flat_map(|a| (s..s + t).map(move |b| (a, b))))
        .expect("valid K_{s,t}")
}

/// Cycle on `n >= 3` vertices.
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycle needs at least 3 vertices");
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("valid cycle")
}

/// Path with `len` edges.
pub fn path(len: usize) -> Graph {
    Graph::from_edges(len + 1, (0..len).map(|i| (i, i + 1))).expect("valid path")
}

pub fn star(leaves: usize) -> Graph {
    complete_bipartite(1, leaves)
}

/// Tree whose vertex `i + 1` is joined to `parents[i]`.
pub fn tree_from_parents(parents: &[usize]) -> Result<Graph> {
    for (i, &p) in parents.iter().enumerate() {
        if p > i {
            return input(format!("parent {p} of vertex {} must precede it", i + 1));
        }
    }
    Graph::from_edges(
        parents.len() + 1,
        parents.iter().enumerate().map(|(i, &p)| (p, i + 1)),
    )
}

pub fn disjoint_union(parts: &[Graph]) -> Graph {
    let mut offset = 0;
    let mut edges = Vec::new();
    for g in parts {
        edges.extend(g.edges().map(|(u, v)| (u + offset, v + offset)));
        offset += g.n();
    }
    Graph::from_edges(offset, edges).expect("disjoint union is simple")
}

fn number(spec: &str, text: &str) -> Result<usize> {
    text.parse()
        .or_else(|_| input(format!("bad number {text:?} in graph spec {spec:?}")))
}

/// Parses a pattern spec (see module docs).
pub fn named_graph(spec: &str) -> Result<NamedGraph> {
    let (graph, kind) = parse(spec, spec.trim())?;
    Ok(NamedGraph {
        spec: spec.trim().to_string(),
        graph,
        kind,
    })
}

fn parse(full: &str, s: &str) -> Result<(Graph, PatternKind)> {
    let digits = s.chars().take_while(char::is_ascii_digit).count();
    if digits > 0 {
        let copies = number(full, &s[..digits])?;
        if copies == 0 {
            return input(format!("zero copies in {full:?}"));
        }
        let (g, kind) = parse(full, &s[digits..])?;
        if copies == 1 {
            return Ok((g, kind));
        }
        return Ok((disjoint_union(&vec![g; copies]), PatternKind::Other));
    }
    if let Some(rest) = s.strip_prefix("T:") {
        let parents = rest
            .split(',')
            .filter(|p| !p.is_empty())
            .map(|p| number(full, p))
            .collect::<Result<Vec<_>>>()?;
        return Ok((tree_from_parents(&parents)?, PatternKind::Tree));
    }
    if let Some(rest) = s.strip_prefix("E:") {
        let (n, edge_text) = rest.split_once(':').unwrap_or((rest, ""));
        let n = number(full, n)?;
        let mut edges = Vec::new();
        for pair in edge_text.split(',').filter(|p| !p.is_empty()) {
            let Some((a, b)) = pair.split_once('-') else {
                return input(format!("bad edge {pair:?} in {full:?}"));
            };
            edges.push((number(full, a)?, number(full, b)?));
        }
        return Ok((Graph::from_edges(n, edges)?, PatternKind::Other));
    }
    let mut chars = s.chars();
    let head = chars.next();
    let rest = chars.as_str();
    match head {
        Some('K') => {
            if let Some((a, b)) = rest.split_once(',') {
                let (a, b) = (number(full, a)?, number(full, b)?);
                if a == 0 || b == 0 {
                    return input(format!("empty side in {full:?}"));
                }
                Ok((
                    complete_bipartite(a, b),
                    PatternKind::CompleteBipartite { s: a, t: b },
                ))
            } else {
                let n = number(full, rest)?;
                if n == 0 {
                    return input("K0 has no vertices");
                }
                Ok((clique(n), PatternKind::Clique(n)))
            }
        }
        Some('C') => {
            let n = number(full, rest)?;
            if n < 3 {
                return input(format!("cycle needs at least 3 vertices in {full:?}"));
            }
            Ok((cycle(n), PatternKind::Cycle(n)))
        }
        Some('P') => {
            let len = number(full, rest)?;
            Ok((path(len), PatternKind::Path(len)))
        }
        _ => input(format!("unknown graph spec {full:?}")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let k23 = named_graph("K2,3").unwrap();
        assert_eq!((k23.graph.n(), k23.graph.edge_count()), (5, 6));
        assert_eq!(k23.kind, PatternKind::CompleteBipartite { s: 2, t: 3 });

        let c8 = named_graph("C8").unwrap().graph;
        assert_eq!(
            (c8.n(), c8.edge_count(), c8.min_degree(), c8.max_degree()),
            (8, 8, 2, 2)
        );

        let p4 = named_graph("P4").unwrap().graph;
        assert_eq!((p4.n(), p4.edge_count()), (5, 4));
    }

    #[test]
    fn trees_and_unions() {
        let t = named_graph("T:0,0,1").unwrap();
        assert!(t.graph.is_tree());
        assert_eq!(
            t.graph.edges().collect::<Vec<_>>(),
            vec![(0, 1), (0, 2), (1, 3)]
        );
        assert!(named_graph("T:0,2").is_err());

        let two = named_graph("2K2").unwrap().graph;
        assert_eq!((two.n(), two.edge_count()), (4, 2));

        let e = named_graph("E:4:0-1,1-2").unwrap().graph;
        assert_eq!((e.n(), e.edge_count()), (4, 2));
    }

    #[test]
    fn rejects_unknown() {
        for bad in ["Q3", "K", "C2", "K0", "Kx", "K2,", "0K3", ""] {
            assert!(named_graph(bad).is_err(), "{bad}");
        }
    }
}
