//! Simple undirected graphs on dense vertex indices `0..n`.

use std::collections::VecDeque;
use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Immutable simple undirected graph with sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    edge_count: usize,
}

/// Text formats understood by [`Graph::parse`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    /// DIMACS `.col`: `c` comments, `p edge n m`, `e u v` with 1-indexed vertices.
    DimacsCol,
    /// One `u v` pair per line, 0-indexed, `#` comments. A line holding a
    /// single index declares a (possibly isolated) vertex.
    EdgeList,
}

impl GraphFormat {
    /// Guess the format from content: a `p` header line means DIMACS.
    pub fn detect(text: &str) -> Self {
        let dimacs = text.lines().map(str::trim_start).any(|l| {
            l.starts_with("p ") || l.starts_with("e ") || l == "p" || l.starts_with("c ")
        });
        if dimacs {
            GraphFormat::DimacsCol
        } else {
            GraphFormat::EdgeList
        }
    }
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate edges collapse.
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adjacency = vec![Vec::new(); n];
        for (u, v) in edges {
            for vertex in [u, v] {
                if vertex >= n {
                    return Err(Error::VertexOutOfRange { vertex, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        let mut twice_edges = 0;
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
            twice_edges += list.len();
        }
        Ok(Graph {
            adjacency,
            edge_count: twice_edges / 2,
        })
    }

    pub fn empty(n: usize) -> Self {
        Graph {
            adjacency: vec![Vec::new(); n],
            edge_count: 0,
        }
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Graph::new(n, edges).expect("complete graph edges are in range")
    }

    pub fn path(n: usize) -> Self {
        Graph::new(n, (1..n).map(|v| (v - 1, v))).expect("path edges are in range")
    }

    /// Cycle on `n >= 3` vertices.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least three vertices");
        Graph::new(n, (0..n).map(|v| (v, (v + 1) % n))).expect("cycle edges are in range")
    }

    /// Star `K_{1,leaves}` with center 0.
    pub fn star(leaves: usize) -> Self {
        Graph::new(leaves + 1, (1..=leaves).map(|v| (0, v))).expect("star edges are in range")
    }

    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn degrees(&self) -> impl Iterator<Item = usize> + '_ {
        self.adjacency.iter().map(Vec::len)
    }

    /// Maximum degree; 0 for the null graph.
    pub fn max_degree(&self) -> usize {
        self.degrees().max().unwrap_or(0)
    }

    /// Minimum degree; 0 for the null graph.
    pub fn min_degree(&self) -> usize {
        self.degrees().min().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    /// Vertices at distance at most `radius` from `source`, in BFS order.
    pub fn ball(&self, source: usize, radius: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n()];
        let mut order = vec![source];
        let mut queue = VecDeque::from([source]);
        dist[source] = 0;
        while let Some(x) = queue.pop_front() {
            if dist[x] == radius {
                continue;
            }
            for &y in self.neighbors(x) {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    order.push(y);
                    queue.push_back(y);
                }
            }
        }
        order
    }

    pub fn parse(text: &str, format: GraphFormat) -> Result<Self> {
        match format {
            GraphFormat::DimacsCol => parse_dimacs(text),
            GraphFormat::EdgeList => parse_edge_list(text),
        }
    }

    pub fn to_text(&self, format: GraphFormat) -> String {
        let mut out = String::new();
        match format {
            GraphFormat::DimacsCol => {
                writeln!(out, "p edge {} {}", self.n(), self.edge_count).unwrap();
                for (u, v) in self.edges() {
                    writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
                }
            }
            GraphFormat::EdgeList => {
                for v in 0..self.n() {
                    if self.degree(v) == 0 {
                        writeln!(out, "{v}").unwrap();
                    }
                }
                for (u, v) in self.edges() {
                    writeln!(out, "{u} {v}").unwrap();
                }
            }
        }
        out
    }
}

fn parse_index(token: &str, line: usize) -> Result<usize> {
    token
        .parse()
        .map_err(|_| Error::parse(line, format!("expected a vertex index, found {token:?}")))
}

fn parse_dimacs(text: &str) -> Result<Graph> {
    let mut n = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let mut tokens = raw.split_whitespace();
        match tokens.next() {
            None | Some("c") => {}
            Some("p") => {
                if n.is_some() {
                    return Err(Error::parse(line, "duplicate problem line"));
                }
                let fields: Vec<&str> = tokens.collect();
                match fields.as_slice() {
                    [kind, count, _edges] if matches!(*kind, "edge" | "edges" | "col") => {
                        n = Some(parse_index(count, line)?);
                    }
                    _ => return Err(Error::parse(line, "malformed header, expected `p edge n m`")),
                }
            }
            Some("e") => {
                let Some(n) = n else {
                    return Err(Error::parse(line, "edge line before the `p edge` header"));
                };
                let fields: Vec<&str> = tokens.collect();
                let [a, b] = fields.as_slice() else {
                    return Err(Error::parse(line, "edge line needs exactly two endpoints"));
                };
                let (a, b) = (parse_index(a, line)?, parse_index(b, line)?);
                for vertex in [a, b] {
                    if vertex == 0 || vertex > n {
                        return Err(Error::parse(
                            line,
                            format!("endpoint {vertex} outside 1..={n}"),
                        ));
                    }
                }
                edges.push((a - 1, b - 1));
            }
            Some(other) => {
                return Err(Error::parse(line, format!("unknown line type {other:?}")));
            }
        }
    }
    let n = n.ok_or_else(|| Error::parse(0, "missing `p edge n m` header"))?;
    Graph::new(n, edges)
}

fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut n = 0;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let fields: Vec<&str> = content.split_whitespace().collect();
        match fields.as_slice() {
            [] => {}
            [v] => n = n.max(parse_index(v, line)? + 1),
            [a, b] => {
                let (a, b) = (parse_index(a, line)?, parse_index(b, line)?);
                if a == b {
                    return Err(Error::SelfLoop(a));
                }
                n = n.max(a.max(b) + 1);
                edges.push((a, b));
            }
            _ => return Err(Error::parse(line, "expected `u v`")),
        }
    }
    Graph::new(n, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn builds_path_and_complete() {
        let p3 = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(p3.degrees().collect::<Vec<_>>(), vec![1, 2, 1]);
        let k4 = Graph::complete(4);
        assert_eq!((k4.max_degree(), k4.min_degree()), (3, 3));
        assert_eq!(k4.edge_count(), 6);
    }

    #[test]
    fn rejects_self_loop_and_range() {
        assert_eq!(Graph::new(2, [(0, 0)]), Err(Error::SelfLoop(0)));
        assert_eq!(
            Graph::new(2, [(0, 2)]),
            Err(Error::VertexOutOfRange { vertex: 2, n: 2 })
        );
    }

    #[test]
    fn parses_dimacs() {
        let g = Graph::parse("c a path\np edge 3 2\ne 1 2\ne 2 3", GraphFormat::DimacsCol).unwrap();
        assert_eq!(g, Graph::path(3));
    }

    #[test]
    fn edge_list_collapses_duplicates() {
        let g = Graph::parse("0 1\n1 2\n1 2", GraphFormat::EdgeList).unwrap();
        assert_eq!(g, Graph::path(3));
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn dimacs_errors() {
        let err = Graph::parse("p edge 2 1\ne 1 3", GraphFormat::DimacsCol).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
        assert!(Graph::parse("p graph 2\ne 1 2", GraphFormat::DimacsCol).is_err());
        assert!(Graph::parse("e 1 2", GraphFormat::DimacsCol).is_err());
    }

    #[test]
    fn detects_format() {
        assert_eq!(GraphFormat::detect("p edge 3 0\n"), GraphFormat::DimacsCol);
        assert_eq!(GraphFormat::detect("# comment\n0 1\n"), GraphFormat::EdgeList);
    }

    #[test]
    fn ball_radius() {
        let c7 = Graph::cycle(7);
        let mut b = c7.ball(0, 2);
        b.sort_unstable();
        assert_eq!(b, vec![0, 1, 2, 5, 6]);
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (1usize..12).prop_flat_map(|n| {
            proptest::collection::vec((0..n, 0..n), 0..30).prop_map(move |pairs| {
                Graph::new(n, pairs.into_iter().filter(|(a, b)| a != b)).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn text_round_trip(g in arb_graph()) {
            for format in [GraphFormat::DimacsCol, GraphFormat::EdgeList] {
                prop_assert_eq!(&Graph::parse(&g.to_text(format), format).unwrap(), &g);
            }
        }

        #[test]
        fn handshake(g in arb_graph()) {
            prop_assert_eq!(g.degrees().sum::<usize>(), 2 * g.edge_count());
            for u in 0..g.n() {
                for &v in g.neighbors(u) {
                    prop_assert!(g.has_edge(v, u));
                }
            }
        }
    }
}
