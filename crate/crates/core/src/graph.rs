//! Small undirected simple graphs with a dense all-pairs distance matrix.
//!
//! Vertices are `0..n` internally; everything user-facing (parsing,
//! reports, `Display`) uses the 1-based labels `1..=n`.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, ParseError, Result};

/// Which named family a graph came from, if any.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Path,
    Cycle,
    ComplementCycle,
    ComplementPath,
    Complete,
    Custom,
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::Path => "path",
            Family::Cycle => "cycle",
            Family::ComplementCycle => "complement_cycle",
            Family::ComplementPath => "complement_path",
            Family::Complete => "complete",
            Family::Custom => "custom",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A connected undirected simple graph. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<bool>,
    dist: Vec<u32>,
    family: Family,
}

impl Graph {
    /// Builds a graph from 0-based edges, rejecting loops, duplicates and
    /// disconnected input.
    pub fn from_edges(n: usize, edges: &[(usize, usize)], family: Family) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("graph must have at least one vertex"));
        }
        let mut adj = vec![false; n * n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::invalid(format!(
                    "edge ({}, {}) has a vertex outside 1..={n}",
                    u + 1,
                    v + 1
                )));
            }
            if u == v {
                return Err(Error::invalid(format!("self-loop at vertex {}", u + 1)));
            }
            if adj[u * n + v] {
                return Err(Error::invalid(format!("duplicate edge ({}, {})", u + 1, v + 1)));
            }
            adj[u * n + v] = true;
            adj[v * n + u] = true;
        }
        Self::from_adjacency(n, adj, family)
    }

    fn from_adjacency(n: usize, adj: Vec<bool>, family: Family) -> Result<Self> {
        let dist = bfs_all_pairs(n, &adj)?;
        Ok(Graph { n, adj, dist, family })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn family(&self) -> Family {
        self.family
    }

    /// Same adjacency, different family tag.
    pub fn with_family(mut self, family: Family) -> Self {
        self.family = family;
        self
    }

    #[inline]
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.n + v]
    }

    #[inline]
    pub fn dist(&self, u: usize, v: usize) -> u32 {
        self.dist[u * self.n + v]
    }

    /// Row-major `n * n` distance matrix.
    pub fn distances(&self) -> &[u32] {
        &self.dist
    }

    pub fn diameter(&self) -> u32 {
        self.dist.iter().copied().max().unwrap_or(0)
    }

    pub fn is_complete(&self) -> bool {
        self.diameter() <= 1
    }

    /// Edges as 0-based pairs `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.n;
        (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|&(u, v)| self.adjacent(u, v))
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().filter(|&&a| a).count() / 2
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&v| self.adjacent(u, v))
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(n={})", self.family, self.n)
    }
}

/// The cycle `v_1 ~ v_2 ~ ... ~ v_n ~ v_1`.
pub fn build_cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::invalid(format!("cycle needs n >= 3, got {n}")));
    }
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edges(n, &edges, Family::Cycle)
}

/// The path `v_1 ~ v_2 ~ ... ~ v_n`.
pub fn build_path(n: usize) -> Result<Graph> {
    if n < 2 {
        return Err(Error::invalid(format!("path needs n >= 2, got {n}")));
    }
    let edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
    Graph::from_edges(n, &edges, Family::Path)
}

pub fn build_complete(n: usize) -> Result<Graph> {
    if n < 1 {
        return Err(Error::invalid("complete graph needs n >= 1"));
    }
    let edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    Graph::from_edges(n, &edges, Family::Complete)
}

/// Flips adjacency on every pair of distinct vertices.
pub fn complement(g: &Graph) -> Result<Graph> {
    let n = g.n;
    let mut adj = vec![false; n * n];
    for u in 0..n {
        for v in 0..n {
            adj[u * n + v] = u != v && !g.adjacent(u, v);
        }
    }
    let family = match g.family {
        Family::Cycle => Family::ComplementCycle,
        Family::Path => Family::ComplementPath,
        Family::ComplementCycle => Family::Cycle,
        Family::ComplementPath => Family::Path,
        Family::Complete | Family::Custom => Family::Custom,
    };
    Graph::from_adjacency(n, adj, family)
}

/// Recomputes the hop-count matrix of `g` by breadth-first search.
pub fn distance_matrix(g: &Graph) -> Result<Vec<u32>> {
    bfs_all_pairs(g.n, &g.adj)
}

fn bfs_all_pairs(n: usize, adj: &[bool]) -> Result<Vec<u32>> {
    let mut dist = vec![u32::MAX; n * n];
    let mut queue = VecDeque::with_capacity(n);
    for s in 0..n {
        let row = &mut dist[s * n..(s + 1) * n];
        row[s] = 0;
        queue.clear();
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            let du = row[u];
            for v in 0..n {
                if adj[u * n + v] && row[v] == u32::MAX {
                    row[v] = du + 1;
                    queue.push_back(v);
                }
            }
        }
        if let Some(v) = row.iter().position(|&d| d == u32::MAX) {
            return Err(Error::Disconnected { u: s + 1, v: v + 1 });
        }
    }
    Ok(dist)
}

/// Parses `"n m"` followed by `m` lines `"u v"` (1-based).
///
/// Blank lines and lines starting with `#` are ignored. The pair may be
/// given in either order.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines.next().ok_or(ParseError::Malformed {
        line: 1,
        text: String::new(),
    })?;
    let (n, m) = parse_pair(hline, header)?;
    if n == 0 {
        return Err(ParseError::Malformed {
            line: hline,
            text: header.to_string(),
        }
        .into());
    }

    let mut seen = HashSet::with_capacity(m);
    let mut edges = Vec::with_capacity(m);
    for (line, text) in lines {
        let (u, v) = parse_pair(line, text)?;
        for vertex in [u, v] {
            if vertex == 0 || vertex > n {
                return Err(ParseError::VertexOutOfRange { line, vertex, n }.into());
            }
        }
        if u == v {
            return Err(ParseError::SelfLoop { line, vertex: u }.into());
        }
        let key = (u.min(v), u.max(v));
        if !seen.insert(key) {
            return Err(ParseError::DuplicateEdge {
                line,
                u: key.0,
                v: key.1,
            }
            .into());
        }
        edges.push((key.0 - 1, key.1 - 1));
    }
    if edges.len() != m {
        return Err(ParseError::EdgeCount {
            expected: m,
            found: edges.len(),
        }
        .into());
    }
    Graph::from_edges(n, &edges, Family::Custom)
}

fn parse_pair(line: usize, text: &str) -> std::result::Result<(usize, usize), ParseError> {
    let malformed = || ParseError::Malformed {
        line,
        text: text.to_string(),
    };
    let mut it = text.split_whitespace();
    let a = it.next().and_then(|t| t.parse().ok()).ok_or_else(malformed)?;
    let b = it.next().and_then(|t| t.parse().ok()).ok_or_else(malformed)?;
    if it.next().is_some() {
        return Err(malformed());
    }
    Ok((a, b))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(g: &Graph, u: usize, v: usize) -> u32 {
        g.dist(u - 1, v - 1)
    }

    #[test]
    fn cycle_distances() {
        let c5 = build_cycle(5).unwrap();
        assert!(c5.distances().iter().all(|&x| x <= 2));
        assert_eq!(c5.diameter(), 2);

        let c3 = build_cycle(3).unwrap();
        assert!(c3.is_complete());
        assert_eq!(c3.diameter(), 1);

        let c6 = build_cycle(6).unwrap();
        assert_eq!(d(&c6, 1, 4), 3);
        assert_eq!(c6.family(), Family::Cycle);
    }

    #[test]
    fn path_distances() {
        assert_eq!(d(&build_path(4).unwrap(), 1, 4), 3);
        let p2 = build_path(2).unwrap();
        assert_eq!(p2.edge_count(), 1);
        assert_eq!(p2.diameter(), 1);
        assert_eq!(d(&build_path(6).unwrap(), 2, 5), 3);
        let p5 = build_path(5).unwrap();
        assert_eq!(&p5.distances()[..5], &[0, 1, 2, 3, 4]);
    }

    #[test]
    fn small_sizes_rejected() {
        assert!(matches!(build_cycle(2), Err(Error::InvalidParameter(_))));
        assert!(matches!(build_path(1), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn complement_of_small_cycles() {
        let c5 = complement(&build_cycle(5).unwrap()).unwrap();
        assert_eq!(c5.family(), Family::ComplementCycle);
        // pentagram: 2-regular, connected, 5 edges
        assert_eq!(c5.edge_count(), 5);
        assert!((0..5).all(|u| c5.neighbors(u).count() == 2));
        assert_eq!(c5.diameter(), 2);

        assert!(matches!(
            complement(&build_cycle(4).unwrap()),
            Err(Error::Disconnected { .. })
        ));
        assert_eq!(complement(&build_cycle(7).unwrap()).unwrap().diameter(), 2);
    }

    #[test]
    fn complement_cycle_six() {
        let g = complement(&build_cycle(6).unwrap()).unwrap();
        assert_eq!(d(&g, 1, 2), 2);
        assert!(g.adjacent(0, 3) && g.adjacent(1, 3));
    }

    #[test]
    fn complement_is_involutive() {
        for n in 5..=9 {
            let c = build_cycle(n).unwrap();
            let back = complement(&complement(&c).unwrap()).unwrap();
            assert_eq!(back.edges(), c.edges());
            assert_eq!(back.family(), Family::Cycle);
        }
    }

    #[test]
    fn parse_triangle() {
        let g = parse_edge_list("3 3\n1 2\n2 3\n1 3").unwrap();
        assert!(g.is_complete());
        assert_eq!(g.family(), Family::Custom);
    }

    #[test]
    fn parse_errors_are_distinct() {
        assert!(matches!(
            parse_edge_list("4 2\n1 2\n3 4"),
            Err(Error::Disconnected { .. })
        ));
        assert!(matches!(
            parse_edge_list("2 1\n1 1"),
            Err(Error::Parse(ParseError::SelfLoop { line: 2, vertex: 1 }))
        ));
        assert!(matches!(
            parse_edge_list("3 2\n1 2\n1 4"),
            Err(Error::Parse(ParseError::VertexOutOfRange { vertex: 4, .. }))
        ));
        assert!(matches!(
            parse_edge_list("3 2\n1 2\n2 1"),
            Err(Error::Parse(ParseError::DuplicateEdge { u: 1, v: 2, .. }))
        ));
        assert!(matches!(
            parse_edge_list("3 2\n1 two"),
            Err(Error::Parse(ParseError::Malformed { line: 2, .. }))
        ));
        assert!(matches!(
            parse_edge_list("3 3\n1 2\n2 3"),
            Err(Error::Parse(ParseError::EdgeCount { expected: 3, found: 2 }))
        ));
        assert!(matches!(parse_edge_list(""), Err(Error::Parse(_))));
    }

    #[test]
    fn parse_skips_comments() {
        let g = parse_edge_list("# path\n3 2\n\n1 2\n3 2\n").unwrap();
        assert_eq!(g.edges(), vec![(0, 1), (1, 2)]);
    }
}
