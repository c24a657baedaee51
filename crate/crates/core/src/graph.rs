//! Undirected graphs and a brute-force dominating set oracle.
//!
//! Vertices are 1-based throughout, matching the graph file format.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange {
        line: usize,
        vertex: usize,
        n: usize,
    },
    #[error("line {line}: self-loop on vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("line {line}: duplicate edge {u}-{v}")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("header declares {declared} edges but {found} were given")]
    EdgeCount { declared: usize, found: usize },
    #[error("graph needs at least one vertex")]
    Empty,
    #[error("vertex {0} out of range")]
    NoSuchVertex(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl Graph {
    pub fn new(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        let mut g = Graph {
            n,
            edges: BTreeSet::new(),
        };
        for (i, (u, v)) in edges.into_iter().enumerate() {
            g.add_edge(u, v, i + 1)?;
        }
        Ok(g)
    }

    pub fn edgeless(n: usize) -> Result<Self, GraphError> {
        Graph::new(n, [])
    }

    pub fn path(n: usize) -> Result<Self, GraphError> {
        Graph::new(n, (1..n).map(|i| (i, i + 1)))
    }

    pub fn complete(n: usize) -> Result<Self, GraphError> {
        Graph::new(n, (1..=n).tuple_combinations())
    }

    fn add_edge(&mut self, u: usize, v: usize, line: usize) -> Result<(), GraphError> {
        for vertex in [u, v] {
            if vertex == 0 || vertex > self.n {
                return Err(GraphError::VertexOutOfRange {
                    line,
                    vertex,
                    n: self.n,
                });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop { line, vertex: u });
        }
        if !self.edges.insert((u.min(v), u.max(v))) {
            return Err(GraphError::DuplicateEdge { line, u, v });
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn closed_neighborhood(&self, v: usize) -> Result<BTreeSet<usize>, GraphError> {
        if v == 0 || v > self.n {
            return Err(GraphError::NoSuchVertex(v));
        }
        Ok((1..=self.n)
            .filter(|&u| u == v || self.has_edge(u, v))
            .collect())
    }

    /// `v` is in `set` or adjacent to a member of it.
    pub fn dominated_by(&self, v: usize, set: &BTreeSet<usize>) -> bool {
        set.contains(&v) || set.iter().any(|&u| self.has_edge(u, v))
    }

    pub fn is_dominating(&self, set: &BTreeSet<usize>) -> bool {
        set.iter().all(|&u| u >= 1 && u <= self.n)
            && (1..=self.n).all(|v| self.dominated_by(v, set))
    }

    /// Parses the `n m` + edge-lines format. `#` comments and blank lines
    /// are skipped.
    pub fn parse(text: &str) -> Result<Self, GraphError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = lines.next().ok_or(GraphError::Syntax {
            line: 1,
            msg: "missing `n m` header".into(),
        })?;
        let (n, m) = two_numbers(header, hline)?;
        if n == 0 {
            return Err(GraphError::Empty);
        }
        let mut g = Graph {
            n,
            edges: BTreeSet::new(),
        };
        let mut found = 0;
        for (line, text) in lines {
            let (u, v) = two_numbers(text, line)?;
            g.add_edge(u, v, line)?;
            found += 1;
        }
        if found != m {
            return Err(GraphError::EdgeCount { declared: m, found });
        }
        Ok(g)
    }
}

fn two_numbers(text: &str, line: usize) -> Result<(usize, usize), GraphError> {
    let fields: Vec<&str> = text.split_whitespace().collect();
    let [a, b] = fields[..] else {
        return Err(GraphError::Syntax {
            line,
            msg: format!("expected two integers, got `{text}`"),
        });
    };
    let num = |s: &str| {
        s.parse::<usize>().map_err(|_| GraphError::Syntax {
            line,
            msg: format!("`{s}` is not a count"),
        })
    };
    Ok((num(a)?, num(b)?))
}

impl FromStr for Graph {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, GraphError> {
        Graph::parse(s)
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.n, self.edges.len())?;
        for (u, v) in &self.edges {
            writeln!(f, "{u} {v}")?;
        }
        Ok(())
    }
}

/// Smallest dominating set of size at most `k`, lexicographically first
/// among those of minimum size, or `None`.
pub fn ds_oracle(g: &Graph, k: usize) -> Option<BTreeSet<usize>> {
    (0..=k.min(g.n()))
        .flat_map(|size| (1..=g.n()).combinations(size))
        .map(|c| c.into_iter().collect::<BTreeSet<_>>())
        .find(|set| g.is_dominating(set))
}

/// Renders a vertex set as `v1 v3`.
pub fn format_vertex_set(set: &BTreeSet<usize>) -> String {
    set.iter().map(|v| format!("v{v}")).join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(vs: &[usize]) -> BTreeSet<usize> {
        vs.iter().copied().collect()
    }

    #[test]
    fn neighborhoods() {
        let p3 = Graph::path(3).unwrap();
        assert_eq!(p3.closed_neighborhood(1).unwrap(), set(&[1, 2]));
        assert_eq!(p3.closed_neighborhood(2).unwrap(), set(&[1, 2, 3]));
        assert_eq!(
            Graph::edgeless(2).unwrap().closed_neighborhood(2).unwrap(),
            set(&[2])
        );
        assert_eq!(p3.closed_neighborhood(4), Err(GraphError::NoSuchVertex(4)));
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(ds_oracle(&Graph::path(3).unwrap(), 1), Some(set(&[2])));
        assert_eq!(ds_oracle(&Graph::complete(3).unwrap(), 1), Some(set(&[1])));
        assert_eq!(ds_oracle(&Graph::edgeless(2).unwrap(), 1), None);
        assert_eq!(
            ds_oracle(&Graph::edgeless(2).unwrap(), 2),
            Some(set(&[1, 2]))
        );
        assert_eq!(ds_oracle(&Graph::path(3).unwrap(), 0), None);
    }

    #[test]
    fn parse_format() {
        let g = Graph::parse("# P3\n3 2\n1 2\n\n2 3\n").unwrap();
        assert_eq!(g, Graph::path(3).unwrap());
        assert_eq!(Graph::parse(&g.to_string()).unwrap(), g);
        assert!(matches!(
            Graph::parse("3 2\n1 2\n2 1\n"),
            Err(GraphError::DuplicateEdge { line: 3, .. })
        ));
        assert!(matches!(
            Graph::parse("3 1\n1 1\n"),
            Err(GraphError::SelfLoop { .. })
        ));
        assert!(matches!(
            Graph::parse("3 1\n1 4\n"),
            Err(GraphError::VertexOutOfRange { vertex: 4, .. })
        ));
        assert!(matches!(
            Graph::parse("3 2\n1 2\n"),
            Err(GraphError::EdgeCount {
                declared: 2,
                found: 1
            })
        ));
        assert!(matches!(
            Graph::parse("3 x\n"),
            Err(GraphError::Syntax { line: 1, .. })
        ));
        assert!(matches!(Graph::parse("0 0\n"), Err(GraphError::Empty)));
    }
}
