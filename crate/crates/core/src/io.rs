//! Reading and writing graphs.
//!
//! JSON: `{"kind": "graph" | "digraph", "n": 5, "edges": [[0, 1], ...]}`.
//! Edge list: a header line `n m kind`, then `m` lines `u v`. Vertices are
//! 0-based in both. Loops, out-of-range endpoints and repeated edges are
//! rejected.

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::graph::{Adjacency, Digraph, Graph};

/// A graph or a digraph, as read from a file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyGraph {
    Graph(Graph),
    Digraph(Digraph),
}

impl AnyGraph {
    pub fn kind(&self) -> &'static str {
        match self {
            AnyGraph::Graph(_) => "graph",
            AnyGraph::Digraph(_) => "digraph",
        }
    }

    pub fn as_graph(&self) -> Option<&Graph> {
        match self {
            AnyGraph::Graph(g) => Some(g),
            AnyGraph::Digraph(_) => None,
        }
    }

    pub fn as_digraph(&self) -> Option<&Digraph> {
        match self {
            AnyGraph::Digraph(d) => Some(d),
            AnyGraph::Graph(_) => None,
        }
    }

    /// Edges `u < v` of a graph, or every arc of a digraph.
    pub fn edge_list(&self) -> Vec<(usize, usize)> {
        match self {
            AnyGraph::Graph(g) => g.edges().collect(),
            AnyGraph::Digraph(d) => d.arcs().collect(),
        }
    }
}

impl Adjacency for AnyGraph {
    fn order(&self) -> usize {
        match self {
            AnyGraph::Graph(g) => g.order(),
            AnyGraph::Digraph(d) => d.order(),
        }
    }

    fn out_neighbors(&self, v: usize) -> &VertexSet {
        match self {
            AnyGraph::Graph(g) => g.out_neighbors(v),
            AnyGraph::Digraph(d) => d.out_neighbors(v),
        }
    }

    fn in_neighbors(&self, v: usize) -> &VertexSet {
        match self {
            AnyGraph::Graph(g) => g.in_neighbors(v),
            AnyGraph::Digraph(d) => d.in_neighbors(v),
        }
    }

    fn is_directed(&self) -> bool {
        matches!(self, AnyGraph::Digraph(_))
    }

    fn touching(&self, v: usize) -> VertexSet {
        match self {
            AnyGraph::Graph(g) => g.touching(v),
            AnyGraph::Digraph(d) => d.touching(v),
        }
    }
}

impl From<Graph> for AnyGraph {
    fn from(g: Graph) -> Self {
        AnyGraph::Graph(g)
    }
}

impl From<Digraph> for AnyGraph {
    fn from(d: Digraph) -> Self {
        AnyGraph::Digraph(d)
    }
}

#[derive(serde::Serialize, serde::Deserialize)]
struct GraphFile {
    kind: String,
    n: usize,
    edges: Vec<[usize; 2]>,
}

fn build(kind: &str, n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<AnyGraph> {
    match kind {
        "graph" => Ok(AnyGraph::Graph(Graph::from_edges(n, edges)?)),
        "digraph" => Ok(AnyGraph::Digraph(Digraph::from_arcs(n, edges)?)),
        other => Err(Error::Parse(format!("unknown kind {other:?}"))),
    }
}

pub fn from_json(text: &str) -> Result<AnyGraph> {
    let f: GraphFile = serde_json::from_str(text)?;
    build(&f.kind, f.n, f.edges.into_iter().map(|[u, v]| (u, v)))
}

pub fn to_json(g: &AnyGraph) -> String {
    let f = GraphFile {
        kind: g.kind().into(),
        n: g.order(),
        edges: g.edge_list().into_iter().map(|(u, v)| [u, v]).collect(),
    };
    serde_json::to_string(&f).expect("graph files always serialize")
}

pub fn from_edge_list(text: &str) -> Result<AnyGraph> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines.next().ok_or_else(|| Error::Parse("empty edge list".into()))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let [n, m, kind] = fields[..] else {
        return Err(Error::Parse(format!("header {header:?} is not `n m kind`")));
    };
    let num = |s: &str| s.parse::<usize>().map_err(|_| Error::Parse(format!("bad number {s:?}")));
    let (n, m) = (num(n)?, num(m)?);
    let mut edges = Vec::with_capacity(m);
    for line in lines {
        let parts: Vec<&str> = line.split_whitespace().collect();
        let [u, v] = parts[..] else {
            return Err(Error::Parse(format!("edge line {line:?} is not `u v`")));
        };
        edges.push((num(u)?, num(v)?));
    }
    if edges.len() != m {
        return Err(Error::Parse(format!("header promises {m} edges, found {}", edges.len())));
    }
    build(kind, n, edges)
}

pub fn to_edge_list(g: &AnyGraph) -> String {
    let edges = g.edge_list();
    let mut s = format!("{} {} {}\n", g.order(), edges.len(), g.kind());
    for (u, v) in edges {
        s.push_str(&format!("{u} {v}\n"));
    }
    s
}

/// Parses either format, guessing from the first character.
pub fn parse_any(text: &str) -> Result<AnyGraph> {
    if text.trim_start().starts_with('{') {
        from_json(text)
    } else {
        from_edge_list(text)
    }
}
