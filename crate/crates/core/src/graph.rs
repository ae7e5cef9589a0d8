//! Simple graphs and digraphs on the vertex set `0..n`.
//!
//! Both kinds keep one [`VertexSet`] of neighbours per vertex (two for
//! digraphs), so neighbourhood intersection during copy search is a word-wise
//! `AND`. Everything downstream is written against the [`Adjacency`] trait: an
//! undirected graph is seen as the digraph with both arcs on every edge.

use crate::bitset::VertexSet;
use crate::error::{Error, Result};

/// Read access shared by graphs and digraphs.
pub trait Adjacency {
    fn order(&self) -> usize;
    fn out_neighbors(&self, v: usize) -> &VertexSet;
    fn in_neighbors(&self, v: usize) -> &VertexSet;
    fn is_directed(&self) -> bool;

    #[inline]
    fn has_arc(&self, u: usize, v: usize) -> bool {
        self.out_neighbors(u).contains(v)
    }

    /// Vertices joined to `v` by an arc in either direction.
    fn touching(&self, v: usize) -> VertexSet {
        self.out_neighbors(v).union(self.in_neighbors(v))
    }

    /// Dominant degree of `v`; for an undirected graph this is the degree.
    fn dominant_degree(&self, v: usize) -> usize {
        self.out_neighbors(v).len().max(self.in_neighbors(v).len())
    }
}

/// Undirected simple graph.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<VertexSet>,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        Graph {
            adj: (0..n).map(|_| VertexSet::new(n)).collect(),
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    /// Builds a graph from an edge list, rejecting loops, out-of-range
    /// endpoints and repeated edges.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Self::new(n);
        for (u, v) in edges {
            check_endpoints(n, u, v)?;
            if !g.add_edge(u, v) {
                return Err(Error::Duplicate(u, v));
            }
        }
        Ok(g)
    }

    /// Inserts `uv`, returning `false` if it was already present.
    ///
    /// Panics on a loop or an endpoint outside `0..n`.
    pub fn add_edge(&mut self, u: usize, v: usize) -> bool {
        assert!(u != v, "loop at {u}");
        let fresh = self.adj[u].insert(v);
        self.adj[v].insert(u);
        fresh
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> bool {
        let had = self.adj[u].remove(v);
        self.adj[v].remove(u);
        had
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(VertexSet::len).sum::<usize>() / 2
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    /// `d_G(x, Y)`.
    pub fn degree_into(&self, x: usize, ys: &VertexSet) -> usize {
        self.adj[x].intersection_len(ys)
    }

    /// `e_G(A, B)` for disjoint `A`, `B`.
    pub fn edges_between(&self, a: &VertexSet, b: &VertexSet) -> usize {
        a.iter().map(|x| self.degree_into(x, b)).sum()
    }

    pub fn min_degree(&self) -> usize {
        (0..self.order()).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.order()).flat_map(move |u| {
            self.adj[u]
                .iter()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    pub fn complement(&self) -> Graph {
        let n = self.order();
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                if !self.has_edge(u, v) {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    /// `G[X]` relabelled so that `verts[i]` becomes vertex `i`.
    pub fn induced(&self, verts: &[usize]) -> Graph {
        let mut g = Graph::new(verts.len());
        for i in 0..verts.len() {
            for j in i + 1..verts.len() {
                if self.has_edge(verts[i], verts[j]) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        let mut g = Graph::new(self.order());
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v]);
        }
        g
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.order())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

impl Adjacency for Graph {
    fn order(&self) -> usize {
        self.adj.len()
    }
    fn out_neighbors(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }
    fn in_neighbors(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }
    fn is_directed(&self) -> bool {
        false
    }
    fn touching(&self, v: usize) -> VertexSet {
        self.adj[v].clone()
    }
}

/// Directed graph without loops; antiparallel arcs are allowed.
#[derive(Clone, PartialEq, Eq)]
pub struct Digraph {
    out: Vec<VertexSet>,
    inn: Vec<VertexSet>,
}

impl Digraph {
    pub fn new(n: usize) -> Self {
        Digraph {
            out: (0..n).map(|_| VertexSet::new(n)).collect(),
            inn: (0..n).map(|_| VertexSet::new(n)).collect(),
        }
    }

    pub fn from_arcs<I>(n: usize, arcs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut d = Self::new(n);
        for (u, v) in arcs {
            check_endpoints(n, u, v)?;
            if !d.add_arc(u, v) {
                return Err(Error::Duplicate(u, v));
            }
        }
        Ok(d)
    }

    /// Inserts the arc `u -> v`, returning `false` if it was already present.
    ///
    /// Panics on a loop or an endpoint outside `0..n`.
    pub fn add_arc(&mut self, u: usize, v: usize) -> bool {
        assert!(u != v, "loop at {u}");
        self.inn[v].insert(u);
        self.out[u].insert(v)
    }

    pub fn remove_arc(&mut self, u: usize, v: usize) -> bool {
        self.inn[v].remove(u);
        self.out[u].remove(v)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.out.len()
    }

    pub fn arc_count(&self) -> usize {
        self.out.iter().map(VertexSet::len).sum()
    }

    #[inline]
    pub fn out_degree(&self, v: usize) -> usize {
        self.out[v].len()
    }

    #[inline]
    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.out[u].contains(v)
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.inn[v].len()
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.order()).flat_map(move |u| self.out[u].iter().map(move |v| (u, v)))
    }

    /// Dominant degree record of `v`, with ties counted as outdegree.
    pub fn dominant(&self, v: usize) -> DominantDegree {
        DominantDegree::new(self.out_degree(v), self.in_degree(v))
    }

    /// `d*(x, Y)`: outdegree into `Y` when `x` is oriented out, indegree otherwise.
    pub fn dominant_degree_into(&self, x: usize, ys: &VertexSet) -> usize {
        match self.dominant(x).orientation {
            Orientation::Out => self.out[x].intersection_len(ys),
            Orientation::In => self.inn[x].intersection_len(ys),
        }
    }

    pub fn induced(&self, verts: &[usize]) -> Digraph {
        let mut d = Digraph::new(verts.len());
        for (i, &u) in verts.iter().enumerate() {
            for (j, &v) in verts.iter().enumerate() {
                if i != j && self.out[u].contains(v) {
                    d.add_arc(i, j);
                }
            }
        }
        d
    }

    pub fn permuted(&self, perm: &[usize]) -> Digraph {
        let mut d = Digraph::new(self.order());
        for (u, v) in self.arcs() {
            d.add_arc(perm[u], perm[v]);
        }
        d
    }
}

impl std::fmt::Debug for Digraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Digraph")
            .field("n", &self.order())
            .field("arcs", &self.arcs().collect::<Vec<_>>())
            .finish()
    }
}

impl Adjacency for Digraph {
    fn order(&self) -> usize {
        self.out.len()
    }
    fn out_neighbors(&self, v: usize) -> &VertexSet {
        &self.out[v]
    }
    fn in_neighbors(&self, v: usize) -> &VertexSet {
        &self.inn[v]
    }
    fn is_directed(&self) -> bool {
        true
    }
}

fn check_endpoints(n: usize, u: usize, v: usize) -> Result<()> {
    if u >= n {
        return Err(Error::OutOfRange { vertex: u, n });
    }
    if v >= n {
        return Err(Error::OutOfRange { vertex: v, n });
    }
    if u == v {
        return Err(Error::Loop(u));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Orientation {
    Out,
    In,
}

/// Per-vertex degree record of a digraph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct DominantDegree {
    pub d_plus: usize,
    pub d_minus: usize,
    pub dominant: usize,
    pub orientation: Orientation,
}

impl DominantDegree {
    pub fn new(d_plus: usize, d_minus: usize) -> Self {
        let orientation = if d_plus >= d_minus {
            Orientation::Out
        } else {
            Orientation::In
        };
        DominantDegree {
            d_plus,
            d_minus,
            dominant: d_plus.max(d_minus),
            orientation,
        }
    }
}

/// Degrees sorted ascending, `d_1 <= .. <= d_n`.
pub fn degree_sequence(g: &Graph) -> Vec<usize> {
    let mut d: Vec<usize> = (0..g.order()).map(|v| g.degree(v)).collect();
    d.sort_unstable();
    d
}

/// Sorted dominant degree sequence together with the per-vertex view.
pub fn dominant_degree_sequence(d: &Digraph) -> (Vec<usize>, Vec<DominantDegree>) {
    let view: Vec<DominantDegree> = (0..d.order()).map(|v| d.dominant(v)).collect();
    let mut seq: Vec<usize> = view.iter().map(|r| r.dominant).collect();
    seq.sort_unstable();
    (seq, view)
}

/// Sorted dominant degrees of any host (plain degrees for a graph).
pub fn dominant_sequence_of<H: Adjacency + ?Sized>(h: &H) -> Vec<usize> {
    let mut seq: Vec<usize> = (0..h.order()).map(|v| h.dominant_degree(v)).collect();
    seq.sort_unstable();
    seq
}

/// Every edge replaced by both arcs.
pub fn symmetrize(g: &Graph) -> Digraph {
    let mut d = Digraph::new(g.order());
    for (u, v) in g.edges() {
        d.add_arc(u, v);
        d.add_arc(v, u);
    }
    d
}

/// Blow-up `G(t)`: vertex `i` becomes the block `i*t .. i*t + t`.
pub trait BlowUp: Sized {
    fn blow_up(&self, t: usize) -> Self;
}

impl BlowUp for Graph {
    fn blow_up(&self, t: usize) -> Graph {
        assert!(t >= 1, "blow-up factor must be positive");
        let mut g = Graph::new(self.order() * t);
        for (u, v) in self.edges() {
            for a in 0..t {
                for b in 0..t {
                    g.add_edge(u * t + a, v * t + b);
                }
            }
        }
        g
    }
}

impl BlowUp for Digraph {
    fn blow_up(&self, t: usize) -> Digraph {
        assert!(t >= 1, "blow-up factor must be positive");
        let mut d = Digraph::new(self.order() * t);
        for (u, v) in self.arcs() {
            for a in 0..t {
                for b in 0..t {
                    d.add_arc(u * t + a, v * t + b);
                }
            }
        }
        d
    }
}

pub fn blow_up<G: BlowUp>(g: &G, t: usize) -> G {
    g.blow_up(t)
}
