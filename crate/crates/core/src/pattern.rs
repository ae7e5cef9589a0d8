//! Small pattern (di)graphs `H` to be packed into a host.

use std::fmt;

use crate::bitset::VertexSet;
use crate::chromatic::chromatic_number;
use crate::error::{Error, Result};
use crate::graph::{symmetrize, Adjacency, BlowUp, Digraph, Graph};

/// Structure recognised at construction time; copy search has a fast path for
/// each of the first three.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Shape {
    Clique,
    /// A transitive tournament; `order[i]` is the pattern vertex playing the
    /// `i`-th role (indegree `i`).
    Transitive { order: Vec<usize> },
    /// Complete multipartite graph with the given vertex classes.
    Multipartite { classes: Vec<Vec<usize>> },
    General,
}

/// A pattern `H`. Undirected patterns are stored as symmetric digraphs so that
/// every embedding test is an arc test.
#[derive(Clone)]
pub struct Pattern {
    name: String,
    arcs: Digraph,
    graph: Option<Graph>,
    shape: Shape,
    chromatic: Option<usize>,
    min_touch: usize,
}

impl Pattern {
    pub fn graph(name: impl Into<String>, g: Graph) -> Self {
        assert!(g.order() >= 1, "a pattern needs a vertex");
        let shape = if g.edge_count() * 2 == g.order() * (g.order() - 1) {
            Shape::Clique
        } else {
            multipartite_classes(&g).map_or(Shape::General, |classes| Shape::Multipartite { classes })
        };
        let chromatic = Some(chromatic_number(&g));
        let arcs = symmetrize(&g);
        let min_touch = (0..g.order()).map(|v| g.degree(v)).min().unwrap_or(0);
        Pattern {
            name: name.into(),
            arcs,
            graph: Some(g),
            shape,
            chromatic,
            min_touch,
        }
    }

    pub fn digraph(name: impl Into<String>, d: Digraph) -> Self {
        assert!(d.order() >= 1, "a pattern needs a vertex");
        let h = d.order();
        let shape = match crate::embed::transitive_order(&d, &(0..h).collect::<Vec<_>>()) {
            Some(order) if d.arc_count() == h * (h - 1) / 2 => Shape::Transitive { order },
            _ => Shape::General,
        };
        let min_touch = (0..h).map(|v| d.touching(v).len()).min().unwrap_or(0);
        Pattern {
            name: name.into(),
            arcs: d,
            graph: None,
            shape,
            chromatic: None,
            min_touch,
        }
    }

    /// `K_r`.
    pub fn clique(r: usize) -> Self {
        Pattern::graph(format!("K{r}"), Graph::complete(r))
    }

    /// `T_r`.
    pub fn transitive(r: usize) -> Self {
        Pattern::digraph(format!("T{r}"), crate::constructions::transitive_tournament(r))
    }

    /// Parses `K3`, `K_3`, `T3`, `K2,2,2`, `K_{2,2,2}`, `K3^2`, `T_3^2`.
    pub fn parse(descriptor: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("unknown pattern descriptor {descriptor:?}"));
        let s: String = descriptor.chars().filter(|c| !"{}_ ".contains(*c)).collect();
        let mut chars = s.chars();
        let kind = chars.next().ok_or_else(bad)?;
        let rest = chars.as_str();
        let (body, power) = match rest.split_once('^') {
            Some((b, p)) => (b, Some(p.parse::<usize>().map_err(|_| bad())?)),
            None => (rest, None),
        };
        let sizes: Vec<usize> = body
            .split(',')
            .map(|x| x.parse::<usize>().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        if sizes.iter().any(|&x| x == 0) || power == Some(0) {
            return Err(bad());
        }
        let t = power.unwrap_or(1);
        let canonical = descriptor.trim().to_string();
        match (kind, sizes.as_slice()) {
            ('K', [r]) if power.is_none() => Ok(Pattern::clique(*r)),
            ('T', [r]) if power.is_none() => Ok(Pattern::transitive(*r)),
            ('K', [r]) => Ok(Pattern::graph(canonical, Graph::complete(*r).blow_up(t))),
            ('T', [r]) => Ok(Pattern::digraph(
                canonical,
                crate::constructions::transitive_tournament(*r).blow_up(t),
            )),
            ('K', many) if power.is_none() => Ok(Pattern::graph(
                canonical,
                crate::constructions::complete_multipartite(many),
            )),
            _ => Err(bad()),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.arcs.order()
    }

    pub fn is_directed(&self) -> bool {
        self.graph.is_none()
    }

    pub fn arcs(&self) -> &Digraph {
        &self.arcs
    }

    /// The underlying graph of an undirected pattern.
    pub fn as_graph(&self) -> Option<&Graph> {
        self.graph.as_ref()
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    /// Exact `chi(H)`, for undirected patterns.
    pub fn chromatic_number(&self) -> Option<usize> {
        self.chromatic
    }

    /// Least number of other pattern vertices a vertex is joined to.
    pub fn min_touch(&self) -> usize {
        self.min_touch
    }

    /// Whether `f` (pattern vertex to host vertex) maps every arc onto an arc.
    pub fn is_embedding<G: Adjacency + ?Sized>(&self, host: &G, f: &[usize]) -> bool {
        f.len() == self.order() && self.arcs.arcs().all(|(a, b)| host.has_arc(f[a], f[b]))
    }
}

impl fmt::Debug for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pattern({})", self.name)
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

// Classes of the complement's components, if the graph is complete
// multipartite (the complement is a disjoint union of cliques).
fn multipartite_classes(g: &Graph) -> Option<Vec<Vec<usize>>> {
    let n = g.order();
    let mut seen = VertexSet::new(n);
    let mut classes = Vec::new();
    for v in 0..n {
        if seen.contains(v) {
            continue;
        }
        let mut class = VertexSet::full(n);
        class.difference_with(g.neighbors(v));
        for w in class.iter() {
            if w != v && class.intersection_len(g.neighbors(w)) != 0 {
                return None;
            }
        }
        seen.union_with(&class);
        classes.push(class.to_vec());
    }
    Some(classes)
}
