//! Connecting structures and absorbing sets.
//!
//! An `H`-path of length `t` is a chain `y_1, X_1, y_2, .., X_t, y_{t+1}`
//! with `|X_i| = h - 1` in which `X_i + y_i` and `X_i + y_{i+1}` both span
//! `H`. Its interior packs perfectly together with either endpoint, which
//! is what makes it a connector for absorbing sets.

mod family;
mod star;

pub use family::{
    absorb, build_absorbing_family, is_absorbing_for, pipeline, AbsorbFailure, AbsorbVia, Absorbed,
    AbsorbingFamily, FamilyFailure, FamilyParams, Gadget, PipelineFailure, PipelineParams, PipelineSuccess,
};
pub use star::{clique_path, star_blowup, verify_q_prime, verify_star_blowup, verify_star_blowup_in, StarBlowup};

use std::ops::ControlFlow;

use crate::bitset::VertexSet;
use crate::embed::{spans, visit_copies};
use crate::graph::{Adjacency, Graph};
use crate::packing::Packing;
use crate::pattern::Pattern;

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct HPath {
    /// `X_1 .. X_t`.
    pub blocks: Vec<Vec<usize>>,
    /// `y_1 .. y_{t+1}`.
    pub connectors: Vec<usize>,
}

impl HPath {
    pub fn length(&self) -> usize {
        self.blocks.len()
    }

    pub fn endpoints(&self) -> (usize, usize) {
        (self.connectors[0], *self.connectors.last().expect("a path has connectors"))
    }

    pub fn vertices(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.blocks.iter().flatten().chain(&self.connectors).copied().collect();
        v.sort_unstable();
        v
    }

    /// Every vertex except the endpoints.
    pub fn interior(&self) -> Vec<usize> {
        let (x, y) = self.endpoints();
        self.vertices().into_iter().filter(|&v| v != x && v != y).collect()
    }

    /// The path minus its endpoints.
    pub fn truncate(&self) -> TruncatedHPath {
        let k = self.connectors.len();
        TruncatedHPath {
            blocks: self.blocks.clone(),
            connectors: self.connectors[1..k.saturating_sub(1)].to_vec(),
        }
    }

    /// Perfect packings of `interior + x` and `interior + y`: pair each block
    /// with the connector on its left, or on its right.
    pub fn interior_packings(&self, host_order: usize, pattern: &Pattern) -> (Packing, Packing) {
        let side = |shift: usize| {
            let parts = self
                .blocks
                .iter()
                .enumerate()
                .map(|(i, b)| {
                    let mut v = b.clone();
                    v.push(self.connectors[i + shift]);
                    v
                })
                .collect();
            Packing::uniform(host_order, pattern.clone(), parts)
        };
        (side(0), side(1))
    }
}

/// An `H`-path with both endpoints removed: blocks `X_1 .. X_t` and the
/// inner connectors `y_2 .. y_t`. `X_1` and `X_t` are the endsets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedHPath {
    pub blocks: Vec<Vec<usize>>,
    pub connectors: Vec<usize>,
}

impl TruncatedHPath {
    pub fn length(&self) -> usize {
        self.blocks.len()
    }

    pub fn endsets(&self) -> (&[usize], &[usize]) {
        (&self.blocks[0], self.blocks.last().expect("nonempty"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum PathViolation {
    #[error("a path needs at least one block")]
    Empty,
    #[error("{connectors} connectors for {blocks} blocks")]
    ConnectorCount { blocks: usize, connectors: usize },
    #[error("block {block} has {size} vertices, expected {expected}")]
    BlockSize { block: usize, size: usize, expected: usize },
    #[error("vertex {vertex} appears twice")]
    Repeated { vertex: usize },
    #[error("vertex {vertex} is not in the host")]
    OutOfRange { vertex: usize },
    #[error("block {block} with connector {connector} does not span the pattern")]
    NotSpanning { block: usize, connector: usize },
    #[error("{0}")]
    Concat(String),
}

fn check_shape(
    host_order: usize,
    h: usize,
    blocks: &[Vec<usize>],
    connectors: &[usize],
    expected_connectors: usize,
) -> Result<(), PathViolation> {
    if blocks.is_empty() {
        return Err(PathViolation::Empty);
    }
    if connectors.len() != expected_connectors {
        return Err(PathViolation::ConnectorCount {
            blocks: blocks.len(),
            connectors: connectors.len(),
        });
    }
    for (i, b) in blocks.iter().enumerate() {
        if b.len() + 1 != h {
            return Err(PathViolation::BlockSize {
                block: i,
                size: b.len(),
                expected: h - 1,
            });
        }
    }
    let mut seen = VertexSet::new(host_order);
    for &v in blocks.iter().flatten().chain(connectors) {
        if v >= host_order {
            return Err(PathViolation::OutOfRange { vertex: v });
        }
        if !seen.insert(v) {
            return Err(PathViolation::Repeated { vertex: v });
        }
    }
    Ok(())
}

fn check_span<H: Adjacency + ?Sized>(
    host: &H,
    pattern: &Pattern,
    block: usize,
    xs: &[usize],
    y: usize,
) -> Result<(), PathViolation> {
    let mut set = xs.to_vec();
    set.push(y);
    spans(host, pattern, &set)
        .map(|_| ())
        .ok_or(PathViolation::NotSpanning { block, connector: y })
}

/// Checks sizes, distinctness and both spanning conditions of every block.
pub fn is_h_path<H: Adjacency + ?Sized>(host: &H, pattern: &Pattern, p: &HPath) -> Result<(), PathViolation> {
    check_shape(host.order(), pattern.order(), &p.blocks, &p.connectors, p.blocks.len() + 1)?;
    for (i, b) in p.blocks.iter().enumerate() {
        check_span(host, pattern, i, b, p.connectors[i])?;
        check_span(host, pattern, i, b, p.connectors[i + 1])?;
    }
    Ok(())
}

/// Inner blocks span with both neighbouring connectors; the endsets only
/// with their single inner neighbour.
pub fn is_truncated_h_path<H: Adjacency + ?Sized>(
    host: &H,
    pattern: &Pattern,
    q: &TruncatedHPath,
) -> Result<(), PathViolation> {
    let t = q.blocks.len();
    check_shape(host.order(), pattern.order(), &q.blocks, &q.connectors, t.saturating_sub(1))?;
    if t == 1 {
        return Ok(());
    }
    // connectors[j] is y_{j+2}: block i (0-based) sits between
    // connectors[i - 1] and connectors[i].
    for (i, b) in q.blocks.iter().enumerate() {
        if i > 0 {
            check_span(host, pattern, i, b, q.connectors[i - 1])?;
        }
        if i + 1 < t {
            check_span(host, pattern, i, b, q.connectors[i])?;
        }
    }
    Ok(())
}

/// Joins `p1` (ending at `y`) and `p2` (starting at `y`).
pub fn concat(p1: &HPath, p2: &HPath) -> Result<HPath, PathViolation> {
    let (_, right) = p1.endpoints();
    let (left, _) = p2.endpoints();
    if right != left {
        return Err(PathViolation::Concat(format!(
            "right endpoint {right} of the first path is not the left endpoint {left} of the second"
        )));
    }
    let a = p1.vertices();
    let b = p2.vertices();
    if let Some(&v) = a.iter().find(|&&v| v != right && b.binary_search(&v).is_ok()) {
        return Err(PathViolation::Concat(format!("vertex {v} is on both paths")));
    }
    let mut blocks = p1.blocks.clone();
    blocks.extend(p2.blocks.iter().cloned());
    let mut connectors = p1.connectors.clone();
    connectors.extend(&p2.connectors[1..]);
    Ok(HPath { blocks, connectors })
}

/// `(h-1)`-sets `X` avoiding `x, y` with `X + x` and `X + y` both spanning
/// `pattern`, in the order copies through `x` are found, at most `cap`.
pub fn length1_connectors<H: Adjacency + ?Sized>(
    host: &H,
    pattern: &Pattern,
    x: usize,
    y: usize,
    cap: Option<usize>,
) -> Vec<Vec<usize>> {
    let mut avail = VertexSet::full(host.order());
    avail.remove(y);
    length1_connectors_within(host, pattern, x, y, &avail, cap)
}

fn length1_connectors_within<H: Adjacency + ?Sized>(
    host: &H,
    pattern: &Pattern,
    x: usize,
    y: usize,
    avail: &VertexSet,
    cap: Option<usize>,
) -> Vec<Vec<usize>> {
    assert_ne!(x, y);
    let cap = cap.unwrap_or(usize::MAX);
    let mut out = Vec::new();
    if cap == 0 {
        return out;
    }
    let mut avail = avail.clone();
    avail.insert(x);
    avail.remove(y);
    let _ = visit_copies(host, pattern, &avail, Some(x), |c| {
        let xs: Vec<usize> = c.vertices.iter().copied().filter(|&v| v != x).collect();
        let mut with_y = xs.clone();
        with_y.push(y);
        if spans(host, pattern, &with_y).is_some() {
            out.push(xs);
            if out.len() >= cap {
                return ControlFlow::Break(());
            }
        }
        ControlFlow::Continue(())
    });
    out
}

/// `xy` is an edge when at least `beta_count` length-1 paths join `x`
/// and `y`.
pub fn auxiliary_graph<H: Adjacency + ?Sized>(host: &H, pattern: &Pattern, beta_count: usize) -> Graph {
    let n = host.order();
    let mut g = Graph::new(n);
    for x in 0..n {
        for y in x + 1..n {
            if length1_connectors(host, pattern, x, y, Some(beta_count)).len() >= beta_count {
                g.add_edge(x, y);
            }
        }
    }
    g
}

/// Search limits for [`find_connecting_path`].
#[derive(Clone, Copy, Debug)]
pub struct PathSearch {
    pub beta_count: usize,
    /// Connector sets tried per step.
    pub connector_cap: usize,
    pub budget_nodes: u64,
}

impl Default for PathSearch {
    fn default() -> Self {
        PathSearch {
            beta_count: 1,
            connector_cap: 32,
            budget_nodes: 200_000,
        }
    }
}

/// An `H`-path of length `t` from `x` to `y` avoiding `avoid`.
///
/// Walks the auxiliary graph from `x` and lifts each step to a connector
/// set disjoint from everything used so far, backtracking over both the
/// next vertex and the connector set. `None` once the search is exhausted
/// or the node budget runs out.
pub fn find_connecting_path<H: Adjacency + ?Sized>(
    host: &H,
    pattern: &Pattern,
    x: usize,
    y: usize,
    t: usize,
    avoid: &VertexSet,
    search: PathSearch,
) -> Option<HPath> {
    assert!(t >= 1 && x != y);
    let aux = auxiliary_graph(host, pattern, search.beta_count);
    let mut used = avoid.clone();
    used.insert(x);
    used.insert(y);
    let mut s = Lift {
        host,
        pattern,
        aux: &aux,
        target: y,
        t,
        search,
        nodes: 0,
        blocks: Vec::new(),
        connectors: vec![x],
    };
    let found = s.rec(&mut used);
    if !found {
        return None;
    }
    let path = HPath {
        blocks: s.blocks,
        connectors: s.connectors,
    };
    debug_assert!(is_h_path(host, pattern, &path).is_ok());
    is_h_path(host, pattern, &path).ok()?;
    Some(path)
}

struct Lift<'a, H: ?Sized> {
    host: &'a H,
    pattern: &'a Pattern,
    aux: &'a Graph,
    target: usize,
    t: usize,
    search: PathSearch,
    nodes: u64,
    blocks: Vec<Vec<usize>>,
    connectors: Vec<usize>,
}

impl<H: Adjacency + ?Sized> Lift<'_, H> {
    fn rec(&mut self, used: &mut VertexSet) -> bool {
        self.nodes += 1;
        if self.nodes > self.search.budget_nodes {
            return false;
        }
        let cur = *self.connectors.last().expect("starts at x");
        let step = self.blocks.len();
        let nexts: Vec<usize> = if step + 1 == self.t {
            if self.aux.has_edge(cur, self.target) {
                vec![self.target]
            } else {
                vec![]
            }
        } else {
            self.aux.neighbors(cur).iter().filter(|&z| !used.contains(z)).collect()
        };
        for z in nexts {
            let mut avail = VertexSet::full(self.host.order()).difference(used);
            avail.remove(z);
            let options = length1_connectors_within(
                self.host,
                self.pattern,
                cur,
                z,
                &avail,
                Some(self.search.connector_cap),
            );
            for xs in options {
                for &v in &xs {
                    used.insert(v);
                }
                used.insert(z);
                self.blocks.push(xs.clone());
                self.connectors.push(z);
                if step + 1 == self.t || self.rec(used) {
                    return true;
                }
                self.blocks.pop();
                self.connectors.pop();
                if z != self.target {
                    used.remove(z);
                }
                for &v in &xs {
                    used.remove(v);
                }
                if self.nodes > self.search.budget_nodes {
                    return false;
                }
            }
        }
        false
    }
}

/// Dominant degrees of the connectors `y_1 .. y_{t+1}`, for charting
/// against degree bounds.
pub fn connector_degrees<H: Adjacency + ?Sized>(host: &H, p: &HPath) -> Vec<usize> {
    p.connectors.iter().map(|&y| host.dominant_degree(y)).collect()
}
