//! Explicit graphs and packings: patterns, the extremal construction with no
//! perfect `K_{t_1..t_r}`-packing, and perfect `T_r`-packings of blow-ups.

use std::ops::ControlFlow;

use crate::bitset::VertexSet;
use crate::embed::{visit_copies, Copy};
use crate::error::{Error, Result};
use crate::graph::{Adjacency, BlowUp, Digraph, Graph};
use crate::packing::{is_perfect_packing, Packing};
use crate::pattern::Pattern;

/// `T_r` with arcs `i -> j` for all `i < j`. Vertex `i` has indegree `i`.
pub fn transitive_tournament(r: usize) -> Digraph {
    assert!(r >= 1);
    let mut d = Digraph::new(r);
    for i in 0..r {
        for j in i + 1..r {
            d.add_arc(i, j);
        }
    }
    d
}

/// `K_{t_1, .., t_r}`; class `i` occupies a contiguous range of vertices.
pub fn complete_multipartite(sizes: &[usize]) -> Graph {
    assert!(!sizes.is_empty() && sizes.iter().all(|&t| t >= 1));
    let n: usize = sizes.iter().sum();
    let mut class = Vec::with_capacity(n);
    for (i, &t) in sizes.iter().enumerate() {
        class.extend(std::iter::repeat(i).take(t));
    }
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if class[u] != class[v] {
                g.add_edge(u, v);
            }
        }
    }
    g
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PowerKind {
    K,
    T,
}

/// `K_r^t = K_r(t)` or `T_r^t = T_r(t)`.
pub fn pattern_power(kind: PowerKind, r: usize, t: usize) -> Pattern {
    assert!(r >= 1 && t >= 1);
    match kind {
        PowerKind::K => Pattern::graph(format!("K{r}^{t}"), Graph::complete(r).blow_up(t)),
        PowerKind::T => Pattern::digraph(format!("T{r}^{t}"), transitive_tournament(r).blow_up(t)),
    }
}

/// Parameters of the extremal graph.
///
/// Classes: `|V_1| = 1`, `|V_2| = n/r + 1 + Cr`, `|V_3| = 2n/r - 2 - 3C` and
/// `|V_i| = n/r - C` for `4 <= i <= r`. `stars` lists the vertex counts of
/// the stars partitioning `V_2`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct ExtremalParams {
    pub r: usize,
    pub part_sizes: Vec<usize>,
    pub n: usize,
    pub c: usize,
    pub stars: Vec<usize>,
}

impl ExtremalParams {
    /// Stars of sizes `floor`/`ceil` of `2|V_2|/sqrt(n)`, `sqrt(n)/2` of them,
    /// for `n` a perfect square. `C` defaults to `sqrt(n)/3r^2`.
    pub fn with_formula_stars(r: usize, part_sizes: Vec<usize>, n: usize, c: Option<usize>) -> Result<Self> {
        let root = (n as f64).sqrt().round() as usize;
        if root * root != n || root % 2 != 0 {
            return Err(Error::InvalidParams(format!("n = {n} is not the square of an even number")));
        }
        let c = match c {
            Some(c) => c,
            None if root % (3 * r * r) == 0 => root / (3 * r * r),
            None => {
                return Err(Error::InvalidParams(format!("sqrt(n) = {root} is not divisible by 3r^2")));
            }
        };
        if n % r != 0 {
            return Err(Error::Divisibility { what: "n", value: n, by: r });
        }
        let v2 = n / r + 1 + c * r;
        let count = root / 2;
        let (base, extra) = (v2 / count, v2 % count);
        if base == 0 {
            return Err(Error::InvalidParams("V_2 has fewer vertices than stars".into()));
        }
        let stars = (0..count).map(|i| base + usize::from(i < extra)).collect();
        let p = ExtremalParams { r, part_sizes, n, c, stars };
        p.validate()?;
        Ok(p)
    }

    /// Sizes of `V_1, .., V_r`.
    pub fn class_sizes(&self) -> Result<Vec<usize>> {
        let (r, n, c) = (self.r as i64, self.n as i64, self.c as i64);
        if self.r < 3 {
            return Err(Error::InvalidParams(format!("r = {r} must be at least 3")));
        }
        if n % r != 0 {
            return Err(Error::Divisibility { what: "n", value: self.n, by: self.r });
        }
        let q = n / r;
        let mut sizes = vec![1, q + 1 + c * r, 2 * q - 2 - 3 * c];
        if sizes[2] < 0 {
            return Err(Error::InvalidParams(format!(
                "|V_3| = 2n/r - 2 - 3C = {} is negative",
                sizes[2]
            )));
        }
        if self.r >= 4 && q - c < 0 {
            return Err(Error::InvalidParams(format!("|V_i| = n/r - C = {} is negative", q - c)));
        }
        sizes.extend(std::iter::repeat(q - c).take(self.r - 3));
        Ok(sizes.into_iter().map(|s| s as usize).collect())
    }

    pub fn validate(&self) -> Result<()> {
        if self.part_sizes.len() != self.r {
            return Err(Error::InvalidParams(format!(
                "H needs r = {} class sizes, got {}",
                self.r,
                self.part_sizes.len()
            )));
        }
        if self.part_sizes.iter().any(|&t| t < 2) {
            return Err(Error::InvalidParams("every class of H needs t_i >= 2".into()));
        }
        let sizes = self.class_sizes()?;
        let total: usize = sizes.iter().sum();
        if total != self.n {
            return Err(Error::InvalidParams(format!("class sizes sum to {total}, not n = {}", self.n)));
        }
        if self.stars.iter().any(|&s| s == 0) {
            return Err(Error::InvalidParams("stars need at least one vertex".into()));
        }
        let star_total: usize = self.stars.iter().sum();
        if star_total != sizes[1] {
            return Err(Error::InvalidParams(format!(
                "stars cover {star_total} vertices but |V_2| = n/r + 1 + Cr = {}",
                sizes[1]
            )));
        }
        Ok(())
    }

    /// The pattern `K_{t_1, .., t_r}`.
    pub fn pattern(&self) -> Pattern {
        let name = format!(
            "K{}",
            self.part_sizes.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
        );
        Pattern::graph(name, complete_multipartite(&self.part_sizes))
    }

    /// Degree multiset as `(degree, multiplicity)` pairs sorted by degree,
    /// worked out from the class sizes without building the graph.
    pub fn degree_multiset(&self) -> Result<Vec<(usize, usize)>> {
        self.validate()?;
        let s = self.class_sizes()?;
        let n = self.n;
        let mut counts = std::collections::BTreeMap::new();
        let mut add = |d: usize, k: usize| *counts.entry(d).or_insert(0) += k;
        add(n - 1 - s[2], 1);
        for &star in &self.stars {
            match star {
                1 => add(n - s[1], 1),
                _ => {
                    add(n - s[1] + star - 1, 1);
                    add(n - s[1] + 1, star - 1);
                }
            }
        }
        add(n - 2, s[2]);
        for &si in &s[3..] {
            add(n - si, si);
        }
        Ok(counts.into_iter().collect())
    }
}

/// The classes of an extremal graph as vertex ranges, `V_1` first.
pub fn extremal_classes(p: &ExtremalParams) -> Result<Vec<std::ops::Range<usize>>> {
    let sizes = p.class_sizes()?;
    let mut start = 0;
    Ok(sizes
        .into_iter()
        .map(|s| {
            let r = start..start + s;
            start += s;
            r
        })
        .collect())
}

/// The extremal graph and its vertex `v` (the single vertex of `V_1`).
///
/// `V_3` is joined to everything outside `V_1`; `V_2` and each `V_i`,
/// `i >= 4`, is joined to everything outside itself; `V_2` carries a forest
/// of stars whose first vertex is the centre.
pub fn extremal_graph(p: &ExtremalParams) -> Result<(Graph, usize)> {
    p.validate()?;
    let classes = extremal_classes(p)?;
    let n = p.n;
    let mut class_of = vec![0; n];
    for (i, range) in classes.iter().enumerate() {
        for v in range.clone() {
            class_of[v] = i;
        }
    }
    let mut g = Graph::new(n);
    for u in 0..n {
        for w in u + 1..n {
            let (a, b) = (class_of[u], class_of[w]);
            let joined = (a == 2 || b == 2) && a != 0 && b != 0
                || a != b && (a == 1 || b == 1 || a >= 3 || b >= 3);
            if joined {
                g.add_edge(u, w);
            }
        }
    }
    let mut start = classes[1].start;
    for &s in &p.stars {
        for leaf in start + 1..start + s {
            g.add_edge(start, leaf);
        }
        start += s;
    }
    Ok((g, classes[0].start))
}

/// Outcome of searching for a copy of a pattern through a vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// Exhaustive search found no copy containing the vertex.
    NoneFound,
    /// A copy containing the vertex.
    Refutation(Copy),
}

/// Searches every vertex set containing `v` for a copy of `pattern`.
pub fn certify_uncoverable<G: Adjacency + ?Sized>(g: &G, v: usize, pattern: &Pattern) -> Certificate {
    let mut found = None;
    let _ = visit_copies(g, pattern, &VertexSet::full(g.order()), Some(v), |c| {
        found = Some(c);
        ControlFlow::Break(())
    });
    found.map_or(Certificate::NoneFound, Certificate::Refutation)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlowupKind {
    /// `T_r(t)`.
    Tr,
    /// `T_{r+1}(t)`.
    TrPlus1,
}

/// The blown-up tournament that [`fact_packing_of_blowup`] packs.
pub fn fact_host(r: usize, t: usize, which: BlowupKind) -> Digraph {
    let k = match which {
        BlowupKind::Tr => r,
        BlowupKind::TrPlus1 => r + 1,
    };
    transitive_tournament(k).blow_up(t)
}

/// A perfect `T_r`-packing of `T_r(t)` or `T_{r+1}(t)` when `r | t`.
///
/// `T_r(t)` is cut into the `t` transversals. For `T_{r+1}(t)` each copy
/// omits one class: the omitted class runs from the last down to the first,
/// `t/r` copies each, and every copy takes the next unused vertex of each
/// class it meets.
pub fn fact_packing_of_blowup(r: usize, t: usize, which: BlowupKind) -> Result<Packing> {
    if r == 0 || t == 0 {
        return Err(Error::InvalidParams("r and t must be positive".into()));
    }
    if t % r != 0 {
        return Err(Error::Divisibility { what: "t", value: t, by: r });
    }
    let host = fact_host(r, t, which);
    let mut parts = Vec::new();
    match which {
        BlowupKind::Tr => {
            for j in 0..t {
                parts.push((0..r).map(|i| i * t + j).collect::<Vec<_>>());
            }
        }
        BlowupKind::TrPlus1 => {
            let mut next = vec![0; r + 1];
            for omit in (0..=r).rev() {
                for _ in 0..t / r {
                    let mut part = Vec::with_capacity(r);
                    for (class, used) in next.iter_mut().enumerate() {
                        if class != omit {
                            part.push(class * t + *used);
                            *used += 1;
                        }
                    }
                    parts.push(part);
                }
            }
        }
    }
    let packing = Packing::uniform(host.order(), Pattern::transitive(r), parts);
    is_perfect_packing(&host, &packing)?;
    Ok(packing)
}

/// An independent set of size `n/r + 1` joined completely to a clique on
/// the other vertices: minimum degree `(1 - 1/r)n - 1` and no perfect
/// `K_r`-packing.
pub fn hs_tight(r: usize, n: usize) -> Result<Graph> {
    if r < 2 || n % r != 0 || n / r + 1 > n {
        return Err(Error::Divisibility { what: "n", value: n, by: r });
    }
    let a = n / r + 1;
    let mut g = Graph::complete(n);
    for u in 0..a {
        for v in u + 1..a {
            g.remove_edge(u, v);
        }
    }
    Ok(g)
}
