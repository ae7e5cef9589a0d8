//! Exact perfect and maximum packing search, and greedy packing.
//!
//! Both exact searches branch on the lowest available vertex and try every
//! copy through it, so a `NoneExists` answer means the whole tree was
//! explored.

use std::ops::ControlFlow;

use crate::bitset::VertexSet;
use crate::embed::{copies_in, visit_copies, Copy};
use crate::graph::Adjacency;
use crate::pattern::Pattern;

use super::Packing;

/// Every copy of `pattern` in `host` (through `through`, if given).
pub fn enumerate_copies<G: Adjacency + ?Sized>(host: &G, pattern: &Pattern, through: Option<usize>) -> Vec<Copy> {
    copies_in(host, pattern, &VertexSet::full(host.order()), through)
}

#[derive(Clone, Debug)]
pub enum Search {
    Found(Packing),
    NoneExists,
    BudgetExhausted,
}

impl Search {
    pub fn found(self) -> Option<Packing> {
        match self {
            Search::Found(p) => Some(p),
            _ => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, Search::Found(_))
    }
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub result: Search,
    /// Search-tree nodes visited.
    pub nodes: u64,
}

struct Exhausted;

/// A perfect packing of the whole host, or `None` once the search space is
/// exhausted. No node budget.
pub fn find_perfect_packing<G: Adjacency + ?Sized>(host: &G, pattern: &Pattern) -> Option<Packing> {
    find_perfect_packing_within(host, pattern, &VertexSet::full(host.order()), None)
        .result
        .found()
}

/// A perfect packing of `host[allowed]`.
pub fn find_perfect_packing_within<G: Adjacency + ?Sized>(
    host: &G,
    pattern: &Pattern,
    allowed: &VertexSet,
    budget: Option<u64>,
) -> SearchOutcome {
    let h = pattern.order();
    if allowed.len() % h != 0 {
        return SearchOutcome {
            result: Search::NoneExists,
            nodes: 0,
        };
    }
    let mut s = Perfect {
        host,
        pattern,
        budget: budget.unwrap_or(u64::MAX),
        nodes: 0,
        chosen: Vec::new(),
    };
    let mut avail = allowed.clone();
    let result = match s.rec(&mut avail) {
        Ok(true) => {
            let p = Packing::uniform(host.order(), pattern.clone(), std::mem::take(&mut s.chosen));
            debug_assert!(super::is_perfect_packing_of(host, &p, allowed).is_ok());
            Search::Found(p)
        }
        Ok(false) => Search::NoneExists,
        Err(Exhausted) => Search::BudgetExhausted,
    };
    SearchOutcome { result, nodes: s.nodes }
}

struct Perfect<'a, G: ?Sized> {
    host: &'a G,
    pattern: &'a Pattern,
    budget: u64,
    nodes: u64,
    chosen: Vec<Vec<usize>>,
}

impl<G: Adjacency + ?Sized> Perfect<'_, G> {
    fn rec(&mut self, avail: &mut VertexSet) -> Result<bool, Exhausted> {
        let Some(v) = avail.first() else {
            return Ok(true);
        };
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Exhausted);
        }
        let need = self.pattern.min_touch();
        if avail.iter().any(|u| self.host.touching(u).intersection_len(avail) < need) {
            return Ok(false);
        }
        for copy in copies_in(self.host, self.pattern, avail, Some(v)) {
            for &w in &copy.vertices {
                avail.remove(w);
            }
            self.chosen.push(copy.vertices.clone());
            let res = self.rec(avail);
            for &w in &copy.vertices {
                avail.insert(w);
            }
            match res {
                Ok(true) => return Ok(true),
                Ok(false) => {
                    self.chosen.pop();
                }
                Err(e) => return Err(e),
            }
        }
        Ok(false)
    }
}

/// Result of [`max_packing`].
#[derive(Clone, Debug)]
pub struct MaxPacking {
    pub packing: Packing,
    /// False when the node budget ran out before optimality was proved.
    pub optimal: bool,
    pub nodes: u64,
}

/// A packing by copies of the `family` patterns covering as many vertices
/// as possible.
pub fn max_packing<G: Adjacency + ?Sized>(host: &G, family: &[Pattern], budget: Option<u64>) -> MaxPacking {
    max_packing_within(host, family, &VertexSet::full(host.order()), budget)
}

/// [`max_packing`] restricted to `host[allowed]`.
///
/// Branch and bound: at the lowest available vertex either some copy
/// through it is taken or the vertex is left out. A node is cut when the
/// covered count plus the largest multiple of the pattern order fitting in
/// the remaining vertices cannot beat the incumbent, which starts as the
/// index-order greedy packing.
pub fn max_packing_within<G: Adjacency + ?Sized>(
    host: &G,
    family: &[Pattern],
    allowed: &VertexSet,
    budget: Option<u64>,
) -> MaxPacking {
    assert!(!family.is_empty());
    let mut incumbent: Vec<(usize, Vec<usize>)> = Vec::new();
    let mut avail = allowed.clone();
    for v in allowed.iter() {
        if !avail.contains(v) {
            continue;
        }
        for (i, pat) in family.iter().enumerate() {
            if let Some(c) = first_copy(host, pat, &avail, v) {
                for &w in &c {
                    avail.remove(w);
                }
                incumbent.push((i, c));
                break;
            }
        }
    }
    let best_cov = incumbent.iter().map(|(_, c)| c.len()).sum();
    let uniform = family.windows(2).all(|w| w[0].order() == w[1].order());
    let mut bb = Branch {
        host,
        family,
        budget: budget.unwrap_or(u64::MAX),
        nodes: 0,
        exhausted: false,
        uniform_h: uniform.then(|| family[0].order()),
        current: Vec::new(),
        best: incumbent,
        best_cov,
    };
    let mut avail = allowed.clone();
    bb.rec(&mut avail, 0);
    let mut packing = Packing::new(host.order(), family.to_vec());
    for (i, c) in bb.best {
        packing.push(i, c);
    }
    MaxPacking {
        packing,
        optimal: !bb.exhausted,
        nodes: bb.nodes,
    }
}

struct Branch<'a, G: ?Sized> {
    host: &'a G,
    family: &'a [Pattern],
    budget: u64,
    nodes: u64,
    exhausted: bool,
    uniform_h: Option<usize>,
    current: Vec<(usize, Vec<usize>)>,
    best: Vec<(usize, Vec<usize>)>,
    best_cov: usize,
}

impl<G: Adjacency + ?Sized> Branch<'_, G> {
    fn bound(&self, avail: usize) -> usize {
        match self.uniform_h {
            Some(h) => avail / h * h,
            None => avail,
        }
    }

    fn rec(&mut self, avail: &mut VertexSet, covered: usize) {
        if self.exhausted {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            self.exhausted = true;
            return;
        }
        if covered > self.best_cov {
            self.best_cov = covered;
            self.best = self.current.clone();
        }
        if covered + self.bound(avail.len()) <= self.best_cov {
            return;
        }
        let Some(v) = avail.first() else {
            return;
        };
        for (i, pat) in self.family.iter().enumerate() {
            for copy in copies_in(self.host, pat, avail, Some(v)) {
                for &w in &copy.vertices {
                    avail.remove(w);
                }
                self.current.push((i, copy.vertices.clone()));
                self.rec(avail, covered + copy.vertices.len());
                self.current.pop();
                for &w in &copy.vertices {
                    avail.insert(w);
                }
                if self.exhausted {
                    return;
                }
            }
        }
        avail.remove(v);
        self.rec(avail, covered);
        avail.insert(v);
    }
}

fn first_copy<G: Adjacency + ?Sized>(host: &G, pattern: &Pattern, avail: &VertexSet, v: usize) -> Option<Vec<usize>> {
    let mut found = None;
    let _ = visit_copies(host, pattern, avail, Some(v), |c| {
        found = Some(c.vertices);
        ControlFlow::Break(())
    });
    found
}

/// Vertex order used by [`greedy_packing`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum OrderPolicy {
    #[default]
    Index,
    /// Lowest dominant degree first, ties by index.
    MinDegreeFirst,
    MaxDegreeFirst,
}

/// One pass over the vertices in policy order, taking the first copy
/// through each vertex that is still free. The result is maximal: a copy
/// left among the uncovered vertices would have been found at its earliest
/// vertex.
pub fn greedy_packing<G: Adjacency + ?Sized>(host: &G, pattern: &Pattern, policy: OrderPolicy) -> Packing {
    greedy_packing_within(host, pattern, &VertexSet::full(host.order()), policy)
}

pub fn greedy_packing_within<G: Adjacency + ?Sized>(
    host: &G,
    pattern: &Pattern,
    allowed: &VertexSet,
    policy: OrderPolicy,
) -> Packing {
    let mut order: Vec<usize> = allowed.to_vec();
    match policy {
        OrderPolicy::Index => {}
        OrderPolicy::MinDegreeFirst => order.sort_by_key(|&v| (host.dominant_degree(v), v)),
        OrderPolicy::MaxDegreeFirst => order.sort_by_key(|&v| (std::cmp::Reverse(host.dominant_degree(v)), v)),
    }
    let mut avail = allowed.clone();
    let mut packing = Packing::new(host.order(), vec![pattern.clone()]);
    for v in order {
        if !avail.contains(v) {
            continue;
        }
        if let Some(c) = first_copy(host, pattern, &avail, v) {
            for &w in &c {
                avail.remove(w);
            }
            packing.push(0, c);
        }
    }
    packing
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{complete_multipartite, transitive_tournament};
    use crate::graph::{BlowUp, Digraph, Graph};
    use crate::packing::{is_perfect_packing, verify_packing};
    use crate::random::{random_tournament, SeedSplitter};

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn perfect_examples() {
        let p = find_perfect_packing(&Graph::complete(6), &Pattern::clique(3)).unwrap();
        assert_eq!(p.parts().len(), 2);
        assert!(is_perfect_packing(&Graph::complete(6), &p).is_ok());
        let star = complete_multipartite(&[1, 3]);
        assert!(find_perfect_packing(&star, &Pattern::clique(2)).is_none());
        let t42 = transitive_tournament(4).blow_up(2);
        let q = find_perfect_packing(&t42, &Pattern::transitive(4)).unwrap();
        assert_eq!(q.parts().len(), 2);
        assert!(is_perfect_packing(&t42, &q).is_ok());
    }

    #[test]
    fn budget_is_reported() {
        // K_{3,3,3} minus nothing has perfect triangle packings, but a budget
        // of one node cannot finish.
        let g = complete_multipartite(&[3, 3, 3]);
        let out = find_perfect_packing_within(&g, &Pattern::clique(3), &VertexSet::full(9), Some(1));
        assert!(matches!(out.result, Search::BudgetExhausted));
    }

    #[test]
    fn max_examples() {
        let m = max_packing(&cycle(5), &[Pattern::clique(2)], None);
        assert_eq!(m.packing.coverage(), 4);
        assert!(m.optimal);
        let k = max_packing(&Graph::complete(5), &[Pattern::clique(3)], None);
        assert_eq!(k.packing.coverage(), 3);
        assert!(k.optimal);
    }

    #[test]
    fn greedy_examples() {
        let p = greedy_packing(&Graph::complete(6), &Pattern::clique(3), OrderPolicy::Index);
        assert!(is_perfect_packing(&Graph::complete(6), &p).is_ok());
        let q = greedy_packing(&cycle(5), &Pattern::clique(2), OrderPolicy::MinDegreeFirst);
        assert_eq!(q.coverage(), 4);
    }

    // Largest number of pairwise disjoint copies, by trying every subfamily.
    fn subset_oracle(copies: &[Vec<usize>], n: usize) -> usize {
        fn rec(copies: &[Vec<usize>], used: &mut Vec<bool>, count: usize, best: &mut usize) {
            *best = (*best).max(count);
            for (i, c) in copies.iter().enumerate() {
                if c.iter().all(|&v| !used[v]) {
                    for &v in c {
                        used[v] = true;
                    }
                    rec(&copies[i + 1..], used, count + 1, best);
                    for &v in c {
                        used[v] = false;
                    }
                }
            }
        }
        let mut best = 0;
        rec(copies, &mut vec![false; n], 0, &mut best);
        best
    }

    #[test]
    fn max_packing_matches_subset_oracle_on_tournaments() {
        let split = SeedSplitter::new(11);
        let t3 = Pattern::transitive(3);
        for i in 0..20 {
            let d: Digraph = random_tournament(12, &mut split.rng(i));
            let copies: Vec<Vec<usize>> = enumerate_copies(&d, &t3, None).into_iter().map(|c| c.vertices).collect();
            let m = max_packing(&d, &[t3.clone()], None);
            assert!(m.optimal);
            assert!(verify_packing(&d, &m.packing).is_ok());
            assert_eq!(m.packing.coverage(), 3 * subset_oracle(&copies, 12), "instance {i}");
        }
    }

    #[test]
    fn greedy_never_beats_max() {
        let split = SeedSplitter::new(5);
        for i in 0..200 {
            let mut rng = split.rng(i);
            let n = 4 + (i as usize % 9);
            let g = crate::random::gnp(n, 0.5, &mut rng);
            let pat = Pattern::clique(2 + i as usize % 2);
            let m = max_packing(&g, &[pat.clone()], None);
            for policy in [OrderPolicy::Index, OrderPolicy::MinDegreeFirst, OrderPolicy::MaxDegreeFirst] {
                let p = greedy_packing(&g, &pat, policy);
                assert!(verify_packing(&g, &p).is_ok());
                assert!(p.coverage() <= m.packing.coverage());
            }
        }
    }
}
