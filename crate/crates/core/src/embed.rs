//! Finding vertex sets that span a copy of a pattern.
//!
//! "Spans" is subgraph containment: extra arcs inside the set are allowed.

use std::collections::HashSet;
use std::ops::ControlFlow;

use crate::bitset::VertexSet;
use crate::graph::Adjacency;
use crate::pattern::{Pattern, Shape};

/// A copy of a pattern in a host: the sorted vertex set and one witness,
/// `embedding[p]` being the image of pattern vertex `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Copy {
    pub vertices: Vec<usize>,
    pub embedding: Vec<usize>,
}

impl Copy {
    fn from_embedding(embedding: Vec<usize>) -> Self {
        let mut vertices = embedding.clone();
        vertices.sort_unstable();
        Copy { vertices, embedding }
    }
}

/// Order of `set` in which every arc between consecutive choices points
/// forward, if the set spans a transitive tournament.
///
/// Peels off a vertex with arcs to all remaining ones. This is exact: if
/// some order works, whichever dominating vertex is removed the rest still
/// admits one.
pub fn transitive_order<G: Adjacency + ?Sized>(host: &G, set: &[usize]) -> Option<Vec<usize>> {
    let mut rest = set.to_vec();
    let mut order = Vec::with_capacity(set.len());
    while !rest.is_empty() {
        let i = (0..rest.len()).find(|&i| {
            let x = rest[i];
            rest.iter().all(|&y| y == x || host.has_arc(x, y))
        })?;
        order.push(rest.swap_remove(i));
    }
    Some(order)
}

/// A witness embedding if `set` spans a copy of `pattern`.
pub fn spans<G: Adjacency + ?Sized>(host: &G, pattern: &Pattern, set: &[usize]) -> Option<Vec<usize>> {
    let h = pattern.order();
    if set.len() != h {
        return None;
    }
    let mut sorted = set.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) || sorted.last().is_some_and(|&v| v >= host.order()) {
        return None;
    }
    match pattern.shape() {
        Shape::Clique => {
            let ok = set
                .iter()
                .enumerate()
                .all(|(i, &a)| set[i + 1..].iter().all(|&b| host.has_arc(a, b) && host.has_arc(b, a)));
            ok.then(|| set.to_vec())
        }
        Shape::Transitive { order } => {
            let host_order = transitive_order(host, set)?;
            let mut f = vec![0; h];
            for (i, &p) in order.iter().enumerate() {
                f[p] = host_order[i];
            }
            Some(f)
        }
        Shape::Multipartite { classes } => multipartite_embedding(host, classes, set),
        Shape::General => {
            let avail = VertexSet::from_iter_with_capacity(host.order(), set.iter().copied());
            let mut found = None;
            let _ = visit_general(host, pattern, &avail, None, &mut |c: Copy| {
                found = Some(c.embedding);
                ControlFlow::Break(())
            });
            found
        }
    }
}

/// Calls `f` once per vertex set inside `avail` spanning `pattern` (and
/// containing `through`, if given), with one witness each. Stops early when
/// `f` breaks.
pub fn visit_copies<G, F>(
    host: &G,
    pattern: &Pattern,
    avail: &VertexSet,
    through: Option<usize>,
    mut f: F,
) -> ControlFlow<()>
where
    G: Adjacency + ?Sized,
    F: FnMut(Copy) -> ControlFlow<()>,
{
    if let Some(v) = through {
        if !avail.contains(v) {
            return ControlFlow::Continue(());
        }
    }
    if pattern.order() > avail.len() {
        return ControlFlow::Continue(());
    }
    match pattern.shape() {
        Shape::Clique => visit_cliques(host, pattern.order(), avail, through, &mut f),
        Shape::Transitive { order } => visit_transitive(host, order, avail, through, &mut f),
        _ => visit_general(host, pattern, avail, through, &mut f),
    }
}

/// All copies inside `avail`, collected.
pub fn copies_in<G: Adjacency + ?Sized>(
    host: &G,
    pattern: &Pattern,
    avail: &VertexSet,
    through: Option<usize>,
) -> Vec<Copy> {
    let mut out = Vec::new();
    let _ = visit_copies(host, pattern, avail, through, |c| {
        out.push(c);
        ControlFlow::Continue(())
    });
    out
}

fn mutual<G: Adjacency + ?Sized>(host: &G, v: usize) -> VertexSet {
    host.out_neighbors(v).intersection(host.in_neighbors(v))
}

fn visit_cliques<G: Adjacency + ?Sized>(
    host: &G,
    r: usize,
    avail: &VertexSet,
    through: Option<usize>,
    f: &mut dyn FnMut(Copy) -> ControlFlow<()>,
) -> ControlFlow<()> {
    fn rec<G: Adjacency + ?Sized>(
        host: &G,
        cand: VertexSet,
        chosen: &mut Vec<usize>,
        need: usize,
        f: &mut dyn FnMut(Copy) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        if need == 0 {
            return f(Copy::from_embedding(chosen.clone()));
        }
        if cand.len() < need {
            return ControlFlow::Continue(());
        }
        for w in cand.iter() {
            let mut next = cand.intersection(&mutual(host, w));
            next.retain_above(w);
            chosen.push(w);
            let flow = rec(host, next, chosen, need - 1, f);
            chosen.pop();
            flow?;
        }
        ControlFlow::Continue(())
    }
    match through {
        Some(v) => {
            let mut cand = avail.intersection(&mutual(host, v));
            cand.remove(v);
            rec(host, cand, &mut vec![v], r - 1, f)
        }
        None => rec(host, avail.clone(), &mut Vec::new(), r, f),
    }
}

fn visit_transitive<G: Adjacency + ?Sized>(
    host: &G,
    order: &[usize],
    avail: &VertexSet,
    through: Option<usize>,
    f: &mut dyn FnMut(Copy) -> ControlFlow<()>,
) -> ControlFlow<()> {
    let r = order.len();
    // Every subset of a transitive tournament is one, so a partial choice
    // that cannot be ordered is pruned immediately.
    fn rec<G: Adjacency + ?Sized>(
        host: &G,
        order: &[usize],
        cand: VertexSet,
        chosen: &mut Vec<usize>,
        need: usize,
        f: &mut dyn FnMut(Copy) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        if need == 0 {
            let host_order = transitive_order(host, chosen).expect("checked on insertion");
            let mut emb = vec![0; order.len()];
            for (i, &p) in order.iter().enumerate() {
                emb[p] = host_order[i];
            }
            return f(Copy::from_embedding(emb));
        }
        if cand.len() < need {
            return ControlFlow::Continue(());
        }
        for w in cand.iter() {
            chosen.push(w);
            if transitive_order(host, chosen).is_some() {
                let mut next = cand.intersection(&host.touching(w));
                next.retain_above(w);
                rec(host, order, next, chosen, need - 1, f)?;
            }
            chosen.pop();
        }
        ControlFlow::Continue(())
    }
    match through {
        Some(v) => {
            let mut cand = avail.intersection(&host.touching(v));
            cand.remove(v);
            rec(host, order, cand, &mut vec![v], r - 1, f)
        }
        None => rec(host, order, avail.clone(), &mut Vec::new(), r, f),
    }
}

// Pattern vertices with identical arcs to everything else. Images inside a
// twin group are forced to increase, which removes most duplicate copies.
fn twin_predecessor(pattern: &Pattern) -> Vec<Option<usize>> {
    let d = pattern.arcs();
    let h = d.order();
    let twins = |a: usize, b: usize| {
        d.has_arc(a, b) == d.has_arc(b, a)
            && (0..h)
                .filter(|&c| c != a && c != b)
                .all(|c| d.has_arc(a, c) == d.has_arc(b, c) && d.has_arc(c, a) == d.has_arc(c, b))
    };
    (0..h).map(|b| (0..b).rev().find(|&a| twins(a, b))).collect()
}

// Placement order starting at `root`: next is the unplaced vertex with the
// most placed neighbours, ties by index.
fn placement_order(pattern: &Pattern, root: usize) -> Vec<usize> {
    let d = pattern.arcs();
    let h = d.order();
    let mut placed = vec![false; h];
    let mut order = vec![root];
    placed[root] = true;
    while order.len() < h {
        let next = (0..h)
            .filter(|&p| !placed[p])
            .max_by_key(|&p| {
                let links = order.iter().filter(|&&q| d.touching(p).contains(q)).count();
                (links, d.touching(p).len(), std::cmp::Reverse(p))
            })
            .unwrap();
        placed[next] = true;
        order.push(next);
    }
    order
}

fn visit_general<G: Adjacency + ?Sized>(
    host: &G,
    pattern: &Pattern,
    avail: &VertexSet,
    through: Option<usize>,
    f: &mut dyn FnMut(Copy) -> ControlFlow<()>,
) -> ControlFlow<()> {
    let h = pattern.order();
    let twin = twin_predecessor(pattern);
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let roots: Vec<usize> = match through {
        Some(_) => {
            // One root per twin group is enough.
            (0..h).filter(|&p| twin[p].is_none()).collect()
        }
        None => {
            let best = (0..h).max_by_key(|&p| pattern.arcs().touching(p).len()).unwrap();
            vec![best]
        }
    };
    for root in roots {
        let order = placement_order(pattern, root);
        let mut emb = vec![usize::MAX; h];
        let mut used = VertexSet::new(host.order());
        let mut ctx = General {
            host,
            pattern,
            avail,
            twin: &twin,
            order: &order,
            through,
            seen: &mut seen,
        };
        ctx.rec(0, &mut emb, &mut used, f)?;
    }
    ControlFlow::Continue(())
}

struct General<'a, G: ?Sized> {
    host: &'a G,
    pattern: &'a Pattern,
    avail: &'a VertexSet,
    twin: &'a [Option<usize>],
    order: &'a [usize],
    through: Option<usize>,
    seen: &'a mut HashSet<Vec<usize>>,
}

impl<G: Adjacency + ?Sized> General<'_, G> {
    fn rec(
        &mut self,
        depth: usize,
        emb: &mut Vec<usize>,
        used: &mut VertexSet,
        f: &mut dyn FnMut(Copy) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        if depth == self.order.len() {
            let copy = Copy::from_embedding(emb.clone());
            if self.seen.insert(copy.vertices.clone()) {
                return f(copy);
            }
            return ControlFlow::Continue(());
        }
        let p = self.order[depth];
        let d = self.pattern.arcs();
        let mut cand = match (depth, self.through) {
            (0, Some(v)) => VertexSet::from_iter_with_capacity(self.host.order(), [v]),
            _ => self.avail.difference(used),
        };
        for &q in &self.order[..depth] {
            if d.has_arc(p, q) {
                cand.intersect_with(self.host.in_neighbors(emb[q]));
            }
            if d.has_arc(q, p) {
                cand.intersect_with(self.host.out_neighbors(emb[q]));
            }
        }
        // Twin symmetry: images increase along each twin chain, except
        // when the root is pinned to `through`.
        let pinned = self.through.map(|_| self.order[0]);
        let lower = self.twin[p]
            .filter(|&a| emb[a] != usize::MAX && Some(a) != pinned && Some(p) != pinned)
            .map(|a| emb[a]);
        let upper = (0..self.pattern.order())
            .find(|&b| self.twin[b] == Some(p) && emb[b] != usize::MAX && Some(b) != pinned && Some(p) != pinned)
            .map(|b| emb[b]);
        for w in cand.iter() {
            if lower.is_some_and(|l| w < l) || upper.is_some_and(|u| w > u) {
                continue;
            }
            emb[p] = w;
            used.insert(w);
            let flow = self.rec(depth + 1, emb, used, f);
            used.remove(w);
            emb[p] = usize::MAX;
            flow?;
        }
        ControlFlow::Continue(())
    }
}

// Complete multipartite pattern: pairs of the set lacking an arc in either
// direction must share a class, so the components of that "missing" relation
// are distributed among classes of exactly the right sizes.
fn multipartite_embedding<G: Adjacency + ?Sized>(
    host: &G,
    classes: &[Vec<usize>],
    set: &[usize],
) -> Option<Vec<usize>> {
    let k = set.len();
    let mut comp = vec![usize::MAX; k];
    let mut comps: Vec<Vec<usize>> = Vec::new();
    for s in 0..k {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = comps.len();
        let mut stack = vec![s];
        let mut members = Vec::new();
        comp[s] = id;
        while let Some(a) = stack.pop() {
            members.push(set[a]);
            for b in 0..k {
                if comp[b] == usize::MAX && !(host.has_arc(set[a], set[b]) && host.has_arc(set[b], set[a])) {
                    comp[b] = id;
                    stack.push(b);
                }
            }
        }
        comps.push(members);
    }
    comps.sort_by_key(|c| std::cmp::Reverse(c.len()));
    let mut room: Vec<usize> = classes.iter().map(Vec::len).collect();
    let mut assign = vec![0; comps.len()];
    fn fit(i: usize, comps: &[Vec<usize>], room: &mut [usize], assign: &mut [usize]) -> bool {
        if i == comps.len() {
            return room.iter().all(|&x| x == 0);
        }
        let mut tried = HashSet::new();
        for c in 0..room.len() {
            if room[c] >= comps[i].len() && tried.insert(room[c]) {
                room[c] -= comps[i].len();
                assign[i] = c;
                if fit(i + 1, comps, room, assign) {
                    return true;
                }
                room[c] += comps[i].len();
            }
        }
        false
    }
    if !fit(0, &comps, &mut room, &mut assign) {
        return None;
    }
    let mut pools: Vec<Vec<usize>> = vec![Vec::new(); classes.len()];
    for (i, c) in comps.iter().enumerate() {
        pools[assign[i]].extend(c);
    }
    let h = classes.iter().map(Vec::len).sum();
    let mut f = vec![0; h];
    for (class, pool) in classes.iter().zip(pools) {
        for (&p, v) in class.iter().zip(pool) {
            f[p] = v;
        }
    }
    Some(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{BlowUp, Digraph, Graph};

    fn tt(r: usize) -> Digraph {
        crate::constructions::transitive_tournament(r)
    }

    fn all_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        (0u32..1 << n)
            .filter(|m| m.count_ones() as usize == k)
            .map(|m| (0..n).filter(|&i| m >> i & 1 == 1).collect())
            .collect()
    }

    // Tries every bijection onto the set.
    fn brute_spans<G: Adjacency>(host: &G, pattern: &Pattern, set: &[usize]) -> bool {
        fn perms(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
            if k == items.len() {
                out.push(items.clone());
                return;
            }
            for i in k..items.len() {
                items.swap(k, i);
                perms(items, k + 1, out);
                items.swap(k, i);
            }
        }
        let mut all = Vec::new();
        perms(&mut set.to_vec(), 0, &mut all);
        all.iter().any(|f| pattern.is_embedding(host, f))
    }

    #[test]
    fn cliques_in_k4() {
        let g = Graph::complete(4);
        let avail = VertexSet::full(4);
        assert_eq!(copies_in(&g, &Pattern::clique(3), &avail, None).len(), 4);
        assert_eq!(copies_in(&g, &Pattern::clique(3), &avail, Some(2)).len(), 3);
    }

    #[test]
    fn transitive_copies() {
        let t3 = Pattern::transitive(3);
        let host = tt(3);
        let c = copies_in(&host, &t3, &VertexSet::full(3), None);
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].vertices, vec![0, 1, 2]);
        assert_eq!(c[0].embedding, vec![0, 1, 2]);

        let blown = tt(3).blow_up(2);
        let found = copies_in(&blown, &t3, &VertexSet::full(6), None);
        let brute = all_subsets(6, 3)
            .into_iter()
            .filter(|s| brute_spans(&blown, &t3, s))
            .count();
        assert_eq!(brute, 8);
        assert_eq!(found.len(), 8);
        for c in &found {
            assert!(t3.is_embedding(&blown, &c.embedding));
        }
    }

    #[test]
    fn undirected_host_contains_transitive_patterns() {
        let g = Graph::complete(4);
        assert!(spans(&g, &Pattern::transitive(4), &[0, 1, 2, 3]).is_some());
    }

    #[test]
    fn multipartite_spans_matches_brute_force() {
        let k222 = Pattern::parse("K2,2,2").unwrap();
        let mut g = Graph::complete(6);
        g.remove_edge(0, 1);
        g.remove_edge(2, 3);
        assert!(spans(&g, &k222, &[0, 1, 2, 3, 4, 5]).is_some());
        g.remove_edge(1, 2);
        assert!(spans(&g, &k222, &[0, 1, 2, 3, 4, 5]).is_none());
        assert!(!brute_spans(&g, &k222, &[0, 1, 2, 3, 4, 5]));
    }

    #[test]
    fn general_enumeration_matches_brute_force() {
        // C_4 copies in K_{2,3} plus one edge.
        let mut g = Graph::new(5);
        for a in 0..2 {
            for b in 2..5 {
                g.add_edge(a, b);
            }
        }
        g.add_edge(2, 3);
        let c4 = Pattern::graph("C4", Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap());
        for through in [None, Some(0), Some(4)] {
            let mut found: Vec<Vec<usize>> = copies_in(&g, &c4, &VertexSet::full(5), through)
                .into_iter()
                .map(|c| {
                    assert!(c4.is_embedding(&g, &c.embedding));
                    c.vertices
                })
                .collect();
            found.sort();
            let brute: Vec<Vec<usize>> = all_subsets(5, 4)
                .into_iter()
                .filter(|s| through.map_or(true, |v| s.contains(&v)) && brute_spans(&g, &c4, s))
                .collect();
            assert_eq!(found, brute, "through {through:?}");
        }
    }

    #[test]
    fn general_digraph_pattern() {
        // Directed 3-cycle copies inside a complete symmetric digraph on 4.
        let cyc = Pattern::digraph("C3", Digraph::from_arcs(3, [(0, 1), (1, 2), (2, 0)]).unwrap());
        let mut host = Digraph::new(4);
        for u in 0..4 {
            for v in 0..4 {
                if u != v {
                    host.add_arc(u, v);
                }
            }
        }
        assert_eq!(copies_in(&host, &cyc, &VertexSet::full(4), None).len(), 4);
        assert!(spans(&tt(3), &cyc, &[0, 1, 2]).is_none());
    }
}
