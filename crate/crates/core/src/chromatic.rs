//! Exact chromatic number by branch and bound.

use crate::graph::Graph;

/// Exact chromatic number. The empty graph gets 0.
pub fn chromatic_number(g: &Graph) -> usize {
    let n = g.order();
    if n == 0 {
        return 0;
    }
    if g.edge_count() == 0 {
        return 1;
    }
    let lower = greedy_clique(g).max(2);
    let upper = greedy_colour_count(g);
    (lower..upper)
        .find(|&k| is_k_colourable(g, k))
        .unwrap_or(upper)
}

/// Whether `g` admits a proper colouring with `k` colours.
pub fn is_k_colourable(g: &Graph, k: usize) -> bool {
    let n = g.order();
    if k >= n {
        return true;
    }
    assert!(k <= 64, "colour masks are 64 bits wide");
    let mut colour = vec![usize::MAX; n];
    colour_rec(g, k, &mut colour, 0, 0)
}

// DSATUR-style: always colour the uncoloured vertex with the most distinct
// neighbour colours next. `used` is the number of colours opened so far; a
// fresh colour is only ever the next unopened one.
fn colour_rec(g: &Graph, k: usize, colour: &mut [usize], done: usize, used: usize) -> bool {
    let n = g.order();
    if done == n {
        return true;
    }
    let mut best = None;
    let mut best_key = (0usize, 0usize);
    for v in 0..n {
        if colour[v] != usize::MAX {
            continue;
        }
        let mut seen = 0u64;
        for w in g.neighbors(v) {
            if colour[w] != usize::MAX {
                seen |= 1 << colour[w];
            }
        }
        let key = (seen.count_ones() as usize, g.degree(v));
        if best.is_none() || key > best_key {
            best = Some((v, seen));
            best_key = key;
        }
    }
    let (v, seen) = best.expect("an uncoloured vertex exists");
    for c in 0..k.min(used + 1) {
        if seen & (1 << c) != 0 {
            continue;
        }
        colour[v] = c;
        if colour_rec(g, k, colour, done + 1, used.max(c + 1)) {
            return true;
        }
    }
    colour[v] = usize::MAX;
    false
}

fn greedy_clique(g: &Graph) -> usize {
    let mut best = 1;
    for v in 0..g.order() {
        let mut cand = g.neighbors(v).clone();
        let mut size = 1;
        while let Some(w) = cand
            .iter()
            .max_by_key(|&w| (g.neighbors(w).intersection_len(&cand), usize::MAX - w))
        {
            size += 1;
            cand.intersect_with(g.neighbors(w));
        }
        best = best.max(size);
    }
    best
}

fn greedy_colour_count(g: &Graph) -> usize {
    let n = g.order();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
    let mut colour = vec![usize::MAX; n];
    let mut k = 0;
    for v in order {
        let c = (0..)
            .find(|&c| g.neighbors(v).iter().all(|w| colour[w] != c))
            .unwrap();
        colour[v] = c;
        k = k.max(c + 1);
    }
    k
}
