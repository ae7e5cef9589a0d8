//! Perfect `K_r`-packing as an equitable colouring of the complement.
//!
//! With `n = kr`, a perfect `K_r`-packing of `G` is the same thing as a
//! proper colouring of the complement with `k` classes of size exactly `r`.
//! The search here colours vertex by vertex and never enumerates copies, so
//! it shares no code with the main solver.

use crate::graph::Graph;
use crate::pattern::Pattern;

use super::Packing;

pub fn perfect_clique_packing_via_equitable_coloring(g: &Graph, r: usize) -> Option<Packing> {
    let n = g.order();
    assert!(r >= 1);
    if n % r != 0 {
        return None;
    }
    let k = n / r;
    let complement = g.complement();
    let mut classes: Vec<Vec<usize>> = vec![Vec::with_capacity(r); k];
    if !colour(&complement, 0, r, &mut classes) {
        return None;
    }
    Some(Packing::uniform(n, Pattern::clique(r), classes))
}

fn colour(comp: &Graph, v: usize, r: usize, classes: &mut [Vec<usize>]) -> bool {
    if v == comp.order() {
        return true;
    }
    let mut opened_empty = false;
    for c in 0..classes.len() {
        if classes[c].len() == r {
            continue;
        }
        // Empty classes are interchangeable: try only one of them.
        if classes[c].is_empty() {
            if opened_empty {
                continue;
            }
            opened_empty = true;
        }
        if classes[c].iter().any(|&w| comp.has_edge(v, w)) {
            continue;
        }
        classes[c].push(v);
        if colour(comp, v + 1, r, classes) {
            return true;
        }
        classes[c].pop();
    }
    false
}
