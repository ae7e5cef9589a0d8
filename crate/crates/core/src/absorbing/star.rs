//! Star blow-ups of `K_r`-paths.
//!
//! `P*(h)` replaces each `X_i` by `X_i(h)`, a `K_{r-1}^h`, each inner
//! connector `y_i` by `h` vertices and `y_t` by `2h - 1`, keeping `y_1` and
//! `y_{t+1}`. `Y_i` and `Y_{i+1}` are joined completely to `X_i(h)`. Taking
//! `h - 1` vertices from each `Y_{i+1}` (two such chunks from `Y_t`) into
//! `X_i(h)` re-partitions it as a `K_r^h`-path of the same length.

use super::{is_h_path, HPath, PathViolation};
use crate::constructions::{pattern_power, PowerKind};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::pattern::Pattern;

#[derive(Clone, Debug)]
pub struct StarBlowup {
    pub graph: Graph,
    pub r: usize,
    pub t: usize,
    pub h: usize,
    /// `x_blocks[i][j]`: the `h` clones of the `j`-th vertex of `X_{i+1}`.
    pub x_blocks: Vec<Vec<Vec<usize>>>,
    /// `Y_1 .. Y_{t+1}`.
    pub y_blocks: Vec<Vec<usize>>,
    /// The path vertex each vertex of the blow-up was cloned from.
    pub origin: Vec<usize>,
}

/// Builds `P*(h)` for a `K_r`-path `p` of length `t`. Requires `r >= 2`,
/// `t >= 3` and `h >= 1`.
pub fn star_blowup(p: &HPath, h: usize) -> Result<StarBlowup> {
    let t = p.length();
    let r = p.blocks.first().map_or(0, |b| b.len() + 1);
    if r < 2 || t < 3 || h < 1 {
        return Err(Error::InvalidParams(format!(
            "star blow-up needs r >= 2, t >= 3, h >= 1; got r = {r}, t = {t}, h = {h}"
        )));
    }
    if p.blocks.iter().any(|b| b.len() + 1 != r) || p.connectors.len() != t + 1 {
        return Err(Error::InvalidParams("blocks of unequal size".into()));
    }
    let mut origin = Vec::with_capacity(h * r * t + 1);
    let fresh = |from: usize, k: usize, origin: &mut Vec<usize>| {
        let start = origin.len();
        origin.extend(std::iter::repeat(from).take(k));
        (start..start + k).collect::<Vec<_>>()
    };
    let mut y_blocks = vec![fresh(p.connectors[0], 1, &mut origin)];
    let mut x_blocks = Vec::with_capacity(t);
    for i in 1..=t {
        x_blocks.push(
            p.blocks[i - 1]
                .iter()
                .map(|&v| fresh(v, h, &mut origin))
                .collect::<Vec<_>>(),
        );
        let size = match i + 1 {
            k if k == t + 1 => 1,
            k if k == t => 2 * h - 1,
            _ => h,
        };
        y_blocks.push(fresh(p.connectors[i], size, &mut origin));
    }
    let mut graph = Graph::new(origin.len());
    for (i, classes) in x_blocks.iter().enumerate() {
        for (a, ca) in classes.iter().enumerate() {
            for cb in &classes[a + 1..] {
                for &u in ca {
                    for &v in cb {
                        graph.add_edge(u, v);
                    }
                }
            }
            for ys in [&y_blocks[i], &y_blocks[i + 1]] {
                for &u in ca {
                    for &y in ys {
                        graph.add_edge(u, y);
                    }
                }
            }
        }
    }
    Ok(StarBlowup {
        graph,
        r,
        t,
        h,
        x_blocks,
        y_blocks,
        origin,
    })
}

impl StarBlowup {
    /// `K_r^h`.
    pub fn pattern(&self) -> Pattern {
        pattern_power(PowerKind::K, self.r, self.h)
    }

    /// Blocks `X'_i = X_i(h) + Y'_i` and connectors `y'_i`, where
    /// `Y_i = Y'_{i-1} + y'_i` for `2 <= i <= t-1` and
    /// `Y_t = Y'_{t-1} + Y'_t + y'_t`.
    pub fn repartition(&self) -> HPath {
        let (h, t) = (self.h, self.t);
        let mut chunks = vec![Vec::new(); t + 1];
        let mut connectors = vec![self.y_blocks[0][0]];
        for i in 2..t {
            let y = &self.y_blocks[i - 1];
            chunks[i - 1] = y[..h - 1].to_vec();
            connectors.push(y[h - 1]);
        }
        let yt = &self.y_blocks[t - 1];
        chunks[t - 1] = yt[..h - 1].to_vec();
        chunks[t] = yt[h - 1..2 * h - 2].to_vec();
        connectors.push(yt[2 * h - 2]);
        connectors.push(self.y_blocks[t][0]);
        let blocks = (1..=t)
            .map(|i| {
                let mut b: Vec<usize> = self.x_blocks[i - 1].iter().flatten().copied().collect();
                b.extend(&chunks[i]);
                b
            })
            .collect();
        HPath { blocks, connectors }
    }

    /// `Q*(h)`: the blow-up without `y_1` and `y_{t+1}`, relabelled to
    /// `0..hrt-1`, with the map from old labels.
    pub fn truncated(&self) -> (Graph, Vec<Option<usize>>) {
        let drop = [self.y_blocks[0][0], self.y_blocks[self.t][0]];
        let keep: Vec<usize> = (0..self.graph.order()).filter(|v| !drop.contains(v)).collect();
        let mut map = vec![None; self.graph.order()];
        for (i, &v) in keep.iter().enumerate() {
            map[v] = Some(i);
        }
        (self.graph.induced(&keep), map)
    }

    /// `Q'`: `Q*(h)` plus a vertex joined to all of `X_1(h)` and one joined
    /// to all of `X_t(h)`, with its re-partition as a `K_r^h`-path between
    /// the two new vertices.
    pub fn q_prime(&self) -> (Graph, HPath) {
        let (q, map) = self.truncated();
        let m = q.order();
        let (x, y) = (m, m + 1);
        let mut g = Graph::new(m + 2);
        for (u, v) in q.edges() {
            g.add_edge(u, v);
        }
        let relabel = |v: usize| map[v].expect("inner vertex");
        for &u in self.x_blocks[0].iter().flatten() {
            g.add_edge(x, relabel(u));
        }
        for &u in self.x_blocks[self.t - 1].iter().flatten() {
            g.add_edge(y, relabel(u));
        }
        let p = self.repartition();
        let k = p.connectors.len();
        let connectors = std::iter::once(x)
            .chain(p.connectors[1..k - 1].iter().map(|&v| relabel(v)))
            .chain(std::iter::once(y))
            .collect();
        let blocks = p.blocks.iter().map(|b| b.iter().map(|&v| relabel(v)).collect()).collect();
        (g, HPath { blocks, connectors })
    }
}

/// Checks the size law `|P*(h)| = hrt + 1` and that the re-partition is a
/// `K_r^h`-path in `graph`, which may be a modified copy of `sb.graph`.
pub fn verify_star_blowup_in(graph: &Graph, sb: &StarBlowup) -> Result<(), PathViolation> {
    let expected = sb.h * sb.r * sb.t + 1;
    if graph.order() != expected {
        return Err(PathViolation::BlockSize {
            block: 0,
            size: graph.order(),
            expected,
        });
    }
    is_h_path(graph, &sb.pattern(), &sb.repartition())
}

/// Builds `P*(h)` from `p` and verifies it.
pub fn verify_star_blowup(p: &HPath, h: usize) -> Result<()> {
    let sb = star_blowup(p, h)?;
    verify_star_blowup_in(&sb.graph, &sb)?;
    Ok(())
}

/// Builds `Q'` from `p` and checks it is a `K_r^h`-path of length `t`.
pub fn verify_q_prime(p: &HPath, h: usize) -> Result<()> {
    let sb = star_blowup(p, h)?;
    let (q, _) = sb.truncated();
    if q.order() != sb.h * sb.r * sb.t - 1 {
        return Err(PathViolation::BlockSize {
            block: 0,
            size: q.order(),
            expected: sb.h * sb.r * sb.t - 1,
        }
        .into());
    }
    let (g, path) = sb.q_prime();
    is_h_path(&g, &sb.pattern(), &path)?;
    Ok(())
}

/// The sparsest `K_r`-path of length `t`: `y_1 = 0`, then each block
/// followed by its right connector, with each block a clique joined to both
/// its connectors.
pub fn clique_path(r: usize, t: usize) -> (Graph, HPath) {
    let n = t * r + 1;
    let mut g = Graph::new(n);
    let mut blocks = Vec::with_capacity(t);
    let mut connectors = vec![0];
    for i in 0..t {
        let start = i * r + 1;
        let block: Vec<usize> = (start..start + r - 1).collect();
        let (left, right) = (connectors[i], start + r - 1);
        for (a, &u) in block.iter().enumerate() {
            for &v in &block[a + 1..] {
                g.add_edge(u, v);
            }
            g.add_edge(u, left);
            g.add_edge(u, right);
        }
        blocks.push(block);
        connectors.push(right);
    }
    (g, HPath { blocks, connectors })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::absorbing::is_h_path;

    #[test]
    fn size_law_and_verification() {
        for r in 2..=4 {
            for t in 3..=5 {
                let (g, p) = clique_path(r, t);
                assert_eq!(is_h_path(&g, &Pattern::clique(r), &p), Ok(()));
                for h in 1..=3 {
                    let sb = star_blowup(&p, h).unwrap();
                    assert_eq!(sb.graph.order(), h * r * t + 1);
                    verify_star_blowup(&p, h).unwrap();
                    verify_q_prime(&p, h).unwrap();
                    assert_eq!(sb.truncated().0.order(), h * r * t - 1);
                }
            }
        }
        let (_, p) = clique_path(3, 3);
        assert_eq!(star_blowup(&p, 2).unwrap().graph.order(), 19);
    }

    #[test]
    fn unit_scale_is_the_path() {
        let (g, p) = clique_path(3, 4);
        let sb = star_blowup(&p, 1).unwrap();
        assert_eq!(sb.graph.order(), g.order());
        let mapped: Vec<(usize, usize)> = sb
            .graph
            .edges()
            .map(|(u, v)| {
                let (a, b) = (sb.origin[u], sb.origin[v]);
                (a.min(b), a.max(b))
            })
            .collect();
        let mut mapped = mapped;
        mapped.sort_unstable();
        let mut original: Vec<(usize, usize)> = g.edges().collect();
        original.sort_unstable();
        assert_eq!(mapped, original);
    }

    #[test]
    fn corruption_is_rejected() {
        let (_, p) = clique_path(3, 3);
        let sb = star_blowup(&p, 2).unwrap();
        let mut g = sb.graph.clone();
        let (a, b) = (sb.x_blocks[0][0][0], sb.x_blocks[0][1][0]);
        assert!(g.remove_edge(a, b));
        assert!(matches!(
            verify_star_blowup_in(&g, &sb),
            Err(PathViolation::NotSpanning { block: 0, .. })
        ));
    }

    #[test]
    fn regime_is_enforced() {
        let (_, short) = clique_path(3, 2);
        assert!(star_blowup(&short, 2).is_err());
        let (_, p) = clique_path(3, 3);
        assert!(star_blowup(&p, 0).is_err());
    }
}
