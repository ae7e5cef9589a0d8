//! Seeded randomness and random (di)graph generators.
//!
//! Every stream comes from one 64-bit master seed: stream `i` is seeded with
//! a SplitMix64 mix of the master and `i`, so parallel trials draw from
//! independent, reproducible generators whatever order they run in.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{symmetrize, Digraph, Graph};

pub type TrialRng = ChaCha8Rng;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Counter-based splitter of a master seed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SeedSplitter {
    master: u64,
}

impl SeedSplitter {
    pub fn new(master: u64) -> Self {
        SeedSplitter { master }
    }

    pub fn master(&self) -> u64 {
        self.master
    }

    /// Seed of stream `index`.
    pub fn seed(&self, index: u64) -> u64 {
        splitmix64(self.master ^ splitmix64(index))
    }

    pub fn rng(&self, index: u64) -> TrialRng {
        ChaCha8Rng::seed_from_u64(self.seed(index))
    }

    /// A splitter for a sub-stream family, e.g. per-candidate seeds.
    pub fn child(&self, index: u64) -> SeedSplitter {
        SeedSplitter::new(self.seed(index))
    }
}

/// Erdos-Renyi `G(n, p)`.
pub fn gnp<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v);
            }
        }
    }
    g
}

/// Every ordered pair is an arc independently with probability `p`.
pub fn random_digraph<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Digraph {
    let mut d = Digraph::new(n);
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.gen_bool(p) {
                d.add_arc(u, v);
            }
        }
    }
    d
}

/// Uniform random tournament.
pub fn random_tournament<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Digraph {
    let mut d = Digraph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(0.5) {
                d.add_arc(u, v);
            } else {
                d.add_arc(v, u);
            }
        }
    }
    d
}

/// `G(n, p)` with both arcs on every edge.
pub fn random_symmetric_digraph<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Digraph {
    symmetrize(&gnp(n, p, rng))
}

/// `k` distinct elements of `pool`, in random order.
pub fn sample<R: Rng + ?Sized>(pool: &[usize], k: usize, rng: &mut R) -> Vec<usize> {
    pool.choose_multiple(rng, k).copied().collect()
}
