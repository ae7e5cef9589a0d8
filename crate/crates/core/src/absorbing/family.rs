//! Absorbing families and the absorb-then-pack pipeline.
//!
//! A gadget is a copy `U = {u_1 .. u_h}` of the pattern together with sets
//! `X_1 .. X_h` of size `th - 1` such that `X_i + u_i` packs perfectly, so a
//! gadget has `th^2` vertices and packs on its own. It absorbs an `h`-set
//! `S` when `gadget + S` packs too, which happens for instance when each
//! `X_i` also packs with some `s_i`. Candidates are drawn at random and
//! kept when they absorb enough sampled `h`-sets.

use std::collections::HashMap;
use std::ops::ControlFlow;

use rand::seq::SliceRandom;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bitset::VertexSet;
use crate::constructions::{certify_uncoverable, Certificate};
use crate::embed::visit_copies;
use crate::error::{Error, Result};
use crate::graph::Adjacency;
use crate::packing::{
    find_perfect_packing_within, is_perfect_packing, is_perfect_packing_of, max_packing_within, Packing,
};
use crate::pattern::Pattern;
use crate::random::{sample, SeedSplitter, TrialRng};

/// Whether `host[S]` and `host[S + Q]` both pack perfectly.
pub fn is_absorbing_for<H: Adjacency + ?Sized>(host: &H, pattern: &Pattern, s: &[usize], q: &[usize]) -> bool {
    absorbing_packings(host, pattern, s, q, None).is_some()
}

fn absorbing_packings<H: Adjacency + ?Sized>(
    host: &H,
    pattern: &Pattern,
    s: &[usize],
    q: &[usize],
    budget: Option<u64>,
) -> Option<(Packing, Packing)> {
    let n = host.order();
    let alone = VertexSet::from_iter_with_capacity(n, s.iter().copied());
    if q.iter().any(|&v| alone.contains(v)) {
        return None;
    }
    let mut both = alone.clone();
    for &v in q {
        both.insert(v);
    }
    let a = find_perfect_packing_within(host, pattern, &alone, budget).result.found()?;
    let b = find_perfect_packing_within(host, pattern, &both, budget).result.found()?;
    Some((a, b))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyParams {
    /// Each connecting set has `t h - 1` vertices.
    pub t: usize,
    /// Candidates drawn in total.
    pub candidates: usize,
    /// Candidates drawn in parallel before overlaps are resolved.
    pub batch: usize,
    /// Random `h`-sets each candidate is tested against.
    pub target_samples: usize,
    /// A candidate is kept when it absorbs at least this many of them.
    pub pair_threshold: usize,
    pub min_gadgets: usize,
    pub max_gadgets: usize,
    pub budget_nodes: Option<u64>,
}

impl Default for FamilyParams {
    fn default() -> Self {
        FamilyParams {
            t: 1,
            candidates: 64,
            batch: 8,
            target_samples: 12,
            pair_threshold: 9,
            min_gadgets: 1,
            max_gadgets: 2,
            budget_nodes: Some(100_000),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gadget {
    pub verts: Vec<usize>,
    pub copy: Vec<usize>,
    pub links: Vec<Vec<usize>>,
    pub pairs_checked: usize,
    pub pairs_absorbed: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbsorbingFamily {
    #[serde(rename = "M")]
    pub m: Vec<usize>,
    pub gadgets: Vec<Gadget>,
    pub params: FamilyParams,
    pub seed: u64,
    pub pattern: String,
}

impl AbsorbingFamily {
    pub fn vertex_set(&self, n: usize) -> VertexSet {
        VertexSet::from_iter_with_capacity(n, self.m.iter().copied())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("families serialize")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        Ok(serde_json::from_value(value.clone())?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{found} gadgets survived out of {built} built from {tried} candidates, {needed} needed")]
pub struct FamilyFailure {
    pub found: usize,
    pub built: usize,
    pub tried: usize,
    pub needed: usize,
}

/// A random copy of `pattern` inside `avail`, through `start` if given.
fn random_copy<H: Adjacency + ?Sized>(
    host: &H,
    pattern: &Pattern,
    avail: &VertexSet,
    start: Option<usize>,
    rng: &mut TrialRng,
) -> Option<Vec<usize>> {
    let mut starts: Vec<usize> = match start {
        Some(v) => vec![v],
        None => avail.to_vec(),
    };
    starts.shuffle(rng);
    for &v in starts.iter().take(24) {
        let mut found = Vec::new();
        let _ = visit_copies(host, pattern, avail, Some(v), |c| {
            found.push(c.vertices);
            if found.len() >= 16 {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        });
        if let Some(c) = found.choose(rng) {
            return Some(c.clone());
        }
    }
    None
}

fn build_candidate<H: Adjacency + ?Sized>(
    host: &H,
    pattern: &Pattern,
    t: usize,
    avail: &VertexSet,
    rng: &mut TrialRng,
) -> Option<(Vec<usize>, Vec<Vec<usize>>)> {
    let mut free = avail.clone();
    let copy = random_copy(host, pattern, &free, None, rng)?;
    for &v in &copy {
        free.remove(v);
    }
    let mut links = Vec::with_capacity(copy.len());
    for &u in &copy {
        free.insert(u);
        let first = random_copy(host, pattern, &free, Some(u), rng)?;
        free.remove(u);
        let mut link: Vec<usize> = first.into_iter().filter(|&v| v != u).collect();
        for &v in &link {
            free.remove(v);
        }
        for _ in 1..t {
            let more = random_copy(host, pattern, &free, None, rng)?;
            for &v in &more {
                free.remove(v);
            }
            link.extend(more);
        }
        link.sort_unstable();
        links.push(link);
    }
    Some((copy, links))
}

/// Draws gadget candidates in batches and keeps, in candidate order, those
/// that absorb at least `pair_threshold` of `target_samples` random
/// `h`-sets and avoid the gadgets kept so far. Candidate `i` draws from
/// stream `i` of the seed, so the family depends only on the seed.
pub fn build_absorbing_family<H: Adjacency + Sync + ?Sized>(
    host: &H,
    pattern: &Pattern,
    params: &FamilyParams,
    seed: u64,
) -> Result<AbsorbingFamily, FamilyFailure> {
    let n = host.order();
    let h = pattern.order();
    let split = SeedSplitter::new(seed);
    let mut m = VertexSet::new(n);
    let mut gadgets: Vec<Gadget> = Vec::new();
    let mut built = 0;
    let mut next = 0;
    while next < params.candidates && gadgets.len() < params.max_gadgets {
        let end = (next + params.batch.max(1)).min(params.candidates);
        let avail = VertexSet::full(n).difference(&m);
        let batch: Vec<Option<Gadget>> = (next..end)
            .into_par_iter()
            .map(|i| {
                let mut rng = split.rng(i as u64);
                let (copy, links) = build_candidate(host, pattern, params.t, &avail, &mut rng)?;
                let mut verts: Vec<usize> = copy.iter().chain(links.iter().flatten()).copied().collect();
                verts.sort_unstable();
                let pool: Vec<usize> = avail.iter().filter(|v| verts.binary_search(v).is_err()).collect();
                if pool.len() < h && params.target_samples > 0 {
                    return None;
                }
                let mut absorbed = 0;
                for _ in 0..params.target_samples {
                    let s = sample(&pool, h, &mut rng);
                    if absorbing_packings(host, pattern, &verts, &s, params.budget_nodes).is_some() {
                        absorbed += 1;
                    }
                }
                Some(Gadget {
                    verts,
                    copy,
                    links,
                    pairs_checked: params.target_samples,
                    pairs_absorbed: absorbed,
                })
            })
            .collect();
        for g in batch.into_iter().flatten() {
            built += 1;
            if gadgets.len() < params.max_gadgets
                && g.pairs_absorbed >= params.pair_threshold
                && g.verts.iter().all(|&v| !m.contains(v))
            {
                for &v in &g.verts {
                    m.insert(v);
                }
                gadgets.push(g);
            }
        }
        next = end;
    }
    if gadgets.len() < params.min_gadgets.max(1) {
        return Err(FamilyFailure {
            found: gadgets.len(),
            built,
            tried: next,
            needed: params.min_gadgets.max(1),
        });
    }
    Ok(AbsorbingFamily {
        m: m.to_vec(),
        gadgets,
        params: params.clone(),
        seed,
        pattern: pattern.name().to_string(),
    })
}

/// How [`absorb`] found its packing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AbsorbVia {
    /// `(gadget, h-set)` pairs, every other gadget packed on its own.
    Assignment(Vec<(usize, Vec<usize>)>),
    /// No assignment worked; `host[M + W]` was solved directly.
    Global,
}

#[derive(Clone, Debug)]
pub struct Absorbed {
    pub packing: Packing,
    pub via: AbsorbVia,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum AbsorbFailure {
    #[error("vertex {vertex} of W lies in M")]
    Overlap { vertex: usize },
    #[error("|W| = {size} is not a multiple of {h}")]
    Divisibility { size: usize, h: usize },
    #[error("W splits into {sets} sets but there are only {gadgets} gadgets")]
    Capacity { sets: usize, gadgets: usize },
    #[error("no assignment of W to gadgets and no perfect packing of M + W found")]
    NoPacking,
}

struct Assign<'a, H: ?Sized> {
    host: &'a H,
    pattern: &'a Pattern,
    fam: &'a AbsorbingFamily,
    budget: Option<u64>,
    memo: HashMap<(usize, Vec<usize>), Option<Packing>>,
    calls: usize,
    chosen: Vec<(usize, Vec<usize>)>,
}

impl<H: Adjacency + ?Sized> Assign<'_, H> {
    const MAX_CALLS: usize = 5_000;

    fn packs(&mut self, g: usize, s: &[usize]) -> bool {
        let key = (g, s.to_vec());
        if let Some(p) = self.memo.get(&key) {
            return p.is_some();
        }
        self.calls += 1;
        let p = absorbing_packings(self.host, self.pattern, &self.fam.gadgets[g].verts, s, self.budget).map(|x| x.1);
        let ok = p.is_some();
        self.memo.insert(key, p);
        ok
    }

    fn rec(&mut self, rest: &[usize], used: &mut Vec<bool>) -> bool {
        let Some((&w, others)) = rest.split_first() else {
            return true;
        };
        let h = self.pattern.order();
        for pick in combinations(others.len(), h - 1) {
            let mut s = vec![w];
            s.extend(pick.iter().map(|&i| others[i]));
            for g in 0..used.len() {
                if used[g] || self.calls > Self::MAX_CALLS || !self.packs(g, &s) {
                    continue;
                }
                used[g] = true;
                self.chosen.push((g, s.clone()));
                let left: Vec<usize> = others.iter().copied().filter(|v| !s.contains(v)).collect();
                if self.rec(&left, used) {
                    return true;
                }
                self.chosen.pop();
                used[g] = false;
            }
        }
        false
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// A perfect packing of `host[M + W]`.
///
/// `W` is split into `h`-sets, each assigned to its own gadget that absorbs
/// it; unused gadgets pack on their own. When no assignment is found the
/// whole of `M + W` is handed to the solver. Fails early when `W` overlaps
/// `M`, is not a multiple of `h` or needs more gadgets than there are.
pub fn absorb<H: Adjacency + ?Sized>(
    host: &H,
    pattern: &Pattern,
    fam: &AbsorbingFamily,
    w: &[usize],
    budget: Option<u64>,
) -> Result<Absorbed, AbsorbFailure> {
    let n = host.order();
    let h = pattern.order();
    let m = fam.vertex_set(n);
    if let Some(&v) = w.iter().find(|&&v| m.contains(v)) {
        return Err(AbsorbFailure::Overlap { vertex: v });
    }
    if w.len() % h != 0 {
        return Err(AbsorbFailure::Divisibility { size: w.len(), h });
    }
    let sets = w.len() / h;
    if sets > fam.gadgets.len() {
        return Err(AbsorbFailure::Capacity {
            sets,
            gadgets: fam.gadgets.len(),
        });
    }
    let mut target = m.clone();
    for &v in w {
        target.insert(v);
    }
    let mut rest = w.to_vec();
    rest.sort_unstable();
    let mut a = Assign {
        host,
        pattern,
        fam,
        budget,
        memo: HashMap::new(),
        calls: 0,
        chosen: Vec::new(),
    };
    let mut used = vec![false; fam.gadgets.len()];
    if a.rec(&rest, &mut used) {
        let mut packing = Packing::new(n, vec![pattern.clone()]);
        let mut ok = true;
        for (g, s) in &a.chosen {
            match &a.memo[&(*g, s.clone())] {
                Some(p) => packing.extend(p),
                None => ok = false,
            }
        }
        for gadget in fam.gadgets.iter().zip(&used).filter(|(_, u)| !**u).map(|(g, _)| g) {
            let alone = VertexSet::from_iter_with_capacity(n, gadget.verts.iter().copied());
            match find_perfect_packing_within(host, pattern, &alone, budget).result.found() {
                Some(p) => packing.extend(&p),
                None => ok = false,
            }
        }
        if ok && is_perfect_packing_of(host, &packing, &target).is_ok() {
            return Ok(Absorbed {
                packing,
                via: AbsorbVia::Assignment(a.chosen),
            });
        }
    }
    let packing = find_perfect_packing_within(host, pattern, &target, budget)
        .result
        .found()
        .ok_or(AbsorbFailure::NoPacking)?;
    debug_assert!(is_perfect_packing_of(host, &packing, &target).is_ok());
    Ok(Absorbed {
        packing,
        via: AbsorbVia::Global,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineParams {
    pub family: FamilyParams,
    pub seed: u64,
    pub budget_nodes: Option<u64>,
}

impl Default for PipelineParams {
    fn default() -> Self {
        PipelineParams {
            family: FamilyParams::default(),
            seed: 0,
            budget_nodes: Some(2_000_000),
        }
    }
}

#[derive(Clone, Debug)]
pub struct PipelineSuccess {
    pub packing: Packing,
    pub absorbing_set: usize,
    pub leftover: usize,
    pub via: AbsorbVia,
}

/// The stage at which [`pipeline`] stopped, with an explanation.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{stage}: {detail}")]
pub struct PipelineFailure {
    pub stage: &'static str,
    pub detail: String,
}

/// Absorbing set, then an almost perfect packing of the rest, then absorb
/// what is left over.
///
/// Before building anything every vertex is checked to lie in some copy
/// of the pattern; a vertex that does not refutes any perfect packing.
pub fn pipeline<H: Adjacency + Sync + ?Sized>(
    host: &H,
    pattern: &Pattern,
    params: &PipelineParams,
) -> Result<PipelineSuccess, PipelineFailure> {
    let n = host.order();
    let h = pattern.order();
    let fail = |stage, detail: String| PipelineFailure { stage, detail };
    if n % h != 0 {
        return Err(fail("divisibility", format!("{n} vertices, pattern of order {h}")));
    }
    for v in 0..n {
        if certify_uncoverable(host, v, pattern) == Certificate::NoneFound {
            return Err(fail("coverability", format!("no copy of {} contains vertex {v}", pattern.name())));
        }
    }
    let fam = build_absorbing_family(host, pattern, &params.family, params.seed)
        .map_err(|e| fail("family", e.to_string()))?;
    let m = fam.vertex_set(n);
    let rest = VertexSet::full(n).difference(&m);
    let almost = match find_perfect_packing_within(host, pattern, &rest, params.budget_nodes).result.found() {
        Some(p) => p,
        None => max_packing_within(host, std::slice::from_ref(pattern), &rest, params.budget_nodes).packing,
    };
    let leftover: Vec<usize> = rest.difference(&almost.covered()).to_vec();
    let absorbed = absorb(host, pattern, &fam, &leftover, params.budget_nodes)
        .map_err(|e| fail("absorb", format!("{} leftover vertices: {e}", leftover.len())))?;
    let mut packing = Packing::new(n, vec![pattern.clone()]);
    packing.extend(&almost);
    packing.extend(&absorbed.packing);
    is_perfect_packing(host, &packing).map_err(|e| fail("verify", e.to_string()))?;
    Ok(PipelineSuccess {
        packing,
        absorbing_set: fam.m.len(),
        leftover: leftover.len(),
        via: absorbed.via,
    })
}

/// Wraps a [`FamilyFailure`] for callers that deal in crate errors.
impl From<FamilyFailure> for Error {
    fn from(e: FamilyFailure) -> Self {
        Error::InvalidParams(e.to_string())
    }
}
