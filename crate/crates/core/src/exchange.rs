//! Growing `T_r`-packings in digraphs.
//!
//! [`greedy_tr`] builds one `T_r` from consistent copies and turning points.
//! [`swap_improve`] and [`extend_mixed`] are the two moves of the exchange
//! argument: trade an uncovered vertex of low index into a copy for a
//! covered vertex of higher index, and upgrade a `T_r` to a `T_{r+1}` with an
//! uncovered vertex that dominates it or is dominated by it. [`expand_loop`]
//! chains them and [`blowup_iterate`] alternates them with blow-ups.

use num_traits::{ToPrimitive, Zero};

use crate::bitset::VertexSet;
use crate::constructions::{fact_packing_of_blowup, BlowupKind};
use crate::degseq::{check_dominant_gamma, Q};
use crate::embed::{spans, transitive_order};
use crate::error::{Error, Result};
use crate::graph::{Adjacency, BlowUp, Digraph, Orientation};
use crate::packing::{
    greedy_packing_within, max_packing, verify_packing, OrderPolicy, Packing, PackingViolation,
};
use crate::pattern::Pattern;

fn q(x: usize) -> Q {
    Q::from_integer(x as i64)
}

fn orientation<H: Adjacency + ?Sized>(d: &H, x: usize) -> Orientation {
    if d.out_neighbors(x).len() >= d.in_neighbors(x).len() {
        Orientation::Out
    } else {
        Orientation::In
    }
}

/// `d*(x, Y)`: arcs from `x` into `Y` if `x` is oriented out, arcs from `Y`
/// into `x` otherwise.
pub fn dominant_degree_into<H: Adjacency + ?Sized>(d: &H, x: usize, ys: &VertexSet) -> usize {
    match orientation(d, x) {
        Orientation::Out => d.out_neighbors(x).intersection_len(ys),
        Orientation::In => d.in_neighbors(x).intersection_len(ys),
    }
}

/// Degree bound used by [`greedy_tr`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ThresholdMode {
    /// `(1 - 1/r)n`.
    Plain,
    /// `(1 - 1/r + 3 eta/4)n`.
    Boosted(Q),
}

/// A copy `x_1 .. x_k` of `T_k` (arcs `x_i -> x_j` for `i < j`) with turning
/// point `s`: `d+(x_i) >= threshold` for `i <= s` and `d-(x_i) >= threshold`
/// for `i > s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConsistentCopy {
    pub vertices: Vec<usize>,
    pub turning_point: usize,
    pub threshold: Q,
}

impl ConsistentCopy {
    pub fn is_consistent<H: Adjacency + ?Sized>(&self, d: &H) -> bool {
        let forward = self
            .vertices
            .iter()
            .enumerate()
            .all(|(i, &a)| self.vertices[i + 1..].iter().all(|&b| d.has_arc(a, b)));
        let degrees = self.vertices.iter().enumerate().all(|(i, &x)| {
            let deg = if i < self.turning_point {
                d.out_neighbors(x).len()
            } else {
                d.in_neighbors(x).len()
            };
            q(deg) >= self.threshold
        });
        forward && degrees && self.turning_point <= self.vertices.len()
    }
}

/// Builds a consistent `T_r` one vertex at a time.
///
/// With `x_1 .. x_k` consistent at turning point `s`, the candidates are the
/// common out-neighbours of `x_1 .. x_s` that are also common in-neighbours
/// of `x_{s+1} .. x_k`. The candidate of largest dominant degree (ties to the
/// smaller id) that meets the threshold is inserted at position `s + 1`; the
/// turning point moves past it when its outdegree meets the threshold.
///
/// Never `None` when `d*_{ceil(n/r)} >= (1 - 1/r)n` in plain mode.
pub fn greedy_tr<H: Adjacency + ?Sized>(d: &H, r: usize, mode: ThresholdMode) -> Option<ConsistentCopy> {
    assert!(r >= 1);
    let n = d.order();
    let mut threshold = (Q::from_integer(1) - Q::new(1, r as i64)) * q(n);
    if let ThresholdMode::Boosted(eta) = mode {
        threshold += eta * Q::new(3, 4) * q(n);
    }
    let meets = |x: usize| q(d.dominant_degree(x)) >= threshold;
    let pick = |cands: &mut dyn Iterator<Item = usize>| {
        cands
            .filter(|&x| meets(x))
            .max_by_key(|&x| (d.dominant_degree(x), std::cmp::Reverse(x)))
    };
    let first = pick(&mut (0..n))?;
    let mut copy = ConsistentCopy {
        vertices: vec![first],
        turning_point: usize::from(q(d.out_neighbors(first).len()) >= threshold),
        threshold,
    };
    while copy.vertices.len() < r {
        let s = copy.turning_point;
        let mut common = VertexSet::full(n);
        for (i, &x) in copy.vertices.iter().enumerate() {
            if i < s {
                common.intersect_with(d.out_neighbors(x));
            } else {
                common.intersect_with(d.in_neighbors(x));
            }
        }
        let x = pick(&mut common.iter())?;
        copy.vertices.insert(s, x);
        if q(d.out_neighbors(x).len()) >= threshold {
            copy.turning_point += 1;
        }
    }
    debug_assert!(copy.is_consistent(d));
    let t = Pattern::transitive(r);
    spans(d, &t, &copy.vertices)?;
    Some(copy)
}

/// `I[x]` in `1..=n`, sorting vertices by dominant degree with ties broken
/// by id, so `I[x] < I[y]` implies `d*(x) <= d*(y)`.
pub fn index_bijection<H: Adjacency + ?Sized>(d: &H) -> Vec<usize> {
    let n = d.order();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (d.dominant_degree(v), v));
    let mut index = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        index[v] = i + 1;
    }
    index
}

/// An accepted exchange: `x` took the place of `y` in part `part`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Swap {
    pub x: usize,
    pub y: usize,
    pub part: usize,
}

fn require_tr_packing<H: Adjacency + ?Sized>(d: &H, r: usize, m: &Packing) -> Result<()> {
    verify_packing(d, m)?;
    if let Some(i) = m.parts().iter().position(|p| p.vertices.len() != r) {
        return Err(Error::Packing(PackingViolation::NotSpanning { part: i }));
    }
    Ok(())
}

/// One exchange, if any exists.
///
/// Uncovered `x` are tried by increasing `I`, covered `y` by decreasing `I`
/// with `I[y] > I[x]`. `x` may replace `y` when it sends arcs to every other
/// vertex of `y`'s copy (if `x` is oriented out) or receives arcs from all
/// of them (if oriented in). Coverage is unchanged and the sum of `I` over
/// uncovered vertices goes up by `I[y] - I[x]`.
pub fn swap_improve<H: Adjacency + ?Sized>(
    d: &H,
    r: usize,
    m: &Packing,
    index: &[usize],
) -> Result<Option<(Packing, Swap)>> {
    require_tr_packing(d, r, m)?;
    let n = d.order();
    let covered = m.covered();
    let mut part_of = vec![usize::MAX; n];
    for (i, p) in m.parts().iter().enumerate() {
        for &v in &p.vertices {
            part_of[v] = i;
        }
    }
    let mut by_index: Vec<usize> = (0..n).collect();
    by_index.sort_by_key(|&v| index[v]);
    for &x in by_index.iter().filter(|&&v| !covered.contains(v)) {
        let reach = match orientation(d, x) {
            Orientation::Out => d.out_neighbors(x),
            Orientation::In => d.in_neighbors(x),
        };
        for &y in by_index.iter().rev() {
            if index[y] <= index[x] {
                break;
            }
            if !covered.contains(y) {
                continue;
            }
            let part = part_of[y];
            let rest = m.parts()[part].vertices.iter().filter(|&&w| w != y);
            if rest.clone().all(|&w| reach.contains(w)) {
                let mut next = m.clone();
                let mut verts: Vec<usize> = rest.copied().collect();
                verts.push(x);
                verts.sort_unstable();
                next.parts_mut()[part].vertices = verts;
                verify_packing(d, &next)?;
                return Ok(Some((next, Swap { x, y, part })));
            }
        }
    }
    Ok(None)
}

/// `sum of I[x]` over vertices not covered by `m`.
pub fn uncovered_index_sum(m: &Packing, index: &[usize]) -> usize {
    let covered = m.covered();
    (0..index.len()).filter(|&v| !covered.contains(v)).map(|v| index[v]).sum()
}

/// Upgrades copies of `T_r` to `T_{r+1}`.
///
/// Uncovered vertices are taken in id order; one with
/// `d*(x, V(m)) >= (r-1)|V(m)|/r + gamma n` joins the first remaining `T_r`
/// part that it dominates or that dominates it. `V(m)` is that of the
/// input. `None` when nothing was upgraded.
pub fn extend_mixed<H: Adjacency + ?Sized>(d: &H, r: usize, m: &Packing, gamma: Q) -> Option<Packing> {
    let n = d.order();
    let covered = m.covered();
    let threshold = q(r - 1) * q(covered.len()) / q(r) + gamma * q(n);
    let tr = Pattern::transitive(r);
    let tr1 = Pattern::transitive(r + 1);
    let mut out = Packing::new(n, vec![tr.clone(), tr1.clone()]);
    let mut upgraded: Vec<Option<usize>> = vec![None; m.parts().len()];
    let eligible = |p: &crate::packing::Part| m.pattern_of(p).order() == r;
    for x in (0..n).filter(|&v| !covered.contains(v)) {
        if q(dominant_degree_into(d, x, &covered)) < threshold {
            continue;
        }
        let hit = m.parts().iter().enumerate().position(|(i, p)| {
            upgraded[i].is_none()
                && eligible(p)
                && (p.vertices.iter().all(|&w| d.has_arc(x, w)) || p.vertices.iter().all(|&w| d.has_arc(w, x)))
        });
        if let Some(i) = hit {
            upgraded[i] = Some(x);
        }
    }
    if upgraded.iter().all(Option::is_none) {
        return None;
    }
    for (i, p) in m.parts().iter().enumerate() {
        match upgraded[i] {
            Some(x) => {
                let mut v = p.vertices.clone();
                v.push(x);
                out.push(1, v);
            }
            None => {
                let label = out.pattern_index(m.pattern_of(p));
                out.push(label, p.vertices.clone());
            }
        }
    }
    debug_assert!(verify_packing(d, &out).is_ok());
    verify_packing(d, &out).ok()?;
    Some(out)
}

/// Knobs for [`expand_loop`].
#[derive(Clone, Debug)]
pub struct ExpandParams {
    pub r: usize,
    pub gamma: Q,
    pub eta: Q,
    /// Seed with an exact maximum packing up to this order, greedy above.
    pub small_n: usize,
    pub budget_nodes: Option<u64>,
    /// Cap on exchanges per run.
    pub max_swaps: usize,
}

impl ExpandParams {
    pub fn new(r: usize, gamma: Q, eta: Q) -> Self {
        ExpandParams {
            r,
            gamma,
            eta,
            small_n: 15,
            budget_nodes: Some(2_000_000),
            max_swaps: 100_000,
        }
    }
}

/// One line of a coverage trace.
#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct TraceRow {
    pub round: usize,
    pub phase: String,
    pub covered: usize,
    pub n: usize,
    pub proportion: f64,
}

impl TraceRow {
    fn new(round: usize, phase: &str, covered: usize, n: usize) -> Self {
        TraceRow {
            round,
            phase: phase.into(),
            covered,
            n,
            proportion: if n == 0 { 1.0 } else { covered as f64 / n as f64 },
        }
    }
}

/// `round,phase,covered,n,proportion` with a header line.
pub fn trace_csv(rows: &[TraceRow]) -> String {
    let mut s = String::from("round,phase,covered,n,proportion\n");
    for r in rows {
        s.push_str(&format!("{},{},{},{},{:.6}\n", r.round, r.phase, r.covered, r.n, r.proportion));
    }
    s
}

/// The small/big/bad split of the uncovered vertices after the exchange
/// phase, with the three thresholds it is measured against.
#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct Diagnostics {
    pub small: usize,
    pub big: usize,
    pub bad: usize,
    /// Uncovered vertices meeting the upgrade threshold.
    pub claim_vertices: usize,
    /// `(r-1)n/r + 3 eta n/4`.
    pub big_threshold: f64,
    /// `(r-1)n''/r + eta n/2`, `n''` the number of uncovered vertices.
    pub bad_threshold: f64,
    /// `(r-1)n'/r + gamma n`, `n'` the covered count.
    pub claim_threshold: f64,
}

#[derive(Clone, Debug)]
pub struct ExpandResult {
    pub seed_coverage: usize,
    /// The seed was an exact maximum packing.
    pub seed_optimal: bool,
    pub budget_exhausted: bool,
    pub swaps: usize,
    pub packing: Packing,
    pub trace: Vec<TraceRow>,
    pub diagnostics: Diagnostics,
    /// `Some(met)` when the hypotheses of the coverage claim hold: the
    /// dominant condition with slack `eta`, an optimal seed and seed
    /// coverage at most `(1 - eta)n`. Then `met` says whether the final
    /// coverage reached the seed plus `gamma n`.
    pub expectation: Option<bool>,
}

/// Seed, exchange to a fixpoint, refill greedily, upgrade.
///
/// `seed` replaces the initial packing when given.
pub fn expand_loop<H: Adjacency + ?Sized>(d: &H, params: &ExpandParams, seed: Option<Packing>) -> ExpandResult {
    expand_round(d, params, seed, 0)
}

fn expand_round<H: Adjacency + ?Sized>(
    d: &H,
    params: &ExpandParams,
    seed: Option<Packing>,
    round: usize,
) -> ExpandResult {
    let r = params.r;
    let n = d.order();
    let tr = Pattern::transitive(r);
    let mut trace = Vec::new();
    let (mut m, seed_optimal, budget_exhausted) = match seed {
        Some(p) => (p, false, false),
        None if n <= params.small_n => {
            let mp = max_packing(d, std::slice::from_ref(&tr), params.budget_nodes);
            (mp.packing, mp.optimal, !mp.optimal)
        }
        None => (
            crate::packing::greedy_packing(d, &tr, OrderPolicy::Index),
            false,
            false,
        ),
    };
    let seed_coverage = m.coverage();
    trace.push(TraceRow::new(round, "seed", seed_coverage, n));

    let index = index_bijection(d);
    let mut swaps = 0;
    while swaps < params.max_swaps {
        match swap_improve(d, r, &m, &index) {
            Ok(Some((next, _))) => {
                m = next;
                swaps += 1;
            }
            _ => break,
        }
    }
    trace.push(TraceRow::new(round, "swap", m.coverage(), n));

    let free = VertexSet::full(n).difference(&m.covered());
    let extra = greedy_packing_within(d, &tr, &free, OrderPolicy::MaxDegreeFirst);
    m.extend(&extra);
    trace.push(TraceRow::new(round, "refill", m.coverage(), n));

    let diagnostics = diagnose(d, params, &m, &index);
    let mixed = extend_mixed(d, r, &m, params.gamma).unwrap_or_else(|| {
        let mut p = Packing::new(n, vec![tr.clone(), Pattern::transitive(r + 1)]);
        p.extend(&m);
        p
    });
    trace.push(TraceRow::new(round, "extend", mixed.coverage(), n));

    let hypotheses = seed_optimal
        && check_dominant_gamma(d, r, params.eta).satisfied
        && q(seed_coverage) <= (Q::from_integer(1) - params.eta) * q(n);
    let expectation = hypotheses.then(|| q(mixed.coverage()) >= q(seed_coverage) + params.gamma * q(n));
    ExpandResult {
        seed_coverage,
        seed_optimal,
        budget_exhausted,
        swaps,
        packing: mixed,
        trace,
        diagnostics,
        expectation,
    }
}

fn diagnose<H: Adjacency + ?Sized>(d: &H, params: &ExpandParams, m: &Packing, index: &[usize]) -> Diagnostics {
    let r = params.r;
    let n = d.order();
    let covered = m.covered();
    let uncovered = VertexSet::full(n).difference(&covered);
    let big_threshold = q(r - 1) * q(n) / q(r) + params.eta * Q::new(3, 4) * q(n);
    let bad_threshold = q(r - 1) * q(uncovered.len()) / q(r) + params.eta * Q::new(1, 2) * q(n);
    let claim_threshold = q(r - 1) * q(covered.len()) / q(r) + params.gamma * q(n);
    let (mut small, mut big, mut bad, mut claim) = (0, 0, 0, 0);
    for x in uncovered.iter() {
        if index[x] * r < n {
            small += 1;
        } else {
            big += 1;
            if q(dominant_degree_into(d, x, &uncovered)) <= bad_threshold {
                bad += 1;
            }
        }
        if q(dominant_degree_into(d, x, &covered)) >= claim_threshold {
            claim += 1;
        }
    }
    let f = |x: Q| x.to_f64().unwrap_or(f64::NAN);
    Diagnostics {
        small,
        big,
        bad,
        claim_vertices: claim,
        big_threshold: f(big_threshold),
        bad_threshold: f(bad_threshold),
        claim_threshold: f(claim_threshold),
    }
}

/// Turns a `{T_r, T_{r+1}}`-packing of `d` covering `c` vertices into a
/// `T_r`-packing of `d(r)` covering `c r` vertices: each copy's blow-up
/// contains `T_k(r)`, which is packed explicitly.
pub fn convert_blown<H: Adjacency + ?Sized>(d: &H, r: usize, mixed: &Packing) -> Result<Packing> {
    let tr = Pattern::transitive(r);
    let mut out = Packing::new(d.order() * r, vec![tr]);
    let plain = fact_packing_of_blowup(r, r, BlowupKind::Tr)?;
    let plus = fact_packing_of_blowup(r, r, BlowupKind::TrPlus1)?;
    for part in mixed.parts() {
        let order = transitive_order(d, &part.vertices).ok_or(Error::Packing(PackingViolation::NotSpanning {
            part: 0,
        }))?;
        let template = match order.len() {
            k if k == r => &plain,
            k if k == r + 1 => &plus,
            k => {
                return Err(Error::InvalidParams(format!("part of order {k} is neither T_r nor T_(r+1)")));
            }
        };
        for tp in template.parts() {
            let verts = tp.vertices.iter().map(|&w| order[w / r] * r + w % r).collect();
            out.push(0, verts);
        }
    }
    Ok(out)
}

/// One line of the proportion trace of [`blowup_iterate`].
#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct ProportionRow {
    pub round: usize,
    pub n: usize,
    pub covered: usize,
    pub proportion: f64,
}

#[derive(Clone, Debug)]
pub struct BlowupResult {
    pub host: Digraph,
    /// The last expand round's packing on `host`.
    pub packing: Packing,
    pub proportions: Vec<ProportionRow>,
    pub trace: Vec<TraceRow>,
}

/// Expands, then up to `z` times blows up by `r`, converts the mixed
/// packing into a `T_r`-packing of the blow-up and expands again. Stops
/// early once everything is covered.
pub fn blowup_iterate(d: &Digraph, z: usize, params: &ExpandParams) -> Result<BlowupResult> {
    let r = params.r;
    let mut host = d.clone();
    let mut res = expand_round(&host, params, None, 0);
    let mut trace = res.trace.clone();
    let row = |round: usize, host: &Digraph, p: &Packing| ProportionRow {
        round,
        n: host.order(),
        covered: p.coverage(),
        proportion: p.coverage() as f64 / host.order().max(1) as f64,
    };
    let mut proportions = vec![row(0, &host, &res.packing)];
    for round in 1..=z {
        if res.packing.coverage() == host.order() {
            break;
        }
        let seed = convert_blown(&host, r, &res.packing)?;
        host = host.blow_up(r);
        verify_packing(&host, &seed)?;
        res = expand_round(&host, params, Some(seed), round);
        trace.extend(res.trace.iter().cloned());
        proportions.push(row(round, &host, &res.packing));
    }
    Ok(BlowupResult {
        host,
        packing: res.packing,
        proportions,
        trace,
    })
}

/// Vertices `0..21` form a complete symmetric digraph; `21, 22, 23` have no
/// arcs among themselves and send arcs to all of `0..21`. Index-order
/// greedy packs `0..21` with seven `T_3` and strands the last three, each of
/// which then upgrades a different copy.
pub fn upgrade_instance() -> Digraph {
    let mut d = Digraph::new(24);
    for u in 0..21 {
        for v in 0..21 {
            if u != v {
                d.add_arc(u, v);
            }
        }
    }
    for x in 21..24 {
        for v in 0..21 {
            d.add_arc(x, v);
        }
    }
    d
}

/// Whether coverage never drops between consecutive rows of one round.
pub fn is_nondecreasing(rows: &[TraceRow]) -> bool {
    rows.windows(2).all(|w| w[1].round != w[0].round || w[1].covered >= w[0].covered)
}

impl ExpandResult {
    /// Final minus seed coverage, as a multiple of `n`.
    pub fn gain(&self) -> Q {
        let n = self.packing.host_order().max(1);
        (q(self.packing.coverage()) - q(self.seed_coverage)) / q(n)
    }

    pub fn gained(&self) -> bool {
        self.gain() > Q::zero()
    }
}
