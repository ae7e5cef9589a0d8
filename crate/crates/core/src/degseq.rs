//! Degree-sequence conditions for perfect packings.
//!
//! Sequences are sorted ascending and indexed from 1, matching
//! `d_1 <= d_2 <= .. <= d_n`: `first_violating_index = Some(1)` refers to the
//! smallest degree. All thresholds are exact rationals.

use std::collections::BTreeMap;

use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::graph::{degree_sequence, dominant_sequence_of, Adjacency, Graph};
use crate::io::AnyGraph;

pub type Q = Ratio<i64>;

fn q(x: usize) -> Q {
    Q::from_integer(x as i64)
}

/// Parses `0.15`, `3/20` or `1` exactly.
pub fn parse_rational(s: &str) -> Result<Q> {
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    let s = s.trim();
    if let Some((a, b)) = s.split_once('/') {
        let a: i64 = a.trim().parse().map_err(|_| bad())?;
        let b: i64 = b.trim().parse().map_err(|_| bad())?;
        if b == 0 {
            return Err(bad());
        }
        return Ok(Q::new(a, b));
    }
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    if frac.len() > 15 || !frac.chars().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let negative = int.starts_with('-');
    let whole: i64 = match int.trim_start_matches('-') {
        "" => 0,
        w => w.parse().map_err(|_| bad())?,
    };
    let denom = 10i64.pow(frac.len() as u32);
    let numer = if frac.is_empty() { 0 } else { frac.parse::<i64>().map_err(|_| bad())? };
    let value = Q::new(whole * denom + numer, denom);
    Ok(if negative { -value } else { value })
}

/// Which degrees a condition reads.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum DegreeKind {
    GraphDegree,
    DominantDegree,
}

/// One value of the slack profile: `d_i` minus the threshold at index `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Slack {
    pub index: usize,
    pub value: Q,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionReport {
    pub name: String,
    pub satisfied: bool,
    /// The condition ranged over no index at all.
    pub vacuous: bool,
    /// 1-based.
    pub first_violating_index: Option<usize>,
    pub slack_profile: Vec<Slack>,
    /// Human-readable reason for a failure.
    pub note: Option<String>,
}

impl ConditionReport {
    fn from_profile(name: &str, profile: Vec<Slack>) -> Self {
        let first = profile.iter().find(|s| s.value < Q::zero()).map(|s| s.index);
        ConditionReport {
            name: name.into(),
            satisfied: first.is_none(),
            vacuous: profile.is_empty(),
            first_violating_index: first,
            slack_profile: profile,
            note: None,
        }
    }

    /// Least slack, `None` when vacuous.
    pub fn slack_min(&self) -> Option<Q> {
        self.slack_profile.iter().map(|s| s.value).min()
    }

    /// `{"name", "satisfied", "first_violating_index", "slack_min"}`;
    /// `slack_min` is a float, or null when the condition is vacuous.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "name": self.name,
            "satisfied": self.satisfied,
            "first_violating_index": self.first_violating_index,
            "slack_min": self.slack_min().and_then(|s| s.to_f64()),
        })
    }
}

/// `d_i >= (r-2)n/r + i + gamma*n` for every index `i` in `range`, over a
/// sorted sequence. The slack is measured against the full threshold.
fn gamma_profile(seq: &[usize], r: usize, gamma: Q, indices: impl Iterator<Item = usize>) -> Vec<Slack> {
    let n = q(seq.len());
    let base = q(r - 2) * n / q(r);
    indices
        .map(|i| Slack {
            index: i,
            value: q(seq[i - 1]) - (base + q(i) + gamma * n),
        })
        .collect()
}

// Indices `1 <= i < n/r`: `i*r < n`.
fn strict_range(n: usize, r: usize) -> impl Iterator<Item = usize> {
    (1..=n).take_while(move |i| i * r < n)
}

// Indices `1 <= i <= n/r`.
fn inclusive_range(n: usize, r: usize) -> impl Iterator<Item = usize> {
    (1..=n).take_while(move |i| i * r <= n)
}

/// `d_i >= (r-2)n/r + i + gamma*n` for all `i < n/r`, on any sorted
/// sequence.
pub fn check_sequence_gamma(name: &str, seq: &[usize], r: usize, gamma: Q) -> ConditionReport {
    assert!(r >= 2, "r must be at least 2");
    ConditionReport::from_profile(name, gamma_profile(seq, r, gamma, strict_range(seq.len(), r)))
}

/// The conjecture's conditions: (alpha) `d_i >= (r-2)n/r + i` for all
/// `i < n/r`, and (beta) `d_{n/r+1} >= (r-1)n/r`. Requires `r | n`.
///
/// (beta) is read literally even when the (alpha) range is empty.
pub fn check_conjecture(g: &Graph, r: usize) -> Result<ConditionReport> {
    check_conjecture_sequence(&degree_sequence(g), r)
}

pub fn check_conjecture_sequence(seq: &[usize], r: usize) -> Result<ConditionReport> {
    let n = seq.len();
    if r < 2 {
        return Err(Error::InvalidParams("r must be at least 2".into()));
    }
    if n % r != 0 || n == 0 {
        return Err(Error::Divisibility { what: "n", value: n, by: r });
    }
    let mut profile = gamma_profile(seq, r, Q::zero(), strict_range(n, r));
    let alpha_empty = profile.is_empty();
    let k = n / r + 1;
    let mut note = None;
    if k <= n {
        let beta = Slack {
            index: k,
            value: q(seq[k - 1]) - q(r - 1) * q(n) / q(r),
        };
        profile.push(beta);
    }
    let mut report = ConditionReport::from_profile("conjecture", profile);
    report.vacuous = alpha_empty && k > n;
    if let Some(i) = report.first_violating_index {
        note = Some(if i == k {
            format!("(beta) fails: d_{k} = {} < (r-1)n/r = {}", seq[k - 1], q(r - 1) * q(n) / q(r))
        } else {
            format!("(alpha) fails at i = {i}: d_{i} = {}", seq[i - 1])
        });
    }
    report.note = note;
    Ok(report)
}

/// `d_i >= (r-2)n/r + i + gamma*n` for all `i < n/r`.
pub fn check_theorem_gamma(g: &Graph, r: usize, gamma: Q) -> ConditionReport {
    check_sequence_gamma("theorem-gamma", &degree_sequence(g), r, gamma)
}

/// As [`check_theorem_gamma`] but over `1 <= i <= n/r`, the range used by
/// the extremal construction.
pub fn check_theorem_gamma_inclusive(g: &Graph, r: usize, gamma: Q) -> ConditionReport {
    let seq = degree_sequence(g);
    check_sequence_gamma_inclusive(&seq, r, gamma)
}

pub fn check_sequence_gamma_inclusive(seq: &[usize], r: usize, gamma: Q) -> ConditionReport {
    assert!(r >= 2, "r must be at least 2");
    ConditionReport::from_profile("theorem-gamma-inclusive", gamma_profile(seq, r, gamma, inclusive_range(seq.len(), r)))
}

/// `d*_i >= (r-2)n/r + i + gamma*n` for all `i < n/r`, over dominant degrees.
pub fn check_dominant_gamma<H: Adjacency + ?Sized>(d: &H, r: usize, gamma: Q) -> ConditionReport {
    check_sequence_gamma("dominant-gamma", &dominant_sequence_of(d), r, gamma)
}

// A single-threshold minimum degree condition.
fn min_degree_report(name: &str, seq: &[usize], threshold: Q) -> ConditionReport {
    let profile = seq
        .iter()
        .enumerate()
        .take(1)
        .map(|(i, &d)| Slack {
            index: i + 1,
            value: q(d) - threshold,
        })
        .collect();
    ConditionReport::from_profile(name, profile)
}

/// `delta >= (1 - 1/r)n`.
pub fn check_hajnal_szemeredi(g: &Graph, r: usize) -> ConditionReport {
    let n = q(g.order());
    min_degree_report("hajnal-szemeredi", &degree_sequence(g), (Q::from_integer(1) - Q::new(1, r as i64)) * n)
}

/// `delta >= (1 - 1/r + gamma)n`.
pub fn check_alon_yuster(g: &Graph, r: usize, gamma: Q) -> ConditionReport {
    let n = q(g.order());
    min_degree_report(
        "alon-yuster",
        &degree_sequence(g),
        (Q::from_integer(1) - Q::new(1, r as i64) + gamma) * n,
    )
}

/// `d(x) + d(y) >= 2(1 - 1/r)n - 1` for all non-adjacent `x != y`.
///
/// The slack profile has one entry per violating degree class; the index is
/// the first position in the sorted sequence holding the smaller degree of
/// the worst pair, so the report does not depend on vertex labels.
pub fn check_ore_type(g: &Graph, r: usize) -> ConditionReport {
    let n = g.order();
    let seq = degree_sequence(g);
    let threshold = Q::from_integer(2) * (Q::from_integer(1) - Q::new(1, r as i64)) * q(n) - Q::from_integer(1);
    // Worst slack per smaller degree of a non-adjacent pair.
    let mut worst: BTreeMap<usize, Q> = BTreeMap::new();
    for x in 0..n {
        for y in x + 1..n {
            if g.has_edge(x, y) {
                continue;
            }
            let (dx, dy) = (g.degree(x), g.degree(y));
            let slack = q(dx + dy) - threshold;
            let key = dx.min(dy);
            let e = worst.entry(key).or_insert(slack);
            if slack < *e {
                *e = slack;
            }
        }
    }
    let profile = worst
        .into_iter()
        .map(|(d, value)| Slack {
            index: seq.partition_point(|&x| x < d) + 1,
            value,
        })
        .collect();
    ConditionReport::from_profile("ore-type", profile)
}

/// `d_i >= i + 1` for all `i < (n-1)/2`, and `d_{ceil(n/2)} >= ceil(n/2)`
/// when `n` is odd.
pub fn check_posa(g: &Graph) -> ConditionReport {
    check_posa_sequence(&degree_sequence(g))
}

pub fn check_posa_sequence(seq: &[usize]) -> ConditionReport {
    let n = seq.len();
    let mut profile: Vec<Slack> = (1..=n)
        .take_while(|&i| 2 * i + 1 < n)
        .map(|i| Slack {
            index: i,
            value: q(seq[i - 1]) - q(i + 1),
        })
        .collect();
    if n % 2 == 1 {
        let c = n.div_ceil(2);
        profile.push(Slack {
            index: c,
            value: q(seq[c - 1]) - q(c),
        });
    }
    ConditionReport::from_profile("posa", profile)
}

/// Every baseline condition, keyed by name.
pub fn check_baselines(g: &Graph, r: usize, gamma: Q) -> BTreeMap<String, ConditionReport> {
    [
        check_hajnal_szemeredi(g, r),
        check_alon_yuster(g, r, gamma),
        check_ore_type(g, r),
        check_posa(g),
    ]
    .into_iter()
    .map(|rep| (rep.name.clone(), rep))
    .collect()
}

/// A named condition with its parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeCondition {
    pub name: String,
    pub r: usize,
    pub gamma: Q,
    pub kind: DegreeKind,
}

/// Names accepted by [`DegreeCondition::new`].
pub const CONDITION_NAMES: &[&str] = &[
    "conjecture",
    "theorem-gamma",
    "theorem-gamma-inclusive",
    "dominant-gamma",
    "hajnal-szemeredi",
    "alon-yuster",
    "ore-type",
    "posa",
];

impl DegreeCondition {
    pub fn new(name: &str, r: usize, gamma: Q) -> Result<Self> {
        if !CONDITION_NAMES.contains(&name) {
            return Err(Error::InvalidParams(format!(
                "unknown condition {name:?}; expected one of {}",
                CONDITION_NAMES.join(", ")
            )));
        }
        if r < 2 {
            return Err(Error::InvalidParams("r must be at least 2".into()));
        }
        if gamma < Q::zero() {
            return Err(Error::InvalidParams("gamma must be nonnegative".into()));
        }
        let kind = if name == "dominant-gamma" {
            DegreeKind::DominantDegree
        } else {
            DegreeKind::GraphDegree
        };
        Ok(DegreeCondition {
            name: name.into(),
            r,
            gamma,
            kind,
        })
    }

    /// Evaluates the condition; dominant conditions accept both kinds of
    /// host, the others need an undirected graph.
    pub fn check(&self, host: &AnyGraph) -> Result<ConditionReport> {
        if self.kind == DegreeKind::DominantDegree {
            return Ok(check_dominant_gamma(host, self.r, self.gamma));
        }
        let g = host
            .as_graph()
            .ok_or_else(|| Error::InvalidParams(format!("condition {} needs an undirected graph", self.name)))?;
        self.check_graph(g)
    }

    pub fn check_graph(&self, g: &Graph) -> Result<ConditionReport> {
        Ok(match self.name.as_str() {
            "conjecture" => check_conjecture(g, self.r)?,
            "theorem-gamma" => check_theorem_gamma(g, self.r, self.gamma),
            "theorem-gamma-inclusive" => check_theorem_gamma_inclusive(g, self.r, self.gamma),
            "dominant-gamma" => check_dominant_gamma(g, self.r, self.gamma),
            "hajnal-szemeredi" => check_hajnal_szemeredi(g, self.r),
            "alon-yuster" => check_alon_yuster(g, self.r, self.gamma),
            "ore-type" => check_ore_type(g, self.r),
            "posa" => check_posa(g),
            _ => unreachable!("validated in new"),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{complete_multipartite, transitive_tournament};
    use crate::graph::symmetrize;
    use crate::random::{gnp, SeedSplitter};
    use proptest::prelude::*;

    fn r(a: i64, b: i64) -> Q {
        Q::new(a, b)
    }

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("0.15").unwrap(), r(3, 20));
        assert_eq!(parse_rational("3/20").unwrap(), r(3, 20));
        assert_eq!(parse_rational("1").unwrap(), r(1, 1));
        assert_eq!(parse_rational(".5").unwrap(), r(1, 2));
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("1/0").is_err());
    }

    #[test]
    fn conjecture_examples() {
        assert!(check_conjecture(&Graph::complete(6), 3).unwrap().satisfied);
        let k33 = complete_multipartite(&[3, 3]);
        let rep = check_conjecture(&k33, 3).unwrap();
        assert!(!rep.satisfied);
        assert_eq!(rep.first_violating_index, Some(3));
        assert!(rep.note.unwrap().contains("(beta)"));
        assert_eq!(rep.slack_profile[0].value, r(0, 1));
        assert!(check_conjecture(&Graph::complete(7), 3).is_err());
    }

    #[test]
    fn theorem_gamma_examples() {
        // gamma <= 1/r - 2/n on K_n.
        for (n, rr) in [(12usize, 3usize), (10, 2), (20, 4)] {
            let gamma = Q::new(1, rr as i64) - Q::new(2, n as i64);
            assert!(check_theorem_gamma(&Graph::complete(n), rr, gamma).satisfied);
        }
        let rep = check_theorem_gamma(&Graph::new(10), 2, r(1, 10));
        assert_eq!(rep.first_violating_index, Some(1));
    }

    #[test]
    fn first_violation_matches_rescan() {
        let split = SeedSplitter::new(9);
        for i in 0..100 {
            let g = gnp(24, 0.9, &mut split.rng(i));
            let gamma = r(1, 20);
            let rep = check_theorem_gamma(&g, 3, gamma);
            let mut d: Vec<usize> = (0..24).map(|v| g.degree(v)).collect();
            d.sort();
            // d_i >= 8 + i + 1.2, i.e. 5 d_i >= 5 (8 + i) + 6.
            let rescan = (1..8).find(|&i| 5 * d[i - 1] < 5 * (8 + i) + 6);
            assert_eq!(rep.first_violating_index, rescan);
        }
    }

    #[test]
    fn dominant_examples() {
        assert!(check_dominant_gamma(&symmetrize(&Graph::complete(9)), 3, r(1, 20)).satisfied);
        let rep = check_dominant_gamma(&transitive_tournament(3), 3, Q::zero());
        assert!(rep.satisfied && rep.vacuous);
    }

    #[test]
    fn baseline_examples() {
        let all = check_baselines(&Graph::complete(6), 3, Q::zero());
        assert_eq!(all.len(), 4);
        assert!(all.values().all(|rep| rep.satisfied));
        let c5 = Graph::from_edges(5, (0..5).map(|i| (i, (i + 1) % 5))).unwrap();
        assert!(!check_hajnal_szemeredi(&c5, 2).satisfied);
    }

    #[test]
    fn json_fields() {
        let rep = check_conjecture(&complete_multipartite(&[3, 3]), 3).unwrap();
        let v = rep.to_json();
        let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
        assert_eq!(keys.len(), 4);
        assert_eq!(v["first_violating_index"], 3);
        assert_eq!(v["slack_min"], -1.0);
        let vac = check_dominant_gamma(&transitive_tournament(3), 3, Q::zero());
        assert!(vac.to_json()["slack_min"].is_null());
    }

    fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
        (2..=max_n).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
                let mut g = Graph::new(n);
                let mut k = 0;
                for u in 0..n {
                    for v in u + 1..n {
                        if bits[k] {
                            g.add_edge(u, v);
                        }
                        k += 1;
                    }
                }
                g
            })
        })
    }

    fn all_reports(g: &Graph) -> Vec<ConditionReport> {
        let mut v: Vec<ConditionReport> = check_baselines(g, 3, r(1, 10)).into_values().collect();
        v.push(check_theorem_gamma(g, 3, r(1, 20)));
        v.push(check_dominant_gamma(g, 2, Q::zero()));
        if g.order() % 3 == 0 {
            v.push(check_conjecture(g, 3).unwrap());
        }
        v
    }

    proptest! {
        #[test]
        fn adding_an_edge_is_monotone(g in arb_graph(30), a in any::<usize>(), b in any::<usize>()) {
            let n = g.order();
            let (u, v) = (a % n, b % n);
            prop_assume!(u != v && !g.has_edge(u, v));
            let mut h = g.clone();
            h.add_edge(u, v);
            for (before, after) in all_reports(&g).iter().zip(all_reports(&h)) {
                prop_assert!(!before.satisfied || after.satisfied, "{}", before.name);
            }
        }

        #[test]
        fn alpha_implies_gamma_zero(g in arb_graph(18)) {
            let n = g.order();
            prop_assume!(n % 3 == 0);
            let conj = check_conjecture(&g, 3).unwrap();
            let alpha_ok = conj.slack_profile.iter().filter(|s| s.index * 3 < n).all(|s| s.value >= Q::zero());
            if alpha_ok {
                prop_assert!(check_theorem_gamma(&g, 3, Q::zero()).satisfied);
            }
        }

        #[test]
        fn hs_implies_alpha(g in arb_graph(18)) {
            let n = g.order();
            prop_assume!(n % 3 == 0);
            if check_hajnal_szemeredi(&g, 3).satisfied {
                prop_assert!(check_conjecture(&g, 3).unwrap().satisfied);
            }
        }

        #[test]
        fn relabelling_invariant(g in arb_graph(14), seed in any::<u64>()) {
            use rand::seq::SliceRandom;
            let mut perm: Vec<usize> = (0..g.order()).collect();
            perm.shuffle(&mut SeedSplitter::new(seed).rng(0));
            let h = g.permuted(&perm);
            prop_assert_eq!(all_reports(&g), all_reports(&h));
        }

        #[test]
        fn symmetrize_matches_graph_check(g in arb_graph(20)) {
            let a = check_dominant_gamma(&symmetrize(&g), 3, r(1, 30));
            let b = check_theorem_gamma(&g, 3, r(1, 30));
            prop_assert_eq!(a.satisfied, b.satisfied);
            prop_assert_eq!(a.first_violating_index, b.first_violating_index);
            prop_assert_eq!(a.slack_profile, b.slack_profile);
        }
    }
}
