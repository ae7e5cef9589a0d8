//! Batch experiments: sample hosts conditioned on degree conditions and
//! ask the solver for a perfect packing.
//!
//! Trial `i` draws from stream `i` of the master seed. Candidates are drawn
//! with densities cycling through the schedule until one meets every
//! condition or the attempt limit is hit. Output is ordered by trial and
//! carries no timings, so identical specs give identical CSV.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::degseq::{parse_rational, DegreeCondition};
use crate::error::{Error, Result};
use crate::io::{self, AnyGraph};
use crate::packing::{find_perfect_packing_within, is_perfect_packing, Search};
use crate::pattern::Pattern;
use crate::random::{gnp, random_digraph, random_tournament, SeedSplitter};
use crate::VertexSet;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GeneratorKind {
    Gnp,
    Digraph,
    Tournament,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub kind: GeneratorKind,
    /// Orders, used in turn by trial index.
    pub n: Vec<usize>,
    /// Edge probabilities tried in turn by attempt; ignored for tournaments.
    #[serde(default = "default_densities")]
    pub densities: Vec<f64>,
}

fn default_densities() -> Vec<f64> {
    vec![0.5]
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConditionSpec {
    pub name: String,
    pub r: usize,
    #[serde(default = "zero")]
    pub gamma: String,
}

fn zero() -> String {
    "0".into()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentSpec {
    pub generator: GeneratorSpec,
    #[serde(default)]
    pub conditions: Vec<ConditionSpec>,
    pub pattern: String,
    pub trials: usize,
    pub seed: u64,
    #[serde(default)]
    pub budget_nodes: Option<u64>,
    #[serde(default = "default_attempts")]
    pub max_attempts: usize,
}

fn default_attempts() -> usize {
    1000
}

impl ExperimentSpec {
    pub fn validate(&self) -> Result<(Pattern, Vec<DegreeCondition>)> {
        if self.trials == 0 {
            return Err(Error::InvalidParams("trials must be at least 1".into()));
        }
        if self.generator.n.is_empty() {
            return Err(Error::InvalidParams("generator needs at least one order".into()));
        }
        if self.generator.kind != GeneratorKind::Tournament
            && (self.generator.densities.is_empty()
                || self.generator.densities.iter().any(|p| !(0.0..=1.0).contains(p)))
        {
            return Err(Error::InvalidParams("densities must be in [0, 1]".into()));
        }
        let pattern = Pattern::parse(&self.pattern)?;
        if pattern.is_directed() && self.generator.kind == GeneratorKind::Gnp {
            return Err(Error::InvalidParams(format!(
                "pattern {} is directed but the generator makes graphs",
                pattern.name()
            )));
        }
        let conditions = self
            .conditions
            .iter()
            .map(|c| DegreeCondition::new(&c.name, c.r, parse_rational(&c.gamma)?))
            .collect::<Result<Vec<_>>>()?;
        Ok((pattern, conditions))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    /// No candidate met the conditions within the attempt limit.
    Rejected,
    Found,
    None,
    Budget,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Rejected => "rejected",
            Verdict::Found => "found",
            Verdict::None => "none",
            Verdict::Budget => "budget",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TrialRow {
    pub trial: usize,
    pub n: usize,
    pub attempts: usize,
    pub density: Option<f64>,
    pub verdict: Verdict,
    pub nodes: u64,
    /// The accepted host, kept for accepted trials with no packing.
    #[serde(skip)]
    pub instance: Option<AnyGraph>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExperimentReport {
    pub rows: Vec<TrialRow>,
    pub accepted: usize,
    pub found: usize,
    pub none: usize,
    pub budget: usize,
    pub attempts: usize,
}

impl ExperimentReport {
    /// Accepted candidates over all candidates drawn.
    pub fn acceptance_rate(&self) -> f64 {
        self.accepted as f64 / self.attempts.max(1) as f64
    }

    /// Accepted hosts on which the solver proved there is no perfect
    /// packing, as graph JSON.
    pub fn counterexamples(&self) -> Vec<(usize, String)> {
        self.rows
            .iter()
            .filter_map(|r| r.instance.as_ref().map(|g| (r.trial, io::to_json(g))))
            .collect()
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("trial,n,attempts,density,verdict,nodes\n");
        for r in &self.rows {
            let density = r.density.map(|p| format!("{p}")).unwrap_or_default();
            s.push_str(&format!(
                "{},{},{},{},{},{}\n",
                r.trial,
                r.n,
                r.attempts,
                density,
                r.verdict.as_str(),
                r.nodes
            ));
        }
        s.push_str(&format!(
            "summary,trials={},accepted={},found={},none={},budget={},acceptance_rate={:.6}\n",
            self.rows.len(),
            self.accepted,
            self.found,
            self.none,
            self.budget,
            self.acceptance_rate()
        ));
        s
    }
}

fn generate(kind: &GeneratorKind, n: usize, p: f64, rng: &mut crate::random::TrialRng) -> AnyGraph {
    match kind {
        GeneratorKind::Gnp => gnp(n, p, rng).into(),
        GeneratorKind::Digraph => random_digraph(n, p, rng).into(),
        GeneratorKind::Tournament => random_tournament(n, rng).into(),
    }
}

/// Runs every trial, in parallel, and collects the rows in trial order.
pub fn run(spec: &ExperimentSpec) -> Result<ExperimentReport> {
    let (pattern, conditions) = spec.validate()?;
    let split = SeedSplitter::new(spec.seed);
    let gen = &spec.generator;
    let rows: Vec<TrialRow> = (0..spec.trials)
        .into_par_iter()
        .map(|trial| -> Result<TrialRow> {
            let mut rng = split.rng(trial as u64);
            let n = gen.n[trial % gen.n.len()];
            for attempt in 0..spec.max_attempts.max(1) {
                let p = gen.densities.get(attempt % gen.densities.len().max(1)).copied().unwrap_or(0.5);
                let host = generate(&gen.kind, n, p, &mut rng);
                let mut ok = true;
                for c in &conditions {
                    if !c.check(&host)?.satisfied {
                        ok = false;
                        break;
                    }
                }
                if !ok {
                    continue;
                }
                let out = find_perfect_packing_within(&host, &pattern, &VertexSet::full(n), spec.budget_nodes);
                let verdict = match &out.result {
                    Search::Found(p) => {
                        is_perfect_packing(&host, p)?;
                        Verdict::Found
                    }
                    Search::NoneExists => Verdict::None,
                    Search::BudgetExhausted => Verdict::Budget,
                };
                return Ok(TrialRow {
                    trial,
                    n,
                    attempts: attempt + 1,
                    density: (gen.kind != GeneratorKind::Tournament).then_some(p),
                    verdict,
                    nodes: out.nodes,
                    instance: (verdict == Verdict::None).then_some(host),
                });
            }
            Ok(TrialRow {
                trial,
                n,
                attempts: spec.max_attempts.max(1),
                density: None,
                verdict: Verdict::Rejected,
                nodes: 0,
                instance: None,
            })
        })
        .collect::<Result<_>>()?;
    let count = |v: Verdict| rows.iter().filter(|r| r.verdict == v).count();
    Ok(ExperimentReport {
        accepted: rows.len() - count(Verdict::Rejected),
        found: count(Verdict::Found),
        none: count(Verdict::None),
        budget: count(Verdict::Budget),
        attempts: rows.iter().map(|r| r.attempts).sum(),
        rows,
    })
}
