//! Packings: vertex-disjoint copies of one or more patterns in a host.

mod equitable;
mod search;

pub use equitable::perfect_clique_packing_via_equitable_coloring;
pub use search::{
    enumerate_copies, find_perfect_packing, find_perfect_packing_within, greedy_packing,
    greedy_packing_within, max_packing, max_packing_within, MaxPacking, OrderPolicy, Search,
    SearchOutcome,
};

use crate::bitset::VertexSet;
use crate::embed::spans;
use crate::error::{Error, Result};
use crate::graph::Adjacency;
use crate::pattern::Pattern;

/// One copy in a packing: the index of its pattern and its sorted vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Part {
    pub pattern: usize,
    pub vertices: Vec<usize>,
}

/// A family of copies, each labelled with a pattern from `patterns`.
#[derive(Clone, Debug)]
pub struct Packing {
    host_order: usize,
    patterns: Vec<Pattern>,
    parts: Vec<Part>,
}

impl Packing {
    pub fn new(host_order: usize, patterns: Vec<Pattern>) -> Self {
        assert!(!patterns.is_empty());
        Packing {
            host_order,
            patterns,
            parts: Vec::new(),
        }
    }

    /// All parts labelled with the single `pattern`.
    pub fn uniform(host_order: usize, pattern: Pattern, parts: Vec<Vec<usize>>) -> Self {
        let mut p = Packing::new(host_order, vec![pattern]);
        for part in parts {
            p.push(0, part);
        }
        p
    }

    pub fn push(&mut self, pattern: usize, mut vertices: Vec<usize>) {
        vertices.sort_unstable();
        self.parts.push(Part { pattern, vertices });
    }

    pub fn host_order(&self) -> usize {
        self.host_order
    }

    pub fn patterns(&self) -> &[Pattern] {
        &self.patterns
    }

    pub fn parts(&self) -> &[Part] {
        &self.parts
    }

    pub fn parts_mut(&mut self) -> &mut Vec<Part> {
        &mut self.parts
    }

    pub fn pattern_of(&self, part: &Part) -> &Pattern {
        &self.patterns[part.pattern]
    }

    /// Index of the pattern called `name`, adding it if absent.
    pub fn pattern_index(&mut self, pattern: &Pattern) -> usize {
        match self.patterns.iter().position(|p| p.name() == pattern.name()) {
            Some(i) => i,
            None => {
                self.patterns.push(pattern.clone());
                self.patterns.len() - 1
            }
        }
    }

    /// `V(M)`.
    pub fn covered(&self) -> VertexSet {
        VertexSet::from_iter_with_capacity(
            self.host_order,
            self.parts.iter().flat_map(|p| p.vertices.iter().copied()),
        )
    }

    /// `|V(M)|`, counted with multiplicity.
    pub fn coverage(&self) -> usize {
        self.parts.iter().map(|p| p.vertices.len()).sum()
    }

    /// Appends the parts of `other`, relabelling its patterns.
    pub fn extend(&mut self, other: &Packing) {
        for part in &other.parts {
            let i = self.pattern_index(other.pattern_of(part));
            self.push(i, part.vertices.clone());
        }
    }

    /// `{"pattern": "K3", "parts": [[..], ..]}`; a mixed packing lists its
    /// patterns and adds one label per part.
    pub fn to_json(&self) -> serde_json::Value {
        let parts: Vec<&Vec<usize>> = self.parts.iter().map(|p| &p.vertices).collect();
        if self.patterns.len() == 1 {
            serde_json::json!({ "pattern": self.patterns[0].name(), "parts": parts })
        } else {
            let names: Vec<&str> = self.patterns.iter().map(|p| p.name()).collect();
            let labels: Vec<usize> = self.parts.iter().map(|p| p.pattern).collect();
            serde_json::json!({ "pattern": names, "parts": parts, "labels": labels })
        }
    }

    pub fn from_json(value: &serde_json::Value, host_order: usize) -> Result<Self> {
        let bad = |m: &str| Error::Parse(format!("packing JSON: {m}"));
        let patterns: Vec<Pattern> = match &value["pattern"] {
            serde_json::Value::String(s) => vec![Pattern::parse(s)?],
            serde_json::Value::Array(a) => a
                .iter()
                .map(|s| s.as_str().ok_or_else(|| bad("pattern names must be strings")).and_then(Pattern::parse))
                .collect::<Result<_>>()?,
            _ => return Err(bad("missing pattern")),
        };
        if patterns.is_empty() {
            return Err(bad("empty pattern list"));
        }
        let parts: Vec<Vec<usize>> = serde_json::from_value(value["parts"].clone())?;
        let labels: Vec<usize> = match value.get("labels") {
            Some(l) => serde_json::from_value(l.clone())?,
            None => vec![0; parts.len()],
        };
        if labels.len() != parts.len() || labels.iter().any(|&l| l >= patterns.len()) {
            return Err(bad("labels do not match parts"));
        }
        let mut p = Packing::new(host_order, patterns);
        for (part, label) in parts.into_iter().zip(labels) {
            p.push(label, part);
        }
        Ok(p)
    }
}

/// Why a packing was rejected.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum PackingViolation {
    #[error("vertex {vertex} lies in two parts")]
    Overlap { vertex: usize },
    #[error("vertex {vertex} is not covered")]
    Uncovered { vertex: usize },
    #[error("part {part} does not span its pattern")]
    NotSpanning { part: usize },
    #[error("vertex {vertex} is outside the host")]
    OutOfRange { vertex: usize },
    #[error("part {part} lies outside the target set")]
    OutsideTarget { part: usize },
}

/// Checks disjointness and that every part spans its pattern.
pub fn verify_packing<G: Adjacency + ?Sized>(host: &G, p: &Packing) -> Result<(), PackingViolation> {
    let n = host.order();
    let mut seen = VertexSet::new(n);
    for (i, part) in p.parts.iter().enumerate() {
        for &v in &part.vertices {
            if v >= n {
                return Err(PackingViolation::OutOfRange { vertex: v });
            }
            if !seen.insert(v) {
                return Err(PackingViolation::Overlap { vertex: v });
            }
        }
        if part.pattern >= p.patterns.len() || spans(host, p.pattern_of(part), &part.vertices).is_none() {
            return Err(PackingViolation::NotSpanning { part: i });
        }
    }
    Ok(())
}

/// Accepts a packing that also covers every vertex.
pub fn is_perfect_packing<G: Adjacency + ?Sized>(host: &G, p: &Packing) -> Result<(), PackingViolation> {
    is_perfect_packing_of(host, p, &VertexSet::full(host.order()))
}

/// Accepts a packing whose parts lie inside `target` and cover all of it.
pub fn is_perfect_packing_of<G: Adjacency + ?Sized>(
    host: &G,
    p: &Packing,
    target: &VertexSet,
) -> Result<(), PackingViolation> {
    verify_packing(host, p)?;
    for (i, part) in p.parts.iter().enumerate() {
        if part.vertices.iter().any(|&v| !target.contains(v)) {
            return Err(PackingViolation::OutsideTarget { part: i });
        }
    }
    let covered = p.covered();
    match target.difference(&covered).first() {
        Some(v) => Err(PackingViolation::Uncovered { vertex: v }),
        None => Ok(()),
    }
}
