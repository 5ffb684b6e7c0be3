//! Exact maximum matching and the constructive matching transformations.

mod blossom;
mod brute;
mod transform;

pub use blossom::max_matching;
pub use brute::{
    brute_force_matching, brute_force_matching_number, brute_force_matching_number_with,
    brute_force_matching_with, BruteGuard,
};
pub use transform::{
    augment_involutions, inverse_pair_matching, normalize_matching, rematch_enhanced_to_power,
};

use crate::graphs::{GraphKind, SimpleGraph};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum MatchingError {
    #[error("invalid matching: {0}")]
    InvalidMatching(String),
    #[error("graph too large for brute force: {vertices} vertices, {edges} edges (guard: {max_vertices} vertices or {max_edges} edges)")]
    GuardExceeded {
        vertices: usize,
        edges: usize,
        max_vertices: usize,
        max_edges: usize,
    },
    #[error("group order must be even")]
    RequiresEvenOrder,
    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
    #[error("malformed matching file: {0}")]
    Parse(String),
}

/// A matching as a mate map: `mate[v]` is the matched partner of v, or
/// None when v is unmatched.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    mate: Vec<Option<u32>>,
}

impl Matching {
    pub fn empty(n: usize) -> Self {
        Matching {
            mate: vec![None; n],
        }
    }

    pub(crate) fn from_mates(mate: Vec<Option<u32>>) -> Self {
        Matching { mate }
    }

    pub fn n(&self) -> usize {
        self.mate.len()
    }

    pub fn mate(&self, v: usize) -> Option<usize> {
        self.mate[v].map(|u| u as usize)
    }

    /// Number of matched edges.
    pub fn size(&self) -> usize {
        self.mate.iter().filter(|m| m.is_some()).count() / 2
    }

    /// n - 2 * size.
    pub fn deficiency(&self) -> usize {
        self.n() - 2 * self.size()
    }

    pub fn is_perfect(&self) -> bool {
        self.deficiency() == 0
    }

    /// Matched pairs (i, j) with i < j, sorted.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (v, m) in self.mate.iter().enumerate() {
            if let Some(u) = m {
                let u = *u as usize;
                if v < u {
                    out.push((v, u));
                }
            }
        }
        out
    }

    pub fn unmatched(&self) -> Vec<usize> {
        self.mate
            .iter()
            .enumerate()
            .filter(|(_, m)| m.is_none())
            .map(|(v, _)| v)
            .collect()
    }

    /// Adds the pair {u, v}; both endpoints must currently be free.
    pub fn add_pair(&mut self, u: usize, v: usize) {
        assert!(u != v);
        assert!(self.mate[u].is_none() && self.mate[v].is_none());
        self.mate[u] = Some(v as u32);
        self.mate[v] = Some(u as u32);
    }

    /// Removes the pair containing v (which must be matched).
    pub fn remove_pair(&mut self, v: usize) {
        let u = self.mate[v].expect("remove_pair on unmatched vertex") as usize;
        self.mate[v] = None;
        self.mate[u] = None;
    }

    /// Structural validity on a graph: mate symmetry, no self-mates, and
    /// every matched pair an edge. Returns the first problem found.
    pub fn validate_on(&self, graph: &SimpleGraph) -> Result<(), MatchingError> {
        if self.n() != graph.n() {
            return Err(MatchingError::InvalidMatching(format!(
                "matching over {} vertices, graph has {}",
                self.n(),
                graph.n()
            )));
        }
        for (v, m) in self.mate.iter().enumerate() {
            if let Some(u) = m {
                let u = *u as usize;
                if u == v {
                    return Err(MatchingError::InvalidMatching(format!(
                        "vertex {v} matched to itself"
                    )));
                }
                if self.mate.get(u).copied().flatten() != Some(v as u32) {
                    return Err(MatchingError::InvalidMatching(format!(
                        "mate map is not symmetric at {v}"
                    )));
                }
                if !graph.has_edge(v, u) {
                    return Err(MatchingError::InvalidMatching(format!(
                        "matched pair ({v}, {u}) is not an edge"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn to_doc(&self, graph_kind: GraphKind) -> MatchingDoc {
        MatchingDoc {
            graph_kind,
            n: self.n(),
            size: self.size(),
            deficiency: self.deficiency(),
            pairs: self
                .pairs()
                .into_iter()
                .map(|(i, j)| (i as u32, j as u32))
                .collect(),
            unmatched: self.unmatched().into_iter().map(|v| v as u32).collect(),
        }
    }

    pub fn from_doc(doc: &MatchingDoc) -> Result<Matching, MatchingError> {
        let mut m = Matching::empty(doc.n);
        for &(i, j) in &doc.pairs {
            let (i, j) = (i as usize, j as usize);
            if i >= doc.n || j >= doc.n || i == j {
                return Err(MatchingError::Parse(format!("bad pair ({i}, {j})")));
            }
            if m.mate[i].is_some() || m.mate[j].is_some() {
                return Err(MatchingError::Parse(format!(
                    "vertex reused by pair ({i}, {j})"
                )));
            }
            m.add_pair(i, j);
        }
        Ok(m)
    }
}

/// Returns true iff the matching satisfies all structural invariants on
/// the graph.
pub fn verify_matching(graph: &SimpleGraph, m: &Matching) -> bool {
    m.validate_on(graph).is_ok()
}

/// Matching interchange document.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatchingDoc {
    pub graph_kind: GraphKind,
    pub n: usize,
    pub size: usize,
    pub deficiency: usize,
    pub pairs: Vec<(u32, u32)>,
    pub unmatched: Vec<u32>,
}

impl MatchingDoc {
    pub fn from_json(text: &str) -> Result<MatchingDoc, MatchingError> {
        serde_json::from_str(text).map_err(|e| MatchingError::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("matching serialization");
        s.push('\n');
        s
    }
}
