//! Independent-set constructions, exact oracles and the cleaning transfer.

mod delegate;
mod exact;
mod random;
mod transfer;

pub use delegate::{
    greedy_delegate, solver_registry, DelegateGuarantee, EnumerateSolver, ExactSolver,
    GreedySolver, MaxDegDelegate, RandomSolver,
};
pub use exact::{
    enumerate_alpha, exact_alpha, exact_alpha_with_cap, hall_ratio_exact, weighted_alpha_exact,
    BRANCH_AND_BOUND_CAP, ENUMERATION_CAP, HALL_RATIO_CAP,
};
pub use random::{deletion_probability, random_deletion, RNG_ALGORITHM};
pub use transfer::{transfer_alpha, TransferError, TransferOptions, TransferReport};

use crate::hypergraph::{UniformHypergraph, Vertex};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("instance with n = {n} exceeds the cap of {cap} vertices")]
    InstanceTooLarge { n: usize, cap: usize },
    #[error("operation needs a graph (r = 1), got r = {r}")]
    NotAGraph { r: usize },
    #[error("hypergraph has no vertices")]
    EmptyVertexSet,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    RandomizedDeletion,
    Delegate,
    Exact,
    Greedy,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClaimedBound {
    pub value: f64,
    pub provenance: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IndependentSetCertificate {
    /// Ascending vertex indices of the host hypergraph.
    pub members: Vec<Vertex>,
    pub size: usize,
    pub verified: bool,
    pub method: Method,
    pub solver: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rng: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub claimed_bound: Option<ClaimedBound>,
}

impl IndependentSetCertificate {
    /// Builds a certificate, checking independence against `h`.
    pub fn certify(
        h: &UniformHypergraph,
        mut members: Vec<Vertex>,
        method: Method,
        solver: impl Into<String>,
    ) -> Self {
        members.sort_unstable();
        members.dedup();
        Self {
            verified: h.is_independent(&members),
            size: members.len(),
            members,
            method,
            solver: solver.into(),
            seed: None,
            rng: None,
            claimed_bound: None,
        }
    }

    /// Re-runs the independence check against `h`.
    pub fn recheck(&self, h: &UniformHypergraph) -> bool {
        self.size == self.members.len() && h.is_independent(&self.members)
    }

    pub fn with_bound(mut self, value: f64, provenance: &str) -> Self {
        self.claimed_bound = Some(ClaimedBound {
            value,
            provenance: provenance.to_string(),
        });
        self
    }
}

/// Vertex-to-edge bitmasks for hypergraphs with at most 64 vertices.
pub(crate) fn edge_masks(h: &UniformHypergraph) -> Vec<u64> {
    h.edges()
        .map(|e| e.iter().fold(0u64, |m, &v| m | (1u64 << v)))
        .collect()
}

pub(crate) fn mask_members(mask: u64) -> Vec<Vertex> {
    (0..64).filter(|&v| mask >> v & 1 == 1).collect()
}
