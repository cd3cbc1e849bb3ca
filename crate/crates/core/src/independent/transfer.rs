use super::delegate::MaxDegDelegate;
use super::random::random_deletion;
use super::{IndependentSetCertificate, Method, SolverError};
use crate::cleaning::{
    run_cleaning, stop_case_analysis, AnalysisError, BoundChain, CleaningError, CleaningParameters,
    CleaningTranscript, DelegateOutcome, StopCase, TieBreak,
};
use crate::hypergraph::{HypergraphError, UniformHypergraph};
use crate::nearly_log::CandidateFunction;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TransferError {
    #[error(transparent)]
    Cleaning(#[from] CleaningError),
    #[error(transparent)]
    Hypergraph(#[from] HypergraphError),
    #[error("delegate `{name}` failed: {source}")]
    Delegate { name: String, source: SolverError },
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TransferOptions {
    /// Randomized-deletion trials on `H_T` in cases S1 and S2.
    pub seeds: usize,
    pub base_seed: u64,
    pub tie_break: TieBreak,
}

impl Default for TransferOptions {
    fn default() -> Self {
        Self {
            seeds: 32,
            base_seed: 0,
            tie_break: TieBreak::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TransferReport {
    /// Independent set of the input hypergraph.
    pub certificate: IndependentSetCertificate,
    /// Size of the set found on `H_T` before mapping back.
    pub inner_size: usize,
    pub transcript: CleaningTranscript,
    pub bound_chain: BoundChain,
}

/// Cleans `h`, then solves the final subhypergraph `H_T`: by best-of-`k`
/// randomized deletion when the run stops on S1 or S2, by `delegate` on S3.
/// The set is mapped back to `h` and re-verified there.
pub fn transfer_alpha(
    h: &UniformHypergraph,
    f: &CandidateFunction,
    params: &CleaningParameters,
    delegate: &dyn MaxDegDelegate,
    opts: &TransferOptions,
) -> Result<TransferReport, TransferError> {
    let transcript = run_cleaning(h, f, params, opts.tie_break)?;
    let inner = h.induce(&transcript.retained)?;
    let (found, chain) = match transcript.stop_case {
        StopCase::S1 | StopCase::S2 => {
            let best = (0..opts.seeds.max(1) as u64)
                .map(|k| random_deletion(&inner.graph, opts.base_seed.wrapping_add(k)))
                .reduce(|a, b| if b.size > a.size { b } else { a })
                .expect("at least one trial");
            let chain = stop_case_analysis(&transcript, f, Some(best.size), None)?;
            (best, chain)
        }
        StopCase::S3 => {
            let out = delegate
                .solve(&inner.graph)
                .map_err(|source| TransferError::Delegate {
                    name: delegate.name(),
                    source,
                })?;
            let outcome = DelegateOutcome {
                size: out.size,
                guarantee: delegate.guarantee(),
            };
            let chain = stop_case_analysis(&transcript, f, None, Some(&outcome))?;
            (out, chain)
        }
    };
    let method = match transcript.stop_case {
        StopCase::S3 => Method::Delegate,
        _ => Method::RandomizedDeletion,
    };
    let solver = match transcript.stop_case {
        StopCase::S3 => delegate.name(),
        _ => found.solver.clone(),
    };
    let mut certificate =
        IndependentSetCertificate::certify(h, inner.to_original(&found.members), method, solver)
            .with_bound(chain.claimed_bound, "bound chain of the stop case");
    certificate.seed = found.seed;
    certificate.rng = found.rng;
    Ok(TransferReport {
        inner_size: found.size,
        certificate,
        transcript,
        bound_chain: chain,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cleaning::derive_parameters;
    use crate::independent::GreedySolver;

    #[test]
    fn regular_input_goes_straight_to_the_delegate() {
        let n = 12;
        let h = UniformHypergraph::new(
            2,
            n,
            (0..n).flat_map(|v| [vec![v, (v + 1) % n], vec![v, (v + 2) % n]]),
        )
        .unwrap();
        let f = CandidateFunction::parse("log").unwrap();
        let p = derive_parameters(0.5, 1, None).unwrap();
        let rep = transfer_alpha(&h, &f, &p, &GreedySolver, &TransferOptions::default()).unwrap();
        assert_eq!(rep.transcript.t, 0);
        let direct = GreedySolver.solve(&h).unwrap();
        assert_eq!(rep.certificate.members, direct.members);
        assert_eq!(rep.certificate.method, Method::Delegate);
        assert!(rep.certificate.verified);
    }

    #[test]
    fn star_returns_all_leaves() {
        let h = UniformHypergraph::new(2, 10, (1..10).map(|v| vec![0, v])).unwrap();
        let f = CandidateFunction::parse("log").unwrap();
        let p = derive_parameters(0.5, 1, Some(0.1)).unwrap();
        let rep = transfer_alpha(&h, &f, &p, &GreedySolver, &TransferOptions::default()).unwrap();
        assert_eq!(rep.transcript.stop_case, StopCase::S1);
        assert_eq!(rep.certificate.members, (1..10).collect::<Vec<_>>());
        assert!(rep.certificate.recheck(&h));
        assert_eq!(rep.certificate.seed, Some(0));
    }
}
