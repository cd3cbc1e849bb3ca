//! Weighted cleaning: `N_i` becomes `μ_w(U_i)`, the edge count becomes the
//! edge mass `Σ_e Π_{u∈e} w(u)`, and degrees become `λ^w`. The schedule
//! `a, b, c` and the stop conditions are reused with `d_w` in place of `d`.
//!
//! Deleting `v` removes mass `m_v = w(v)^{r+1}` and edge mass `m_v·λ(v)`, so
//! the per-step check becomes `Q_{i+1} ≥ (1 + c·m_v/μ_i)·Q_i`, which reduces
//! to the unweighted step for unit weights.

use super::analysis::crude_bound;
use super::engine::{CleaningError, Diagnostics, StopCase, StopChecks, Thresholds, TieBreak};
use super::params::CleaningParameters;
use super::verify::{at_least, VerificationFailure};
use crate::hypergraph::{UniformHypergraph, Vertex};
use crate::nearly_log::CandidateFunction;
use crate::numeric::{big_pow, big_to_f64, serialize_big_ratio, serialize_extended};
use crate::weighted::{edge_mass, VertexWeights, WeightError};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Pow, Zero};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum WeightedCleaningError {
    #[error(transparent)]
    Cleaning(#[from] CleaningError),
    #[error(transparent)]
    Weights(#[from] WeightError),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeightedStage {
    #[serde(serialize_with = "serialize_big_ratio")]
    pub mu: BigRational,
    #[serde(rename = "D", serialize_with = "serialize_big_ratio")]
    pub d: BigRational,
    #[serde(serialize_with = "serialize_big_ratio")]
    pub delta_w: BigRational,
    #[serde(rename = "Q", serialize_with = "serialize_extended")]
    pub q: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeightedStep {
    pub i: usize,
    pub vertex: Vertex,
    #[serde(serialize_with = "serialize_big_ratio")]
    pub lambda: BigRational,
    #[serde(serialize_with = "serialize_big_ratio")]
    pub mass: BigRational,
    #[serde(flatten)]
    pub state: WeightedStage,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeightedTranscript {
    pub params: CleaningParameters,
    pub f_spec: String,
    pub r: usize,
    pub n: usize,
    #[serde(serialize_with = "serialize_big_ratio")]
    pub mu: BigRational,
    #[serde(serialize_with = "serialize_big_ratio")]
    pub d_w: BigRational,
    pub steps: Vec<WeightedStep>,
    #[serde(rename = "final")]
    pub final_state: WeightedStage,
    #[serde(skip)]
    pub final_checks: StopChecks,
    pub stop_case: StopCase,
    #[serde(rename = "T")]
    pub t: usize,
    pub retained: Vec<Vertex>,
    /// Unweighted crude bound on the retained support; only a heuristic in
    /// the weighted setting.
    pub support_crude_bound: f64,
    pub heuristic: bool,
    pub diagnostics: Diagnostics,
}

impl WeightedTranscript {
    pub fn state(&self, i: usize) -> &WeightedStage {
        if i == self.t {
            &self.final_state
        } else {
            &self.steps[i].state
        }
    }
}

fn weighted_potential(mu: &BigRational, d: &BigRational, r: usize) -> f64 {
    if d.is_zero() {
        f64::INFINITY
    } else {
        big_to_f64(mu) / big_to_f64(d).powf(1.0 / r as f64)
    }
}

pub fn run_weighted_cleaning(
    h: &UniformHypergraph,
    w: &VertexWeights,
    f: &CandidateFunction,
    params: &CleaningParameters,
    tie_break: TieBreak,
) -> Result<WeightedTranscript, WeightedCleaningError> {
    let r = h.rank();
    if params.r != r {
        return Err(CleaningError::RankMismatch {
            params: params.r,
            graph: r,
        }
        .into());
    }
    let n = h.num_vertices();
    h.degree_profile().map_err(CleaningError::from)?;
    if w.len() != n {
        return Err(WeightError::LengthMismatch {
            expected: n,
            found: w.len(),
        }
        .into());
    }

    let k = BigRational::from_integer(BigInt::from(r + 1));
    let masses = w.masses(r);
    let powers: Vec<BigRational> = w.as_slice().iter().map(|x| big_pow(x, r)).collect();
    let edge_masses: Vec<BigRational> = h.edges().map(|e| edge_mass(e, w)).collect();
    let incidence = h.incidence();
    let mut sums = vec![BigRational::zero(); n];
    for (e, edge) in h.edges().enumerate() {
        for &u in edge {
            sums[u] += &edge_masses[e] / w.get(u);
        }
    }
    let mut mu: BigRational = masses.iter().fold(BigRational::zero(), |a, b| a + b);
    let mut total_edge_mass = edge_masses.iter().fold(BigRational::zero(), |a, b| a + b);
    let mu0 = mu.clone();
    let d_w = &k * &total_edge_mass / &mu0;
    let d_wf = big_to_f64(&d_w);
    let thresholds = Thresholds::new(params, f.eval(d_wf), d_wf);
    let mu0f = big_to_f64(&mu0);

    let mut alive = vec![true; n];
    let mut edge_alive = vec![true; h.num_edges()];
    let mut steps = Vec::new();

    loop {
        let d_i = &k * &total_edge_mass / &mu;
        let lambdas: Vec<Option<BigRational>> = (0..n)
            .map(|v| alive[v].then(|| &sums[v] / &powers[v]))
            .collect();
        let delta_i = lambdas
            .iter()
            .flatten()
            .max()
            .cloned()
            .unwrap_or_else(BigRational::zero);
        let state = WeightedStage {
            q: weighted_potential(&mu, &d_i, r),
            mu: mu.clone(),
            d: d_i.clone(),
            delta_w: delta_i.clone(),
        };
        let growth = BigRational::from_float(thresholds.growth).expect("finite eta");
        let cutoff = &growth * &d_i;
        let checks = StopChecks {
            s1: big_to_f64(&d_i) < thresholds.s1,
            s2: mu0f / big_to_f64(&mu) > thresholds.s2,
            s3: delta_i <= cutoff,
        };

        if let Some(stop_case) = checks.first() {
            let retained: Vec<Vertex> = (0..n).filter(|&v| alive[v]).collect();
            let kept = h.induce(&retained).map_err(CleaningError::from)?;
            let support_d = if retained.is_empty() {
                0.0
            } else {
                crate::numeric::ratio_to_f64(
                    &kept.graph.average_degree().map_err(CleaningError::from)?,
                )
            };
            return Ok(WeightedTranscript {
                params: params.clone(),
                f_spec: f.descriptor(),
                r,
                n,
                mu: mu0,
                d_w,
                t: steps.len(),
                steps,
                final_state: state,
                final_checks: checks,
                stop_case,
                support_crude_bound: crude_bound(r, retained.len(), support_d),
                retained,
                heuristic: stop_case != StopCase::S3,
                diagnostics: Diagnostics::evaluate(f, params, d_wf),
            });
        }

        let eligible = (0..n).filter(|&v| matches!(&lambdas[v], Some(l) if *l > cutoff));
        let victim = match tie_break {
            TieBreak::MaxDegreeLowestIndex => {
                eligible.max_by(|&u, &v| lambdas[u].cmp(&lambdas[v]).then(v.cmp(&u)))
            }
            TieBreak::LowestIndex => eligible.min(),
        }
        .expect("S3 failed, so some vertex exceeds (1+eta) times the weighted average degree");

        steps.push(WeightedStep {
            i: steps.len(),
            vertex: victim,
            lambda: lambdas[victim].clone().expect("victim is alive"),
            mass: masses[victim].clone(),
            state,
        });
        for &e in &incidence[victim] {
            if edge_alive[e] {
                edge_alive[e] = false;
                total_edge_mass -= &edge_masses[e];
                for &u in h.edge(e) {
                    sums[u] -= &edge_masses[e] / w.get(u);
                }
            }
        }
        alive[victim] = false;
        mu -= &masses[victim];
    }
}

/// Checks `Q_{i+1} ≥ (1 + c·m_v/μ_i)·Q_i` at every step and
/// `μ_T/D_T^{1/r} ≥ μ/d_w^{1/r}` exactly at the end. Returns the smallest
/// step margin.
pub fn verify_weighted_gain(t: &WeightedTranscript) -> Result<f64, VerificationFailure> {
    let fail = |step, message: String| VerificationFailure { step, message };
    let c = t.params.c;
    let growth = BigRational::from_float(1.0 + t.params.eta).expect("finite eta");
    let mut min_margin = f64::INFINITY;
    for (i, step) in t.steps.iter().enumerate() {
        let cur = &step.state;
        let next = t.state(i + 1);
        if step.lambda <= &growth * &cur.d {
            return Err(fail(
                Some(i),
                "deleted vertex does not exceed (1+eta)·D_i".into(),
            ));
        }
        if next.mu != &cur.mu - &step.mass {
            return Err(fail(Some(i), "mass does not drop by w(v)^(r+1)".into()));
        }
        let required = (1.0 + c * big_to_f64(&step.mass) / big_to_f64(&cur.mu)) * cur.q;
        if !at_least(next.q, required) {
            return Err(fail(
                Some(i),
                format!(
                    "Q_(i+1) = {} below (1 + c m_v/mu_i)·Q_i = {required}",
                    next.q
                ),
            ));
        }
        if next.q.is_finite() {
            min_margin = min_margin.min(next.q / required);
        }
    }
    let fin = &t.final_state;
    if !fin.d.is_zero() {
        let r = t.r as u32;
        let lhs = Pow::pow(&fin.mu, r) * &t.d_w;
        let rhs = Pow::pow(&t.mu, r) * &fin.d;
        if lhs < rhs {
            return Err(fail(None, "mu_T/D_T^(1/r) below mu/d_w^(1/r)".into()));
        }
    }
    Ok(min_margin)
}
