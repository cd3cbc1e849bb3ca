use super::params::CleaningParameters;
use crate::hypergraph::{HypergraphError, UniformHypergraph, Vertex};
use crate::nearly_log::CandidateFunction;
use crate::numeric::{ratio_to_f64, serialize_extended, Rational};
use serde::Serialize;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CleaningError {
    #[error(transparent)]
    Hypergraph(#[from] HypergraphError),
    #[error("parameters were derived for r = {params}, hypergraph has r = {graph}")]
    RankMismatch { params: usize, graph: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum StopCase {
    /// `D_i < d / f(d)^b`.
    S1,
    /// `n / N_i > f(d)^a`.
    S2,
    /// `Δ_i ≤ (1+η) D_i`.
    S3,
}

impl fmt::Display for StopCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StopCase::S1 => "S1",
            StopCase::S2 => "S2",
            StopCase::S3 => "S3",
        })
    }
}

/// Which eligible vertex (degree above `(1+η)·D_i`) gets deleted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TieBreak {
    /// A vertex of maximum degree, lowest index among those.
    #[default]
    MaxDegreeLowestIndex,
    /// The lowest-index eligible vertex.
    LowestIndex,
}

/// Stage `i` of the run: `N_i`, `D_i`, `Δ_i` and the potential
/// `Q_i = N_i / D_i^{1/r}` (`+∞` when `D_i = 0`).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StageState {
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "D", serialize_with = "crate::numeric::serialize_ratio")]
    pub d: Rational,
    #[serde(rename = "Delta")]
    pub max_degree: usize,
    #[serde(rename = "Q", serialize_with = "serialize_extended")]
    pub q: f64,
}

pub fn potential(n: usize, d: &Rational, r: usize) -> f64 {
    if *d.numer() == 0 {
        f64::INFINITY
    } else {
        n as f64 / ratio_to_f64(d).powf(1.0 / r as f64)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct StopChecks {
    pub s1: bool,
    pub s2: bool,
    pub s3: bool,
}

impl StopChecks {
    pub fn first(&self) -> Option<StopCase> {
        if self.s1 {
            Some(StopCase::S1)
        } else if self.s2 {
            Some(StopCase::S2)
        } else if self.s3 {
            Some(StopCase::S3)
        } else {
            None
        }
    }

    pub fn any(&self) -> bool {
        self.s1 || self.s2 || self.s3
    }
}

/// One deletion. `state` and `checks` describe stage `i`, before the vertex
/// is removed; `vertex` is an index of the original hypergraph.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CleaningStep {
    pub i: usize,
    pub vertex: Vertex,
    pub degree: usize,
    #[serde(flatten)]
    pub state: StageState,
    #[serde(skip)]
    pub checks: StopChecks,
}

/// Predicates of the large-`d` regime evaluated at the instance's `d`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Diagnostics {
    pub f_d: f64,
    /// `d / f(d)^b`, the S1 threshold and the lower end of the degree window
    /// the delegate must cover.
    pub s1_threshold: f64,
    /// `f(d)^a`, the S2 threshold.
    pub s2_threshold: f64,
    pub f_above_two: bool,
    pub f_below_root_b: bool,
    pub root_margin: bool,
    pub asymptotic_regime_met: bool,
}

impl Diagnostics {
    pub fn evaluate(f: &CandidateFunction, params: &CleaningParameters, d: f64) -> Self {
        let f_d = f.eval(d);
        let rf = params.r as f64;
        let f_above_two = f_d > 2.0;
        let f_below_root_b = f_d < d.powf(1.0 / params.b);
        let root_margin = 4.0 * f_d.powf(params.a + 1.0) < d.powf(1.0 / rf);
        Self {
            f_d,
            s1_threshold: d / f_d.powf(params.b),
            s2_threshold: f_d.powf(params.a),
            f_above_two,
            f_below_root_b,
            root_margin,
            asymptotic_regime_met: f_above_two && f_below_root_b && root_margin,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CleaningTranscript {
    pub params: CleaningParameters,
    pub f_spec: String,
    pub tie_break: TieBreak,
    pub r: usize,
    pub n: usize,
    #[serde(serialize_with = "crate::numeric::serialize_ratio")]
    pub d: Rational,
    pub steps: Vec<CleaningStep>,
    #[serde(rename = "final")]
    pub final_state: StageState,
    #[serde(skip)]
    pub final_checks: StopChecks,
    pub stop_case: StopCase,
    #[serde(rename = "T")]
    pub t: usize,
    /// `U_T` in original indices, ascending.
    pub retained: Vec<Vertex>,
    pub diagnostics: Diagnostics,
}

impl CleaningTranscript {
    /// State at stage `i ≤ T`.
    pub fn state(&self, i: usize) -> &StageState {
        if i == self.t {
            &self.final_state
        } else {
            &self.steps[i].state
        }
    }

    pub fn checks(&self, i: usize) -> &StopChecks {
        if i == self.t {
            &self.final_checks
        } else {
            &self.steps[i].checks
        }
    }

    pub fn deleted(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.steps.iter().map(|s| s.vertex)
    }
}

pub(crate) struct Thresholds {
    pub s1: f64,
    pub s2: f64,
    pub growth: f64,
}

impl Thresholds {
    pub fn new(params: &CleaningParameters, f_d: f64, d: f64) -> Self {
        Self {
            s1: d / f_d.powf(params.b),
            s2: f_d.powf(params.a),
            growth: 1.0 + params.eta,
        }
    }

    pub fn checks(&self, n0: f64, n_i: f64, d_i: f64, max_i: f64) -> StopChecks {
        StopChecks {
            s1: d_i < self.s1,
            s2: n0 / n_i > self.s2,
            s3: max_i <= self.growth * d_i,
        }
    }
}

/// Runs the cleaning loop on `h`.
///
/// Stop conditions are evaluated in the order S1, S2, S3 at every stage,
/// including stage 0, before any deletion.
pub fn run_cleaning(
    h: &UniformHypergraph,
    f: &CandidateFunction,
    params: &CleaningParameters,
    tie_break: TieBreak,
) -> Result<CleaningTranscript, CleaningError> {
    let r = h.rank();
    if params.r != r {
        return Err(CleaningError::RankMismatch {
            params: params.r,
            graph: r,
        });
    }
    let n = h.num_vertices();
    let d = h.average_degree()?;
    let d_f = ratio_to_f64(&d);
    let thresholds = Thresholds::new(params, f.eval(d_f), d_f);
    let k = h.uniformity() as i64;

    let incidence = h.incidence();
    let mut degree = h.degrees();
    let mut alive = vec![true; n];
    let mut edge_alive = vec![true; h.num_edges()];
    let mut edges = h.num_edges();
    let mut remaining = n;
    let mut steps = Vec::new();

    loop {
        let d_i = Rational::new(k * edges as i64, remaining as i64);
        let d_if = ratio_to_f64(&d_i);
        let max_i = (0..n)
            .filter(|&v| alive[v])
            .map(|v| degree[v])
            .max()
            .unwrap_or(0);
        let state = StageState {
            n: remaining,
            d: d_i,
            max_degree: max_i,
            q: potential(remaining, &d_i, r),
        };
        let checks = thresholds.checks(n as f64, remaining as f64, d_if, max_i as f64);

        if let Some(stop_case) = checks.first() {
            let retained: Vec<Vertex> = (0..n).filter(|&v| alive[v]).collect();
            return Ok(CleaningTranscript {
                params: params.clone(),
                f_spec: f.descriptor(),
                tie_break,
                r,
                n,
                d,
                t: steps.len(),
                steps,
                final_state: state,
                final_checks: checks,
                stop_case,
                retained,
                diagnostics: Diagnostics::evaluate(f, params, d_f),
            });
        }

        let cutoff = thresholds.growth * d_if;
        let eligible = (0..n).filter(|&v| alive[v] && degree[v] as f64 > cutoff);
        let victim = match tie_break {
            TieBreak::MaxDegreeLowestIndex => {
                eligible.max_by(|&u, &v| degree[u].cmp(&degree[v]).then(v.cmp(&u)))
            }
            TieBreak::LowestIndex => eligible.min(),
        }
        .expect("S3 failed, so some vertex exceeds (1+eta) times the average degree");
        // deg(v) ≤ e(H_i) = N_i D_i/(r+1) together with deg(v) > (1+η)D_i.
        assert!(
            remaining as f64 > (r as f64 + 1.0) * thresholds.growth,
            "cleaning step with N_i = {remaining} violates N_i > (r+1)(1+eta)"
        );

        steps.push(CleaningStep {
            i: steps.len(),
            vertex: victim,
            degree: degree[victim],
            state,
            checks,
        });
        for &e in &incidence[victim] {
            if edge_alive[e] {
                edge_alive[e] = false;
                edges -= 1;
                for &u in h.edge(e) {
                    degree[u] -= 1;
                }
            }
        }
        alive[victim] = false;
        remaining -= 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cleaning::derive_parameters;

    fn star(leaves: usize) -> UniformHypergraph {
        UniformHypergraph::new(2, leaves + 1, (1..=leaves).map(|v| vec![0, v])).unwrap()
    }

    fn cycle(n: usize) -> UniformHypergraph {
        UniformHypergraph::new(2, n, (0..n).map(|v| vec![v, (v + 1) % n])).unwrap()
    }

    fn circulant4(n: usize) -> UniformHypergraph {
        UniformHypergraph::new(
            2,
            n,
            (0..n).flat_map(|v| [vec![v, (v + 1) % n], vec![v, (v + 2) % n]]),
        )
        .unwrap()
    }

    #[test]
    fn regular_graph_stops_immediately_on_s3() {
        let h = circulant4(12);
        assert_eq!(h.degree_profile().unwrap().max_degree, 4);
        let f = CandidateFunction::parse("log").unwrap();
        for eta in [0.01, 0.1, 0.2] {
            let p = derive_parameters(0.5, 1, Some(eta)).unwrap();
            let t = run_cleaning(&h, &f, &p, TieBreak::default()).unwrap();
            assert_eq!(t.t, 0);
            assert_eq!(t.stop_case, StopCase::S3);
            assert!(t.steps.is_empty());
            assert_eq!(t.retained.len(), 12);
        }
    }

    #[test]
    fn star_deletes_center_then_stops_on_s1() {
        let h = star(9);
        let f = CandidateFunction::parse("log").unwrap();
        let p = derive_parameters(0.5, 1, Some(0.1)).unwrap();
        let t = run_cleaning(&h, &f, &p, TieBreak::default()).unwrap();
        assert_eq!(t.t, 1);
        assert_eq!(t.steps[0].vertex, 0);
        assert_eq!(t.steps[0].degree, 9);
        assert_eq!(t.steps[0].state.d, Rational::new(9, 5));
        assert_eq!(t.stop_case, StopCase::S1);
        assert_eq!(t.final_state.d, Rational::from_integer(0));
        assert!(t.final_state.q.is_infinite());
        assert_eq!(t.retained, (1..=9).collect::<Vec<_>>());
    }

    #[test]
    fn edgeless_input_stops_on_s3() {
        let h = UniformHypergraph::empty(2, 5).unwrap();
        let f = CandidateFunction::parse("log").unwrap();
        let p = derive_parameters(0.5, 1, None).unwrap();
        let t = run_cleaning(&h, &f, &p, TieBreak::default()).unwrap();
        assert_eq!((t.t, t.stop_case), (0, StopCase::S3));
    }

    #[test]
    fn rejects_mismatched_rank_and_empty_input() {
        let f = CandidateFunction::parse("log").unwrap();
        let p = derive_parameters(0.5, 2, None).unwrap();
        assert!(matches!(
            run_cleaning(&cycle(5), &f, &p, TieBreak::default()),
            Err(CleaningError::RankMismatch {
                params: 2,
                graph: 1
            })
        ));
        let p1 = derive_parameters(0.5, 1, None).unwrap();
        assert!(matches!(
            run_cleaning(
                &UniformHypergraph::empty(2, 0).unwrap(),
                &f,
                &p1,
                TieBreak::default()
            ),
            Err(CleaningError::Hypergraph(HypergraphError::EmptyVertexSet))
        ));
    }

    #[test]
    fn tie_break_policies_differ_only_in_choice() {
        // Two stars sharing nothing; centers 0 (5 leaves) and 6 (8 leaves).
        let mut edges: Vec<Vec<usize>> = (1..=5).map(|v| vec![0, v]).collect();
        edges.extend((7..=14).map(|v| vec![6, v]));
        let h = UniformHypergraph::new(2, 15, edges).unwrap();
        let f = CandidateFunction::parse("log").unwrap();
        let p = derive_parameters(0.5, 1, Some(0.1)).unwrap();
        let max = run_cleaning(&h, &f, &p, TieBreak::MaxDegreeLowestIndex).unwrap();
        let low = run_cleaning(&h, &f, &p, TieBreak::LowestIndex).unwrap();
        assert_eq!(max.steps[0].vertex, 6);
        assert_eq!(low.steps[0].vertex, 0);
    }

    #[test]
    fn transcript_json_has_documented_fields() {
        let f = CandidateFunction::parse("log").unwrap();
        let p = derive_parameters(0.5, 1, Some(0.1)).unwrap();
        let t = run_cleaning(&star(9), &f, &p, TieBreak::default()).unwrap();
        let v = serde_json::to_value(&t).unwrap();
        assert_eq!(v["d"], "9/5");
        assert_eq!(v["T"], 1);
        assert_eq!(v["stop_case"], "S1");
        let step = &v["steps"][0];
        for key in ["i", "vertex", "degree", "N", "D", "Delta", "Q"] {
            assert!(step.get(key).is_some(), "missing {key}");
        }
        assert_eq!(step["D"], "9/5");
        assert_eq!(v["final"]["Q"], "inf");
        assert!(v["diagnostics"]["asymptotic_regime_met"].is_boolean());
    }
}
