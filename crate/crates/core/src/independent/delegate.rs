use super::exact::{enumerate_alpha, exact_alpha_with_cap, BRANCH_AND_BOUND_CAP};
use super::random::random_deletion;
use super::{IndependentSetCertificate, Method, SolverError};
use crate::hypergraph::UniformHypergraph;
use crate::registry::{no_arg, Registry};
use serde::Serialize;
use std::sync::OnceLock;

/// The maximum-degree promise of a delegate: for `Δ(F) ≥ delta0` it returns
/// at least `(1−ε)·f(Δ)/Δ^{1/r}·|V(F)|` vertices.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DelegateGuarantee {
    pub f_spec: String,
    pub eps: f64,
    pub delta0: f64,
}

impl DelegateGuarantee {
    pub fn describe(&self) -> String {
        format!(
            "(1-{}) f(Delta)/Delta^(1/r) |V| for Delta >= {} with f = {}",
            self.eps, self.delta0, self.f_spec
        )
    }
}

/// A solver usable on the final subhypergraph of a cleaning run.
///
/// Returned sets must be independent whatever the guarantee says.
pub trait MaxDegDelegate: Send + Sync {
    fn name(&self) -> String;

    fn guarantee(&self) -> Option<DelegateGuarantee> {
        None
    }

    fn solve(&self, h: &UniformHypergraph) -> Result<IndependentSetCertificate, SolverError>;
}

/// Repeatedly takes an undecided vertex of minimum current degree. Once all
/// but one vertex of an edge are taken, the last one is discarded together
/// with its edges; for graphs this discards the neighbours of each pick.
pub fn greedy_delegate(h: &UniformHypergraph) -> IndependentSetCertificate {
    let n = h.num_vertices();
    let r = h.rank();
    let incidence = h.incidence();
    let mut undecided = vec![true; n];
    let mut edge_alive = vec![true; h.num_edges()];
    let mut inside = vec![0usize; h.num_edges()];
    let mut degree = h.degrees();
    let mut chosen = Vec::new();
    while let Some(v) = (0..n)
        .filter(|&v| undecided[v])
        .min_by_key(|&v| (degree[v], v))
    {
        undecided[v] = false;
        chosen.push(v);
        for &e in &incidence[v] {
            if !edge_alive[e] {
                continue;
            }
            inside[e] += 1;
            if inside[e] < r {
                continue;
            }
            let last = *h
                .edge(e)
                .iter()
                .find(|&&u| undecided[u])
                .expect("edge has a free vertex");
            undecided[last] = false;
            for &f in &incidence[last] {
                if edge_alive[f] {
                    edge_alive[f] = false;
                    for &x in h.edge(f) {
                        degree[x] -= 1;
                    }
                }
            }
        }
    }
    IndependentSetCertificate::certify(h, chosen, Method::Greedy, "greedy")
}

pub struct GreedySolver;

impl MaxDegDelegate for GreedySolver {
    fn name(&self) -> String {
        "greedy".into()
    }

    fn solve(&self, h: &UniformHypergraph) -> Result<IndependentSetCertificate, SolverError> {
        Ok(greedy_delegate(h))
    }
}

pub struct RandomSolver {
    pub seed: u64,
}

impl MaxDegDelegate for RandomSolver {
    fn name(&self) -> String {
        format!("random:{}", self.seed)
    }

    fn solve(&self, h: &UniformHypergraph) -> Result<IndependentSetCertificate, SolverError> {
        if h.num_vertices() == 0 {
            return Err(SolverError::EmptyVertexSet);
        }
        Ok(random_deletion(h, self.seed))
    }
}

pub struct ExactSolver {
    pub cap: usize,
}

impl MaxDegDelegate for ExactSolver {
    fn name(&self) -> String {
        "exact".into()
    }

    fn solve(&self, h: &UniformHypergraph) -> Result<IndependentSetCertificate, SolverError> {
        exact_alpha_with_cap(h, self.cap)
    }
}

pub struct EnumerateSolver;

impl MaxDegDelegate for EnumerateSolver {
    fn name(&self) -> String {
        "enumerate".into()
    }

    fn solve(&self, h: &UniformHypergraph) -> Result<IndependentSetCertificate, SolverError> {
        enumerate_alpha(h)
    }
}

/// Solvers and delegates by name: `greedy`, `random[:seed]`, `exact[:cap]`,
/// `enumerate`.
pub fn solver_registry() -> &'static Registry<dyn MaxDegDelegate> {
    static REGISTRY: OnceLock<Registry<dyn MaxDegDelegate>> = OnceLock::new();
    REGISTRY.get_or_init(|| {
        let mut reg: Registry<dyn MaxDegDelegate> = Registry::new("solver");
        reg.register("greedy", |a| {
            no_arg(a)?;
            Ok(Box::new(GreedySolver))
        })
        .register("random", |a| {
            let seed = match a {
                None => 0,
                Some(s) => s.parse().map_err(|_| format!("`{s}` is not a seed"))?,
            };
            Ok(Box::new(RandomSolver { seed }))
        })
        .register("exact", |a| {
            let cap = match a {
                None => BRANCH_AND_BOUND_CAP,
                Some(s) => match s.parse() {
                    Ok(c) if c <= 64 => c,
                    _ => return Err(format!("`{s}` is not a cap in 0..=64")),
                },
            };
            Ok(Box::new(ExactSolver { cap }))
        })
        .register("enumerate", |a| {
            no_arg(a)?;
            Ok(Box::new(EnumerateSolver))
        });
        reg
    })
}
