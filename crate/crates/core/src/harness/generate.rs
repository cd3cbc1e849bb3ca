//! Seeded instance generators, selected by family name.

use super::structure::{
    check_structure, closes_berge_triangle, has_clique_in, has_path_of_length, Property,
    StructureError, CLIQUE_CAP,
};
use crate::hypergraph::{HypergraphError, UniformHypergraph, Vertex};
use crate::numeric::ratio_to_f64;
use crate::registry::{no_arg, require_arg, Registry, RegistryError};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::HashSet;
use std::sync::OnceLock;
use thiserror::Error;

/// Relative tolerance on the achieved average degree.
pub const DENSITY_TOLERANCE: f64 = 0.10;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenerateError {
    #[error("{family}: generation budget exceeded ({reason})")]
    GenerationBudgetExceeded { family: String, reason: String },
    #[error("{family}: infeasible request ({reason})")]
    Infeasible { family: String, reason: String },
    #[error("{family}: generated instance fails its checker")]
    CheckerFailed { family: String },
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Hypergraph(#[from] HypergraphError),
    #[error(transparent)]
    Spec(#[from] RegistryError),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FamilySpec {
    /// Registry spec, e.g. `girth4-uniform` or `ck-free-graph:5`.
    pub family: String,
    pub n: usize,
    pub target_d: f64,
    pub r: usize,
    pub seed: u64,
}

pub trait Generator: Send + Sync {
    fn name(&self) -> String;

    /// The checker every output must pass.
    fn property(&self) -> Option<Property>;

    fn sample(
        &self,
        n: usize,
        r: usize,
        target_d: f64,
        rng: &mut ChaCha8Rng,
    ) -> Result<UniformHypergraph, GenerateError>;

    /// Whether the achieved `d` must be within [`DENSITY_TOLERANCE`].
    fn density_checked(&self) -> bool {
        true
    }
}

pub fn generator_registry() -> &'static Registry<dyn Generator> {
    static REGISTRY: OnceLock<Registry<dyn Generator>> = OnceLock::new();
    REGISTRY.get_or_init(|| {
        let mut reg: Registry<dyn Generator> = Registry::new("family");
        reg.register("random-uniform", |a| {
            no_arg(a)?;
            Ok(Box::new(RandomUniform))
        })
        .register("girth4-uniform", |a| {
            no_arg(a)?;
            Ok(Box::new(Girth4Uniform))
        })
        .register("triangle-free-graph", |a| {
            let repair = match a {
                None | Some("bipartite") => false,
                Some("repair") => true,
                Some(other) => return Err(format!("`{other}` is not `bipartite` or `repair`")),
            };
            Ok(Box::new(TriangleFree { repair }))
        })
        .register("ck-free-graph", |a| {
            let k = parse_usize(require_arg(a)?)?;
            if !(3..=8).contains(&k) {
                return Err(format!("k = {k} outside 3..=8"));
            }
            Ok(Box::new(CkFree { k }))
        })
        .register("clique-bounded", |a| {
            let k = parse_usize(require_arg(a)?)?;
            if k < 2 {
                return Err(format!("k = {k} must be at least 2"));
            }
            Ok(Box::new(CliqueBounded { k }))
        })
        .register("random-regular", |a| {
            no_arg(a)?;
            Ok(Box::new(RandomRegular))
        });
        reg
    })
}

fn parse_usize(s: &str) -> Result<usize, String> {
    s.parse()
        .map_err(|_| format!("`{s}` is not a nonnegative integer"))
}

/// Generates an instance and checks it against its family's property and
/// the density tolerance.
pub fn generate(spec: &FamilySpec) -> Result<UniformHypergraph, GenerateError> {
    let gen = generator_registry().build(&spec.family)?;
    let family = gen.name();
    if spec.r == 0 {
        return Err(GenerateError::Infeasible {
            family,
            reason: "r must be at least 1".into(),
        });
    }
    if spec.n == 0 || !(spec.target_d >= 0.0) || !spec.target_d.is_finite() {
        return Err(GenerateError::Infeasible {
            family,
            reason: "need n ≥ 1 and a finite target d ≥ 0".into(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let h = gen.sample(spec.n, spec.r, spec.target_d, &mut rng)?;
    if let Some(p) = gen.property() {
        if !check_structure(&h, p)? {
            return Err(GenerateError::CheckerFailed { family });
        }
    }
    if gen.density_checked() && spec.target_d > 0.0 {
        let d = ratio_to_f64(&h.average_degree()?);
        if (d - spec.target_d).abs() > DENSITY_TOLERANCE * spec.target_d {
            return Err(GenerateError::GenerationBudgetExceeded {
                family,
                reason: format!("achieved d = {d} is not within 10% of {}", spec.target_d),
            });
        }
    }
    Ok(h)
}

fn edge_target(n: usize, r: usize, d: f64) -> usize {
    (d * n as f64 / (r + 1) as f64).round() as usize
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

fn random_edge(n: usize, k: usize, rng: &mut ChaCha8Rng) -> Vec<Vertex> {
    let mut e = rand::seq::index::sample(rng, n, k).into_vec();
    e.sort_unstable();
    e
}

fn budget_error(family: &str, placed: usize, wanted: usize) -> GenerateError {
    GenerateError::GenerationBudgetExceeded {
        family: family.to_string(),
        reason: format!("placed {placed} of {wanted} edges"),
    }
}

/// Adds random edges accepted by `accept` until `wanted` are placed.
fn sample_and_repair<F>(
    family: &str,
    n: usize,
    k: usize,
    wanted: usize,
    rng: &mut ChaCha8Rng,
    mut accept: F,
) -> Result<Vec<Vec<Vertex>>, GenerateError>
where
    F: FnMut(&[Vertex]) -> bool,
{
    if k > n && wanted > 0 {
        return Err(GenerateError::Infeasible {
            family: family.into(),
            reason: format!("edges of size {k} need at least {k} vertices"),
        });
    }
    let mut seen = HashSet::new();
    let mut edges = Vec::with_capacity(wanted);
    let budget = 200 * wanted + 10_000;
    for _ in 0..budget {
        if edges.len() == wanted {
            break;
        }
        let e = random_edge(n, k, rng);
        if seen.contains(&e) || !accept(&e) {
            continue;
        }
        seen.insert(e.clone());
        edges.push(e);
    }
    if edges.len() < wanted {
        return Err(budget_error(family, edges.len(), wanted));
    }
    Ok(edges)
}

struct RandomUniform;

impl Generator for RandomUniform {
    fn name(&self) -> String {
        "random-uniform".into()
    }

    fn property(&self) -> Option<Property> {
        None
    }

    fn sample(
        &self,
        n: usize,
        r: usize,
        d: f64,
        rng: &mut ChaCha8Rng,
    ) -> Result<UniformHypergraph, GenerateError> {
        let k = r + 1;
        let wanted = edge_target(n, r, d);
        if wanted as f64 > binomial(n, k) {
            return Err(GenerateError::Infeasible {
                family: self.name(),
                reason: format!("{wanted} edges exceed C({n}, {k})"),
            });
        }
        let edges = sample_and_repair(&self.name(), n, k, wanted, rng, |_| true)?;
        Ok(UniformHypergraph::new(k, n, edges)?)
    }
}

struct Girth4Uniform;

impl Generator for Girth4Uniform {
    fn name(&self) -> String {
        "girth4-uniform".into()
    }

    fn property(&self) -> Option<Property> {
        Some(Property::Girth4)
    }

    fn sample(
        &self,
        n: usize,
        r: usize,
        d: f64,
        rng: &mut ChaCha8Rng,
    ) -> Result<UniformHypergraph, GenerateError> {
        let k = r + 1;
        let wanted = edge_target(n, r, d);
        let mut pairs: HashSet<(Vertex, Vertex)> = HashSet::new();
        let mut adj: Vec<HashSet<Vertex>> = vec![HashSet::new(); n];
        let edges = sample_and_repair(&self.name(), n, k, wanted, rng, |e| {
            let shares_pair = e
                .iter()
                .enumerate()
                .any(|(i, &u)| e[i + 1..].iter().any(|&v| pairs.contains(&(u, v))));
            if shares_pair || closes_berge_triangle(&adj, e) {
                return false;
            }
            for (i, &u) in e.iter().enumerate() {
                for &v in &e[i + 1..] {
                    pairs.insert((u, v));
                    adj[u].insert(v);
                    adj[v].insert(u);
                }
            }
            true
        })?;
        Ok(UniformHypergraph::new(k, n, edges)?)
    }
}

struct TriangleFree {
    repair: bool,
}

impl Generator for TriangleFree {
    fn name(&self) -> String {
        if self.repair {
            "triangle-free-graph:repair".into()
        } else {
            "triangle-free-graph".into()
        }
    }

    fn property(&self) -> Option<Property> {
        Some(Property::TriangleFree)
    }

    fn sample(
        &self,
        n: usize,
        r: usize,
        d: f64,
        rng: &mut ChaCha8Rng,
    ) -> Result<UniformHypergraph, GenerateError> {
        require_graph(&self.name(), r)?;
        let wanted = edge_target(n, 1, d);
        let edges = if self.repair {
            let mut adj: Vec<HashSet<Vertex>> = vec![HashSet::new(); n];
            sample_and_repair(&self.name(), n, 2, wanted, rng, |e| {
                if adj[e[0]].iter().any(|x| adj[e[1]].contains(x)) {
                    return false;
                }
                adj[e[0]].insert(e[1]);
                adj[e[1]].insert(e[0]);
                true
            })?
        } else {
            let mut order: Vec<Vertex> = (0..n).collect();
            order.shuffle(rng);
            let mut left = vec![false; n];
            for &v in &order[..n / 2] {
                left[v] = true;
            }
            if wanted as f64 > (n / 2) as f64 * (n - n / 2) as f64 {
                return Err(GenerateError::Infeasible {
                    family: self.name(),
                    reason: format!("{wanted} edges exceed the bipartite maximum"),
                });
            }
            sample_and_repair(&self.name(), n, 2, wanted, rng, |e| {
                left[e[0]] != left[e[1]]
            })?
        };
        Ok(UniformHypergraph::new(2, n, edges)?)
    }
}

fn require_graph(family: &str, r: usize) -> Result<(), GenerateError> {
    if r != 1 {
        return Err(GenerateError::Infeasible {
            family: family.to_string(),
            reason: format!("graph family needs r = 1, got r = {r}"),
        });
    }
    Ok(())
}

struct CkFree {
    k: usize,
}

impl Generator for CkFree {
    fn name(&self) -> String {
        format!("ck-free-graph:{}", self.k)
    }

    fn property(&self) -> Option<Property> {
        Some(Property::CkFree(self.k))
    }

    fn sample(
        &self,
        n: usize,
        r: usize,
        d: f64,
        rng: &mut ChaCha8Rng,
    ) -> Result<UniformHypergraph, GenerateError> {
        require_graph(&self.name(), r)?;
        let wanted = edge_target(n, 1, d);
        let mut adj: Vec<Vec<Vertex>> = vec![Vec::new(); n];
        let k = self.k;
        let edges = sample_and_repair(&self.name(), n, 2, wanted, rng, |e| {
            if has_path_of_length(&adj, e[0], e[1], k - 1) {
                return false;
            }
            adj[e[0]].push(e[1]);
            adj[e[1]].push(e[0]);
            true
        })?;
        Ok(UniformHypergraph::new(2, n, edges)?)
    }
}

struct CliqueBounded {
    k: usize,
}

impl Generator for CliqueBounded {
    fn name(&self) -> String {
        format!("clique-bounded:{}", self.k)
    }

    fn property(&self) -> Option<Property> {
        Some(Property::CliqueAtMost(self.k))
    }

    fn sample(
        &self,
        n: usize,
        r: usize,
        d: f64,
        rng: &mut ChaCha8Rng,
    ) -> Result<UniformHypergraph, GenerateError> {
        require_graph(&self.name(), r)?;
        if n > CLIQUE_CAP {
            return Err(StructureError::InstanceTooLarge { n, cap: CLIQUE_CAP }.into());
        }
        let wanted = edge_target(n, 1, d);
        let mut adj: Vec<HashSet<Vertex>> = vec![HashSet::new(); n];
        let k = self.k;
        let edges = sample_and_repair(&self.name(), n, 2, wanted, rng, |e| {
            let mut common: Vec<Vertex> = adj[e[0]]
                .iter()
                .copied()
                .filter(|x| adj[e[1]].contains(x))
                .collect();
            common.sort_unstable();
            if has_clique_in(&adj, &common, k - 1) {
                return false;
            }
            adj[e[0]].insert(e[1]);
            adj[e[1]].insert(e[0]);
            true
        })?;
        Ok(UniformHypergraph::new(2, n, edges)?)
    }
}

/// Configuration model: `d` copies of each vertex are shuffled and cut into
/// groups of `r+1`; groups with a repeated vertex or a repeated edge are
/// repaired by swapping entries with random other groups.
struct RandomRegular;

impl Generator for RandomRegular {
    fn name(&self) -> String {
        "random-regular".into()
    }

    fn property(&self) -> Option<Property> {
        None
    }

    fn sample(
        &self,
        n: usize,
        r: usize,
        d: f64,
        rng: &mut ChaCha8Rng,
    ) -> Result<UniformHypergraph, GenerateError> {
        let k = r + 1;
        let deg = d.round() as usize;
        let infeasible = |reason: String| GenerateError::Infeasible {
            family: self.name(),
            reason,
        };
        if (d - deg as f64).abs() > 1e-9 {
            return Err(infeasible(format!("degree {d} is not an integer")));
        }
        if !(n * deg).is_multiple_of(k) {
            return Err(infeasible(format!(
                "n·d = {} is not divisible by {k}",
                n * deg
            )));
        }
        if deg as f64 > binomial(n - 1, r) {
            return Err(infeasible(format!("degree {deg} too large for n = {n}")));
        }
        let mut stubs: Vec<Vertex> = (0..n).flat_map(|v| std::iter::repeat_n(v, deg)).collect();
        stubs.shuffle(rng);
        let mut groups: Vec<Vec<Vertex>> = stubs.chunks(k).map(|c| c.to_vec()).collect();
        let m = groups.len();
        if m == 0 {
            return Ok(UniformHypergraph::empty(k, n)?);
        }
        let key = |g: &[Vertex]| {
            let mut s = g.to_vec();
            s.sort_unstable();
            s
        };
        let mut count: std::collections::HashMap<Vec<Vertex>, usize> =
            std::collections::HashMap::new();
        for g in &groups {
            *count.entry(key(g)).or_default() += 1;
        }
        let is_bad = |g: &[Vertex], count: &std::collections::HashMap<Vec<Vertex>, usize>| {
            let s = key(g);
            s.windows(2).any(|w| w[0] == w[1]) || count.get(&s).copied().unwrap_or(0) > 1
        };
        let budget = 1000 * m + 10_000;
        let mut bad: Vec<usize> = (0..m).filter(|&i| is_bad(&groups[i], &count)).collect();
        let mut spent = 0;
        while let Some(&i) = bad.last() {
            if !is_bad(&groups[i], &count) {
                bad.pop();
                continue;
            }
            spent += 1;
            if spent > budget {
                return Err(GenerateError::GenerationBudgetExceeded {
                    family: self.name(),
                    reason: format!("{} groups still invalid", bad.len()),
                });
            }
            let j = rng.random_range(0..m);
            if j == i {
                continue;
            }
            let (a, b) = (rng.random_range(0..k), rng.random_range(0..k));
            let (old_i, old_j) = (key(&groups[i]), key(&groups[j]));
            decrement(&mut count, &old_i);
            decrement(&mut count, &old_j);
            let tmp = groups[i][a];
            groups[i][a] = groups[j][b];
            groups[j][b] = tmp;
            *count.entry(key(&groups[i])).or_default() += 1;
            *count.entry(key(&groups[j])).or_default() += 1;
            if is_bad(&groups[j], &count) {
                bad.push(j);
            }
        }
        if (0..m).any(|i| is_bad(&groups[i], &count)) {
            return Err(GenerateError::GenerationBudgetExceeded {
                family: self.name(),
                reason: "repair left invalid groups".into(),
            });
        }
        let h = UniformHypergraph::new(k, n, groups)?;
        debug_assert!(h.degrees().iter().all(|&x| x == deg));
        Ok(h)
    }
}

fn decrement(count: &mut std::collections::HashMap<Vec<Vertex>, usize>, key: &[Vertex]) {
    if let Some(c) = count.get_mut(key) {
        *c -= 1;
        if *c == 0 {
            count.remove(key);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::structure::tests::berge_triangle_brute;

    fn spec(family: &str, n: usize, d: f64, r: usize, seed: u64) -> FamilySpec {
        FamilySpec {
            family: family.into(),
            n,
            target_d: d,
            r,
            seed,
        }
    }

    #[test]
    fn random_regular_graph() {
        let h = generate(&spec("random-regular", 100, 4.0, 1, 7)).unwrap();
        let p = h.degree_profile().unwrap();
        assert_eq!(p.max_degree, 4);
        assert!(p.degrees.iter().all(|&x| x == 4));
        let h3 = generate(&spec("random-regular", 30, 3.0, 2, 1)).unwrap();
        assert!(h3.degrees().iter().all(|&x| x == 3));
    }

    #[test]
    fn girth4_instances_pass_brute_force_oracle() {
        for seed in 0..5 {
            let h = generate(&spec("girth4-uniform", 40, 2.0, 2, seed)).unwrap();
            assert!(!berge_triangle_brute(&h));
            assert!(check_structure(&h, Property::Girth4).unwrap());
        }
    }

    #[test]
    fn graph_families_pass_checkers() {
        for fam in [
            "triangle-free-graph",
            "triangle-free-graph:repair",
            "ck-free-graph:4",
            "clique-bounded:3",
        ] {
            let h = generate(&spec(fam, 40, 4.0, 1, 3)).unwrap();
            let d = ratio_to_f64(&h.average_degree().unwrap());
            assert!((d - 4.0).abs() <= 0.4, "{fam}: {d}");
        }
    }

    #[test]
    fn determinism_and_errors() {
        let s = spec("random-uniform", 30, 3.0, 2, 9);
        assert_eq!(generate(&s).unwrap(), generate(&s).unwrap());
        assert!(matches!(
            generate(&spec("random-regular", 5, 3.0, 1, 0)),
            Err(GenerateError::Infeasible { .. })
        ));
        assert!(matches!(
            generate(&spec("girth4-uniform", 12, 6.0, 2, 0)),
            Err(GenerateError::GenerationBudgetExceeded { .. })
        ));
        assert!(generate(&spec("ck-free-graph:9", 10, 2.0, 1, 0)).is_err());
        assert!(generate(&spec("nope", 10, 2.0, 1, 0)).is_err());
    }
}
