//! Vertex-weighted degree quantities.
//!
//! For positive weights `w`:
//!
//! * `λ(v) = w(v)^{-r} · Σ_{e∋v} Π_{u∈e∖{v}} w(u)`
//! * `Δ_w = max_v λ(v)`
//! * `μ_w(U) = Σ_{u∈U} w(u)^{r+1}`
//! * `d_w = (r+1) · Σ_e Π_{u∈e} w(u) / μ_w(V)`
//!
//! All quantities are exact rationals so that unit weights reproduce the
//! unweighted degree profile exactly.

use crate::hypergraph::{UniformHypergraph, Vertex};
use crate::numeric::{big_pow, parse_big_rational};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use std::io::BufRead;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum WeightError {
    #[error("{found} weights for {expected} vertices")]
    LengthMismatch { expected: usize, found: usize },
    #[error("weight of vertex {vertex} is not strictly positive")]
    NonPositive { vertex: Vertex },
    #[error("vertex set is not independent: edge {edge:?} lies inside it")]
    NotIndependent { edge: Vec<Vertex> },
    #[error("vertex {vertex} out of range")]
    VertexOutOfRange { vertex: Vertex },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexWeights(Vec<BigRational>);

impl VertexWeights {
    pub fn new(w: Vec<BigRational>) -> Result<Self, WeightError> {
        if let Some(vertex) = w.iter().position(|x| !x.is_positive()) {
            return Err(WeightError::NonPositive { vertex });
        }
        Ok(Self(w))
    }

    pub fn unit(n: usize) -> Self {
        Self(vec![BigRational::one(); n])
    }

    pub fn from_integers(w: &[i64]) -> Result<Self, WeightError> {
        Self::new(
            w.iter()
                .map(|&x| BigRational::from_integer(BigInt::from(x)))
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, v: Vertex) -> &BigRational {
        &self.0[v]
    }

    pub fn as_slice(&self) -> &[BigRational] {
        &self.0
    }

    pub fn scaled(&self, t: &BigRational) -> Result<Self, WeightError> {
        Self::new(self.0.iter().map(|w| w * t).collect())
    }

    /// `w(v)^{r+1}` for every vertex.
    pub fn masses(&self, r: usize) -> Vec<BigRational> {
        self.0.iter().map(|w| big_pow(w, r + 1)).collect()
    }

    fn check_len(&self, n: usize) -> Result<(), WeightError> {
        if self.0.len() != n {
            return Err(WeightError::LengthMismatch {
                expected: n,
                found: self.0.len(),
            });
        }
        Ok(())
    }
}

/// Reads one rational (`p/q` or an integer) per line. Blank lines and `#`
/// comments are skipped.
pub fn read_weights<R: BufRead>(reader: R) -> Result<VertexWeights, WeightError> {
    let mut out = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let q = parse_big_rational(t).ok_or_else(|| WeightError::Parse {
            line: idx + 1,
            message: format!("`{t}` is not a rational"),
        })?;
        if !q.is_positive() {
            return Err(WeightError::Parse {
                line: idx + 1,
                message: format!("weight `{t}` must be strictly positive"),
            });
        }
        out.push(q);
    }
    VertexWeights::new(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightedProfile {
    #[serde(serialize_with = "ser_vec")]
    pub lambda: Vec<BigRational>,
    #[serde(serialize_with = "crate::numeric::serialize_big_ratio")]
    pub delta_w: BigRational,
    #[serde(serialize_with = "crate::numeric::serialize_big_ratio")]
    pub mu_total: BigRational,
    #[serde(serialize_with = "crate::numeric::serialize_big_ratio")]
    pub d_w: BigRational,
}

fn ser_vec<S: serde::Serializer>(v: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for q in v {
        seq.serialize_element(&crate::numeric::format_ratio(q))?;
    }
    seq.end()
}

/// `Π_{u∈e} w(u)`.
pub fn edge_mass(edge: &[Vertex], w: &VertexWeights) -> BigRational {
    edge.iter()
        .fold(BigRational::one(), |acc, &u| acc * w.get(u))
}

pub fn weighted_profile(
    h: &UniformHypergraph,
    w: &VertexWeights,
) -> Result<WeightedProfile, WeightError> {
    w.check_len(h.num_vertices())?;
    let r = h.rank();
    let n = h.num_vertices();
    let mut sums = vec![BigRational::zero(); n];
    let mut total_mass = BigRational::zero();
    for edge in h.edges() {
        for (i, &v) in edge.iter().enumerate() {
            let others = edge
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .fold(BigRational::one(), |acc, (_, &u)| acc * w.get(u));
            sums[v] += others;
        }
        total_mass += edge_mass(edge, w);
    }
    let lambda: Vec<BigRational> = sums
        .into_iter()
        .enumerate()
        .map(|(v, s)| s / big_pow(w.get(v), r))
        .collect();
    let delta_w = lambda
        .iter()
        .max()
        .cloned()
        .unwrap_or_else(BigRational::zero);
    let mu_total = w
        .masses(r)
        .into_iter()
        .fold(BigRational::zero(), |a, b| a + b);
    let d_w = if mu_total.is_zero() {
        BigRational::zero()
    } else {
        BigRational::from_integer(BigInt::from(r + 1)) * total_mass / &mu_total
    };
    Ok(WeightedProfile {
        lambda,
        delta_w,
        mu_total,
        d_w,
    })
}

/// `Σ_{v∈I} w(v)^{r+1}` for an independent set `I`.
pub fn weighted_alpha_star(
    h: &UniformHypergraph,
    w: &VertexWeights,
    set: &[Vertex],
) -> Result<BigRational, WeightError> {
    w.check_len(h.num_vertices())?;
    let mut member = vec![false; h.num_vertices()];
    for &v in set {
        if v >= h.num_vertices() {
            return Err(WeightError::VertexOutOfRange { vertex: v });
        }
        member[v] = true;
    }
    if let Some(edge) = h.edges().find(|e| e.iter().all(|&v| member[v])) {
        return Err(WeightError::NotIndependent {
            edge: edge.to_vec(),
        });
    }
    let r = h.rank();
    Ok((0..h.num_vertices())
        .filter(|&v| member[v])
        .map(|v| big_pow(w.get(v), r + 1))
        .fold(BigRational::zero(), |a, b| a + b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rational_to_big;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn single_weighted_edge() {
        let h = UniformHypergraph::new(2, 2, [[0, 1]]).unwrap();
        let w = VertexWeights::from_integers(&[2, 1]).unwrap();
        let p = weighted_profile(&h, &w).unwrap();
        assert_eq!(p.lambda, vec![q(1, 2), q(2, 1)]);
        assert_eq!(p.delta_w, q(2, 1));
        assert_eq!(p.mu_total, q(5, 1));
        assert_eq!(p.d_w, q(4, 5));
        assert_eq!(weighted_alpha_star(&h, &w, &[0]).unwrap(), q(4, 1));
        assert!(matches!(
            weighted_alpha_star(&h, &w, &[0, 1]),
            Err(WeightError::NotIndependent { .. })
        ));
    }

    #[test]
    fn unit_weights_reduce_to_degrees() {
        let h = UniformHypergraph::new(3, 5, [[0, 1, 2], [0, 3, 4], [1, 2, 4]]).unwrap();
        let p = weighted_profile(&h, &VertexWeights::unit(5)).unwrap();
        let d = h.degree_profile().unwrap();
        let degs: Vec<BigRational> = d
            .degrees
            .iter()
            .map(|&k| BigRational::from_integer((k as i64).into()))
            .collect();
        assert_eq!(p.lambda, degs);
        assert_eq!(p.d_w, rational_to_big(&d.avg_degree));
        assert_eq!(p.mu_total, q(5, 1));
        assert_eq!(
            weighted_alpha_star(&h, &VertexWeights::unit(5), &[0, 1, 3]).unwrap(),
            q(3, 1)
        );
    }

    #[test]
    fn edgeless_profile_is_zero() {
        let h = UniformHypergraph::empty(3, 4).unwrap();
        let w = VertexWeights::from_integers(&[1, 2, 3, 4]).unwrap();
        let p = weighted_profile(&h, &w).unwrap();
        assert!(p.lambda.iter().all(Zero::is_zero));
        assert!(p.d_w.is_zero());
    }

    #[test]
    fn rejects_bad_weights() {
        let h = UniformHypergraph::empty(2, 3).unwrap();
        assert!(matches!(
            weighted_profile(&h, &VertexWeights::unit(2)),
            Err(WeightError::LengthMismatch {
                expected: 3,
                found: 2
            })
        ));
        assert!(matches!(
            VertexWeights::from_integers(&[1, 0]),
            Err(WeightError::NonPositive { vertex: 1 })
        ));
    }

    #[test]
    fn weight_file_parsing() {
        let w = read_weights("# weights\n1\n3/2\n\n4/2\n".as_bytes()).unwrap();
        assert_eq!(w.as_slice(), &[q(1, 1), q(3, 2), q(2, 1)]);
        assert!(matches!(
            read_weights("1\n-2\n".as_bytes()),
            Err(WeightError::Parse { line: 2, .. })
        ));
        assert!(matches!(
            read_weights("1\nabc\n".as_bytes()),
            Err(WeightError::Parse { line: 2, .. })
        ));
    }
}
