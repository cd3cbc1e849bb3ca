//! Canonical `(r+1)`-uniform hypergraphs.
//!
//! Edges are stored in one flat buffer, `uniformity` entries per edge, each
//! edge ascending and the edge list sorted lexicographically. Two hypergraphs
//! with the same vertex count and the same edge set therefore compare equal.

mod io;

pub use io::{parse_uhg, read_uhg, write_uhg, UhgError};

use crate::numeric::Rational;
use serde::Serialize;
use thiserror::Error;

pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HypergraphError {
    #[error("uniformity must be at least 2, got {0}")]
    InvalidUniformity(usize),
    #[error("edge {edge} has {found} vertices, expected {expected}")]
    WrongArity {
        edge: usize,
        expected: usize,
        found: usize,
    },
    #[error("edge {edge} repeats vertex {vertex}")]
    DuplicateVertexInEdge { edge: usize, vertex: Vertex },
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("degree statistics are undefined on the empty vertex set")]
    EmptyVertexSet,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UniformHypergraph {
    uniformity: usize,
    n: usize,
    edges: Vec<Vertex>,
}

/// Per-vertex degrees together with `Δ(H)` and the exact average degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeProfile {
    pub degrees: Vec<usize>,
    pub max_degree: usize,
    #[serde(serialize_with = "crate::numeric::serialize_ratio")]
    pub avg_degree: Rational,
}

/// Result of [`UniformHypergraph::induce`]: the subhypergraph plus the map
/// from its vertex indices back to the host's.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Induced {
    pub graph: UniformHypergraph,
    pub original: Vec<Vertex>,
}

impl Induced {
    pub fn to_original(&self, members: &[Vertex]) -> Vec<Vertex> {
        let mut out: Vec<Vertex> = members.iter().map(|&v| self.original[v]).collect();
        out.sort_unstable();
        out
    }
}

impl UniformHypergraph {
    /// Validates and normalizes an edge list: edges are sorted internally and
    /// duplicates are dropped.
    pub fn new<E, I>(uniformity: usize, n: usize, raw_edges: E) -> Result<Self, HypergraphError>
    where
        E: IntoIterator<Item = I>,
        I: AsRef<[Vertex]>,
    {
        if uniformity < 2 {
            return Err(HypergraphError::InvalidUniformity(uniformity));
        }
        let mut edges: Vec<Vec<Vertex>> = Vec::new();
        for (idx, raw) in raw_edges.into_iter().enumerate() {
            let raw = raw.as_ref();
            if raw.len() != uniformity {
                return Err(HypergraphError::WrongArity {
                    edge: idx,
                    expected: uniformity,
                    found: raw.len(),
                });
            }
            let mut edge = raw.to_vec();
            edge.sort_unstable();
            if let Some(&vertex) = edge.iter().find(|&&v| v >= n) {
                return Err(HypergraphError::VertexOutOfRange { vertex, n });
            }
            if let Some(w) = edge.windows(2).find(|w| w[0] == w[1]) {
                return Err(HypergraphError::DuplicateVertexInEdge {
                    edge: idx,
                    vertex: w[0],
                });
            }
            edges.push(edge);
        }
        edges.sort_unstable();
        edges.dedup();
        Ok(Self {
            uniformity,
            n,
            edges: edges.concat(),
        })
    }

    /// Builds from edges already known to be canonical. Used internally by
    /// operations that preserve canonical form.
    fn from_sorted_flat(uniformity: usize, n: usize, edges: Vec<Vertex>) -> Self {
        debug_assert!(edges
            .chunks_exact(uniformity)
            .zip(edges.chunks_exact(uniformity).skip(1))
            .all(|(a, b)| a < b));
        Self {
            uniformity,
            n,
            edges,
        }
    }

    pub fn empty(uniformity: usize, n: usize) -> Result<Self, HypergraphError> {
        Self::new(uniformity, n, std::iter::empty::<Vec<Vertex>>())
    }

    pub fn uniformity(&self) -> usize {
        self.uniformity
    }

    /// `r`, one less than the uniformity.
    pub fn rank(&self) -> usize {
        self.uniformity - 1
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len() / self.uniformity
    }

    pub fn edges(&self) -> impl ExactSizeIterator<Item = &[Vertex]> + '_ {
        self.edges.chunks_exact(self.uniformity)
    }

    pub fn edge(&self, idx: usize) -> &[Vertex] {
        &self.edges[idx * self.uniformity..(idx + 1) * self.uniformity]
    }

    /// Binary search over the canonical edge order.
    pub fn contains_edge(&self, edge: &[Vertex]) -> bool {
        if edge.len() != self.uniformity {
            return false;
        }
        let mut sorted = edge.to_vec();
        sorted.sort_unstable();
        let (mut lo, mut hi) = (0, self.num_edges());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.edge(mid).cmp(&sorted[..]) {
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
                std::cmp::Ordering::Equal => return true,
            }
        }
        false
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for &v in &self.edges {
            deg[v] += 1;
        }
        deg
    }

    /// Edge indices incident to each vertex.
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.n];
        for (idx, edge) in self.edges().enumerate() {
            for &v in edge {
                inc[v].push(idx);
            }
        }
        inc
    }

    pub fn degree_profile(&self) -> Result<DegreeProfile, HypergraphError> {
        if self.n == 0 {
            return Err(HypergraphError::EmptyVertexSet);
        }
        let degrees = self.degrees();
        let max_degree = degrees.iter().copied().max().unwrap_or(0);
        let avg_degree = Rational::new((self.uniformity * self.num_edges()) as i64, self.n as i64);
        Ok(DegreeProfile {
            degrees,
            max_degree,
            avg_degree,
        })
    }

    /// Exact average degree `(r+1)·e/n`.
    pub fn average_degree(&self) -> Result<Rational, HypergraphError> {
        if self.n == 0 {
            return Err(HypergraphError::EmptyVertexSet);
        }
        Ok(Rational::new(
            (self.uniformity * self.num_edges()) as i64,
            self.n as i64,
        ))
    }

    /// The subhypergraph induced by `subset`, reindexed in ascending order of
    /// the retained vertices.
    pub fn induce(&self, subset: &[Vertex]) -> Result<Induced, HypergraphError> {
        let mut keep = vec![false; self.n];
        for &v in subset {
            if v >= self.n {
                return Err(HypergraphError::VertexOutOfRange {
                    vertex: v,
                    n: self.n,
                });
            }
            keep[v] = true;
        }
        Ok(self.induce_mask(&keep))
    }

    pub(crate) fn induce_mask(&self, keep: &[bool]) -> Induced {
        debug_assert_eq!(keep.len(), self.n);
        let mut new_index = vec![usize::MAX; self.n];
        let mut original = Vec::new();
        for v in 0..self.n {
            if keep[v] {
                new_index[v] = original.len();
                original.push(v);
            }
        }
        // Relabeling is monotone, so the retained edges stay canonical.
        let mut edges = Vec::new();
        for edge in self.edges() {
            if edge.iter().all(|&v| keep[v]) {
                edges.extend(edge.iter().map(|&v| new_index[v]));
            }
        }
        Induced {
            graph: Self::from_sorted_flat(self.uniformity, original.len(), edges),
            original,
        }
    }

    pub fn delete_vertex(&self, v: Vertex) -> Result<Induced, HypergraphError> {
        if v >= self.n {
            return Err(HypergraphError::VertexOutOfRange {
                vertex: v,
                n: self.n,
            });
        }
        let mut keep = vec![true; self.n];
        keep[v] = false;
        Ok(self.induce_mask(&keep))
    }

    /// True when no edge lies entirely inside `set`.
    pub fn is_independent(&self, set: &[Vertex]) -> bool {
        let mut member = vec![false; self.n];
        for &v in set {
            if v >= self.n {
                return false;
            }
            member[v] = true;
        }
        self.edges().all(|e| !e.iter().all(|&v| member[v]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete_graph(n: usize) -> UniformHypergraph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push(vec![u, v]);
            }
        }
        UniformHypergraph::new(2, n, edges).unwrap()
    }

    fn star(leaves: usize) -> UniformHypergraph {
        UniformHypergraph::new(2, leaves + 1, (1..=leaves).map(|v| vec![0, v])).unwrap()
    }

    #[test]
    fn validate_builds_and_dedups() {
        let h = UniformHypergraph::new(3, 4, [[0, 1, 2], [0, 1, 3]]).unwrap();
        assert_eq!(h.num_edges(), 2);
        let g = UniformHypergraph::new(2, 2, [[0, 1], [1, 0]]).unwrap();
        assert_eq!(g.num_edges(), 1);
    }

    #[test]
    fn validate_rejects_malformed_edges() {
        assert_eq!(
            UniformHypergraph::new(3, 2, [[0, 0, 1]]),
            Err(HypergraphError::DuplicateVertexInEdge { edge: 0, vertex: 0 })
        );
        assert!(matches!(
            UniformHypergraph::new(3, 4, [vec![0, 1]]),
            Err(HypergraphError::WrongArity { found: 2, .. })
        ));
        assert!(matches!(
            UniformHypergraph::new(2, 3, [[0, 3]]),
            Err(HypergraphError::VertexOutOfRange { vertex: 3, n: 3 })
        ));
        assert!(matches!(
            UniformHypergraph::empty(1, 3),
            Err(HypergraphError::InvalidUniformity(1))
        ));
    }

    #[test]
    fn degree_profiles() {
        let k3 = complete_graph(3).degree_profile().unwrap();
        assert_eq!(k3.degrees, vec![2, 2, 2]);
        assert_eq!(k3.max_degree, 2);
        assert_eq!(k3.avg_degree, Rational::from_integer(2));

        let h = UniformHypergraph::new(3, 4, [[0, 1, 2], [0, 1, 3]]).unwrap();
        let p = h.degree_profile().unwrap();
        assert_eq!(p.degrees, vec![2, 2, 1, 1]);
        assert_eq!(p.max_degree, 2);
        assert_eq!(p.avg_degree, Rational::new(3, 2));

        let s = star(9).degree_profile().unwrap();
        assert_eq!(s.max_degree, 9);
        assert_eq!(s.avg_degree, Rational::new(9, 5));
    }

    #[test]
    fn empty_vertex_set_has_no_profile() {
        let h = UniformHypergraph::empty(2, 0).unwrap();
        assert_eq!(h.degree_profile(), Err(HypergraphError::EmptyVertexSet));
    }

    #[test]
    fn induce_examples() {
        let k4 = complete_graph(4);
        assert_eq!(k4.induce(&[0, 1, 2]).unwrap().graph, complete_graph(3));
        let all: Vec<_> = (0..4).collect();
        assert_eq!(k4.induce(&all).unwrap().graph, k4);

        let h = UniformHypergraph::new(3, 4, [[0, 1, 2], [1, 2, 3]]).unwrap();
        let sub = h.induce(&[1, 2, 3]).unwrap();
        assert_eq!(sub.graph.num_vertices(), 3);
        assert_eq!(sub.graph.edges().collect::<Vec<_>>(), vec![&[0, 1, 2][..]]);
        assert_eq!(sub.original, vec![1, 2, 3]);
        assert!(matches!(
            h.induce(&[4]),
            Err(HypergraphError::VertexOutOfRange { .. })
        ));
    }

    #[test]
    fn delete_vertex_examples() {
        let center_gone = star(5).delete_vertex(0).unwrap().graph;
        assert_eq!(center_gone.num_vertices(), 5);
        assert_eq!(center_gone.num_edges(), 0);

        assert_eq!(star(5).delete_vertex(3).unwrap().graph, star(4));

        let k4 = complete_graph(5).delete_vertex(2).unwrap().graph;
        assert_eq!(k4, complete_graph(4));
        assert_eq!(k4.num_edges(), 6);
    }

    #[test]
    fn edge_membership() {
        let h = UniformHypergraph::new(3, 5, [[0, 1, 2], [1, 3, 4], [0, 2, 4]]).unwrap();
        assert!(h.contains_edge(&[4, 3, 1]));
        assert!(!h.contains_edge(&[0, 1, 3]));
        assert!(h.is_independent(&[0, 1, 3]));
        assert!(!h.is_independent(&[0, 1, 2, 3]));
    }
}
