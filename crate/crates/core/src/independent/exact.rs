use super::delegate::greedy_delegate;
use super::{edge_masks, mask_members, IndependentSetCertificate, Method, SolverError};
use crate::hypergraph::{UniformHypergraph, Vertex};
use crate::numeric::Rational;
use crate::weighted::{VertexWeights, WeightError};
use num_rational::BigRational;
use num_traits::Zero;

pub const BRANCH_AND_BOUND_CAP: usize = 24;
pub const ENUMERATION_CAP: usize = 14;
pub const HALL_RATIO_CAP: usize = 16;

fn check_cap(h: &UniformHypergraph, cap: usize) -> Result<(), SolverError> {
    let n = h.num_vertices();
    if n > cap.min(64) {
        return Err(SolverError::InstanceTooLarge { n, cap });
    }
    Ok(())
}

pub fn exact_alpha(h: &UniformHypergraph) -> Result<IndependentSetCertificate, SolverError> {
    exact_alpha_with_cap(h, BRANCH_AND_BOUND_CAP)
}

/// Maximum independent set by branch and bound.
///
/// The incumbent starts from the greedy solution. A node with chosen set `S`
/// and undecided set `P` is pruned when `|S| + |P|` minus a greedy packing of
/// edges inside `S ∪ P` with pairwise disjoint `P`-parts cannot beat it.
pub fn exact_alpha_with_cap(
    h: &UniformHypergraph,
    cap: usize,
) -> Result<IndependentSetCertificate, SolverError> {
    check_cap(h, cap)?;
    let n = h.num_vertices();
    let greedy = greedy_delegate(h);
    let start = greedy.members.iter().fold(0u64, |m, &v| m | 1 << v);
    let mut search = Search {
        edges: edge_masks(h),
        best: start,
        best_size: greedy.size,
    };
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    search.run(0, all);
    let size = search.best_size;
    Ok(
        IndependentSetCertificate::certify(h, mask_members(search.best), Method::Exact, "exact")
            .with_bound(size as f64, "exact branch and bound"),
    )
}

struct Search {
    edges: Vec<u64>,
    best: u64,
    best_size: usize,
}

impl Search {
    fn run(&mut self, s: u64, mut p: u64) {
        let mut live: Vec<u64>;
        loop {
            let span = s | p;
            live = self
                .edges
                .iter()
                .copied()
                .filter(|&e| e & !span == 0)
                .collect();
            let mut forced = 0u64;
            for &e in &live {
                let rest = e & p;
                if rest.count_ones() == 1 {
                    forced |= rest;
                }
            }
            if forced == 0 {
                break;
            }
            p &= !forced;
        }
        let base = s.count_ones() as usize;
        if live.is_empty() {
            let size = base + p.count_ones() as usize;
            if size > self.best_size {
                self.best_size = size;
                self.best = s | p;
            }
            return;
        }
        let mut used = 0u64;
        let mut packing = 0;
        for &e in &live {
            let part = e & p;
            if part & used == 0 {
                used |= part;
                packing += 1;
            }
        }
        if base + p.count_ones() as usize - packing <= self.best_size {
            return;
        }
        let mut count = [0u32; 64];
        for &e in &live {
            let mut part = e & p;
            while part != 0 {
                count[part.trailing_zeros() as usize] += 1;
                part &= part - 1;
            }
        }
        let v = (0..64)
            .filter(|&v| p >> v & 1 == 1)
            .max_by_key(|&v| (count[v], 64 - v))
            .unwrap();
        let bit = 1u64 << v;
        self.run(s | bit, p & !bit);
        self.run(s, p & !bit);
    }
}

/// Maximum independent set by scanning all `2^n` subsets.
pub fn enumerate_alpha(h: &UniformHypergraph) -> Result<IndependentSetCertificate, SolverError> {
    check_cap(h, ENUMERATION_CAP)?;
    let edges = edge_masks(h);
    let n = h.num_vertices();
    let best = (0..1u64 << n)
        .filter(|&m| edges.iter().all(|&e| e & m != e))
        .max_by_key(|&m| (m.count_ones(), std::cmp::Reverse(m)))
        .unwrap_or(0);
    let size = best.count_ones() as usize;
    Ok(
        IndependentSetCertificate::certify(h, mask_members(best), Method::Exact, "enumerate")
            .with_bound(size as f64, "exhaustive enumeration"),
    )
}

/// `α*_w(H)` with a witness, by exhaustive enumeration.
pub fn weighted_alpha_exact(
    h: &UniformHypergraph,
    w: &VertexWeights,
) -> Result<Result<(BigRational, Vec<Vertex>), WeightError>, SolverError> {
    check_cap(h, ENUMERATION_CAP)?;
    let n = h.num_vertices();
    if w.len() != n {
        return Ok(Err(WeightError::LengthMismatch {
            expected: n,
            found: w.len(),
        }));
    }
    let masses = w.masses(h.rank());
    let edges = edge_masks(h);
    let mut best = (BigRational::zero(), 0u64);
    for m in 0..1u64 << n {
        if edges.iter().any(|&e| e & !m == 0) {
            continue;
        }
        let total = (0..n)
            .filter(|&v| m >> v & 1 == 1)
            .fold(BigRational::zero(), |a, v| a + &masses[v]);
        if total > best.0 {
            best = (total, m);
        }
    }
    Ok(Ok((best.0, mask_members(best.1))))
}

/// `ρ(G) = max_U |U|/α(G[U])` over nonempty vertex sets `U`, for graphs.
///
/// Restricting to induced subgraphs loses nothing, since deleting edges never
/// lowers the independence number.
pub fn hall_ratio_exact(g: &UniformHypergraph) -> Result<Rational, SolverError> {
    if g.rank() != 1 {
        return Err(SolverError::NotAGraph { r: g.rank() });
    }
    check_cap(g, HALL_RATIO_CAP)?;
    let n = g.num_vertices();
    if n == 0 {
        return Err(SolverError::EmptyVertexSet);
    }
    let mut closed = vec![0u32; n];
    for (v, c) in closed.iter_mut().enumerate() {
        *c = 1 << v;
    }
    for e in g.edges() {
        closed[e[0]] |= 1 << e[1];
        closed[e[1]] |= 1 << e[0];
    }
    // α(U) = max(α(U - v), 1 + α(U - N[v])) for the lowest v in U.
    let mut alpha = vec![0u8; 1 << n];
    let mut best = Rational::from_integer(1);
    for u in 1usize..1 << n {
        let v = u.trailing_zeros() as usize;
        let without = alpha[u & !(1 << v)];
        let with = 1 + alpha[u & !(closed[v] as usize)];
        alpha[u] = without.max(with);
        let ratio = Rational::new(u.count_ones() as i64, alpha[u] as i64);
        if ratio > best {
            best = ratio;
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> UniformHypergraph {
        UniformHypergraph::new(2, n, (0..n).map(|v| vec![v, (v + 1) % n])).unwrap()
    }

    pub(crate) fn petersen() -> UniformHypergraph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push(vec![i, (i + 1) % 5]);
            edges.push(vec![i, i + 5]);
            edges.push(vec![i + 5, (i + 2) % 5 + 5]);
        }
        UniformHypergraph::new(2, 10, edges).unwrap()
    }

    pub(crate) fn fano() -> UniformHypergraph {
        let lines = [
            [0, 1, 2],
            [0, 3, 4],
            [0, 5, 6],
            [1, 3, 5],
            [1, 4, 6],
            [2, 3, 6],
            [2, 4, 5],
        ];
        UniformHypergraph::new(3, 7, lines).unwrap()
    }

    #[test]
    fn fixtures() {
        for (h, alpha) in [(cycle(5), 2), (petersen(), 4), (fano(), 4)] {
            let bb = exact_alpha(&h).unwrap();
            let en = enumerate_alpha(&h).unwrap();
            assert!(bb.verified && en.verified);
            assert_eq!((bb.size, en.size), (alpha, alpha));
        }
    }

    #[test]
    fn caps_are_enforced() {
        let big = UniformHypergraph::empty(2, 25).unwrap();
        assert_eq!(
            exact_alpha(&big).unwrap_err(),
            SolverError::InstanceTooLarge { n: 25, cap: 24 }
        );
        assert!(enumerate_alpha(&UniformHypergraph::empty(2, 15).unwrap()).is_err());
        assert_eq!(
            exact_alpha(&UniformHypergraph::empty(2, 24).unwrap())
                .unwrap()
                .size,
            24
        );
    }

    #[test]
    fn hall_ratios() {
        let k3 = UniformHypergraph::new(2, 3, [[0, 1], [1, 2], [0, 2]]).unwrap();
        assert_eq!(hall_ratio_exact(&k3).unwrap(), Rational::from_integer(3));
        assert_eq!(hall_ratio_exact(&cycle(5)).unwrap(), Rational::new(5, 2));
        assert_eq!(
            hall_ratio_exact(&UniformHypergraph::empty(2, 6).unwrap()).unwrap(),
            Rational::from_integer(1)
        );
        assert_eq!(hall_ratio_exact(&petersen()).unwrap(), Rational::new(5, 2));
        assert_eq!(
            hall_ratio_exact(&fano()).unwrap_err(),
            SolverError::NotAGraph { r: 2 }
        );
    }

    #[test]
    fn weighted_exact_single_edge() {
        let h = UniformHypergraph::new(2, 2, [[0, 1]]).unwrap();
        let w = VertexWeights::from_integers(&[2, 1]).unwrap();
        let (value, set) = weighted_alpha_exact(&h, &w).unwrap().unwrap();
        assert_eq!(value, BigRational::from_integer(4.into()));
        assert_eq!(set, vec![0]);
    }
}
