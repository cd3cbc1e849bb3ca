use super::{IndependentSetCertificate, Method};
use crate::cleaning::crude_bound;
use crate::hypergraph::UniformHypergraph;
use crate::numeric::ratio_to_f64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Identifier of the bit source recorded in certificates.
pub const RNG_ALGORITHM: &str = "chacha8/seed_from_u64";

/// `min{1, d^{-1/r}}`, with `p = 1` when `d = 0`.
pub fn deletion_probability(h: &UniformHypergraph) -> f64 {
    let d = h.average_degree().map(|d| ratio_to_f64(&d)).unwrap_or(0.0);
    if d <= 1.0 {
        1.0
    } else {
        d.powf(-1.0 / h.rank() as f64)
    }
}

/// Keeps each vertex with probability `p = min{1, d^{-1/r}}`, then walks the
/// edges in canonical order and drops the lowest-index vertex of any edge
/// still fully kept.
pub fn random_deletion(h: &UniformHypergraph, seed: u64) -> IndependentSetCertificate {
    let n = h.num_vertices();
    let p = deletion_probability(h);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut keep: Vec<bool> = (0..n)
        .map(|_| p >= 1.0 || rng.random::<f64>() < p)
        .collect();
    for edge in h.edges() {
        if edge.iter().all(|&v| keep[v]) {
            keep[edge[0]] = false;
        }
    }
    let members = (0..n).filter(|&v| keep[v]).collect();
    let d = h.average_degree().map(|d| ratio_to_f64(&d)).unwrap_or(0.0);
    let mut cert =
        IndependentSetCertificate::certify(h, members, Method::RandomizedDeletion, "random")
            .with_bound(
                crude_bound(h.rank(), n, d),
                "expected size of randomized deletion",
            );
    cert.seed = Some(seed);
    cert.rng = Some(RNG_ALGORITHM);
    cert
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> UniformHypergraph {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| vec![u, v]));
        UniformHypergraph::new(2, n, edges).unwrap()
    }

    #[test]
    fn edgeless_keeps_everything() {
        let h = UniformHypergraph::empty(2, 7).unwrap();
        let c = random_deletion(&h, 3);
        assert_eq!(c.members, (0..7).collect::<Vec<_>>());
        assert!(c.verified);
    }

    #[test]
    fn single_edge_loses_one_vertex() {
        let h = UniformHypergraph::new(3, 3, [[0, 1, 2]]).unwrap();
        assert_eq!(deletion_probability(&h), 1.0);
        let c = random_deletion(&h, 11);
        assert_eq!(c.members, vec![1, 2]);
    }

    #[test]
    fn k5_probability_and_determinism() {
        let h = complete(5);
        assert!((deletion_probability(&h) - 0.25).abs() < 1e-15);
        for seed in 0..50 {
            let a = random_deletion(&h, seed);
            assert!(a.verified);
            assert!(a.size <= 1);
            assert_eq!(a, random_deletion(&h, seed));
        }
        assert!((random_deletion(&h, 0).claimed_bound.unwrap().value - 0.625).abs() < 1e-12);
    }
}
