//! Exact structure checks by explicit search.
//!
//! A hypergraph has girth at least 4 when no two edges share two or more
//! vertices (no 2-cycle) and there is no Berge triangle: three edges
//! `e1, e2, e3` and distinct vertices `v1 ∈ e1∩e2`, `v2 ∈ e2∩e3`,
//! `v3 ∈ e3∩e1`.

use crate::hypergraph::{UniformHypergraph, Vertex};
use serde::Serialize;
use std::collections::HashSet;
use std::fmt;
use thiserror::Error;

pub const CLIQUE_CAP: usize = 64;
pub const MAX_CYCLE_LENGTH: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("instance with n = {n} exceeds the cap of {cap} vertices")]
    InstanceTooLarge { n: usize, cap: usize },
    #[error("property `{property}` needs a graph (r = 1), got r = {r}")]
    NotAGraph { property: String, r: usize },
    #[error("unsupported parameter for `{0}`")]
    Unsupported(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Property {
    /// No cycle of length exactly `k`, for `3 ≤ k ≤ 8`.
    CkFree(usize),
    TriangleFree,
    /// Clique number at most `k`.
    CliqueAtMost(usize),
    Girth4,
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Property::CkFree(k) => write!(f, "C{k}-free"),
            Property::TriangleFree => f.write_str("triangle-free"),
            Property::CliqueAtMost(k) => write!(f, "clique<={k}"),
            Property::Girth4 => f.write_str("girth4"),
        }
    }
}

pub fn check_structure(h: &UniformHypergraph, property: Property) -> Result<bool, StructureError> {
    let graph_only = |h: &UniformHypergraph| {
        if h.rank() != 1 {
            Err(StructureError::NotAGraph {
                property: property.to_string(),
                r: h.rank(),
            })
        } else {
            Ok(())
        }
    };
    match property {
        Property::TriangleFree => {
            graph_only(h)?;
            Ok(!has_cycle(h, 3))
        }
        Property::CkFree(k) => {
            graph_only(h)?;
            if !(3..=MAX_CYCLE_LENGTH).contains(&k) {
                return Err(StructureError::Unsupported(property.to_string()));
            }
            Ok(!has_cycle(h, k))
        }
        Property::CliqueAtMost(k) => {
            graph_only(h)?;
            if h.num_vertices() > CLIQUE_CAP {
                return Err(StructureError::InstanceTooLarge {
                    n: h.num_vertices(),
                    cap: CLIQUE_CAP,
                });
            }
            Ok(clique_number(h) <= k)
        }
        Property::Girth4 => Ok(has_girth4(h)),
    }
}

pub(crate) fn adjacency(h: &UniformHypergraph) -> Vec<Vec<Vertex>> {
    let mut adj = vec![Vec::new(); h.num_vertices()];
    for e in h.edges() {
        for &u in e {
            for &v in e {
                if u != v {
                    adj[u].push(v);
                }
            }
        }
    }
    for list in &mut adj {
        list.sort_unstable();
        list.dedup();
    }
    adj
}

/// Whether the graph contains a cycle of length exactly `k`.
fn has_cycle(h: &UniformHypergraph, k: usize) -> bool {
    let adj = adjacency(h);
    let n = h.num_vertices();
    let mut on_path = vec![false; n];
    // Each cycle is found from its smallest vertex `s`.
    for s in 0..n {
        on_path[s] = true;
        if extend(&adj, s, s, 1, k, &mut on_path) {
            return true;
        }
        on_path[s] = false;
    }
    false
}

fn extend(
    adj: &[Vec<Vertex>],
    s: Vertex,
    v: Vertex,
    len: usize,
    k: usize,
    on_path: &mut [bool],
) -> bool {
    if len == k {
        return adj[v].binary_search(&s).is_ok();
    }
    for &u in &adj[v] {
        if u > s && !on_path[u] {
            on_path[u] = true;
            let found = extend(adj, s, u, len + 1, k, on_path);
            on_path[u] = false;
            if found {
                return true;
            }
        }
    }
    false
}

/// Whether some simple path from `u` to `v` has exactly `len` edges.
pub(crate) fn has_path_of_length(adj: &[Vec<Vertex>], u: Vertex, v: Vertex, len: usize) -> bool {
    fn walk(
        adj: &[Vec<Vertex>],
        x: Vertex,
        target: Vertex,
        left: usize,
        seen: &mut Vec<Vertex>,
    ) -> bool {
        if left == 0 {
            return x == target;
        }
        for &y in &adj[x] {
            if seen.contains(&y) || (y == target && left != 1) {
                continue;
            }
            seen.push(y);
            let found = walk(adj, y, target, left - 1, seen);
            seen.pop();
            if found {
                return true;
            }
        }
        false
    }
    let mut seen = vec![u];
    walk(adj, u, v, len, &mut seen)
}

fn clique_number(h: &UniformHypergraph) -> usize {
    let n = h.num_vertices();
    let mut nb = vec![0u64; n];
    for e in h.edges() {
        nb[e[0]] |= 1 << e[1];
        nb[e[1]] |= 1 << e[0];
    }
    fn grow(nb: &[u64], size: usize, cand: u64, best: &mut usize) {
        if cand == 0 {
            *best = (*best).max(size);
            return;
        }
        if size + cand.count_ones() as usize <= *best {
            return;
        }
        let mut rest = cand;
        while rest != 0 {
            if size + rest.count_ones() as usize <= *best {
                return;
            }
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            grow(nb, size + 1, rest & nb[v], best);
        }
    }
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut best = 0;
    grow(&nb, 0, all, &mut best);
    best
}

/// Whether `set` contains a clique on `target` vertices.
pub(crate) fn has_clique_in(adj_sets: &[HashSet<Vertex>], set: &[Vertex], target: usize) -> bool {
    fn go(adj: &[HashSet<Vertex>], cand: &[Vertex], need: usize) -> bool {
        if need == 0 {
            return true;
        }
        if cand.len() < need {
            return false;
        }
        for (i, &v) in cand.iter().enumerate() {
            let next: Vec<Vertex> = cand[i + 1..]
                .iter()
                .copied()
                .filter(|u| adj[v].contains(u))
                .collect();
            if go(adj, &next, need - 1) {
                return true;
            }
        }
        false
    }
    go(adj_sets, set, target)
}

fn has_girth4(h: &UniformHypergraph) -> bool {
    let mut pairs = HashSet::new();
    for e in h.edges() {
        for (i, &u) in e.iter().enumerate() {
            for &v in &e[i + 1..] {
                if !pairs.insert((u, v)) {
                    return false;
                }
            }
        }
    }
    let adj: Vec<HashSet<Vertex>> = adjacency(h)
        .into_iter()
        .map(|l| l.into_iter().collect())
        .collect();
    h.edges().all(|e| !closes_berge_triangle(&adj, e))
}

/// For a linear hypergraph, whether edge `e` lies on a Berge triangle: two of
/// its vertices have a common neighbour outside `e`. `adj` must list
/// neighbours through edges, and may or may not include `e` itself.
pub(crate) fn closes_berge_triangle(adj: &[HashSet<Vertex>], e: &[Vertex]) -> bool {
    for (i, &u) in e.iter().enumerate() {
        for &w in &e[i + 1..] {
            let (small, large) = if adj[u].len() <= adj[w].len() {
                (u, w)
            } else {
                (w, u)
            };
            if adj[small]
                .iter()
                .any(|x| !e.contains(x) && adj[large].contains(x))
            {
                return true;
            }
        }
    }
    false
}
