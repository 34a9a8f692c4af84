//! Brute-force oracles shared by the integration tests. Only definitions,
//! no pruning beyond colour-symmetry.

#![allow(dead_code)]

use chromodel::graph::Graph;
use chromodel::predimension::Alpha;
use chromodel::VertexSet;
use rand::Rng;

/// Smallest `k` admitting a proper colouring, by trying every assignment
/// in which vertex `i` uses a colour at most one above those before it.
pub fn brute_chromatic(g: &Graph) -> usize {
    fn extend(g: &Graph, colors: &mut Vec<usize>, k: usize) -> bool {
        let v = colors.len();
        if v == g.n() {
            return true;
        }
        let next = colors.iter().max().map_or(0, |&m| m + 1);
        for c in 0..k.min(next + 1) {
            if (0..v).all(|u| !g.has_edge(u, v) || colors[u] != c) {
                colors.push(c);
                if extend(g, colors, k) {
                    return true;
                }
                colors.pop();
            }
        }
        false
    }
    (0..=g.n()).find(|&k| extend(g, &mut Vec::new(), k)).unwrap()
}

pub fn brute_clique(g: &Graph) -> usize {
    assert!(g.n() <= 20);
    (0u64..1 << g.n())
        .map(|m| VertexSet::from_mask(g.n(), m))
        .filter(|s| g.is_clique(s))
        .map(|s| s.len())
        .max()
        .unwrap_or(0)
}

/// `delta` scaled by the denominator of `alpha`.
pub fn scaled_delta(g: &Graph, s: &VertexSet, alpha: Alpha) -> i128 {
    alpha.denom() as i128 * s.len() as i128 - alpha.numer() as i128 * g.edges_within(s) as i128
}

/// Strict closedness of `a` checked against every proper superset.
pub fn brute_strictly_closed(g: &Graph, a: &VertexSet, alpha: Alpha) -> bool {
    let base = scaled_delta(g, a, alpha);
    (0u64..1 << g.n())
        .map(|m| VertexSet::from_mask(g.n(), m))
        .filter(|c| a.is_subset(c) && c != a)
        .all(|c| scaled_delta(g, &c, alpha) > base)
}

pub fn brute_in_k_alpha(g: &Graph, alpha: Alpha) -> bool {
    (0u64..1 << g.n()).all(|m| scaled_delta(g, &VertexSet::from_mask(g.n(), m), alpha) >= 0)
}

/// Random graph with maximum degree at most `max_degree`: candidate edges
/// in random order, kept while both ends have room.
pub fn random_bounded_degree<R: Rng>(n: usize, max_degree: usize, p: f64, rng: &mut R) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) && g.degree(u) < max_degree && g.degree(v) < max_degree {
                g.add_edge(u, v);
            }
        }
    }
    g
}
