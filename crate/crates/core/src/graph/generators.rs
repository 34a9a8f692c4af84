//! Standard graph families. Each generator documents its vertex layout so
//! callers can address vertices deterministically.

use rand::Rng;

use super::Graph;
use crate::error::{Error, Result};

fn nonempty_sizes(sizes: &[usize], what: &str) -> Result<()> {
    if sizes.is_empty() {
        return Err(Error::Degenerate(format!("{what}: empty size list")));
    }
    if sizes.contains(&0) {
        return Err(Error::Degenerate(format!("{what}: zero-sized part")));
    }
    Ok(())
}

/// `K_n`.
pub fn complete_graph(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::Degenerate("complete_graph(0)".into()));
    }
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in (u + 1)..n {
            g.add_edge(u, v);
        }
    }
    Ok(g)
}

/// `n` isolated vertices (n = 0 allowed).
pub fn edgeless(n: usize) -> Graph {
    Graph::new(n)
}

/// Path `0 - 1 - ... - (n-1)`.
pub fn path(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::Degenerate("path(0)".into()));
    }
    let mut g = Graph::new(n);
    for v in 1..n {
        g.add_edge(v - 1, v);
    }
    Ok(g)
}

/// Cycle `0 - 1 - ... - (n-1) - 0`, n >= 3.
pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::Degenerate(format!("cycle({n}) needs at least 3 vertices")));
    }
    let mut g = path(n)?;
    g.add_edge(n - 1, 0);
    Ok(g)
}

/// Complete multipartite graph. Classes occupy consecutive index ranges in
/// the order given.
pub fn complete_multipartite(class_sizes: &[usize]) -> Result<Graph> {
    nonempty_sizes(class_sizes, "complete_multipartite")?;
    let part = part_index(class_sizes);
    let n = part.len();
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in (u + 1)..n {
            if part[u] != part[v] {
                g.add_edge(u, v);
            }
        }
    }
    Ok(g)
}

/// Vertex-disjoint cliques, consecutive index ranges in the order given.
pub fn disjoint_clique_union(sizes: &[usize]) -> Result<Graph> {
    nonempty_sizes(sizes, "disjoint_clique_union")?;
    let part = part_index(sizes);
    let n = part.len();
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in (u + 1)..n {
            if part[u] == part[v] {
                g.add_edge(u, v);
            }
        }
    }
    Ok(g)
}

fn part_index(sizes: &[usize]) -> Vec<usize> {
    sizes
        .iter()
        .enumerate()
        .flat_map(|(i, &s)| std::iter::repeat_n(i, s))
        .collect()
}

/// Half graph of order `k`: vertices `0..k` are `a_1..a_k`, `k..2k` are
/// `b_1..b_k`, and `a_i b_j` is an edge iff `i < j`.
pub fn half_graph(k: usize) -> Result<Graph> {
    if k == 0 {
        return Err(Error::Degenerate("half_graph(0)".into()));
    }
    let mut g = Graph::new(2 * k);
    for i in 0..k {
        for j in (i + 1)..k {
            g.add_edge(i, k + j);
        }
    }
    Ok(g)
}

/// Strictly increasing `k`-tuples over `1..=n` in lexicographic order; this
/// is the vertex numbering of [`shift_graph`].
pub fn shift_tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..=n {
            cur.push(x);
            rec(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// Shift graph `Sh(n, k)`: vertices are the tuples of [`shift_tuples`]; `u`
/// and `v` are adjacent iff the last `k-1` entries of one equal the first
/// `k-1` entries of the other.
pub fn shift_graph(n: usize, k: usize) -> Result<Graph> {
    if k < 2 {
        return Err(Error::Degenerate(format!("shift_graph needs k >= 2, got {k}")));
    }
    if n < k {
        return Err(Error::Degenerate(format!("shift_graph needs n >= k, got n={n}, k={k}")));
    }
    let tuples = shift_tuples(n, k);
    let index: std::collections::HashMap<&[usize], usize> = tuples
        .iter()
        .enumerate()
        .map(|(i, t)| (t.as_slice(), i))
        .collect();
    let mut g = Graph::new(tuples.len());
    for (i, t) in tuples.iter().enumerate() {
        // successors: t[1..] followed by any x > t[k-1]
        let tail = &t[1..];
        let mut next = tail.to_vec();
        next.push(0);
        for x in (t[k - 1] + 1)..=n {
            next[k - 1] = x;
            let j = index[next.as_slice()];
            g.add_edge(i, j);
        }
    }
    Ok(g)
}

/// Paley graph on the prime field `F_q` with `q ≡ 1 (mod 4)`: `x ~ y` iff
/// `x - y` is a nonzero square.
pub fn paley_graph(q: usize) -> Result<Graph> {
    let is_prime = q >= 2 && (2..).take_while(|d| d * d <= q).all(|d| !q.is_multiple_of(d));
    if !is_prime || q % 4 != 1 {
        return Err(Error::contract(format!(
            "paley_graph needs a prime q = 1 mod 4, got {q}"
        )));
    }
    let mut square = vec![false; q];
    for x in 1..q {
        square[(x * x) % q] = true;
    }
    let mut g = Graph::new(q);
    for u in 0..q {
        for v in (u + 1)..q {
            if square[(v - u) % q] {
                g.add_edge(u, v);
            }
        }
    }
    Ok(g)
}

/// Erdős–Rényi `G(n, p)`.
pub fn random_graph<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v);
            }
        }
    }
    g
}
