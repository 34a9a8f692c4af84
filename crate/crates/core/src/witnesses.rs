//! Finite instability witnesses for the edge relation.
//!
//! A half graph of order `k` is a pair of sequences `a_1..a_k`, `b_1..b_k`
//! of `2k` distinct vertices with `a_i ~ b_j` exactly when `i < j`; nothing
//! is required inside either sequence. A shattered set is an independent
//! set `I` such that every subset `X` of `I` is the trace `N(v) ∩ I` of
//! some vertex `v` (which may lie in `I` itself).

use serde::{Deserialize, Serialize};

use crate::bitset::VertexSet;
use crate::graph::Graph;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct HalfGraphWitness {
    pub a_seq: Vec<usize>,
    pub b_seq: Vec<usize>,
}

impl HalfGraphWitness {
    pub fn order(&self) -> usize {
        self.a_seq.len()
    }
}

/// `realizers[mask]` realizes the subset `{base[i] : bit i of mask}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShatterWitness {
    pub base: Vec<usize>,
    pub realizers: Vec<usize>,
}

impl ShatterWitness {
    pub fn size(&self) -> usize {
        self.base.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfGraphResult {
    pub order: usize,
    pub witness: HalfGraphWitness,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShatterResult {
    pub size: usize,
    pub witness: ShatterWitness,
}

fn in_range(g: &Graph, vs: &[usize]) -> bool {
    vs.iter().all(|&v| v < g.n())
}

/// Checks the half-graph pattern on every index pair and distinctness.
pub fn verify_half_graph(g: &Graph, w: &HalfGraphWitness) -> bool {
    let k = w.a_seq.len();
    if w.b_seq.len() != k || !in_range(g, &w.a_seq) || !in_range(g, &w.b_seq) {
        return false;
    }
    let all = VertexSet::from_members(g.n(), w.a_seq.iter().chain(&w.b_seq).copied());
    if all.len() != 2 * k {
        return false;
    }
    (0..k).all(|i| (0..k).all(|j| g.has_edge(w.a_seq[i], w.b_seq[j]) == (i < j)))
}

/// Checks independence of the base and every realizer's trace.
pub fn verify_shatter(g: &Graph, w: &ShatterWitness) -> bool {
    let s = w.base.len();
    if s >= usize::BITS as usize || w.realizers.len() != 1 << s {
        return false;
    }
    if !in_range(g, &w.base) || !in_range(g, &w.realizers) {
        return false;
    }
    let base = VertexSet::from_members(g.n(), w.base.iter().copied());
    if base.len() != s || !g.is_independent(&base) {
        return false;
    }
    w.realizers.iter().enumerate().all(|(mask, &v)| {
        (0..s).all(|i| g.has_edge(v, w.base[i]) == (mask >> i & 1 == 1))
    })
}

struct HalfSearch<'a> {
    g: &'a Graph,
    k: usize,
    a: Vec<usize>,
    b: Vec<usize>,
    used: VertexSet,
}

impl HalfSearch<'_> {
    /// Candidates for the next `a`: non-adjacent to every placed `b`.
    /// Candidates for the next `b`: adjacent to every earlier `a`, not to
    /// the `a` of the same index. Placement alternates `a_1, b_1, a_2, ...`.
    fn run(&mut self, b_pool: &VertexSet, a_pool: &VertexSet) -> bool {
        let i = self.b.len();
        if i == self.k {
            return true;
        }
        let remaining = self.k - i;
        if self.a.len() == i {
            // place a_i; later b's need to be neighbours of it
            let mut cands = a_pool.difference(&self.used);
            while let Some(v) = cands.first() {
                cands.remove(v);
                // b_i must avoid a_i; b_{i+1..} must be neighbours of a_i
                let mut now = b_pool.difference(self.g.neighbors(v));
                now.difference_with(&self.used);
                now.remove(v);
                let later = b_pool.intersection(self.g.neighbors(v));
                if now.is_empty() || (remaining > 1 && later.difference(&self.used).len() < remaining - 1) {
                    continue;
                }
                self.a.push(v);
                self.used.insert(v);
                if self.run(b_pool, a_pool) {
                    return true;
                }
                self.used.remove(v);
                self.a.pop();
            }
            false
        } else {
            let ai = self.a[i];
            let mut cands = b_pool.difference(&self.used);
            cands.difference_with(self.g.neighbors(ai));
            while let Some(v) = cands.first() {
                cands.remove(v);
                // later a's must avoid b_i; later b's must follow a_i
                let next_a = a_pool.difference(self.g.neighbors(v));
                let next_b = b_pool.intersection(self.g.neighbors(ai));
                self.used.insert(v);
                let short = remaining > 1
                    && (next_a.difference(&self.used).len() < remaining - 1
                        || next_b.difference(&self.used).len() < remaining - 1);
                self.used.remove(v);
                if short {
                    continue;
                }
                self.b.push(v);
                self.used.insert(v);
                if self.run(&next_b, &next_a) {
                    return true;
                }
                self.used.remove(v);
                self.b.pop();
            }
            false
        }
    }
}

fn find_half_graph(g: &Graph, k: usize) -> Option<HalfGraphWitness> {
    if 2 * k > g.n() {
        return None;
    }
    let mut s = HalfSearch {
        g,
        k,
        a: Vec::with_capacity(k),
        b: Vec::with_capacity(k),
        used: VertexSet::new(g.n()),
    };
    let all = g.vertex_set();
    s.run(&all, &all).then_some(HalfGraphWitness { a_seq: s.a, b_seq: s.b })
}

/// Largest half-graph order up to `k_cap`, with a verified witness.
/// Orders are downward closed (drop the last pair), so `k` is tried in
/// increasing order until the search fails.
pub fn max_half_graph(g: &Graph, k_cap: usize) -> HalfGraphResult {
    let mut best = HalfGraphWitness::default();
    for k in 1..=k_cap {
        match find_half_graph(g, k) {
            Some(w) => best = w,
            None => break,
        }
    }
    assert!(verify_half_graph(g, &best), "half-graph search returned an invalid witness");
    HalfGraphResult { order: best.order(), witness: best }
}

/// Realizers of every subset of `base`, if `base` is shattered.
fn realizers(g: &Graph, base: &[usize]) -> Option<Vec<usize>> {
    let mut out = vec![usize::MAX; 1 << base.len()];
    let mut missing = out.len();
    for v in 0..g.n() {
        let mask = base
            .iter()
            .enumerate()
            .filter(|&(_, &d)| g.has_edge(v, d))
            .fold(0usize, |m, (i, _)| m | 1 << i);
        if out[mask] == usize::MAX {
            out[mask] = v;
            missing -= 1;
            if missing == 0 {
                return Some(out);
            }
        }
    }
    None
}

fn shatter_dfs(g: &Graph, cap: usize, base: &mut Vec<usize>, best: &mut ShatterWitness) {
    if base.len() > best.base.len() {
        if let Some(r) = realizers(g, base) {
            *best = ShatterWitness { base: base.clone(), realizers: r };
        } else {
            return;
        }
    } else if !base.is_empty() && realizers(g, base).is_none() {
        return;
    }
    if base.len() == cap {
        return;
    }
    let start = base.last().map_or(0, |&v| v + 1);
    for v in start..g.n() {
        if base.iter().all(|&u| !g.has_edge(u, v)) {
            base.push(v);
            shatter_dfs(g, cap, base, best);
            base.pop();
            if best.base.len() == cap {
                return;
            }
        }
    }
}

/// Largest shattered independent set of size at most `k_cap`, with a
/// verified witness; the lexicographically first one of that size.
/// Shattered sets are closed under subsets, so the search only extends
/// shattered sets. The graph with no vertices shatters nothing; its
/// result has size 0 and an empty witness that does not verify.
pub fn max_shattered_set(g: &Graph, k_cap: usize) -> ShatterResult {
    let k_cap = k_cap.min(usize::BITS as usize - 2);
    let mut best = ShatterWitness::default();
    if g.n() > 0 {
        best.realizers = vec![0];
        shatter_dfs(g, k_cap, &mut Vec::new(), &mut best);
        assert!(verify_shatter(g, &best), "shatter search returned an invalid witness");
    }
    ShatterResult { size: best.size(), witness: best }
}
