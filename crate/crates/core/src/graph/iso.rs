//! Backtracking search for induced embeddings, isomorphisms and
//! automorphisms. Exhaustive with pruning: intended for desk-scale inputs
//! (isomorphism tests up to a dozen or so vertices, embeddings of small
//! patterns into larger hosts). Larger inputs are accepted but may be slow.

use std::collections::HashMap;
use std::ops::ControlFlow;

use super::{Embedding, Graph};
use crate::bitset::VertexSet;

struct Search<'a> {
    source: &'a Graph,
    target: &'a Graph,
    order: Vec<usize>,
    /// candidate filter per source vertex (colour classes / degree bounds)
    allowed: Vec<VertexSet>,
    map: Vec<usize>,
    used: VertexSet,
}

impl Search<'_> {
    fn candidates(&self, depth: usize) -> VertexSet {
        let s = self.order[depth];
        let mut cand = self.allowed[s].difference(&self.used);
        for &p in &self.order[..depth] {
            let img = self.map[p];
            if self.source.has_edge(s, p) {
                cand.intersect_with(self.target.neighbors(img));
            } else {
                cand.difference_with(self.target.neighbors(img));
            }
            if cand.is_empty() {
                break;
            }
        }
        cand
    }

    fn run<F: FnMut(&[usize]) -> ControlFlow<()>>(&mut self, depth: usize, f: &mut F) -> ControlFlow<()> {
        if depth == self.order.len() {
            return f(&self.map);
        }
        let s = self.order[depth];
        let cand = self.candidates(depth);
        for v in cand.iter() {
            self.map[s] = v;
            self.used.insert(v);
            let flow = self.run(depth + 1, f);
            self.used.remove(v);
            flow?;
        }
        self.map[s] = usize::MAX;
        ControlFlow::Continue(())
    }
}

/// Search order: fixed vertices first, then greedily the vertex with the
/// most already-ordered neighbours (ties: higher degree, lower index).
fn search_order(source: &Graph, fixed: &[usize]) -> Vec<usize> {
    let n = source.n();
    let mut placed = VertexSet::new(n);
    let mut order = Vec::with_capacity(n);
    for &s in fixed {
        placed.insert(s);
        order.push(s);
    }
    while order.len() < n {
        let next = (0..n)
            .filter(|&v| !placed.contains(v))
            .max_by(|&a, &b| {
                let ka = (source.neighbors(a).intersection_len(&placed), source.degree(a));
                let kb = (source.neighbors(b).intersection_len(&placed), source.degree(b));
                ka.cmp(&kb).then(b.cmp(&a))
            })
            .unwrap();
        placed.insert(next);
        order.push(next);
    }
    order
}

fn fixed_is_consistent(source: &Graph, target: &Graph, fixed: &[(usize, usize)]) -> bool {
    let mut seen_s = VertexSet::new(source.n());
    let mut seen_t = VertexSet::new(target.n());
    for &(s, t) in fixed {
        if s >= source.n() || t >= target.n() || seen_s.contains(s) || seen_t.contains(t) {
            return false;
        }
        seen_s.insert(s);
        seen_t.insert(t);
    }
    fixed.iter().enumerate().all(|(i, &(s1, t1))| {
        fixed[i + 1..]
            .iter()
            .all(|&(s2, t2)| source.has_edge(s1, s2) == target.has_edge(t1, t2))
    })
}

fn run_search<F: FnMut(&[usize]) -> ControlFlow<()>>(
    source: &Graph,
    target: &Graph,
    fixed: &[(usize, usize)],
    allowed: Vec<VertexSet>,
    f: &mut F,
) {
    if !fixed_is_consistent(source, target, fixed) {
        return;
    }
    let fixed_src: Vec<usize> = fixed.iter().map(|&(s, _)| s).collect();
    let mut allowed = allowed;
    for &(s, t) in fixed {
        if !allowed[s].contains(t) {
            return;
        }
        allowed[s] = VertexSet::from_members(target.n(), [t]);
    }
    let mut search = Search {
        source,
        target,
        order: search_order(source, &fixed_src),
        allowed,
        map: vec![usize::MAX; source.n()],
        used: VertexSet::new(target.n()),
    };
    let _ = search.run(0, f);
}

fn degree_filter(source: &Graph, target: &Graph) -> Vec<VertexSet> {
    (0..source.n())
        .map(|s| {
            let d = source.degree(s);
            let non = source.n() - 1 - d;
            VertexSet::from_members(
                target.n(),
                (0..target.n()).filter(|&t| {
                    target.degree(t) >= d && target.n() - 1 - target.degree(t) >= non
                }),
            )
        })
        .collect()
}

/// Calls `f` with every induced embedding of `source` into `target` that
/// extends the `fixed` pairs `(source vertex, target vertex)`. `f` may stop
/// the enumeration by returning `ControlFlow::Break`.
pub fn for_each_embedding<F: FnMut(&[usize]) -> ControlFlow<()>>(
    source: &Graph,
    target: &Graph,
    fixed: &[(usize, usize)],
    mut f: F,
) {
    if source.n() > target.n() {
        return;
    }
    let allowed = degree_filter(source, target);
    run_search(source, target, fixed, allowed, &mut f);
}

/// First induced embedding of `source` into `target` extending `fixed`.
pub fn find_embedding(source: &Graph, target: &Graph, fixed: &[(usize, usize)]) -> Option<Embedding> {
    let mut found = None;
    for_each_embedding(source, target, fixed, |m| {
        found = Some(Embedding::new(m.to_vec()));
        ControlFlow::Break(())
    });
    found
}

/// Colour refinement on the disjoint union of `g` and `h`; returns the
/// stable colours of `g`'s and `h`'s vertices.
fn refine_colors(g: &Graph, h: &Graph) -> (Vec<usize>, Vec<usize>) {
    let u = g.disjoint_union(h);
    let n = u.n();
    let mut color: Vec<usize> = (0..n).map(|v| u.degree(v)).collect();
    let mut classes = {
        let mut c = color.clone();
        c.sort_unstable();
        c.dedup();
        c.len()
    };
    loop {
        let mut sig_index: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
        let mut sigs: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = u.neighbors(v).iter().map(|w| color[w]).collect();
                nb.sort_unstable();
                (color[v], nb)
            })
            .collect();
        let mut sorted = sigs.clone();
        sorted.sort();
        sorted.dedup();
        for (i, s) in sorted.into_iter().enumerate() {
            sig_index.insert(s, i);
        }
        let next: Vec<usize> = sigs.drain(..).map(|s| sig_index[&s]).collect();
        let next_classes = sig_index.len();
        color = next;
        if next_classes == classes {
            break;
        }
        classes = next_classes;
    }
    let gc = color[..g.n()].to_vec();
    let hc = color[g.n()..].to_vec();
    (gc, hc)
}

/// Isomorphism `g -> h` extending the `fixed` pairs, if one exists.
pub fn find_isomorphism_extending(g: &Graph, h: &Graph, fixed: &[(usize, usize)]) -> Option<Embedding> {
    if g.n() != h.n() || g.edge_count() != h.edge_count() {
        return None;
    }
    let (gc, hc) = refine_colors(g, h);
    let mut gs = gc.clone();
    let mut hs = hc.clone();
    gs.sort_unstable();
    hs.sort_unstable();
    if gs != hs {
        return None;
    }
    let allowed: Vec<VertexSet> = (0..g.n())
        .map(|s| VertexSet::from_members(h.n(), (0..h.n()).filter(|&t| hc[t] == gc[s])))
        .collect();
    let mut found = None;
    run_search(g, h, fixed, allowed, &mut |m: &[usize]| {
        found = Some(Embedding::new(m.to_vec()));
        ControlFlow::Break(())
    });
    found
}

/// Some isomorphism `g -> h`, if one exists.
pub fn find_isomorphism(g: &Graph, h: &Graph) -> Option<Embedding> {
    find_isomorphism_extending(g, h, &[])
}

/// Automorphism of `g` extending the partial map `fixed`, if one exists.
pub fn automorphism_extending(g: &Graph, fixed: &[(usize, usize)]) -> Option<Embedding> {
    find_isomorphism_extending(g, g, fixed)
}
