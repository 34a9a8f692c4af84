//! Exact colouring and clique search.
//!
//! The chromatic number is found by deciding k-colourability for increasing
//! k, starting from the clique number, with a DSATUR branch-and-bound search:
//! the next vertex is the one with the most distinct colours among its
//! neighbours (ties: higher degree, then lower index), a maximum clique is
//! precoloured, and a fresh colour may only be opened once per node. Before
//! the exact refutations, the upper bound is tightened by iterated greedy
//! recolouring and a fixed-seed tabu search; both are deterministic. All
//! results carry certificates that [`verify_coloring`] and [`verify_clique`]
//! re-check from the definition.

use serde::{Deserialize, Serialize};

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Total map from vertices to colour indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coloring {
    pub colors: Vec<usize>,
}

impl Coloring {
    pub fn new(colors: Vec<usize>) -> Self {
        Coloring { colors }
    }

    /// Number of distinct colours used.
    pub fn palette_size(&self) -> usize {
        let mut seen: Vec<usize> = self.colors.clone();
        seen.sort_unstable();
        seen.dedup();
        seen.len()
    }

    /// Renumbers colours by first use in vertex order, so the first colour
    /// used is 0 and the palette is `0..palette_size`.
    pub fn canonical(&self) -> Coloring {
        let mut rename = std::collections::BTreeMap::new();
        let colors = self
            .colors
            .iter()
            .map(|&c| {
                let next = rename.len();
                *rename.entry(c).or_insert(next)
            })
            .collect();
        Coloring { colors }
    }
}

/// Vertex set claimed to be pairwise adjacent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueWitness {
    pub members: VertexSet,
}

impl CliqueWitness {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// True iff `c` is proper on `g`. A colouring whose length differs from the
/// vertex count is partial and rejected as a structural error.
pub fn verify_coloring(g: &Graph, c: &Coloring) -> Result<bool> {
    if c.colors.len() != g.n() {
        return Err(Error::structural(format!(
            "colouring covers {} of {} vertices",
            c.colors.len(),
            g.n()
        )));
    }
    Ok(g.edges().into_iter().all(|(u, v)| c.colors[u] != c.colors[v]))
}

pub fn verify_clique(g: &Graph, members: &VertexSet) -> bool {
    members.universe() == g.n() && g.is_clique(members)
}

/// Colours vertices in reverse `order`, each with the least colour unused
/// by its already coloured neighbours.
pub fn greedy_color_with_order(g: &Graph, order: &[usize]) -> Result<Coloring> {
    let n = g.n();
    let mut seen = VertexSet::new(n);
    if order.len() != n {
        return Err(Error::structural(format!(
            "order has {} entries for {n} vertices",
            order.len()
        )));
    }
    for &v in order {
        if v >= n || seen.contains(v) {
            return Err(Error::structural("order is not a permutation of the vertices"));
        }
        seen.insert(v);
    }
    let mut colors = vec![usize::MAX; n];
    let mut taken = Vec::new();
    for &v in order.iter().rev() {
        taken.clear();
        taken.resize(g.degree(v) + 1, false);
        for w in g.neighbors(v).iter() {
            if colors[w] < taken.len() {
                taken[colors[w]] = true;
            }
        }
        colors[v] = taken.iter().position(|&t| !t).unwrap();
    }
    Ok(Coloring { colors })
}

/// Maximum clique by branch and bound with a greedy-colouring bound.
pub fn max_clique(g: &Graph) -> CliqueWitness {
    struct Search<'a> {
        g: &'a Graph,
        best: Vec<usize>,
    }

    impl Search<'_> {
        // greedy colour classes over `cand`; returns vertices with bounds
        // in nondecreasing bound order
        fn color_sort(&self, cand: &VertexSet) -> Vec<(usize, usize)> {
            let mut out = Vec::with_capacity(cand.len());
            let mut rest = cand.clone();
            let mut k = 0;
            while !rest.is_empty() {
                k += 1;
                let mut q = rest.clone();
                while let Some(v) = q.first() {
                    q.remove(v);
                    q.difference_with(self.g.neighbors(v));
                    rest.remove(v);
                    out.push((v, k));
                }
            }
            out
        }

        fn expand(&mut self, cur: &mut Vec<usize>, mut cand: VertexSet) {
            let sorted = self.color_sort(&cand);
            for &(v, bound) in sorted.iter().rev() {
                if cur.len() + bound <= self.best.len() {
                    return;
                }
                cur.push(v);
                let next = cand.intersection(self.g.neighbors(v));
                if next.is_empty() {
                    if cur.len() > self.best.len() {
                        self.best = cur.clone();
                    }
                } else {
                    self.expand(cur, next);
                }
                cur.pop();
                cand.remove(v);
            }
        }
    }

    let mut s = Search { g, best: Vec::new() };
    s.expand(&mut Vec::new(), g.vertex_set());
    CliqueWitness {
        members: VertexSet::from_members(g.n(), s.best),
    }
}

pub fn clique_number(g: &Graph) -> usize {
    max_clique(g).size()
}

/// Result of a bounded k-colourability search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decision {
    Colorable(Coloring),
    NotColorable,
    /// The node limit was reached before the search finished.
    Unknown,
}

struct Dsatur<'a> {
    g: &'a Graph,
    k: usize,
    color: Vec<usize>,
    /// per vertex, number of neighbours holding each colour
    counts: Vec<Vec<u32>>,
    sat: Vec<usize>,
    nodes: u64,
    limit: u64,
}

impl Dsatur<'_> {
    fn assign(&mut self, v: usize, c: usize) -> bool {
        self.color[v] = c;
        let mut ok = true;
        for w in self.g.neighbors(v).iter() {
            let slot = &mut self.counts[w][c];
            *slot += 1;
            if *slot == 1 {
                self.sat[w] += 1;
                if self.color[w] == usize::MAX && self.sat[w] >= self.k {
                    ok = false;
                }
            }
        }
        ok
    }

    fn unassign(&mut self, v: usize) {
        let c = self.color[v];
        self.color[v] = usize::MAX;
        for w in self.g.neighbors(v).iter() {
            let slot = &mut self.counts[w][c];
            *slot -= 1;
            if *slot == 0 {
                self.sat[w] -= 1;
            }
        }
    }

    fn pick(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for v in 0..self.g.n() {
            if self.color[v] != usize::MAX {
                continue;
            }
            best = match best {
                None => Some(v),
                Some(b) => {
                    let kv = (self.sat[v], self.g.degree(v));
                    let kb = (self.sat[b], self.g.degree(b));
                    if kv > kb {
                        Some(v)
                    } else {
                        Some(b)
                    }
                }
            };
        }
        best
    }

    /// `Some(true)` found, `Some(false)` exhausted, `None` out of budget.
    fn search(&mut self, used: usize) -> Option<bool> {
        self.nodes += 1;
        if self.nodes > self.limit {
            return None;
        }
        let v = match self.pick() {
            None => return Some(true),
            Some(v) => v,
        };
        let top = (used + 1).min(self.k);
        for c in 0..top {
            if self.counts[v][c] > 0 {
                continue;
            }
            let ok = self.assign(v, c);
            if ok {
                match self.search(used.max(c + 1)) {
                    Some(true) => return Some(true),
                    None => {
                        self.unassign(v);
                        return None;
                    }
                    Some(false) => {}
                }
            }
            self.unassign(v);
        }
        Some(false)
    }
}

fn decide_with_clique(g: &Graph, k: usize, clique: &[usize], limit: u64) -> Decision {
    let n = g.n();
    if n == 0 {
        return Decision::Colorable(Coloring::new(vec![]));
    }
    if clique.len() > k {
        return Decision::NotColorable;
    }
    let mut s = Dsatur {
        g,
        k,
        color: vec![usize::MAX; n],
        counts: vec![vec![0; k]; n],
        sat: vec![0; n],
        nodes: 0,
        limit,
    };
    for (c, &v) in clique.iter().enumerate() {
        // a clique never conflicts with itself
        s.assign(v, c);
    }
    match s.search(clique.len()) {
        Some(true) => Decision::Colorable(Coloring::new(s.color).canonical()),
        Some(false) => Decision::NotColorable,
        None => Decision::Unknown,
    }
}

/// Bounded k-colourability decision; `node_limit` caps search nodes.
pub fn decide_k_colorable(g: &Graph, k: usize, node_limit: u64) -> Decision {
    let clique = max_clique(g).members.to_vec();
    decide_with_clique(g, k, &clique, node_limit)
}

/// A proper colouring with at most `k` colours, or `None` if none exists.
pub fn is_k_colorable(g: &Graph, k: usize) -> Option<Coloring> {
    match decide_k_colorable(g, k, u64::MAX) {
        Decision::Colorable(c) => Some(c),
        _ => None,
    }
}

/// Iterated greedy: recolours class by class (reversed, then largest
/// first, alternating), which never increases the palette.
fn iterated_greedy(g: &Graph, start: Coloring, rounds: usize) -> Coloring {
    let mut best = start;
    let mut cur = best.clone();
    for r in 0..rounds {
        let k = cur.palette_size();
        let mut classes: Vec<Vec<usize>> = vec![Vec::new(); k];
        for (v, &c) in cur.colors.iter().enumerate() {
            classes[c].push(v);
        }
        if r % 2 == 0 {
            classes.reverse();
        } else {
            classes.sort_by_key(|c| std::cmp::Reverse(c.len()));
        }
        // greedy_color_with_order colours in reverse order
        let order: Vec<usize> = classes.into_iter().flatten().rev().collect();
        cur = greedy_color_with_order(g, &order).unwrap().canonical();
        if cur.palette_size() < best.palette_size() {
            best = cur.clone();
        }
    }
    best
}

/// Tabu search for a proper `k`-colouring (conflict-minimising recolouring
/// moves with short-term tabu on vertex/colour pairs). Deterministic: the
/// generator is seeded with a fixed constant.
fn tabu_search(g: &Graph, k: usize, start: &Coloring, max_iters: usize) -> Option<Coloring> {
    use rand::{Rng, SeedableRng};
    let n = g.n();
    if k == 0 {
        return None;
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x7ab0);
    let mut color: Vec<usize> = start.colors.iter().map(|&c| c.min(k - 1)).collect();
    let mut gamma = vec![vec![0i32; k]; n];
    for (u, v) in g.edges() {
        gamma[u][color[v]] += 1;
        gamma[v][color[u]] += 1;
    }
    let mut conflicts: i64 = (0..n).map(|v| gamma[v][color[v]] as i64).sum::<i64>() / 2;
    let mut tabu = vec![vec![0usize; k]; n];
    let mut best_conflicts = conflicts;
    for iter in 0..max_iters {
        if conflicts == 0 {
            return Some(Coloring::new(color).canonical());
        }
        let mut best_move: Option<(usize, usize)> = None;
        let mut best_delta = i32::MAX;
        let mut ties = 0u32;
        let mut conflicted = 0usize;
        for v in 0..n {
            let own = gamma[v][color[v]];
            if own == 0 {
                continue;
            }
            conflicted += 1;
            for c in 0..k {
                if c == color[v] {
                    continue;
                }
                let delta = gamma[v][c] - own;
                let allowed = tabu[v][c] <= iter || conflicts + (delta as i64) < best_conflicts;
                if !allowed {
                    continue;
                }
                if delta < best_delta {
                    best_delta = delta;
                    best_move = Some((v, c));
                    ties = 1;
                } else if delta == best_delta {
                    ties += 1;
                    if rng.gen_range(0..ties) == 0 {
                        best_move = Some((v, c));
                    }
                }
            }
        }
        let Some((v, c)) = best_move else { continue };
        let old = color[v];
        for w in g.neighbors(v).iter() {
            gamma[w][old] -= 1;
            gamma[w][c] += 1;
        }
        color[v] = c;
        conflicts += best_delta as i64;
        best_conflicts = best_conflicts.min(conflicts);
        tabu[v][old] = iter + 1 + rng.gen_range(0..10) + (conflicted * 6) / 10;
    }
    None
}

/// Bounds on the chromatic number with the certificates behind them.
#[derive(Clone, Debug)]
pub struct ChromaticBounds {
    pub lower: usize,
    pub upper: usize,
    /// proper colouring with `upper` colours
    pub coloring: Coloring,
    pub clique: CliqueWitness,
}

impl ChromaticBounds {
    pub fn is_exact(&self) -> bool {
        self.lower == self.upper
    }
}

/// Runs the exact search with a node budget per decision; with enough
/// budget the bounds meet.
pub fn chromatic_bounds(g: &Graph, node_limit: u64) -> ChromaticBounds {
    let clique = max_clique(g);
    let members = clique.members.to_vec();
    let mut lower = members.len();
    // DSATUR order without backtracking gives the starting upper bound
    let mut coloring = match decide_with_clique(g, g.n(), &members, u64::MAX) {
        Decision::Colorable(c) => c,
        _ => unreachable!("n colours always suffice"),
    };
    coloring = iterated_greedy(g, coloring, 20);
    let mut upper = coloring.palette_size();
    // heuristic improvements of the upper bound before exact refutation
    while lower < upper {
        match tabu_search(g, upper - 1, &coloring, 100 * g.n() + 2_000) {
            Some(c) => {
                upper = c.palette_size();
                coloring = c;
            }
            None => break,
        }
    }
    while lower < upper {
        match decide_with_clique(g, lower, &members, node_limit) {
            Decision::Colorable(c) => {
                upper = c.palette_size();
                coloring = c;
            }
            Decision::NotColorable => lower += 1,
            Decision::Unknown => break,
        }
    }
    ChromaticBounds { lower, upper, coloring, clique }
}

/// Exact chromatic number with an optimal colouring. Empty graph gives 0.
pub fn chromatic_number(g: &Graph) -> (usize, Coloring) {
    let b = chromatic_bounds(g, u64::MAX);
    debug_assert!(b.is_exact());
    (b.upper, b.coloring)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{
        complete_graph, complete_multipartite, cycle, disjoint_clique_union, edgeless, half_graph,
        path, shift_graph,
    };

    #[test]
    fn small_chromatic_numbers() {
        assert_eq!(chromatic_number(&Graph::new(0)).0, 0);
        assert_eq!(chromatic_number(&Graph::new(1)).0, 1);
        for n in 1..=6 {
            assert_eq!(chromatic_number(&complete_graph(n).unwrap()).0, n);
        }
        assert_eq!(chromatic_number(&cycle(5).unwrap()).0, 3);
        assert_eq!(chromatic_number(&cycle(6).unwrap()).0, 2);
        assert_eq!(chromatic_number(&complete_multipartite(&[3, 3, 3]).unwrap()).0, 3);
        assert_eq!(chromatic_number(&disjoint_clique_union(&[1, 2, 3]).unwrap()).0, 3);
        assert_eq!(chromatic_number(&shift_graph(5, 2).unwrap()).0, 3);
    }

    #[test]
    fn solver_colorings_verify_and_are_canonical() {
        let g = cycle(7).unwrap();
        let (k, c) = chromatic_number(&g);
        assert!(verify_coloring(&g, &c).unwrap());
        assert_eq!(c.palette_size(), k);
        assert_eq!(c.colors[0], 0);
    }

    #[test]
    fn k_colorable_cases() {
        assert!(is_k_colorable(&complete_graph(3).unwrap(), 2).is_none());
        assert!(is_k_colorable(&edgeless(10), 1).is_some());
        let h = half_graph(5).unwrap();
        let c = is_k_colorable(&h, 2).unwrap();
        assert!(verify_coloring(&h, &c).unwrap());
        assert!(is_k_colorable(&edgeless(0), 0).is_some());
        assert!(is_k_colorable(&edgeless(1), 0).is_none());
    }

    #[test]
    fn clique_cases() {
        assert_eq!(max_clique(&complete_graph(4).unwrap()).size(), 4);
        assert_eq!(max_clique(&cycle(5).unwrap()).size(), 2);
        assert_eq!(max_clique(&disjoint_clique_union(&[3, 5]).unwrap()).size(), 5);
        assert_eq!(max_clique(&Graph::new(0)).size(), 0);
        let w = max_clique(&complete_multipartite(&[2, 3, 2]).unwrap());
        assert_eq!(w.size(), 3);
    }

    #[test]
    fn greedy_cases() {
        let k3 = complete_graph(3).unwrap();
        assert_eq!(greedy_color_with_order(&k3, &[2, 0, 1]).unwrap().palette_size(), 3);
        let p4 = path(4).unwrap();
        let c = greedy_color_with_order(&p4, &[0, 1, 2, 3]).unwrap();
        assert_eq!(c.palette_size(), 2);
        assert!(verify_coloring(&p4, &c).unwrap());
        assert!(greedy_color_with_order(&p4, &[0, 1, 1, 3]).is_err());
        assert!(greedy_color_with_order(&p4, &[0, 1, 2]).is_err());
    }

    #[test]
    fn verify_cases() {
        let k2 = complete_graph(2).unwrap();
        assert!(!verify_coloring(&k2, &Coloring::new(vec![0, 0])).unwrap());
        assert!(verify_coloring(&k2, &Coloring::new(vec![0, 1])).unwrap());
        assert!(verify_coloring(&k2, &Coloring::new(vec![0])).is_err());
    }

    #[test]
    fn bounded_search_reports_unknown() {
        let g = shift_graph(9, 2).unwrap();
        assert_eq!(decide_k_colorable(&g, 3, 1), Decision::Unknown);
        let b = chromatic_bounds(&g, 1);
        assert!(b.lower <= b.upper);
        assert!(verify_coloring(&g, &b.coloring).unwrap());
    }
}
