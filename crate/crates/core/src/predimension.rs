//! Predimension `delta_alpha(F) = |F| - alpha * e(F)` over exact rationals.
//!
//! With `alpha = p/q` every comparison is done on the scaled integer
//! `q|F| - p e(F)`. Minimising that quantity over the supersets of a fixed
//! set is a maximum-weight closure problem (choose edges for profit `p`,
//! pay `q` per new vertex), solved exactly by one minimum cut. The minimal
//! and maximal minimisers come out of the same cut and decide weak and
//! strict closedness respectively.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::bitset::VertexSet;
use crate::coloring::{greedy_color_with_order, Coloring};
use crate::error::{Error, Result};
use crate::flow::{Network, INF};
use crate::graph::{complete_graph, Graph};
use crate::mycielski::{mycielski_power, mycielskian};

/// Rational `p/q` in `[0, 1]`, kept in lowest terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Alpha {
    p: u64,
    q: u64,
}

impl Alpha {
    pub fn new(p: u64, q: u64) -> Result<Self> {
        if q == 0 {
            return Err(Error::contract("alpha has zero denominator"));
        }
        if p > q {
            return Err(Error::contract(format!("alpha = {p}/{q} exceeds 1")));
        }
        let d = p.gcd(&q);
        Ok(Alpha { p: p / d, q: q / d })
    }

    pub fn numer(&self) -> u64 {
        self.p
    }

    pub fn denom(&self) -> u64 {
        self.q
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::new(BigInt::from(self.p), BigInt::from(self.q))
    }

    /// `alpha / 2`.
    pub fn half(&self) -> Alpha {
        Alpha::new(self.p, 2 * self.q).unwrap()
    }

    /// Exact test `alpha * x > y` for integers `x`, `y`.
    pub fn times_exceeds(&self, x: u64, y: u64) -> bool {
        (self.p as u128) * (x as u128) > (y as u128) * (self.q as u128)
    }

    /// Exact test `alpha < 1/d` (always true for `d = 0`).
    pub fn below_reciprocal(&self, d: u64) -> bool {
        (self.p as u128) * (d as u128) < self.q as u128
    }

    /// Scaled predimension `q|F| - p e(F)` of a graph with the given counts.
    pub fn scaled(&self, vertices: usize, edges: usize) -> i128 {
        self.q as i128 * vertices as i128 - self.p as i128 * edges as i128
    }

    /// Unscales a value produced by [`Alpha::scaled`].
    pub fn unscale(&self, scaled: i128) -> BigRational {
        BigRational::new(BigInt::from(scaled), BigInt::from(self.q))
    }
}

impl PartialOrd for Alpha {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Alpha {
    fn cmp(&self, other: &Self) -> Ordering {
        ((self.p as u128) * (other.q as u128)).cmp(&((other.p as u128) * (self.q as u128)))
    }
}

impl fmt::Display for Alpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl FromStr for Alpha {
    type Err = Error;

    /// Accepts `p/q` or a bare integer (`0` or `1`).
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("cannot parse alpha {s:?}; expected p/q"));
        let (p, q) = match s.trim().split_once('/') {
            Some((p, q)) => (p.trim(), q.trim()),
            None => (s.trim(), "1"),
        };
        let p: u64 = p.parse().map_err(|_| bad())?;
        let q: u64 = q.parse().map_err(|_| bad())?;
        Alpha::new(p, q)
    }
}

impl Serialize for Alpha {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Alpha {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Weak (`<=`) or strict (`<`) closedness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Closedness {
    Weak,
    Strict,
}

/// `delta_alpha(g)` as an exact rational.
pub fn delta(g: &Graph, alpha: Alpha) -> BigRational {
    alpha.unscale(alpha.scaled(g.n(), g.edge_count()))
}

/// Scaled predimension of the induced subgraph on `s`.
pub fn scaled_delta_of(g: &Graph, s: &VertexSet, alpha: Alpha) -> i128 {
    alpha.scaled(s.len(), g.edges_within(s))
}

/// Minimisers of the scaled predimension over all `C` with `base ⊆ C ⊆ V(g)`.
#[derive(Clone, Debug)]
pub struct SupersetMinimum {
    /// minimum scaled predimension
    pub value: i128,
    /// the least minimiser (contained in every minimiser)
    pub smallest: VertexSet,
    /// the greatest minimiser (containing every minimiser)
    pub largest: VertexSet,
}

/// Minimises `q|C| - p e(C)` over `base ⊆ C ⊆ V(g)` with one minimum cut.
pub fn minimize_over_supersets(g: &Graph, base: &VertexSet, alpha: Alpha) -> SupersetMinimum {
    let n = g.n();
    let base = base.resized(n);
    let free: Vec<usize> = (0..n).filter(|&v| !base.contains(v)).collect();
    let mut slot = vec![usize::MAX; n];
    for (i, &v) in free.iter().enumerate() {
        slot[v] = i;
    }
    // edges with at least one endpoint outside the base
    let open_edges: Vec<(usize, usize)> = g
        .edges()
        .into_iter()
        .filter(|&(u, v)| !(base.contains(u) && base.contains(v)))
        .collect();
    let (p, q) = (alpha.numer() as i64, alpha.denom() as i64);
    let src = 0;
    let sink = 1;
    let vertex_node = |i: usize| 2 + i;
    let edge_node = |j: usize| 2 + free.len() + j;
    let mut net = Network::new(2 + free.len() + open_edges.len());
    for i in 0..free.len() {
        net.add_arc(vertex_node(i), sink, q);
    }
    for (j, &(u, v)) in open_edges.iter().enumerate() {
        net.add_arc(src, edge_node(j), p);
        for w in [u, v] {
            if !base.contains(w) {
                net.add_arc(edge_node(j), vertex_node(slot[w]), INF);
            }
        }
    }
    let cut = net.max_flow(src, sink);
    let gain = p as i128 * open_edges.len() as i128 - cut as i128;
    let value = scaled_delta_of(g, &base, alpha) - gain;

    let from_src = net.reachable_from(src);
    let to_sink = net.reaching(sink);
    let mut smallest = base.clone();
    let mut largest = base.clone();
    for (i, &v) in free.iter().enumerate() {
        if from_src[vertex_node(i)] {
            smallest.insert(v);
        }
        if !to_sink[vertex_node(i)] {
            largest.insert(v);
        }
    }
    SupersetMinimum { value, smallest, largest }
}

/// Outcome of a membership or closedness test; `witness` is a violating
/// vertex set when `holds` is false.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub holds: bool,
    pub witness: Option<VertexSet>,
}

impl Verdict {
    fn pass() -> Self {
        Verdict { holds: true, witness: None }
    }

    fn fail(w: VertexSet) -> Self {
        Verdict { holds: false, witness: Some(w) }
    }
}

/// Membership in `K_alpha`: every induced subgraph has `delta >= 0`. On
/// failure the witness is a minimiser of `delta`.
pub fn in_k_alpha(g: &Graph, alpha: Alpha) -> Verdict {
    let m = minimize_over_supersets(g, &VertexSet::new(g.n()), alpha);
    if m.value >= 0 {
        Verdict::pass()
    } else {
        Verdict::fail(m.smallest)
    }
}

/// Closedness of `a` in `b`: weak asks `delta(a) <= delta(c)` for every
/// `a ⊆ c ⊆ b`, strict asks `delta(a) < delta(c)` for every `a ⊊ c ⊆ b`.
pub fn is_closed(a: &VertexSet, b: &Graph, alpha: Alpha, kind: Closedness) -> Result<Verdict> {
    if a.iter().any(|v| v >= b.n()) {
        return Err(Error::structural(format!(
            "set {a:?} is not inside a graph of order {}",
            b.n()
        )));
    }
    let a = a.resized(b.n());
    let m = minimize_over_supersets(b, &a, alpha);
    let base_value = scaled_delta_of(b, &a, alpha);
    if m.value < base_value {
        return Ok(Verdict::fail(m.smallest));
    }
    if kind == Closedness::Strict && m.largest != a {
        return Ok(Verdict::fail(m.largest));
    }
    Ok(Verdict::pass())
}

/// The closure of `a` in `g`: the least weakly closed superset (weak), or
/// the greatest minimiser, which is the least strictly closed superset
/// (strict).
pub fn closure(g: &Graph, a: &VertexSet, alpha: Alpha, kind: Closedness) -> VertexSet {
    let m = minimize_over_supersets(g, a, alpha);
    match kind {
        Closedness::Weak => m.smallest,
        Closedness::Strict => m.largest,
    }
}

/// Lowest-index vertex of degree below `k_star`.
pub fn min_degree_vertex_below(g: &Graph, k_star: usize) -> Option<usize> {
    (0..g.n()).find(|&v| g.degree(v) < k_star)
}

/// Repeatedly deletes a lowest-index vertex of degree below `k_star` in the
/// remaining graph. Returns the deletion order, or the nonempty remainder
/// in which every vertex has degree at least `k_star`.
pub fn low_degree_elimination(g: &Graph, k_star: usize) -> std::result::Result<Vec<usize>, VertexSet> {
    let mut remaining = g.vertex_set();
    let mut order = Vec::with_capacity(g.n());
    while !remaining.is_empty() {
        let next = remaining
            .iter()
            .find(|&v| g.neighbors(v).intersection_len(&remaining) < k_star);
        match next {
            Some(v) => {
                remaining.remove(v);
                order.push(v);
            }
            None => return Err(remaining),
        }
    }
    Ok(order)
}

/// Colouring with at most `k_star` colours for members of `K_alpha` when
/// `alpha * k_star > 2`: eliminate low-degree vertices, then colour greedily
/// in reverse elimination order.
pub fn kstar_coloring(g: &Graph, alpha: Alpha, k_star: usize) -> Result<Coloring> {
    if !alpha.times_exceeds(k_star as u64, 2) {
        return Err(Error::contract(format!(
            "kstar_coloring needs alpha * k* > 2, got alpha = {alpha}, k* = {k_star}"
        )));
    }
    match low_degree_elimination(g, k_star) {
        Ok(order) => {
            let c = greedy_color_with_order(g, &order)?;
            debug_assert!(c.palette_size() <= k_star);
            Ok(c)
        }
        Err(core) => {
            let d = alpha.unscale(scaled_delta_of(g, &core, alpha));
            Err(Error::contract(format!(
                "graph is not in K_{alpha}: every vertex of {core:?} has degree >= {k_star} there, \
                 and that set has delta = {d}"
            )))
        }
    }
}

/// Strict closedness of `a_sub` in `a` when `alpha < 1/max_degree(a)`,
/// a range in which it always holds.
pub fn closedness_by_degree(a_sub: &VertexSet, a: &Graph, alpha: Alpha) -> Result<bool> {
    let d = a.max_degree() as u64;
    if !alpha.below_reciprocal(d) {
        return Err(Error::contract(format!(
            "closedness_by_degree needs alpha < 1/{d}, got {alpha}"
        )));
    }
    Ok(is_closed(a_sub, a, alpha, Closedness::Strict)?.holds)
}

/// Membership report for the Mycielskian of a class member.
#[derive(Clone, Debug)]
pub struct MycielskiMembership {
    pub graph: Graph,
    /// `alpha < 1/max_degree` of the Mycielskian
    pub degree_bound_holds: bool,
    pub member: bool,
    /// the original copy is closed in the Mycielskian
    pub base_closed: bool,
}

pub fn mycielskian_in_class(a: &Graph, alpha: Alpha, kind: Closedness) -> Result<MycielskiMembership> {
    if !in_k_alpha(a, alpha).holds {
        return Err(Error::contract(format!("input graph is not in K_{alpha}")));
    }
    let r = mycielskian(a)?;
    let d = r.graph.max_degree() as u64;
    let degree_bound_holds = alpha.below_reciprocal(d);
    let member = in_k_alpha(&r.graph, alpha).holds;
    let base_closed = is_closed(&r.original, &r.graph, alpha, kind)?.holds;
    Ok(MycielskiMembership { graph: r.graph, degree_bound_holds, member, base_closed })
}

/// A graph with chromatic number `n` together with `epsilon = 1/max_degree`
/// (1 for the single vertex): for every rational `0 < alpha < epsilon`
/// the witness lies in `K_alpha` with all subsets strictly closed.
#[derive(Clone, Debug)]
pub struct EpsilonWitness {
    pub epsilon: Alpha,
    pub witness: Graph,
}

pub fn lower_bound_epsilon(n: usize) -> Result<EpsilonWitness> {
    let witness = match n {
        0 => return Err(Error::Degenerate("lower_bound_epsilon needs n >= 1".into())),
        1 => complete_graph(1)?,
        _ => mycielski_power(&complete_graph(2)?, n - 2)?,
    };
    let d = witness.max_degree().max(1) as u64;
    Ok(EpsilonWitness { epsilon: Alpha::new(1, d)?, witness })
}
