//! Finite homogeneity truncation check: every isomorphism between induced
//! subgraphs on at most `k` vertices extends to an automorphism.
//!
//! Automorphisms found along the way are kept as generators. A base set in
//! the orbit of one already checked needs no work, and a target tuple in
//! the orbit of the base tuple under the generated group is known to be
//! reachable without a new search.

use std::collections::{HashSet, VecDeque};

use crate::graph::{automorphism_extending, Graph};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogeneityReport {
    pub homogeneous: bool,
    /// subgraph size actually checked (`k` clamped to the order of the graph)
    pub k: usize,
    /// a partial isomorphism `x[i] -> y[i]` with no extension
    pub counterexample: Option<(Vec<usize>, Vec<usize>)>,
    /// number of automorphism searches performed
    pub searches: usize,
}

fn orbit<T: Clone + Eq + std::hash::Hash>(start: T, gens: &[Vec<usize>], act: impl Fn(&T, &[usize]) -> T) -> HashSet<T> {
    let mut seen = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = act(&x, g);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen
}

fn act_tuple(t: &[usize], g: &[usize]) -> Vec<usize> {
    t.iter().map(|&v| g[v]).collect()
}

fn act_set(t: &[usize], g: &[usize]) -> Vec<usize> {
    let mut s = act_tuple(t, g);
    s.sort_unstable();
    s
}

/// Ordered tuples `y` of distinct vertices with `x[i] -> y[i]` a partial
/// isomorphism.
fn matching_tuples(g: &Graph, x: &[usize], f: &mut impl FnMut(&[usize]) -> bool) -> bool {
    fn rec(g: &Graph, x: &[usize], y: &mut Vec<usize>, f: &mut impl FnMut(&[usize]) -> bool) -> bool {
        let i = y.len();
        if i == x.len() {
            return f(y);
        }
        for v in 0..g.n() {
            if y.contains(&v) {
                continue;
            }
            if (0..i).all(|j| g.has_edge(x[j], x[i]) == g.has_edge(y[j], v)) {
                y.push(v);
                if !rec(g, x, y, f) {
                    return false;
                }
                y.pop();
            }
        }
        true
    }
    rec(g, x, &mut Vec::with_capacity(x.len()), f)
}

fn subsets(n: usize, k: usize, f: &mut impl FnMut(&[usize]) -> bool) -> bool {
    fn rec(n: usize, k: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize]) -> bool) -> bool {
        if cur.len() == k {
            return f(cur);
        }
        let start = cur.last().map_or(0, |&v| v + 1);
        for v in start..n {
            cur.push(v);
            if !rec(n, k, cur, f) {
                return false;
            }
            cur.pop();
        }
        true
    }
    rec(n, k, &mut Vec::with_capacity(k), f)
}

/// Exhaustive check over base sets of size `1..=k`. This is a statement
/// about the finite graph only.
pub fn check_homogeneity(g: &Graph, k: usize) -> HomogeneityReport {
    let k = k.min(g.n());
    let mut gens: Vec<Vec<usize>> = Vec::new();
    let mut searches = 0;
    let mut counterexample = None;
    for size in 1..=k {
        let mut covered: HashSet<Vec<usize>> = HashSet::new();
        let ok = subsets(g.n(), size, &mut |x| {
            if covered.contains(x) {
                return true;
            }
            let x = x.to_vec();
            let mut reached = orbit(x.clone(), &gens, |t, g| act_tuple(t, g));
            let ok = matching_tuples(g, &x, &mut |y| {
                if reached.contains(y) {
                    return true;
                }
                searches += 1;
                let fixed: Vec<(usize, usize)> = x.iter().copied().zip(y.iter().copied()).collect();
                match automorphism_extending(g, &fixed) {
                    Some(a) => {
                        gens.push(a.map);
                        reached = orbit(x.clone(), &gens, |t, g| act_tuple(t, g));
                        true
                    }
                    None => {
                        counterexample = Some((x.clone(), y.to_vec()));
                        false
                    }
                }
            });
            if ok {
                covered.extend(orbit(x, &gens, |t, g| act_set(t, g)));
            }
            ok
        });
        if !ok {
            break;
        }
    }
    HomogeneityReport { homogeneous: counterexample.is_none(), k, counterexample, searches }
}
