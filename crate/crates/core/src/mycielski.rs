//! Mycielskian built from free amalgamation steps.
//!
//! For a graph `A` on `0..n`: each vertex `v` gets a sibling by gluing a
//! copy of `A` to `A` over `A \ {v}`; the `n` one-point extensions are then
//! amalgamated over `A`, and finally an apex is glued onto the (edge-free)
//! sibling set as the centre of a star. Layout of the result: originals
//! `0..n`, sibling of `i` at `n + i`, apex at `2n`.

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::graph::{free_amalgam, Glue, Graph};

/// One free amalgamation `b ⊕ c` performed during the construction.
#[derive(Clone, Debug)]
pub struct AmalgamationStep {
    pub b: Graph,
    pub c: Graph,
    pub glue: Glue,
}

#[derive(Clone, Debug)]
pub struct MycielskiResult {
    pub graph: Graph,
    pub original: VertexSet,
    /// `siblings[i]` is the sibling of original vertex `i`
    pub siblings: Vec<usize>,
    pub apex: usize,
    /// the amalgamation steps in execution order
    pub steps: Vec<AmalgamationStep>,
}

fn star(leaves: usize) -> Graph {
    let mut g = Graph::new(leaves + 1);
    for i in 0..leaves {
        g.add_edge(i, leaves);
    }
    g
}

pub fn mycielskian(a: &Graph) -> Result<MycielskiResult> {
    let n = a.n();
    if n == 0 {
        return Err(Error::Degenerate("mycielskian of the empty graph".into()));
    }
    let mut a = a.clone();
    a.clear_labels();
    let mut steps = Vec::new();
    let mut amalgamate = |b: &Graph, c: &Graph, glue: Glue| -> Result<Graph> {
        let d = free_amalgam(b, c, &glue)?.graph;
        steps.push(AmalgamationStep { b: b.clone(), c: c.clone(), glue });
        Ok(d)
    };

    let all: Vec<usize> = (0..n).collect();
    let mut tilde = a.clone();
    for v in 0..n {
        let rest: Vec<usize> = (0..n).filter(|&u| u != v).collect();
        let with_sibling = amalgamate(&a, &a, Glue::new(rest.clone(), rest))?;
        tilde = amalgamate(&tilde, &with_sibling, Glue::new(all.clone(), all.clone()))?;
    }
    let siblings: Vec<usize> = (n..2 * n).collect();
    let graph = amalgamate(&tilde, &star(n), Glue::new(siblings.clone(), all.clone()))?;

    let result = MycielskiResult {
        graph,
        original: VertexSet::from_members(2 * n + 1, 0..n),
        siblings,
        apex: 2 * n,
        steps,
    };
    debug_assert_eq!(result.graph, mycielskian_direct(&a));
    Ok(result)
}

/// The same graph written down from the adjacency rules directly; used as
/// a cross-check of the amalgamation route.
pub fn mycielskian_direct(a: &Graph) -> Graph {
    let n = a.n();
    let mut g = a.with_extra_vertices(n + 1);
    for (u, v) in a.edges() {
        g.add_edge(u, n + v);
        g.add_edge(v, n + u);
    }
    for i in 0..n {
        g.add_edge(n + i, 2 * n);
    }
    g
}

/// The `k` successive Mycielskians of `a` (the input itself not included).
pub fn iterated_mycielskian(a: &Graph, k: usize) -> Result<Vec<MycielskiResult>> {
    let mut out: Vec<MycielskiResult> = Vec::with_capacity(k);
    for _ in 0..k {
        let prev = out.last().map(|r| &r.graph).unwrap_or(a);
        let next = mycielskian(prev)?;
        out.push(next);
    }
    Ok(out)
}

/// `Myc^k(g)`, just the graph.
pub fn mycielski_power(g: &Graph, k: usize) -> Result<Graph> {
    if k == 0 {
        return Ok(g.clone());
    }
    Ok(iterated_mycielskian(g, k)?.pop().unwrap().graph)
}
