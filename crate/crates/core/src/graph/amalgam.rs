use super::{Embedding, Graph};
use crate::error::{Error, Result};

/// Two embeddings of a common graph `A`: vertex `i` of `A` sits at
/// `in_b[i]` in `B` and at `in_c[i]` in `C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Glue {
    pub in_b: Vec<usize>,
    pub in_c: Vec<usize>,
}

impl Glue {
    pub fn new(in_b: Vec<usize>, in_c: Vec<usize>) -> Self {
        Glue { in_b, in_c }
    }

    /// Gluing over the empty graph (disjoint union).
    pub fn empty() -> Self {
        Glue { in_b: vec![], in_c: vec![] }
    }

    pub fn swapped(&self) -> Glue {
        Glue { in_b: self.in_c.clone(), in_c: self.in_b.clone() }
    }

    pub fn len(&self) -> usize {
        self.in_b.len()
    }

    pub fn is_empty(&self) -> bool {
        self.in_b.is_empty()
    }
}

/// Result of [`free_amalgam`]. `B` keeps its vertex numbering (`b_map` is
/// the identity); vertices of `C \ A` follow in increasing `C` order.
#[derive(Clone, Debug)]
pub struct Amalgam {
    pub graph: Graph,
    pub b_map: Embedding,
    pub c_map: Embedding,
}

fn check_injective(map: &[usize], order: usize, side: &str) -> Result<()> {
    let mut seen = vec![false; order];
    for &v in map {
        if v >= order {
            return Err(Error::structural(format!(
                "glue vertex {v} out of range for {side} of order {order}"
            )));
        }
        if seen[v] {
            return Err(Error::structural(format!("glue map into {side} is not injective")));
        }
        seen[v] = true;
    }
    Ok(())
}

/// Free amalgam `B ⊕_A C`: the union of `B` and `C` identified along the
/// glue, with no edges between `B \ A` and `C \ A`.
pub fn free_amalgam(b: &Graph, c: &Graph, glue: &Glue) -> Result<Amalgam> {
    if glue.in_b.len() != glue.in_c.len() {
        return Err(Error::structural("glue maps have different lengths"));
    }
    check_injective(&glue.in_b, b.n(), "B")?;
    check_injective(&glue.in_c, c.n(), "C")?;
    let k = glue.len();
    for i in 0..k {
        for j in (i + 1)..k {
            if b.has_edge(glue.in_b[i], glue.in_b[j]) != c.has_edge(glue.in_c[i], glue.in_c[j]) {
                return Err(Error::structural(format!(
                    "glue disagrees on the pair ({i},{j}) of the shared graph"
                )));
            }
        }
    }

    let mut c_map = vec![usize::MAX; c.n()];
    for (i, &cv) in glue.in_c.iter().enumerate() {
        c_map[cv] = glue.in_b[i];
    }
    let mut next = b.n();
    for slot in c_map.iter_mut() {
        if *slot == usize::MAX {
            *slot = next;
            next += 1;
        }
    }

    let mut d = b.with_extra_vertices(next - b.n());
    for (u, v) in c.edges() {
        let (x, y) = (c_map[u], c_map[v]);
        if !d.has_edge(x, y) {
            d.add_edge(x, y);
        }
    }
    if let (Some(lb), Some(lc)) = (b.labels(), c.labels()) {
        let mut labels = lb.to_vec();
        labels.resize(next, String::new());
        for (cv, &dv) in c_map.iter().enumerate() {
            if dv >= b.n() {
                labels[dv] = lc[cv].clone();
            }
        }
        d.set_labels(labels)?;
    }
    Ok(Amalgam {
        graph: d,
        b_map: Embedding::identity(b.n()),
        c_map: Embedding::new(c_map),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_graph, find_isomorphism, path};

    #[test]
    fn two_edges_over_a_vertex_make_p3() {
        let k2 = complete_graph(2).unwrap();
        let am = free_amalgam(&k2, &k2, &Glue::new(vec![1], vec![0])).unwrap();
        assert_eq!(am.graph.n(), 3);
        assert!(find_isomorphism(&am.graph, &path(3).unwrap()).is_some());
    }

    #[test]
    fn two_triangles_over_a_vertex() {
        let k3 = complete_graph(3).unwrap();
        let am = free_amalgam(&k3, &k3, &Glue::new(vec![0], vec![0])).unwrap();
        assert_eq!((am.graph.n(), am.graph.edge_count()), (5, 6));
        assert!(am.c_map.is_induced(&k3, &am.graph));
        // no cross edges between the two private parts
        assert!(!am.graph.has_edge(1, 3) && !am.graph.has_edge(2, 4));
    }

    #[test]
    fn bad_glue_rejected() {
        let k2 = complete_graph(2).unwrap();
        let p3 = path(3).unwrap();
        assert!(free_amalgam(&k2, &k2, &Glue::new(vec![0, 0], vec![0, 1])).is_err());
        assert!(free_amalgam(&k2, &k2, &Glue::new(vec![0], vec![5])).is_err());
        // edge in B, non-edge in C
        assert!(free_amalgam(&k2, &p3, &Glue::new(vec![0, 1], vec![0, 2])).is_err());
        assert!(free_amalgam(&k2, &p3, &Glue::new(vec![0], vec![])).is_err());
    }
}
