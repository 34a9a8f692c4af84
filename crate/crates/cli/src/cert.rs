//! Self-contained certificate files and their definitional verification.

use chromodel::bitset::VertexSet;
use chromodel::cell::{rational_str, verify_point_clique, verify_point_coloring, CellSpec};
use chromodel::coloring::{verify_clique, verify_coloring, Coloring};
use chromodel::graph::io::GraphDescriptor;
use chromodel::witnesses::{verify_half_graph, verify_shatter, HalfGraphWitness, ShatterWitness};
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

mod rational_list {
    use super::*;
    use serde::{Deserializer, Serializer};

    #[derive(Serialize, Deserialize)]
    struct One(#[serde(with = "rational_str")] BigRational);

    pub fn serialize<S: Serializer>(xs: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<One> = xs.iter().cloned().map(One).collect();
        v.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigRational>, D::Error> {
        let v = Vec::<One>::deserialize(d)?;
        Ok(v.into_iter().map(|o| o.0).collect())
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// proper colouring with at most `colors` colours
    Coloring { graph: GraphDescriptor, coloring: Vec<usize>, colors: usize },
    /// `members` pairwise adjacent
    Clique { graph: GraphDescriptor, members: Vec<usize> },
    /// `chi` is pinned when the clique and colouring sizes meet
    Chromatic {
        graph: GraphDescriptor,
        coloring: Vec<usize>,
        colors: usize,
        clique: Vec<usize>,
    },
    HalfGraph { graph: GraphDescriptor, a_seq: Vec<usize>, b_seq: Vec<usize> },
    Shatter { graph: GraphDescriptor, base: Vec<usize>, realizers: Vec<usize> },
    CellClique {
        cell: CellSpec,
        #[serde(with = "rational_list")]
        points: Vec<BigRational>,
    },
    CellColoring {
        cell: CellSpec,
        #[serde(with = "rational_list")]
        points: Vec<BigRational>,
        colors: Vec<usize>,
        palette: usize,
    },
}

fn coloring_ok(g: &GraphDescriptor, colors: &[usize], bound: usize) -> anyhow::Result<bool> {
    let g = g.to_graph()?;
    let c = Coloring::new(colors.to_vec());
    Ok(verify_coloring(&g, &c).unwrap_or(false) && c.palette_size() <= bound)
}

fn clique_ok(g: &GraphDescriptor, members: &[usize]) -> anyhow::Result<bool> {
    let g = g.to_graph()?;
    if members.iter().any(|&v| v >= g.n()) {
        return Ok(false);
    }
    let set = VertexSet::from_members(g.n(), members.iter().copied());
    Ok(set.len() == members.len() && verify_clique(&g, &set))
}

impl Certificate {
    /// Re-checks the claim from the definitions only (no search).
    pub fn verify(&self) -> anyhow::Result<bool> {
        Ok(match self {
            Certificate::Coloring { graph, coloring, colors } => coloring_ok(graph, coloring, *colors)?,
            Certificate::Clique { graph, members } => clique_ok(graph, members)?,
            Certificate::Chromatic { graph, coloring, colors, clique } => {
                coloring_ok(graph, coloring, *colors)? && clique_ok(graph, clique)?
            }
            Certificate::HalfGraph { graph, a_seq, b_seq } => {
                let w = HalfGraphWitness { a_seq: a_seq.clone(), b_seq: b_seq.clone() };
                verify_half_graph(&graph.to_graph()?, &w)
            }
            Certificate::Shatter { graph, base, realizers } => {
                let w = ShatterWitness { base: base.clone(), realizers: realizers.clone() };
                verify_shatter(&graph.to_graph()?, &w)
            }
            Certificate::CellClique { cell, points } => {
                cell.validate().is_ok() && verify_point_clique(cell, points)
            }
            Certificate::CellColoring { cell, points, colors, palette } => {
                let mut used = colors.clone();
                used.sort_unstable();
                used.dedup();
                cell.validate().is_ok()
                    && points.iter().all(|p| cell.is_vertex(p))
                    && used.len() <= *palette
                    && verify_point_coloring(cell, points, colors)
            }
        })
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::Coloring { .. } => "coloring",
            Certificate::Clique { .. } => "clique",
            Certificate::Chromatic { .. } => "chromatic",
            Certificate::HalfGraph { .. } => "half_graph",
            Certificate::Shatter { .. } => "shatter",
            Certificate::CellClique { .. } => "cell_clique",
            Certificate::CellColoring { .. } => "cell_coloring",
        }
    }
}
