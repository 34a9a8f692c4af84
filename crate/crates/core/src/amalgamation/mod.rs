//! Amalgamation classes, extension axioms and finite approximants of their
//! limits.
//!
//! A [`ClassDescriptor`] names one of three built-in hereditary classes:
//! all finite graphs, `K_m`-free graphs, or a predimension class `K_alpha`
//! with weak or strict closed embeddings. An extension axiom over a vertex
//! set `A` of a graph `G` is a class member `B` containing `A`; it is
//! realized when `B` embeds into `G` fixing `A` pointwise (with closed
//! image for predimension classes). [`Grower`] builds approximants by
//! realizing axioms through free amalgamation; [`audit_extension_axioms`]
//! lists the unrealized ones.

mod extension;
mod growth;
mod homogeneity;

pub use extension::{ExtensionType, TypeCatalog};
pub use growth::{
    audit_extension_axioms, audit_extension_axioms_over, grow_generic, is_realized, GrowthConfig,
    GrowthLog, GrowthStep, Grower, UnrealizedAxiom,
};
pub use homogeneity::{check_homogeneity, HomogeneityReport};

use std::fmt;

use crate::bitset::VertexSet;
use crate::coloring::max_clique;
use crate::error::{Error, Result};
use crate::graph::{free_amalgam, Glue, Graph};
use crate::predimension::{in_k_alpha, is_closed, Alpha, Closedness};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClassKind {
    AllGraphs,
    /// graphs without a clique of the given size (at least 3)
    CliqueFree(usize),
    Predimension { alpha: Alpha, closedness: Closedness },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassDescriptor {
    pub name: String,
    pub kind: ClassKind,
}

impl fmt::Display for ClassDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

impl ClassDescriptor {
    pub fn all_graphs() -> Self {
        ClassDescriptor { name: "all".into(), kind: ClassKind::AllGraphs }
    }

    /// `K_m`-free graphs; `m >= 3` so that the class contains an edge.
    pub fn clique_free(m: usize) -> Result<Self> {
        if m < 3 {
            return Err(Error::contract(format!(
                "K_{m}-free graphs contain no edge; need m >= 3"
            )));
        }
        let name = if m == 3 { "trianglefree".to_string() } else { format!("k{m}free") };
        Ok(ClassDescriptor { name, kind: ClassKind::CliqueFree(m) })
    }

    pub fn triangle_free() -> Self {
        Self::clique_free(3).unwrap()
    }

    /// `K_alpha`; strict closedness needs `alpha < 1`.
    pub fn predimension(alpha: Alpha, closedness: Closedness) -> Result<Self> {
        if closedness == Closedness::Strict && alpha.numer() == alpha.denom() {
            return Err(Error::contract("strict closedness needs alpha < 1"));
        }
        let suffix = match closedness {
            Closedness::Weak => "",
            Closedness::Strict => ",strict",
        };
        Ok(ClassDescriptor {
            name: format!("kalpha({alpha}{suffix})"),
            kind: ClassKind::Predimension { alpha, closedness },
        })
    }

    /// Parses the command-line class names `all`, `trianglefree`,
    /// `k<m>free` and `kalpha` (which needs `alpha`).
    pub fn parse(name: &str, alpha: Option<Alpha>, strict: bool) -> Result<Self> {
        match name {
            "all" => Ok(Self::all_graphs()),
            "trianglefree" => Ok(Self::triangle_free()),
            "kalpha" => {
                let alpha = alpha.ok_or_else(|| Error::contract("class kalpha needs --alpha"))?;
                let kind = if strict { Closedness::Strict } else { Closedness::Weak };
                Self::predimension(alpha, kind)
            }
            _ => {
                let m = name
                    .strip_prefix('k')
                    .and_then(|r| r.strip_suffix("free"))
                    .and_then(|m| m.parse::<usize>().ok())
                    .ok_or_else(|| Error::contract(format!("unknown class {name:?}")))?;
                Self::clique_free(m)
            }
        }
    }

    pub fn closedness(&self) -> Option<(Alpha, Closedness)> {
        match self.kind {
            ClassKind::Predimension { alpha, closedness } => Some((alpha, closedness)),
            _ => None,
        }
    }

    /// A vertex set of `g` certifying `g` is outside the class, if any.
    pub fn violation(&self, g: &Graph) -> Option<VertexSet> {
        match self.kind {
            ClassKind::AllGraphs => None,
            ClassKind::CliqueFree(m) => {
                let w = max_clique(g);
                (w.size() >= m).then(|| {
                    VertexSet::from_members(g.n(), w.members.iter().take(m))
                })
            }
            ClassKind::Predimension { alpha, .. } => in_k_alpha(g, alpha).witness,
        }
    }

    pub fn contains(&self, g: &Graph) -> bool {
        match self.kind {
            ClassKind::AllGraphs => true,
            ClassKind::CliqueFree(m) => max_clique(g).size() < m,
            ClassKind::Predimension { alpha, .. } => in_k_alpha(g, alpha).holds,
        }
    }

    /// Whether `a` may serve as the base of an embedding into `g`: always
    /// for plain classes, closedness for predimension classes.
    pub fn is_strong(&self, a: &VertexSet, g: &Graph) -> bool {
        match self.kind {
            ClassKind::Predimension { alpha, closedness } => {
                is_closed(a, g, alpha, closedness).map(|v| v.holds).unwrap_or(false)
            }
            _ => true,
        }
    }
}

/// Whether the free amalgam of `b` and `c` over the glue stays in the
/// class, with both factors closed in it for predimension classes. The
/// factors must be members with the shared part closed in each.
pub fn has_fap_instance(d: &ClassDescriptor, b: &Graph, c: &Graph, glue: &Glue) -> Result<bool> {
    if !d.contains(b) {
        return Err(Error::contract(format!("B is not in class {d}")));
    }
    if !d.contains(c) {
        return Err(Error::contract(format!("C is not in class {d}")));
    }
    let in_b = VertexSet::from_members(b.n(), glue.in_b.iter().copied());
    let in_c = VertexSet::from_members(c.n(), glue.in_c.iter().copied());
    if !d.is_strong(&in_b, b) {
        return Err(Error::contract(format!("shared part is not closed in B for {d}")));
    }
    if !d.is_strong(&in_c, c) {
        return Err(Error::contract(format!("shared part is not closed in C for {d}")));
    }
    let am = free_amalgam(b, c, glue)?;
    if !d.contains(&am.graph) {
        return Ok(false);
    }
    let n = am.graph.n();
    Ok(d.is_strong(&am.b_map.image(n), &am.graph) && d.is_strong(&am.c_map.image(n), &am.graph))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_graph, cycle, path, random_graph};
    use crate::rng::seeded;

    #[test]
    fn parse_names() {
        assert_eq!(ClassDescriptor::parse("all", None, false).unwrap().kind, ClassKind::AllGraphs);
        assert_eq!(
            ClassDescriptor::parse("trianglefree", None, false).unwrap().kind,
            ClassKind::CliqueFree(3)
        );
        assert_eq!(ClassDescriptor::parse("k5free", None, false).unwrap().kind, ClassKind::CliqueFree(5));
        assert!(ClassDescriptor::parse("k2free", None, false).is_err());
        assert!(ClassDescriptor::parse("kalpha", None, false).is_err());
        assert!(ClassDescriptor::parse("kalpha", Some("1".parse().unwrap()), true).is_err());
        let d = ClassDescriptor::parse("kalpha", Some("1/2".parse().unwrap()), true).unwrap();
        assert_eq!(d.closedness().unwrap().1, Closedness::Strict);
        assert!(ClassDescriptor::parse("bogus", None, false).is_err());
    }

    #[test]
    fn classes_are_nontrivial_and_hereditary_on_samples() {
        let classes = [
            ClassDescriptor::all_graphs(),
            ClassDescriptor::triangle_free(),
            ClassDescriptor::clique_free(4).unwrap(),
            ClassDescriptor::predimension("1/2".parse().unwrap(), Closedness::Weak).unwrap(),
            ClassDescriptor::predimension("3/4".parse().unwrap(), Closedness::Strict).unwrap(),
        ];
        let mut rng = seeded(11);
        for d in &classes {
            assert!(d.contains(&complete_graph(2).unwrap()));
            for _ in 0..40 {
                let g = random_graph(8, 0.4, &mut rng);
                if d.contains(&g) {
                    for v in 0..g.n() {
                        let mut s = g.vertex_set();
                        s.remove(v);
                        assert!(d.contains(&g.induced_subgraph(&s).unwrap()));
                    }
                } else {
                    let w = d.violation(&g).unwrap();
                    assert!(!d.contains(&g.induced_subgraph(&w).unwrap()));
                }
            }
        }
    }

    #[test]
    fn fap_examples() {
        let tf = ClassDescriptor::triangle_free();
        let c5 = cycle(5).unwrap();
        let p4 = path(4).unwrap();
        let glue = Glue::new(vec![0, 1], vec![1, 2]);
        assert!(has_fap_instance(&tf, &c5, &p4, &glue).unwrap());

        let all = ClassDescriptor::all_graphs();
        let k4 = complete_graph(4).unwrap();
        assert!(has_fap_instance(&all, &k4, &k4, &Glue::new(vec![0, 1], vec![2, 3])).unwrap());

        let k3 = complete_graph(3).unwrap();
        let half = ClassDescriptor::predimension("1/2".parse().unwrap(), Closedness::Weak).unwrap();
        assert!(has_fap_instance(&half, &k3, &k3, &Glue::new(vec![0], vec![0])).unwrap());

        // precondition failures are reported, not answered
        assert!(has_fap_instance(&tf, &k3, &p4, &Glue::empty()).is_err());
        let one = ClassDescriptor::predimension("1".parse().unwrap(), Closedness::Weak).unwrap();
        assert!(has_fap_instance(&one, &k3, &k3, &Glue::new(vec![0], vec![0])).is_err());
    }
}
