//! Growing approximants by realizing extension axioms.
//!
//! Growth proceeds in rounds. A round freezes the current vertex set as its
//! core and collects every unrealized axiom `(A, B)` with `A` inside the
//! core, `|A| < size_cap`, `|B| <= size_cap` (and `A` closed in the graph
//! for predimension classes). Axioms are then realized smallest `|B|`
//! first, uniformly at random within a size, each by a free amalgamation
//! of `B` with the current graph over `A`; an axiom that an earlier step
//! of the round already realized is skipped. A round that starts with
//! nothing pending means the graph is saturated at the size cap.

use std::collections::BTreeMap;
use std::ops::ControlFlow;

use rand::Rng as _;

use super::extension::check_enumerable;
use super::{ClassDescriptor, ExtensionType, TypeCatalog};
use crate::bitset::VertexSet;
use crate::coloring::{chromatic_bounds, clique_number};
use crate::error::{Error, Result};
use crate::graph::{for_each_embedding, free_amalgam, Embedding, Glue, Graph};
use crate::rng::step_stream;
use crate::witnesses::max_half_graph;

#[derive(Clone, Debug)]
pub struct GrowthConfig {
    pub budget: usize,
    pub size_cap: usize,
    pub seed: u64,
    /// search-node limit per colourability decision when logging chi
    pub chi_node_limit: u64,
    /// compute chi bounds every this many steps (0: never)
    pub chi_every: usize,
    /// log the half-graph order up to this cap after each step
    pub half_graph_cap: Option<usize>,
    /// re-check, after every step, that all earlier realized images are
    /// still closed (predimension classes)
    pub check_closed_images: bool,
}

impl Default for GrowthConfig {
    fn default() -> Self {
        GrowthConfig {
            budget: 100,
            size_cap: 3,
            seed: 0,
            chi_node_limit: 200_000,
            chi_every: 1,
            half_graph_cap: None,
            check_closed_images: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthStep {
    pub step: usize,
    pub description: String,
    pub size: usize,
    pub edges: usize,
    /// exact chromatic number when the bounded search settled it
    pub chi: Option<usize>,
    /// best proven lower bound so far (nondecreasing)
    pub chi_lower: usize,
    pub chi_upper: Option<usize>,
    pub omega: usize,
    pub half_graph: Option<usize>,
}

#[derive(Clone, Debug, Default)]
pub struct GrowthLog {
    pub seed: u64,
    pub class: String,
    pub steps: Vec<GrowthStep>,
    pub notes: Vec<String>,
    pub rounds: usize,
    pub saturated: bool,
}

fn opt(x: Option<usize>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

impl GrowthLog {
    /// `step,size,edges,chi,omega,chi_lower,chi_upper,half_graph,description`;
    /// unknown values are left empty.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("step,size,edges,chi,omega,chi_lower,chi_upper,half_graph,description\n");
        for s in &self.steps {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},\"{}\"\n",
                s.step,
                s.size,
                s.edges,
                opt(s.chi),
                s.omega,
                s.chi_lower,
                opt(s.chi_upper),
                opt(s.half_graph),
                s.description.replace('"', "\"\"")
            ));
        }
        out
    }
}

/// An extension axiom with no realization: `base` lists the vertices of
/// `A` in the graph, in the order matching the extension type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnrealizedAxiom {
    pub base: Vec<usize>,
    pub extension: ExtensionType,
}

fn for_each_combination(items: &[usize], k: usize, f: &mut impl FnMut(&[usize]) -> Result<()>) -> Result<()> {
    fn rec(
        items: &[usize],
        k: usize,
        start: usize,
        cur: &mut Vec<usize>,
        f: &mut impl FnMut(&[usize]) -> Result<()>,
    ) -> Result<()> {
        if cur.len() == k {
            return f(cur);
        }
        for i in start..items.len() {
            if items.len() - i < k - cur.len() {
                break;
            }
            cur.push(items[i]);
            rec(items, k, i + 1, cur, f)?;
            cur.pop();
        }
        Ok(())
    }
    rec(items, k, 0, &mut Vec::with_capacity(k), f)
}

/// Whether `b` embeds into `g` extending `fixed` with a strong image.
fn find_strong_embedding(d: &ClassDescriptor, b: &Graph, g: &Graph, fixed: &[(usize, usize)]) -> Option<Vec<usize>> {
    let mut found = None;
    for_each_embedding(b, g, fixed, |m| {
        let image = VertexSet::from_members(g.n(), m.iter().copied());
        if d.is_strong(&image, g) {
            found = Some(m.to_vec());
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    found
}

/// Whether the axiom "`t` over the vertices `base` of `g`" is realized.
pub fn is_realized(g: &Graph, d: &ClassDescriptor, base: &[usize], t: &ExtensionType) -> Result<bool> {
    let a = g.induced_by_list(base)?;
    let b = t.build(&a);
    let fixed: Vec<(usize, usize)> = base.iter().copied().enumerate().collect();
    Ok(find_strong_embedding(d, &b, g, &fixed).is_some())
}

fn unrealized(
    g: &Graph,
    core: &VertexSet,
    d: &ClassDescriptor,
    a_max: usize,
    b_max: usize,
    catalog: &mut TypeCatalog,
) -> Result<Vec<UnrealizedAxiom>> {
    if a_max > b_max {
        return Err(Error::contract(format!("a_max = {a_max} exceeds b_max = {b_max}")));
    }
    let members: Vec<usize> = core.iter().filter(|&v| v < g.n()).collect();
    // fail before any work rather than after hours of smaller sizes
    for k in 0..=a_max.min(members.len()) {
        for j in 1..=(b_max - k) {
            check_enumerable(k, j)?;
        }
    }
    let mut out = Vec::new();
    for k in 0..=a_max.min(members.len()) {
        for_each_combination(&members, k, &mut |base| {
            let base_set = VertexSet::from_members(g.n(), base.iter().copied());
            if !d.is_strong(&base_set, g) {
                return Ok(());
            }
            let a = g.induced_by_list(base)?;
            for j in 1..=(b_max - k) {
                let types = catalog.types(d, &a, j)?.to_vec();
                for t in types {
                    if !is_realized(g, d, base, &t)? {
                        out.push(UnrealizedAxiom { base: base.to_vec(), extension: t });
                    }
                }
            }
            Ok(())
        })?;
    }
    Ok(out)
}

/// Every axiom with `|A| <= a_max`, `|B| <= b_max` (and `A` closed, for
/// predimension classes) that `g` does not realize.
pub fn audit_extension_axioms(
    g: &Graph,
    d: &ClassDescriptor,
    a_max: usize,
    b_max: usize,
) -> Result<Vec<UnrealizedAxiom>> {
    audit_extension_axioms_over(g, &g.vertex_set(), d, a_max, b_max)
}

/// As [`audit_extension_axioms`], restricted to bases inside `core`.
pub fn audit_extension_axioms_over(
    g: &Graph,
    core: &VertexSet,
    d: &ClassDescriptor,
    a_max: usize,
    b_max: usize,
) -> Result<Vec<UnrealizedAxiom>> {
    unrealized(g, core, d, a_max, b_max, &mut TypeCatalog::new())
}

/// Incremental builder of an approximant; every change goes through a free
/// amalgamation and is logged.
pub struct Grower {
    class: ClassDescriptor,
    config: GrowthConfig,
    graph: Graph,
    log: GrowthLog,
    catalog: TypeCatalog,
    closed_images: Vec<VertexSet>,
    draws: u64,
}

impl Grower {
    pub fn new(class: ClassDescriptor, config: GrowthConfig) -> Result<Self> {
        Self::from_graph(class, Graph::new(0), config)
    }

    /// Starts from `g`, which must belong to the class (with the empty set
    /// closed in it, for predimension classes).
    pub fn from_graph(class: ClassDescriptor, g: Graph, config: GrowthConfig) -> Result<Self> {
        if config.size_cap == 0 {
            return Err(Error::contract("size_cap must be positive"));
        }
        if !class.contains(&g) {
            return Err(Error::contract(format!("starting graph is not in class {class}")));
        }
        if !class.is_strong(&VertexSet::new(g.n()), &g) {
            return Err(Error::contract(format!(
                "the empty set is not closed in the starting graph for {class}"
            )));
        }
        let log = GrowthLog {
            seed: config.seed,
            class: class.name.clone(),
            ..GrowthLog::default()
        };
        Ok(Grower {
            class,
            config,
            graph: g,
            log,
            catalog: TypeCatalog::new(),
            closed_images: Vec::new(),
            draws: 0,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn log(&self) -> &GrowthLog {
        &self.log
    }

    pub fn class(&self) -> &ClassDescriptor {
        &self.class
    }

    pub fn into_parts(self) -> (Graph, GrowthLog) {
        (self.graph, self.log)
    }

    /// Amalgamates `b` into the graph over `base` (`base[i]` in the graph is
    /// identified with `base_in_b[i]` in `b`), checks the class invariants
    /// and logs the step. Returns the embedding of `b`.
    fn amalgamate(&mut self, base: &[usize], b: &Graph, base_in_b: &[usize], description: String) -> Result<Embedding> {
        let am = free_amalgam(&self.graph, b, &Glue::new(base.to_vec(), base_in_b.to_vec()))?;
        let next = am.graph;
        if let Some(w) = self.class.violation(&next) {
            return Err(Error::structural(format!(
                "amalgam left class {}: violating set {w:?}",
                self.class
            )));
        }
        if self.class.closedness().is_some() {
            let image = am.c_map.image(next.n());
            if !self.class.is_strong(&image, &next) {
                return Err(Error::structural(format!("realized image {image:?} is not closed")));
            }
            if self.config.check_closed_images {
                for old in &self.closed_images {
                    let old = old.resized(next.n());
                    if !self.class.is_strong(&old, &next) {
                        return Err(Error::structural(format!(
                            "earlier closed image {old:?} lost closedness"
                        )));
                    }
                }
            }
            self.closed_images.push(image);
        }
        debug_assert!(next.n() >= self.graph.n());
        self.graph = next;
        self.record(description);
        Ok(am.c_map)
    }

    fn record(&mut self, description: String) {
        let g = &self.graph;
        let step = self.log.steps.len() + 1;
        let prev_lower = self.log.steps.last().map(|s| s.chi_lower).unwrap_or(0);
        let omega = clique_number(g);
        let (chi, chi_lower, chi_upper) = if self.config.chi_every > 0 && step.is_multiple_of(self.config.chi_every) {
            let b = chromatic_bounds(g, self.config.chi_node_limit);
            let lower = b.lower.max(prev_lower);
            let chi = (lower == b.upper).then_some(lower);
            (chi, lower, Some(b.upper))
        } else {
            (None, prev_lower.max(omega), None)
        };
        let half_graph = self.config.half_graph_cap.map(|cap| max_half_graph(g, cap).order);
        self.log.steps.push(GrowthStep {
            step,
            description,
            size: g.n(),
            edges: g.edge_count(),
            chi,
            chi_lower,
            chi_upper,
            omega,
            half_graph,
        });
    }

    /// Realizes an explicitly given axiom: `b` over the graph vertices
    /// `base`, where `base[i]` corresponds to `base_in_b[i]`.
    pub fn realize(&mut self, base: &[usize], b: &Graph, base_in_b: &[usize]) -> Result<Embedding> {
        if let Some(w) = self.class.violation(b) {
            return Err(Error::contract(format!("B is not in class {}: {w:?}", self.class)));
        }
        let base_set = VertexSet::from_members(self.graph.n(), base.iter().copied());
        if base_set.len() != base.len() {
            return Err(Error::structural("base lists a vertex twice"));
        }
        if !self.class.is_strong(&base_set, &self.graph) {
            return Err(Error::contract(format!("base {base:?} is not closed in the graph")));
        }
        let in_b = VertexSet::from_members(b.n(), base_in_b.iter().copied());
        if !self.class.is_strong(&in_b, b) {
            return Err(Error::contract("base is not closed in B"));
        }
        let description = format!("A={base:?} B=given graph on {} vertices", b.n());
        self.amalgamate(base, b, base_in_b, description)
    }

    fn realize_axiom(&mut self, ax: &UnrealizedAxiom) -> Result<Embedding> {
        let a = self.graph.induced_by_list(&ax.base)?;
        let b = ax.extension.build(&a);
        let base_in_b: Vec<usize> = (0..ax.base.len()).collect();
        let description = format!("A={:?} B{}", ax.base, ax.extension);
        self.amalgamate(&ax.base, &b, &base_in_b, description)
    }

    /// One round with at most `limit` realizations; `None` when nothing
    /// was pending (saturated at the size cap).
    fn round(&mut self, limit: usize) -> Result<Option<usize>> {
        let cap = self.config.size_cap;
        let core = self.graph.vertex_set();
        let pending = unrealized(&self.graph, &core, &self.class, cap - 1, cap, &mut self.catalog)?;
        if pending.is_empty() {
            if !self.log.saturated {
                self.log.saturated = true;
                self.log.notes.push(format!(
                    "saturated after {} steps: every axiom with |B| <= {cap} is realized",
                    self.log.steps.len()
                ));
            }
            return Ok(None);
        }
        self.log.rounds += 1;
        let mut buckets: BTreeMap<usize, Vec<UnrealizedAxiom>> = BTreeMap::new();
        for ax in pending {
            buckets.entry(ax.base.len() + ax.extension.new).or_default().push(ax);
        }
        let mut used = 0;
        while used < limit {
            let Some(mut entry) = buckets.first_entry() else { break };
            let bucket = entry.get_mut();
            let pick = step_stream(self.config.seed, self.draws).gen_range(0..bucket.len());
            self.draws += 1;
            let ax = bucket.swap_remove(pick);
            if bucket.is_empty() {
                entry.remove();
            }
            if is_realized(&self.graph, &self.class, &ax.base, &ax.extension)? {
                continue;
            }
            self.realize_axiom(&ax)?;
            used += 1;
        }
        Ok(Some(used))
    }

    /// Runs one complete round regardless of the budget; returns false when
    /// the graph was already saturated.
    pub fn run_round(&mut self) -> Result<bool> {
        Ok(self.round(usize::MAX)?.is_some())
    }

    /// Runs rounds until `budget` realizations have been made or the graph
    /// is saturated at the size cap.
    pub fn run(&mut self) -> Result<()> {
        let mut used = 0;
        while used < self.config.budget {
            match self.round(self.config.budget - used)? {
                Some(n) => used += n,
                None => return Ok(()),
            }
        }
        self.log.notes.push(format!("budget of {} steps exhausted", self.config.budget));
        Ok(())
    }

    /// Extends the graph until `target` embeds (with closed image for
    /// predimension classes), adding the target's vertices one at a time
    /// in index order and reusing existing vertices where possible.
    pub fn embed(&mut self, target: &Graph) -> Result<Embedding> {
        if let Some(w) = self.class.violation(target) {
            return Err(Error::contract(format!(
                "target is not in class {}: {w:?}",
                self.class
            )));
        }
        if self.class.closedness().is_some() {
            for i in 0..target.n() {
                let prefix = target.induced_by_list(&(0..=i).collect::<Vec<_>>())?;
                let base = VertexSet::from_members(i + 1, 0..i);
                if !self.class.is_strong(&base, &prefix) {
                    return Err(Error::contract(format!(
                        "target vertices 0..{i} are not closed in 0..={i}; reorder the target"
                    )));
                }
            }
        }
        let mut map: Vec<usize> = Vec::with_capacity(target.n());
        for i in 0..target.n() {
            let prefix = target.induced_by_list(&(0..=i).collect::<Vec<_>>())?;
            let fixed: Vec<(usize, usize)> = map.iter().copied().enumerate().collect();
            if let Some(m) = find_strong_embedding(&self.class, &prefix, &self.graph, &fixed) {
                map.push(m[i]);
                continue;
            }
            let t = ExtensionType::of_graph(&prefix, i)?;
            let base_in_b: Vec<usize> = (0..i).collect();
            let description = format!("embed target vertex {i}: A={map:?} B{t}");
            let e = self.amalgamate(&map.clone(), &prefix, &base_in_b, description)?;
            map.push(e.map[i]);
        }
        let e = Embedding::new(map);
        debug_assert!(e.is_induced(target, &self.graph));
        Ok(e)
    }
}

/// Grows from the empty graph with `config`.
pub fn grow_generic(d: &ClassDescriptor, config: GrowthConfig) -> Result<(Graph, GrowthLog)> {
    let mut g = Grower::new(d.clone(), config)?;
    g.run()?;
    Ok(g.into_parts())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_graph, edgeless};
    use crate::predimension::Closedness;

    fn cfg(budget: usize, cap: usize, seed: u64) -> GrowthConfig {
        GrowthConfig { budget, size_cap: cap, seed, ..GrowthConfig::default() }
    }

    #[test]
    fn audit_examples() {
        let all = ClassDescriptor::all_graphs();
        let k10 = complete_graph(10).unwrap();
        let missing = audit_extension_axioms(&k10, &all, 1, 2).unwrap();
        // over the empty set the non-edge is missing; over each vertex the
        // non-neighbour is missing
        assert_eq!(missing.len(), 11);
        assert!(missing.iter().all(|m| m.extension.code == 0));

        let tf = ClassDescriptor::triangle_free();
        let missing = audit_extension_axioms(&edgeless(6), &tf, 2, 3).unwrap();
        assert!(!missing.is_empty());
        assert!(missing.iter().any(|m| m.base.len() == 2 && m.extension.code != 0));

        assert!(audit_extension_axioms(&k10, &all, 3, 2).is_err());
    }

    #[test]
    fn growth_is_deterministic_and_monotone() {
        let tf = ClassDescriptor::triangle_free();
        let (g1, log1) = grow_generic(&tf, cfg(40, 3, 5)).unwrap();
        let (g2, log2) = grow_generic(&tf, cfg(40, 3, 5)).unwrap();
        assert_eq!(g1, g2);
        assert_eq!(log1.to_csv(), log2.to_csv());
        assert!(g1.is_triangle_free());
        for w in log1.steps.windows(2) {
            assert!(w[0].size <= w[1].size);
            assert!(w[0].chi_lower <= w[1].chi_lower);
            assert!(w[1].omega <= 2);
        }
        let (g3, _) = grow_generic(&tf, cfg(40, 3, 6)).unwrap();
        assert!(g3.is_triangle_free());
    }

    #[test]
    fn rounds_clean_their_core() {
        let all = ClassDescriptor::all_graphs();
        let mut gr = Grower::new(all.clone(), cfg(0, 3, 1)).unwrap();
        for _ in 0..2 {
            let core = gr.graph().vertex_set();
            assert!(gr.run_round().unwrap());
            let core = core.resized(gr.graph().n());
            assert!(audit_extension_axioms_over(gr.graph(), &core, &all, 2, 3).unwrap().is_empty());
        }
        // one-vertex extensions over pairs only add vertices of degree <= 2,
        // so the newest vertex never has two neighbours outside a pair
        assert!(!audit_extension_axioms(gr.graph(), &all, 2, 3).unwrap().is_empty());
    }

    #[test]
    fn embed_reuses_and_extends() {
        let all = ClassDescriptor::all_graphs();
        let mut gr = Grower::new(all, cfg(1, 3, 0)).unwrap();
        let k6 = complete_graph(6).unwrap();
        let e = gr.embed(&k6).unwrap();
        assert!(e.is_induced(&k6, gr.graph()));
        assert_eq!(gr.graph().n(), 6);
        // a second embedding reuses the existing copy
        let e2 = gr.embed(&complete_graph(4).unwrap()).unwrap();
        assert_eq!(gr.graph().n(), 6);
        assert_eq!(e2.len(), 4);

        let tf = ClassDescriptor::triangle_free();
        let mut gr = Grower::new(tf, cfg(1, 3, 0)).unwrap();
        assert!(matches!(gr.embed(&complete_graph(3).unwrap()), Err(Error::Contract(_))));
    }

    #[test]
    fn predimension_growth_keeps_images_closed() {
        let d = ClassDescriptor::predimension("1/2".parse().unwrap(), Closedness::Strict).unwrap();
        let (g, log) = grow_generic(&d, cfg(25, 3, 3)).unwrap();
        assert!(d.contains(&g));
        assert!(!log.steps.is_empty());
    }
}
