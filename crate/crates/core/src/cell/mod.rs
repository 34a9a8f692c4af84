//! Graphs on an interval whose edges below the diagonal form one cell
//! `{(x, y) : d0 < x < e0, f(x) < y < g(x)}` with piecewise-linear rational
//! bounds `f < g`, `g(x) <= x`.
//!
//! [`analyze_cell`] decides between a clique source (arbitrarily large
//! cliques) and an explicit colouring rule with a bounded number of
//! colours, or the bipartite case where every edge crosses `d0`. Vertices
//! are rationals in `(d, e0]`; points at or above `e0` have no edges.
//!
//! The analysis works on the rightmost subinterval `(lower, e0)` free of
//! fixed points of `g`; verdicts and colourings refer to that sub-cell
//! (returned as [`CellAnalysis::cell`]). With `f* = max(f, lower)` and
//! `g* = max(g, lower)`, a point `u` gets the colour
//! `(n mod 2) * N + i` where `u` lies in `I_n = (f*^(n+1)(e0), f*^n(e0)]`
//! and in the piece `(g*^(i+1)(c), g*^i(c)]` with `c = f*^n(e0)`; points
//! at or below `lower` share one extra colour `2N`.

mod pl;

pub use pl::{rational_str, Monotonicity, PlFunction};

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

pub use pl::parse_rational;

/// Default bound on orbit iterations.
pub const ORBIT_CAP: usize = 10_000;
/// Emitted clique points may not exceed this many bits in numerator or
/// denominator.
pub const MAX_POINT_BITS: u64 = 1 << 16;
/// Number of anchor points `f*^n(e0)` added to the probe set.
const ANCHOR_PROBES: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellSpec {
    #[serde(with = "rational_str")]
    pub d0: BigRational,
    #[serde(with = "rational_str")]
    pub e0: BigRational,
    /// lower end of the vertex interval
    #[serde(with = "rational_str")]
    pub d: BigRational,
    pub f: PlFunction,
    pub g: PlFunction,
}

fn mid(a: &BigRational, b: &BigRational) -> BigRational {
    (a + b) / BigRational::from_integer(2.into())
}

impl CellSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        let spec: CellSpec = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        spec.validate()?;
        Ok(spec)
    }

    /// Checks the domain, shape and ordering conditions; the error names a
    /// failing point.
    pub fn validate(&self) -> Result<()> {
        if self.d0 >= self.e0 {
            return Err(Error::structural(format!("empty domain ({}, {})", self.d0, self.e0)));
        }
        if self.d > self.d0 {
            return Err(Error::structural(format!("d = {} exceeds d0 = {}", self.d, self.d0)));
        }
        for (name, h) in [("f", &self.f), ("g", &self.g)] {
            if h.lo() != &self.d0 || h.hi() != &self.e0 {
                return Err(Error::structural(format!(
                    "{name} is defined on [{}, {}], expected [{}, {}]",
                    h.lo(),
                    h.hi(),
                    self.d0,
                    self.e0
                )));
            }
            if h.monotonicity() == Monotonicity::Mixed {
                return Err(Error::structural(format!(
                    "{name} is neither strictly monotone nor constant"
                )));
            }
        }
        let mut xs: Vec<BigRational> = self.f.breakpoints().iter().chain(self.g.breakpoints()).cloned().collect();
        xs.sort();
        xs.dedup();
        let gap = |x: &BigRational| -> Result<BigRational> { Ok(self.g.eval(x)? - self.f.eval(x)?) };
        for (i, x) in xs.iter().enumerate() {
            let interior = i > 0 && i + 1 < xs.len();
            let v = gap(x)?;
            if v.is_zero() && interior || v < BigRational::zero() {
                return Err(Error::structural(format!("f < g fails at x = {x}")));
            }
            if i > 0 {
                let m = mid(&xs[i - 1], x);
                if gap(&m)? <= BigRational::zero() {
                    return Err(Error::structural(format!("f < g fails at x = {m}")));
                }
            }
        }
        for (x, y) in self.g.breakpoints().iter().zip(self.g.values()) {
            if y > x {
                return Err(Error::structural(format!("g(x) <= x fails at x = {x}")));
            }
        }
        for (x, y) in self.f.breakpoints().iter().zip(self.f.values()) {
            if y < &self.d {
                return Err(Error::structural(format!("f(x) >= d fails at x = {x}")));
            }
        }
        Ok(())
    }

    /// Whether `u` is a vertex: `d < u <= e0`.
    pub fn is_vertex(&self, u: &BigRational) -> bool {
        u > &self.d && u <= &self.e0
    }

    /// The cell predicate on the ordered pair (larger, smaller).
    pub fn is_adjacent(&self, u: &BigRational, v: &BigRational) -> bool {
        let (x, y) = if u > v { (u, v) } else { (v, u) };
        if x == y || x <= &self.d0 || x >= &self.e0 {
            return false;
        }
        let f = self.f.eval(x).expect("x inside the domain");
        let g = self.g.eval(x).expect("x inside the domain");
        &f < y && y < &g
    }

    fn restricted(&self, lower: &BigRational) -> Result<CellSpec> {
        if lower == &self.d0 {
            return Ok(self.clone());
        }
        Ok(CellSpec {
            d0: lower.clone(),
            e0: self.e0.clone(),
            d: self.d.clone(),
            f: self.f.restrict(lower, &self.e0)?,
            g: self.g.restrict(lower, &self.e0)?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Orbit {
    /// least `n` with `g*^n(c) <= f*(c)`
    Finite { length: usize },
    Infinite,
    CapExceeded,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "source", rename_all = "snake_case")]
pub enum CliqueBuilder {
    /// `g(x) = x` on a segment; any points of `(a, b)` form a clique
    FixedSegment {
        #[serde(with = "rational_str")]
        a: BigRational,
        #[serde(with = "rational_str")]
        b: BigRational,
    },
    /// the `g*`-orbit of `c` stays above `f*(c)`
    DescendingOrbit {
        #[serde(with = "rational_str")]
        c: BigRational,
        f_star: PlFunction,
        g_star: PlFunction,
        orbit: Orbit,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundedColoring {
    /// `N`: every probed `g*`-orbit drops to `f*(c)` within `N` steps
    pub n_bound: usize,
    #[serde(with = "rational_str")]
    pub lower: BigRational,
    #[serde(with = "rational_str")]
    pub e0: BigRational,
    #[serde(with = "rational_str")]
    pub d: BigRational,
    pub f_star: PlFunction,
    pub g_star: PlFunction,
}

/// Every edge joins a point above `split` to one at or below it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BipartiteShortcut {
    #[serde(with = "rational_str")]
    pub split: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum CellVerdict {
    CliqueBuilder(CliqueBuilder),
    BoundedColoring(BoundedColoring),
    BipartiteShortcut(BipartiteShortcut),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Probe {
    #[serde(with = "rational_str")]
    pub point: BigRational,
    pub orbit: Orbit,
}

#[derive(Clone, Debug, Serialize)]
pub struct CellAnalysis {
    /// the sub-cell the verdict refers to
    pub cell: CellSpec,
    pub verdict: CellVerdict,
    pub probes: Vec<Probe>,
    pub notes: Vec<String>,
}

fn iterate(h: &PlFunction, x: &BigRational) -> BigRational {
    h.eval(x).expect("star functions map the domain into itself")
}

fn orbit_of(c: &BigRational, cell: &CellSpec, f_star: &PlFunction, g_star: &PlFunction, cap: usize) -> Orbit {
    let lower = &cell.d0;
    let floor = iterate(f_star, c);
    // g* < id above `lower`, so the orbit decreases to the only fixed
    // point `lower`; it stays above f*(c) forever exactly when f*(c) is
    // `lower` and g fixes `lower` (then g > lower on (lower, c])
    if &floor == lower && &iterate(&cell.g, lower) == lower {
        return Orbit::Infinite;
    }
    let mut x = c.clone();
    for n in 1..=cap {
        x = iterate(g_star, &x);
        if x <= floor {
            return Orbit::Finite { length: n };
        }
    }
    Orbit::CapExceeded
}

/// Runs the case analysis with the default orbit cap.
pub fn analyze_cell(spec: &CellSpec) -> Result<CellAnalysis> {
    analyze_cell_with_cap(spec, ORBIT_CAP)
}

pub fn analyze_cell_with_cap(spec: &CellSpec, cap: usize) -> Result<CellAnalysis> {
    spec.validate()?;
    let mut notes = Vec::new();

    // a segment of fixed points gives a clique directly
    let (gx, gy) = (spec.g.breakpoints(), spec.g.values());
    for i in 1..gx.len() {
        if gx[i - 1] == gy[i - 1] && gx[i] == gy[i] {
            let a = mid(&gx[i - 1], &gx[i]);
            let mut b = gx[i].clone();
            let f_below = |b: &BigRational| -> Result<bool> {
                Ok(spec.f.eval(&a)? < a && spec.f.eval(b)? < a)
            };
            let mut rounds = 0;
            while !f_below(&b)? {
                b = mid(&a, &b);
                rounds += 1;
                if rounds > 4096 {
                    return Err(Error::Resource("could not separate f from the fixed segment".into()));
                }
            }
            notes.push(format!("g is the identity on [{}, {}]", gx[i - 1], gx[i]));
            return Ok(CellAnalysis {
                cell: spec.clone(),
                verdict: CellVerdict::CliqueBuilder(CliqueBuilder::FixedSegment { a, b }),
                probes: Vec::new(),
                notes,
            });
        }
    }

    let lower = gx
        .iter()
        .zip(gy)
        .filter(|(x, y)| x == y && *x > &spec.d0 && *x < &spec.e0)
        .map(|(x, _)| x.clone())
        .max()
        .unwrap_or_else(|| spec.d0.clone());
    if lower != spec.d0 {
        notes.push(format!("restricted to ({lower}, {}) where g(x) < x", spec.e0));
    }
    let cell = spec.restricted(&lower)?;

    let g_sup = cell.g.max_value().clone();
    if g_sup <= lower {
        notes.push(format!("g <= {lower} on the domain: every edge crosses {lower}"));
        return Ok(CellAnalysis {
            cell,
            verdict: CellVerdict::BipartiteShortcut(BipartiteShortcut { split: lower }),
            probes: Vec::new(),
            notes,
        });
    }
    if cell.g.monotonicity() != Monotonicity::StrictlyIncreasing {
        return Err(Error::structural(format!(
            "g exceeds {lower} somewhere but is not strictly increasing on ({lower}, {})",
            cell.e0
        )));
    }
    let f_star = cell.f.max_with(&lower);
    let g_star = cell.g.max_with(&lower);
    if !f_star.is_nondecreasing() || !g_star.is_nondecreasing() {
        return Err(Error::structural("f* or g* is not weakly increasing"));
    }

    let mut points: Vec<BigRational> = f_star.breakpoints().iter().chain(g_star.breakpoints()).cloned().collect();
    points.sort();
    points.dedup();
    let mids: Vec<BigRational> = points.windows(2).map(|w| mid(&w[0], &w[1])).collect();
    points.extend(mids);
    let mut anchor = cell.e0.clone();
    for _ in 0..ANCHOR_PROBES {
        anchor = iterate(&f_star, &anchor);
        if anchor <= lower {
            break;
        }
        points.push(anchor.clone());
    }
    points.retain(|p| p > &lower);
    points.sort();
    points.dedup();

    let probes: Vec<Probe> = points
        .iter()
        .map(|p| Probe { point: p.clone(), orbit: orbit_of(p, &cell, &f_star, &g_star, cap) })
        .collect();

    // clique source: largest probe strictly inside the domain whose orbit
    // does not drop below f*
    let unbounded = probes
        .iter()
        .filter(|p| p.point < cell.e0 && !matches!(p.orbit, Orbit::Finite { .. }))
        .max_by(|a, b| a.point.cmp(&b.point));
    if let Some(p) = unbounded {
        notes.push(format!("g*-orbit of {} stays above f*({})", p.point, p.point));
        let verdict = CellVerdict::CliqueBuilder(CliqueBuilder::DescendingOrbit {
            c: p.point.clone(),
            f_star,
            g_star,
            orbit: p.orbit.clone(),
        });
        return Ok(CellAnalysis { cell, verdict, probes, notes });
    }
    let n_bound = probes
        .iter()
        .filter_map(|p| match p.orbit {
            Orbit::Finite { length } => Some(length),
            _ => None,
        })
        .max()
        .unwrap_or(1);
    let verdict = CellVerdict::BoundedColoring(BoundedColoring {
        n_bound,
        lower,
        e0: cell.e0.clone(),
        d: cell.d.clone(),
        f_star,
        g_star,
    });
    Ok(CellAnalysis { cell, verdict, probes, notes })
}

/// Clique of `k` points, verified pairwise against `cell` (the analysed
/// cell of the verdict).
pub fn emit_clique(builder: &CliqueBuilder, cell: &CellSpec, k: usize) -> Result<Vec<BigRational>> {
    if k == 0 {
        return Err(Error::contract("clique size must be positive"));
    }
    let points = match builder {
        CliqueBuilder::FixedSegment { a, b } => {
            let step = (b - a) / BigRational::from_integer((k + 1).into());
            (1..=k).map(|i| a + &step * BigRational::from_integer(i.into())).collect()
        }
        CliqueBuilder::DescendingOrbit { c, g_star, .. } => {
            let mut pts = vec![c.clone()];
            while pts.len() < k {
                let q = pts.last().unwrap();
                let once = iterate(g_star, q);
                let twice = iterate(g_star, &once);
                let next = mid(&once, &twice);
                if next.numer().bits().max(next.denom().bits()) > MAX_POINT_BITS {
                    return Err(Error::Resource(format!(
                        "clique point {} needs more than {MAX_POINT_BITS} bits",
                        pts.len()
                    )));
                }
                pts.push(next);
            }
            pts
        }
    };
    if !verify_point_clique(cell, &points) {
        return Err(Error::structural(format!(
            "the construction does not give a {k}-clique in this cell"
        )));
    }
    Ok(points)
}

pub fn verify_point_clique(cell: &CellSpec, points: &[BigRational]) -> bool {
    points.iter().all(|p| cell.is_vertex(p))
        && (0..points.len()).all(|i| (i + 1..points.len()).all(|j| cell.is_adjacent(&points[i], &points[j])))
}

impl BoundedColoring {
    /// Colours used: `2N` on the analysed interval plus one below it.
    pub fn palette(&self) -> usize {
        2 * self.n_bound + 1
    }

    pub fn color_point(&self, u: &BigRational) -> Result<usize> {
        if u <= &self.d || u > &self.e0 {
            return Err(Error::structural(format!("{u} is not a vertex in ({}, {}]", self.d, self.e0)));
        }
        if u <= &self.lower {
            return Ok(2 * self.n_bound);
        }
        let mut n = 0;
        let mut anchor = self.e0.clone();
        loop {
            let next = iterate(&self.f_star, &anchor);
            if &next < u {
                break;
            }
            anchor = next;
            n += 1;
        }
        let mut i = 0;
        let mut x = anchor;
        loop {
            let next = iterate(&self.g_star, &x);
            if &next < u {
                break;
            }
            x = next;
            i += 1;
            if i >= self.n_bound {
                return Err(Error::structural(format!(
                    "orbit of anchor {n} is longer than N = {}",
                    self.n_bound
                )));
            }
        }
        Ok((n % 2) * self.n_bound + i)
    }
}

impl BipartiteShortcut {
    pub fn color_point(&self, u: &BigRational) -> usize {
        usize::from(u <= &self.split)
    }
}

/// Colour of `u` under a colouring verdict.
pub fn color_point(verdict: &CellVerdict, u: &BigRational) -> Result<usize> {
    match verdict {
        CellVerdict::BoundedColoring(c) => c.color_point(u),
        CellVerdict::BipartiteShortcut(b) => Ok(b.color_point(u)),
        CellVerdict::CliqueBuilder(_) => Err(Error::contract("a clique verdict has no colouring")),
    }
}

/// Sample graph on `points` (labels are the points as `p/q`).
pub fn materialize_sample(cell: &CellSpec, points: &[BigRational]) -> Result<Graph> {
    let mut sorted = points.to_vec();
    sorted.sort();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::structural("sample contains a point twice"));
    }
    if let Some(p) = points.iter().find(|p| !cell.is_vertex(p)) {
        return Err(Error::structural(format!("{p} is not a vertex in ({}, {}]", cell.d, cell.e0)));
    }
    let mut g = Graph::new(points.len());
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            if cell.is_adjacent(&points[i], &points[j]) {
                g.add_edge(i, j);
            }
        }
    }
    g.set_labels(points.iter().map(|p| p.to_string()).collect())?;
    Ok(g)
}

pub fn verify_point_coloring(cell: &CellSpec, points: &[BigRational], colors: &[usize]) -> bool {
    points.len() == colors.len()
        && (0..points.len()).all(|i| {
            (i + 1..points.len()).all(|j| !cell.is_adjacent(&points[i], &points[j]) || colors[i] != colors[j])
        })
}

/// `n` evenly spaced points `lo + (hi - lo) * i / n`, `i = 1..=n`.
pub fn grid_sample(lo: &BigRational, hi: &BigRational, n: usize) -> Vec<BigRational> {
    let step = (hi - lo) / BigRational::from_integer(n.max(1).into());
    (1..=n).map(|i| lo + &step * BigRational::from_integer(i.into())).collect()
}

/// Points the verdict's colouring covers: `(lower, e0]` for bounded
/// colourings, `(d, e0]` otherwise.
pub fn default_sample(analysis: &CellAnalysis, n: usize) -> Vec<BigRational> {
    let lo = match &analysis.verdict {
        CellVerdict::BoundedColoring(c) => c.lower.clone(),
        _ => analysis.cell.d.clone(),
    };
    grid_sample(&lo, &analysis.cell.e0, n)
}
