//! Extension types: a graph `B` on `0..k+j` whose first `k` vertices form
//! the base `A`, up to permutations of the `j` new vertices.

use std::collections::HashMap;
use std::fmt;

use super::{ClassDescriptor, ClassKind};
use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest number of raw configurations enumerated for one `(A, j)`.
const MAX_CONFIGS: u64 = 1 << 20;

/// Bits `t*k + i` (new vertex `t` adjacent to base vertex `i`) followed by
/// one bit per pair of new vertices in lexicographic order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtensionType {
    pub base: usize,
    pub new: usize,
    pub code: u64,
}

fn pair_bit(k: usize, j: usize, s: usize, t: usize) -> usize {
    // s < t among new vertices
    let before: usize = (0..s).map(|r| j - 1 - r).sum();
    j * k + before + (t - s - 1)
}

fn bit_count(k: usize, j: usize) -> usize {
    j * k + j * j.saturating_sub(1) / 2
}

fn permutations(j: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; j], &mut out);
    out
}

impl ExtensionType {
    fn permuted(&self, perm: &[usize]) -> u64 {
        let (k, j) = (self.base, self.new);
        let mut out = 0u64;
        for t in 0..j {
            for i in 0..k {
                if self.code >> (t * k + i) & 1 == 1 {
                    out |= 1 << (perm[t] * k + i);
                }
            }
            for s in (t + 1)..j {
                if self.code >> pair_bit(k, j, t, s) & 1 == 1 {
                    let (a, b) = (perm[t].min(perm[s]), perm[t].max(perm[s]));
                    out |= 1 << pair_bit(k, j, a, b);
                }
            }
        }
        out
    }

    /// `B` on `0..base+new`; the base carries the edges of `a`.
    pub fn build(&self, a: &Graph) -> Graph {
        let (k, j) = (self.base, self.new);
        let mut b = a.with_extra_vertices(j);
        for t in 0..j {
            for i in 0..k {
                if self.code >> (t * k + i) & 1 == 1 {
                    b.add_edge(k + t, i);
                }
            }
            for s in (t + 1)..j {
                if self.code >> pair_bit(k, j, t, s) & 1 == 1 {
                    b.add_edge(k + t, k + s);
                }
            }
        }
        b
    }

    /// Extension type of `b` over its first `base` vertices.
    pub fn of_graph(b: &Graph, base: usize) -> Result<ExtensionType> {
        let j = b.n() - base;
        if bit_count(base, j) > 63 {
            return Err(Error::Resource(format!(
                "extension with {base} base and {j} new vertices is too large to encode"
            )));
        }
        let mut code = 0u64;
        for t in 0..j {
            for i in 0..base {
                if b.has_edge(base + t, i) {
                    code |= 1 << (t * base + i);
                }
            }
            for s in (t + 1)..j {
                if b.has_edge(base + t, base + s) {
                    code |= 1 << pair_bit(base, j, t, s);
                }
            }
        }
        Ok(ExtensionType { base, new: j, code })
    }
}

impl fmt::Display for ExtensionType {
    /// E.g. `+2 [x0~{0,2} x1~{} x0x1]`: new vertex `x0` adjacent to base
    /// vertices 0 and 2, and the listed new-new edges.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (k, j) = (self.base, self.new);
        write!(f, "+{j} [")?;
        let mut parts = Vec::new();
        for t in 0..j {
            let nb: Vec<String> = (0..k)
                .filter(|&i| self.code >> (t * k + i) & 1 == 1)
                .map(|i| i.to_string())
                .collect();
            parts.push(format!("x{t}~{{{}}}", nb.join(",")));
        }
        for t in 0..j {
            for s in (t + 1)..j {
                if self.code >> pair_bit(k, j, t, s) & 1 == 1 {
                    parts.push(format!("x{t}x{s}"));
                }
            }
        }
        write!(f, "{}]", parts.join(" "))
    }
}

/// Resource error when the raw configurations for base size `k` and `j`
/// new vertices exceed the enumeration limit.
pub(crate) fn check_enumerable(k: usize, j: usize) -> Result<()> {
    let bits = bit_count(k, j);
    if bits > 62 || (1u64 << bits) > MAX_CONFIGS {
        return Err(Error::Resource(format!(
            "{} raw extension configurations for base size {k} and {j} new vertices \
             exceed the limit of {MAX_CONFIGS}",
            if bits > 62 { "too many".to_string() } else { (1u64 << bits).to_string() }
        )));
    }
    Ok(())
}

/// class, base edges, base size, number of new vertices
type CatalogKey = (ClassKind, Vec<(usize, usize)>, usize, usize);

/// Cache of the class-valid extension types over each base graph.
#[derive(Default)]
pub struct TypeCatalog {
    cache: HashMap<CatalogKey, Vec<ExtensionType>>,
    perms: HashMap<usize, Vec<Vec<usize>>>,
}

impl TypeCatalog {
    pub fn new() -> Self {
        Self::default()
    }

    /// Extension types with `j` new vertices over base graph `a` whose
    /// graph `B` is in the class with the base closed in `B` (predimension
    /// classes). One representative per orbit under permutations of the
    /// new vertices, in increasing code order.
    pub fn types(&mut self, d: &ClassDescriptor, a: &Graph, j: usize) -> Result<&[ExtensionType]> {
        let k = a.n();
        let key = (d.kind, a.edges(), k, j);
        if !self.cache.contains_key(&key) {
            check_enumerable(k, j)?;
            let bits = bit_count(k, j);
            let perms = self.perms.entry(j).or_insert_with(|| permutations(j)).clone();
            let base_set = VertexSet::from_members(k + j, 0..k);
            let mut out = Vec::new();
            for code in 0..(1u64 << bits) {
                let t = ExtensionType { base: k, new: j, code };
                if perms.iter().any(|p| t.permuted(p) < code) {
                    continue;
                }
                let b = t.build(a);
                if d.contains(&b) && d.is_strong(&base_set, &b) {
                    out.push(t);
                }
            }
            self.cache.insert(key.clone(), out);
        }
        Ok(&self.cache[&key])
    }
}
