//! Graph interchange formats.
//!
//! DIMACS edge format (1-based):
//!
//! ```text
//! c optional comment lines
//! p edge <n> <m>
//! e <u> <v>
//! ```
//!
//! JSON descriptor (0-based): `{"n": 5, "edges": [[0,1],[1,2]], "labels": ["a", ...]}`.
//! Both readers reject loops, duplicate edges and out-of-range endpoints.

use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::{Error, Result};

pub fn parse_dimacs(text: &str) -> Result<Graph> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let mut parts = line.split_whitespace();
        let tag = parts.next().unwrap_or("");
        let nums: Vec<&str> = parts.collect();
        let bad = |msg: &str| Error::Parse(format!("line {}: {msg}: {raw:?}", lineno + 1));
        match tag {
            "p" => {
                if header.is_some() {
                    return Err(bad("second problem line"));
                }
                if nums.len() != 3 || !(nums[0] == "edge" || nums[0] == "col") {
                    return Err(bad("expected `p edge <n> <m>`"));
                }
                let n = nums[1].parse().map_err(|_| bad("bad vertex count"))?;
                let m = nums[2].parse().map_err(|_| bad("bad edge count"))?;
                header = Some((n, m));
            }
            "e" => {
                let (n, _) = header.ok_or_else(|| bad("edge before problem line"))?;
                if nums.len() != 2 {
                    return Err(bad("expected `e <u> <v>`"));
                }
                let u: usize = nums[0].parse().map_err(|_| bad("bad endpoint"))?;
                let v: usize = nums[1].parse().map_err(|_| bad("bad endpoint"))?;
                if u == 0 || v == 0 || u > n || v > n {
                    return Err(bad("endpoint out of range"));
                }
                edges.push((u - 1, v - 1));
            }
            _ => return Err(bad("unknown line type")),
        }
    }
    let (n, m) = header.ok_or_else(|| Error::Parse("missing `p edge` line".into()))?;
    if edges.len() != m {
        return Err(Error::Parse(format!(
            "header announces {m} edges, found {}",
            edges.len()
        )));
    }
    Graph::from_edges(n, &edges).map_err(|e| Error::Parse(e.to_string()))
}

pub fn to_dimacs(g: &Graph) -> String {
    let mut out = format!("p edge {} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("e {} {}\n", u + 1, v + 1));
    }
    out
}

/// Serialized form of a graph in JSON documents and certificates.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct GraphDescriptor {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl GraphDescriptor {
    pub fn from_graph(g: &Graph) -> Self {
        GraphDescriptor {
            n: g.n(),
            edges: g.edges().into_iter().map(|(u, v)| [u, v]).collect(),
            labels: g.labels().map(|l| l.to_vec()),
        }
    }

    pub fn to_graph(&self) -> Result<Graph> {
        let edges: Vec<(usize, usize)> = self.edges.iter().map(|e| (e[0], e[1])).collect();
        let mut g = Graph::from_edges(self.n, &edges).map_err(|e| Error::Parse(e.to_string()))?;
        if let Some(labels) = &self.labels {
            g.set_labels(labels.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        }
        Ok(g)
    }
}

pub fn parse_json(text: &str) -> Result<Graph> {
    let d: GraphDescriptor =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("graph JSON: {e}")))?;
    d.to_graph()
}

pub fn to_json(g: &Graph) -> String {
    serde_json::to_string(&GraphDescriptor::from_graph(g)).expect("descriptor serializes")
}

/// Parses either format, choosing JSON when the first non-blank character
/// is `{`.
pub fn parse_graph(text: &str) -> Result<Graph> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_dimacs(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cycle, half_graph};
    use proptest::prelude::*;

    #[test]
    fn dimacs_example() {
        let g = parse_dimacs("c five cycle\np edge 5 5\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 1\n").unwrap();
        assert_eq!(g, cycle(5).unwrap());
    }

    #[test]
    fn dimacs_rejects() {
        assert!(parse_dimacs("p edge 3 1\ne 1 1\n").is_err());
        assert!(parse_dimacs("p edge 3 2\ne 1 2\ne 2 1\n").is_err());
        assert!(parse_dimacs("p edge 3 1\ne 1 4\n").is_err());
        assert!(parse_dimacs("e 1 2\n").is_err());
        assert!(parse_dimacs("p edge 3 2\ne 1 2\n").is_err());
        assert!(parse_dimacs("x\n").is_err());
    }

    #[test]
    fn json_rejects_loops_and_duplicates() {
        assert!(parse_json(r#"{"n":2,"edges":[[0,0]]}"#).is_err());
        assert!(parse_json(r#"{"n":2,"edges":[[0,1],[1,0]]}"#).is_err());
        assert!(parse_json(r#"{"n":2,"edges":[[0,1]],"labels":["x"]}"#).is_err());
        let g = parse_graph(r#"{"n":2,"edges":[[0,1]],"labels":["x","y"]}"#).unwrap();
        assert_eq!(g.labels().unwrap()[1], "y");
    }

    proptest! {
        #[test]
        fn formats_roundtrip(n in 1usize..20, bits in proptest::collection::vec(any::<bool>(), 190)) {
            let mut g = Graph::new(n);
            let mut k = 0;
            for u in 0..n {
                for v in (u + 1)..n {
                    if bits[k % bits.len()] { g.add_edge(u, v); }
                    k += 1;
                }
            }
            prop_assert_eq!(&parse_graph(&to_dimacs(&g)).unwrap(), &g);
            prop_assert_eq!(&parse_graph(&to_json(&g)).unwrap(), &g);
        }
    }

    #[test]
    fn half_graph_json() {
        let g = half_graph(2).unwrap();
        assert_eq!(to_json(&g), r#"{"n":4,"edges":[[0,3]]}"#);
    }
}
