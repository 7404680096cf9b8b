//! Vertex-weighted undirected graphs and their text format.
//!
//! The text format, one directive per line (`#` starts a comment):
//!
//! ```text
//! p <n> <m>        header: n vertices, m edges
//! w <v> <weight>   one per vertex, weight >= 1
//! e <u> <v>        one per edge; file order defines edge indices 1..=m
//! ```
//!
//! Edge indices are load-bearing: every diagram level, family file, and
//! frontier step refers to edges by their position in this list.

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: u32,
    weights: Vec<u64>,      // index v-1
    edges: Vec<(u32, u32)>, // endpoints normalized to u < v
}

impl Graph {
    /// Build a graph from explicit parts. `weights[v-1]` is the weight of
    /// vertex `v`; endpoints are 1-based. Parallel edges are allowed,
    /// self-loops are not.
    pub fn new(n: u32, weights: Vec<u64>, edges: Vec<(u32, u32)>) -> Result<Self> {
        if weights.len() != n as usize {
            return Err(Error::InvalidInput(format!(
                "expected {} weights, got {}",
                n,
                weights.len()
            )));
        }
        if let Some(v) = weights.iter().position(|&w| w == 0) {
            return Err(Error::InvalidInput(format!(
                "vertex {} has weight 0; weights must be positive",
                v + 1
            )));
        }
        let mut normalized = Vec::with_capacity(edges.len());
        for (k, &(a, b)) in edges.iter().enumerate() {
            if a < 1 || a > n || b < 1 || b > n {
                return Err(Error::InvalidInput(format!(
                    "edge {} endpoint outside 1..={}",
                    k + 1,
                    n
                )));
            }
            if a == b {
                return Err(Error::InvalidInput(format!(
                    "edge {} is a self-loop on vertex {}",
                    k + 1,
                    a
                )));
            }
            normalized.push((a.min(b), a.max(b)));
        }
        Ok(Graph {
            n,
            weights,
            edges: normalized,
        })
    }

    pub fn vertex_count(&self) -> u32 {
        self.n
    }

    pub fn edge_count(&self) -> u32 {
        self.edges.len() as u32
    }

    /// Endpoints `(u, v)` with `u < v` of edge `i ∈ 1..=m`.
    pub fn edge(&self, i: u32) -> (u32, u32) {
        self.edges[i as usize - 1]
    }

    pub fn edges(&self) -> impl Iterator<Item = (u32, (u32, u32))> + '_ {
        self.edges
            .iter()
            .enumerate()
            .map(|(k, &e)| (k as u32 + 1, e))
    }

    pub fn vertices(&self) -> impl Iterator<Item = u32> {
        1..=self.n
    }

    pub fn weight(&self, v: u32) -> u64 {
        self.weights[v as usize - 1]
    }

    /// Sum of all vertex weights (the `P` in the ratio bound).
    pub fn total_weight(&self) -> u64 {
        self.weights.iter().sum()
    }

    /// Indices of edges incident to `v`, ascending.
    pub fn incident_edges(&self, v: u32) -> Vec<u32> {
        self.edges()
            .filter(|&(_, (a, b))| a == v || b == v)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn degree(&self, v: u32) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    /// Parse the text format; errors carry the offending 1-based line.
    pub fn parse(text: &str) -> Result<Graph> {
        let mut header: Option<(u32, u32)> = None;
        let mut weights: Vec<Option<u64>> = Vec::new();
        let mut edges: Vec<(u32, u32)> = Vec::new();
        let mut weight_lines = 0u32;

        for (idx, raw) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = match raw.find('#') {
                Some(p) => &raw[..p],
                None => raw,
            };
            let tokens: Vec<&str> = line.split_whitespace().collect();
            if tokens.is_empty() {
                continue;
            }
            match tokens[0] {
                "p" => {
                    if header.is_some() {
                        return Err(Error::parse(lineno, "duplicate 'p' header"));
                    }
                    if tokens.len() != 3 {
                        return Err(Error::parse(lineno, "expected 'p <n> <m>'"));
                    }
                    let n = parse_num::<u32>(lineno, tokens[1])?;
                    let m = parse_num::<u32>(lineno, tokens[2])?;
                    weights = vec![None; n as usize];
                    header = Some((n, m));
                }
                "w" => {
                    let (n, _) = header
                        .ok_or_else(|| Error::parse(lineno, "'w' before 'p' header"))?;
                    if tokens.len() != 3 {
                        return Err(Error::parse(lineno, "expected 'w <vertex> <weight>'"));
                    }
                    let v = parse_num::<u32>(lineno, tokens[1])?;
                    let w = parse_num::<u64>(lineno, tokens[2])?;
                    if v < 1 || v > n {
                        return Err(Error::parse(
                            lineno,
                            format!("vertex {} outside 1..={}", v, n),
                        ));
                    }
                    if w == 0 {
                        return Err(Error::parse(lineno, "weights must be >= 1"));
                    }
                    if weights[v as usize - 1].replace(w).is_some() {
                        return Err(Error::parse(
                            lineno,
                            format!("vertex {} weighted twice", v),
                        ));
                    }
                    weight_lines += 1;
                }
                "e" => {
                    let (n, m) = header
                        .ok_or_else(|| Error::parse(lineno, "'e' before 'p' header"))?;
                    if tokens.len() != 3 {
                        return Err(Error::parse(lineno, "expected 'e <u> <v>'"));
                    }
                    let u = parse_num::<u32>(lineno, tokens[1])?;
                    let v = parse_num::<u32>(lineno, tokens[2])?;
                    if u < 1 || u > n || v < 1 || v > n {
                        return Err(Error::parse(
                            lineno,
                            format!("endpoint outside 1..={}", n),
                        ));
                    }
                    if u == v {
                        return Err(Error::parse(lineno, format!("self-loop on vertex {}", u)));
                    }
                    if edges.len() as u32 == m {
                        return Err(Error::parse(lineno, format!("more than {} edges", m)));
                    }
                    edges.push((u, v));
                }
                other => {
                    return Err(Error::parse(
                        lineno,
                        format!("unknown directive '{}'", other),
                    ));
                }
            }
        }

        let (n, m) = header.ok_or_else(|| Error::parse(1, "missing 'p <n> <m>' header"))?;
        if weight_lines != n {
            return Err(Error::InvalidInput(format!(
                "expected {} 'w' lines, found {}",
                n, weight_lines
            )));
        }
        if edges.len() as u32 != m {
            return Err(Error::InvalidInput(format!(
                "expected {} 'e' lines, found {}",
                m,
                edges.len()
            )));
        }
        let weights = weights.into_iter().map(|w| w.unwrap()).collect();
        Graph::new(n, weights, edges)
    }

    /// Canonical serialization; parses back to an equal graph.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("p {} {}\n", self.n, self.edges.len()));
        for v in self.vertices() {
            out.push_str(&format!("w {} {}\n", v, self.weight(v)));
        }
        for &(u, v) in &self.edges {
            out.push_str(&format!("e {} {}\n", u, v));
        }
        out
    }
}

fn parse_num<T: std::str::FromStr>(lineno: usize, token: &str) -> Result<T> {
    token
        .parse::<T>()
        .map_err(|_| Error::parse(lineno, format!("bad number '{}'", token)))
}
