//! End-to-end filtering: candidate partitions minus those with a light
//! component.
//!
//! A [`Pipeline`] is tied to one graph and one weight bound. Preparing it
//! builds, in order,
//!
//! 1. the family of connected light subgraphs (at least one edge, weight
//!    below the bound),
//! 2. the ternary diagram of their minimal signed cutsets, and
//! 3. the forbidden family: supersets of those cutsets unioned with the
//!    edge sets isolating a vertex lighter than the bound.
//!
//! [`Pipeline::filter`] then subtracts the forbidden family from any
//! candidate family in one diagram difference; the expensive stages are
//! cached across calls. [`brute_force_filter`] re-derives the same answer
//! per explicit member by scanning its components, and is the reference
//! the pipeline is tested against.

use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::cutset::build_cutset_tdd_subset;
use crate::error::{Error, Result};
use crate::frontier::SearchStats;
use crate::graph::Graph;
use crate::light::build_light_components;
use crate::superset::assemble_sup;
use crate::tdd::{TddRef, TddStore};
use crate::zdd::{NodeRef, ZddStore};

/// Default ceiling on interned search states across one construction.
pub const DEFAULT_BUDGET: usize = 10_000_000;

/// Timing and size of one finished stage.
#[derive(Clone, Debug)]
pub struct StageReport {
    pub stage: &'static str,
    pub seconds: f64,
    pub nodes: usize,
    pub cardinality: BigUint,
}

impl StageReport {
    fn line(&self) -> String {
        format!(
            "{} {:.3} {} {}",
            self.stage, self.seconds, self.nodes, self.cardinality
        )
    }
}

struct Prepared {
    light: NodeRef,
    cutsets: TddRef,
    forbidden: NodeRef,
    light_stats: SearchStats,
    cutset_stats: SearchStats,
}

pub struct Pipeline<'a> {
    graph: &'a Graph,
    bound: u64,
    budget: usize,
    zdd: ZddStore,
    tdd: TddStore,
    prepared: Option<Prepared>,
    stage_reports: Vec<StageReport>,
    filter_report: Option<StageReport>,
}

impl<'a> Pipeline<'a> {
    pub fn new(graph: &'a Graph, bound: u64, budget: usize) -> Self {
        let m = graph.edge_count();
        Pipeline {
            graph,
            bound,
            budget,
            zdd: ZddStore::new(m),
            tdd: TddStore::new(m),
            prepared: None,
            stage_reports: Vec::new(),
            filter_report: None,
        }
    }

    pub fn graph(&self) -> &Graph {
        self.graph
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    /// The shared diagram store; candidate families passed to
    /// [`Pipeline::filter`] must be built here.
    pub fn zdd(&mut self) -> &mut ZddStore {
        &mut self.zdd
    }

    /// Build the three cached stages if not done yet.
    pub fn prepare(&mut self) -> Result<()> {
        if self.prepared.is_some() {
            return Ok(());
        }

        let t0 = Instant::now();
        let (light, light_stats) =
            build_light_components(&mut self.zdd, self.graph, self.bound, self.budget)?;
        let light_count = self.zdd.count(light);
        self.stage_reports.push(StageReport {
            stage: "Z_S",
            seconds: t0.elapsed().as_secs_f64(),
            nodes: self.zdd.node_count(light),
            cardinality: light_count,
        });

        let t0 = Instant::now();
        let (cutsets, cutset_stats) =
            build_cutset_tdd_subset(&mut self.tdd, self.graph, &self.zdd, light, self.budget)?;
        let cutset_count = self.tdd.count(cutsets);
        self.stage_reports.push(StageReport {
            stage: "T_Spm",
            seconds: t0.elapsed().as_secs_f64(),
            nodes: self.tdd.node_count(cutsets),
            cardinality: cutset_count,
        });

        let t0 = Instant::now();
        let (forbidden, _) = assemble_sup(
            &mut self.zdd,
            &self.tdd,
            cutsets,
            self.graph,
            self.bound,
            self.budget,
        )?;
        let forbidden_count = self.zdd.count(forbidden);
        self.stage_reports.push(StageReport {
            stage: "Z_Sup",
            seconds: t0.elapsed().as_secs_f64(),
            nodes: self.zdd.node_count(forbidden),
            cardinality: forbidden_count,
        });

        self.prepared = Some(Prepared {
            light,
            cutsets,
            forbidden,
            light_stats,
            cutset_stats,
        });
        Ok(())
    }

    /// Members of `candidates` in which every component, isolated vertices
    /// included, weighs at least the bound.
    pub fn filter(&mut self, candidates: NodeRef) -> Result<NodeRef> {
        self.prepare()?;
        let forbidden = self.prepared.as_ref().unwrap().forbidden;
        let t0 = Instant::now();
        let result = self.zdd.difference(candidates, forbidden);
        let cardinality = self.zdd.count(result);
        self.filter_report = Some(StageReport {
            stage: "difference",
            seconds: t0.elapsed().as_secs_f64(),
            nodes: self.zdd.node_count(result),
            cardinality,
        });
        Ok(result)
    }

    pub fn light_family(&mut self) -> Result<NodeRef> {
        self.prepare()?;
        Ok(self.prepared.as_ref().unwrap().light)
    }

    pub fn cutset_family(&mut self) -> Result<TddRef> {
        self.prepare()?;
        Ok(self.prepared.as_ref().unwrap().cutsets)
    }

    pub fn forbidden_family(&mut self) -> Result<NodeRef> {
        self.prepare()?;
        Ok(self.prepared.as_ref().unwrap().forbidden)
    }

    pub fn tdd(&self) -> &TddStore {
        &self.tdd
    }

    /// Per-level state counts of the light-components search.
    pub fn light_stats(&self) -> Option<&SearchStats> {
        self.prepared.as_ref().map(|p| &p.light_stats)
    }

    /// Per-level state counts of the cutset search.
    pub fn cutset_stats(&self) -> Option<&SearchStats> {
        self.prepared.as_ref().map(|p| &p.cutset_stats)
    }

    /// Reports for the prepared stages plus the most recent filter.
    pub fn reports(&self) -> Vec<StageReport> {
        let mut out = self.stage_reports.clone();
        out.extend(self.filter_report.clone());
        out
    }

    /// One line per stage: `stage seconds nodes cardinality`.
    pub fn emit_stats(&self, w: &mut dyn std::io::Write) -> std::io::Result<()> {
        for report in self.reports() {
            writeln!(w, "{}", report.line())?;
        }
        Ok(())
    }
}

/// Union-find based reference filter: keep the members of `family` whose
/// every component (isolated vertices included) weighs at least `bound`.
pub fn brute_force_filter(g: &Graph, family: &[Vec<u32>], bound: u64) -> Vec<Vec<u32>> {
    let n = g.vertex_count() as usize;
    let mut kept: Vec<Vec<u32>> = family
        .iter()
        .filter(|member| {
            let mut parent: Vec<u32> = (0..=n as u32).collect();
            fn find(parent: &mut [u32], v: u32) -> u32 {
                let mut root = v;
                while parent[root as usize] != root {
                    root = parent[root as usize];
                }
                let mut cur = v;
                while parent[cur as usize] != root {
                    let next = parent[cur as usize];
                    parent[cur as usize] = root;
                    cur = next;
                }
                root
            }
            for &e in member.iter() {
                let (u, v) = g.edge(e);
                let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
                parent[ru as usize] = rv;
            }
            let mut weight = vec![0u64; n + 1];
            for v in g.vertices() {
                let root = find(&mut parent, v);
                weight[root as usize] += g.weight(v);
            }
            g.vertices()
                .all(|v| parent[v as usize] != v || weight[v as usize] >= bound)
        })
        .map(|member| {
            let mut m = member.clone();
            m.sort_unstable();
            m.dedup();
            m
        })
        .collect();
    kept.sort();
    kept.dedup();
    kept
}

/// Parse a candidate family: one member per line of space-separated edge
/// indices, `-` for the empty member, `#` starting a comment.
pub fn parse_family(text: &str, edge_count: u32) -> Result<Vec<Vec<u32>>> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        if line == "-" {
            out.push(Vec::new());
            continue;
        }
        let mut member = Vec::new();
        for token in line.split_whitespace() {
            let e: u32 = token.parse().map_err(|_| {
                Error::parse(line_no, format!("expected an edge index, got {:?}", token))
            })?;
            if e == 0 || e > edge_count {
                return Err(Error::parse(
                    line_no,
                    format!("edge index {} out of range 1..={}", e, edge_count),
                ));
            }
            member.push(e);
        }
        member.sort_unstable();
        member.dedup();
        out.push(member);
    }
    Ok(out)
}

/// Parse a non-negative decimal literal such as `1.1` into an exact
/// rational.
pub fn parse_ratio(text: &str) -> Result<BigRational> {
    let s = text.trim();
    let bad = || Error::InvalidInput(format!("invalid ratio {:?}", text));
    let (int_part, frac_part) = match s.split_once('.') {
        Some((i, f)) => (i, f),
        None => (s, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().all(|c| c.is_ascii_digit())
        || !frac_part.chars().all(|c| c.is_ascii_digit())
        || (!int_part.is_empty() && int_part.parse::<BigInt>().is_err())
    {
        return Err(bad());
    }
    let digits: String = format!("{}{}", int_part, frac_part);
    let numer: BigInt = digits.parse().map_err(|_| bad())?;
    let denom = BigInt::from(10u32).pow(frac_part.len() as u32);
    Ok(BigRational::new(numer, denom))
}

/// The weight bound `total / (ratio * (components - 1) + 1)` as an exact
/// rational together with its floor.
pub fn lower_bound_from_ratio(
    total_weight: u64,
    components: u64,
    ratio: &BigRational,
) -> Result<(BigRational, u64)> {
    if components == 0 {
        return Err(Error::InvalidInput(
            "component count must be at least 1".into(),
        ));
    }
    if !ratio.is_positive() && !ratio.is_zero() {
        return Err(Error::InvalidInput("ratio must be non-negative".into()));
    }
    let denom = ratio * BigRational::from(BigInt::from(components - 1))
        + BigRational::from(BigInt::from(1u32));
    let exact = BigRational::from(BigInt::from(total_weight)) / denom;
    let floor = exact
        .floor()
        .to_integer()
        .to_u64()
        .expect("bound fits in u64 since it is at most the total weight");
    Ok((exact, floor))
}
