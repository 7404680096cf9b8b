//! Stage 1: the family of connected subgraphs lighter than the bound.
//!
//! A member is a non-empty edge set S whose edge-induced subgraph
//! (dom(S), S) is connected and whose endpoint weight sum is `< bound`.
//! Isolated vertices are not members here; they are folded in later by the
//! superset stage.
//!
//! The search state tracks, per touched frontier vertex, which connected
//! block it belongs to, plus the accumulated weight of every vertex touched
//! so far and a flag recording that the (single) component has already left
//! the frontier. Weight is added the first time a vertex gains a selected
//! edge and the state is rejected the moment the weight reaches the bound,
//! so live weights stay in `0..bound`. Once the component closes, its weight
//! has passed the check for good and is dropped from the state.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use num_traits::One;

use crate::error::Result;
use crate::frontier::{run_zdd_search, FrontierPlan, SearchSpec, SearchStats};
use crate::graph::Graph;
use crate::zdd::{NodeRef, ZddStore};

/// Total weight of the endpoint set dom(edges), each vertex counted once.
pub fn weight_of(g: &Graph, edges: &[u32]) -> u64 {
    let dom: BTreeSet<u32> = edges
        .iter()
        .flat_map(|&i| {
            let (u, v) = g.edge(i);
            [u, v]
        })
        .collect();
    dom.into_iter().map(|v| g.weight(v)).sum()
}

/// Bell numbers `B_0..=B_n` by the Bell-triangle recurrence.
pub fn bell_numbers(n: usize) -> Vec<BigUint> {
    let mut bells = Vec::with_capacity(n + 1);
    let mut row: Vec<BigUint> = vec![BigUint::one()];
    bells.push(BigUint::one());
    for _ in 0..n {
        let mut next: Vec<BigUint> = Vec::with_capacity(row.len() + 1);
        next.push(row.last().unwrap().clone());
        for prev in &row {
            let last = next.last().unwrap().clone();
            next.push(last + prev);
        }
        bells.push(next[0].clone());
        row = next;
    }
    bells
}

/// Opaque search state of [`LightComponentsSpec`].
#[derive(Clone, Default)]
pub struct LightState {
    /// Touched frontier vertex -> block id; untouched vertices are absent.
    blocks: BTreeMap<u32, u32>,
    /// Weight of every vertex touched so far; always `< bound`, and reset
    /// to 0 once the component closes.
    weight: u64,
    /// The single allowed component has fully left the frontier.
    closed: bool,
}

pub struct LightComponentsSpec<'a> {
    graph: &'a Graph,
    plan: &'a FrontierPlan,
    bound: u64,
}

impl<'a> LightComponentsSpec<'a> {
    pub fn new(graph: &'a Graph, plan: &'a FrontierPlan, bound: u64) -> Self {
        LightComponentsSpec { graph, plan, bound }
    }
}

impl SearchSpec for LightComponentsSpec<'_> {
    type State = LightState;

    fn stage(&self) -> &'static str {
        "Z_S"
    }

    fn steps(&self) -> u32 {
        self.graph.edge_count()
    }

    fn initial(&self) -> LightState {
        LightState::default()
    }

    fn transition(&self, state: &LightState, step: u32, branch: usize) -> Option<LightState> {
        let mut s = state.clone();
        let (u, v) = self.graph.edge(step);
        if branch == 1 {
            // A closed component must stay the only one.
            if s.closed {
                return None;
            }
            for x in [u, v] {
                if !s.blocks.contains_key(&x) {
                    s.weight += self.graph.weight(x);
                }
            }
            if s.weight >= self.bound {
                return None;
            }
            let iu = s.blocks.get(&u).copied();
            let iv = s.blocks.get(&v).copied();
            match (iu, iv) {
                (None, None) => {
                    let fresh = s.blocks.values().max().map_or(0, |&b| b + 1);
                    s.blocks.insert(u, fresh);
                    s.blocks.insert(v, fresh);
                }
                (Some(a), None) => {
                    s.blocks.insert(v, a);
                }
                (None, Some(b)) => {
                    s.blocks.insert(u, b);
                }
                (Some(a), Some(b)) if a != b => {
                    for id in s.blocks.values_mut() {
                        if *id == b {
                            *id = a;
                        }
                    }
                }
                _ => {}
            }
        }
        for &x in self.plan.leaves(step) {
            let Some(id) = s.blocks.remove(&x) else {
                continue; // untouched vertices leave without a trace
            };
            if s.blocks.values().any(|&b| b == id) {
                continue; // block still has frontier members
            }
            // x was the block's last frontier vertex: the component closes.
            if s.closed || !s.blocks.is_empty() {
                // Either a second closed component, or another touched block
                // that can no longer join this one: no completion survives.
                return None;
            }
            s.closed = true;
            s.weight = 0; // checked < bound at every growth step; now final
        }
        Some(s)
    }

    fn accept(&self, state: &LightState) -> bool {
        state.closed
    }

    fn write_key(&self, state: &LightState, key: &mut Vec<u8>) {
        // Block ids renumbered to first-occurrence order over the
        // vertex-sorted map; vertices themselves are part of the key.
        let mut renumber: BTreeMap<u32, u8> = BTreeMap::new();
        for (&v, &id) in &state.blocks {
            let next = renumber.len() as u8;
            let r = *renumber.entry(id).or_insert(next);
            key.extend_from_slice(&v.to_le_bytes());
            key.push(r);
        }
        key.extend_from_slice(&state.weight.to_le_bytes());
        key.push(state.closed as u8);
    }
}

/// ZDD of all connected subgraphs (≥ 1 edge) of weight `< bound`.
pub fn build_light_components(
    store: &mut ZddStore,
    g: &Graph,
    bound: u64,
    budget: usize,
) -> Result<(NodeRef, SearchStats)> {
    let plan = FrontierPlan::new(g);
    let spec = LightComponentsSpec::new(g, &plan, bound);
    run_zdd_search(&spec, store, budget)
}

/// `B_{|F_{i-1}|} * bound` for each level, the pinned ceiling on the
/// per-level merge-table sizes of the light-components search.
pub fn light_width_bounds(plan: &FrontierPlan, bound: u64) -> Vec<BigUint> {
    let bells = bell_numbers(plan.width());
    (1..=plan.steps())
        .map(|i| &bells[plan.frontier(i - 1).len()] * BigUint::from(bound))
        .collect()
}

/// Check the per-level bound; returns the first violating level.
pub fn check_light_widths(
    stats: &SearchStats,
    plan: &FrontierPlan,
    bound: u64,
) -> std::result::Result<(), usize> {
    let limits = light_width_bounds(plan, bound);
    for (idx, (&count, limit)) in stats.state_counts.iter().zip(&limits).enumerate() {
        if BigUint::from(count) > *limit {
            return Err(idx + 1);
        }
    }
    Ok(())
}
