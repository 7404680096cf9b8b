//! Frontier decomposition of an edge order, plus the level-synchronous
//! search engine that grows decision diagrams one edge at a time.
//!
//! The frontier after step `i` is `F_i` = vertices incident both to an edge
//! with index ≤ i and to an edge with index > i, so `F_0 = F_m = ∅`. A
//! vertex *enters* at its first incident edge and *leaves* after its last
//! one; per-vertex search state lives only while the vertex is on the
//! frontier.
//!
//! A [`SearchSpec`] drives the engine: it maps (state, edge, branch) to a
//! successor state or a rejection, decides acceptance after the final edge,
//! and serializes states to canonical byte keys. States with equal keys are
//! merged level by level; the per-level merge-table sizes are reported in
//! [`SearchStats`]. The finished level graph is folded bottom-up through the
//! node store, which yields the canonical reduced diagram.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::tdd::{TddRef, TddStore};
use crate::zdd::{NodeRef, ZddStore};

/// Frontier sets and enter/leave events for one graph's edge order.
#[derive(Clone, Debug)]
pub struct FrontierPlan {
    frontiers: Vec<Vec<u32>>, // F_0 ..= F_m, each sorted ascending
    enters: Vec<Vec<u32>>,    // per step i (index i-1): endpoints first seen at e_i
    leaves: Vec<Vec<u32>>,    // per step i: endpoints last seen at e_i
    width: usize,
}

impl FrontierPlan {
    pub fn new(g: &Graph) -> Self {
        let m = g.edge_count();
        let n = g.vertex_count() as usize;
        let mut first = vec![0u32; n + 1];
        let mut last = vec![0u32; n + 1];
        for (i, (u, v)) in g.edges() {
            for x in [u, v] {
                if first[x as usize] == 0 {
                    first[x as usize] = i;
                }
                last[x as usize] = i;
            }
        }
        let mut frontiers = Vec::with_capacity(m as usize + 1);
        for i in 0..=m {
            let f: Vec<u32> = (1..=n as u32)
                .filter(|&v| first[v as usize] != 0 && first[v as usize] <= i && last[v as usize] > i)
                .collect();
            frontiers.push(f);
        }
        let mut enters = Vec::with_capacity(m as usize);
        let mut leaves = Vec::with_capacity(m as usize);
        for (i, (u, v)) in g.edges() {
            let mut ins: Vec<u32> = [u, v]
                .into_iter()
                .filter(|&x| first[x as usize] == i)
                .collect();
            ins.sort_unstable();
            let mut outs: Vec<u32> = [u, v]
                .into_iter()
                .filter(|&x| last[x as usize] == i)
                .collect();
            outs.sort_unstable();
            enters.push(ins);
            leaves.push(outs);
        }
        let width = frontiers.iter().map(|f| f.len()).max().unwrap_or(0);
        FrontierPlan {
            frontiers,
            enters,
            leaves,
            width,
        }
    }

    pub fn steps(&self) -> u32 {
        (self.frontiers.len() - 1) as u32
    }

    /// `F_i` for `i ∈ 0..=m`, sorted ascending.
    pub fn frontier(&self, i: u32) -> &[u32] {
        &self.frontiers[i as usize]
    }

    /// Peak frontier size `f = max |F_i|`.
    pub fn width(&self) -> usize {
        self.width
    }

    /// Endpoints of `e_step` whose first incident edge is `e_step`.
    pub fn enters(&self, step: u32) -> &[u32] {
        &self.enters[step as usize - 1]
    }

    /// Endpoints of `e_step` whose last incident edge is `e_step`.
    pub fn leaves(&self, step: u32) -> &[u32] {
        &self.leaves[step as usize - 1]
    }
}

/// One search instantiation: state type, transitions, acceptance, and
/// canonical serialization. `branch` is 0/1 for binary searches and
/// 0 (ZERO) / 1 (POS) / 2 (NEG) for ternary ones.
pub trait SearchSpec {
    type State: Clone;

    /// Stage name used in budget errors and reports.
    fn stage(&self) -> &'static str;

    /// Number of levels (normally the graph's edge count).
    fn steps(&self) -> u32;

    fn initial(&self) -> Self::State;

    /// Successor state, or `None` to reject (arc to ⊥). Pruning is sound
    /// only when no completion of the state can be accepted.
    fn transition(&self, state: &Self::State, step: u32, branch: usize) -> Option<Self::State>;

    /// Acceptance for states that survive the final step.
    fn accept(&self, state: &Self::State) -> bool;

    /// Canonical key; states with equal keys are merged. Must be a pure
    /// function of the state's future behavior.
    fn write_key(&self, state: &Self::State, key: &mut Vec<u8>);

    /// Optional coarser projection counted separately in the stats (used
    /// for width-bound checks). Return false to disable.
    fn write_projection(&self, _state: &Self::State, _key: &mut Vec<u8>) -> bool {
        false
    }
}

/// Per-level merge-table sizes of a completed run.
#[derive(Clone, Debug)]
pub struct SearchStats {
    pub stage: &'static str,
    /// Distinct states at each level `1..=m` (level i states are keyed on
    /// `F_{i-1}`).
    pub state_counts: Vec<usize>,
    /// Distinct projection keys per level; empty when the search defines no
    /// projection.
    pub projection_counts: Vec<usize>,
}

impl SearchStats {
    pub fn peak_states(&self) -> usize {
        self.state_counts.iter().copied().max().unwrap_or(0)
    }
}

#[derive(Copy, Clone)]
enum Arc {
    Bottom,
    Top,
    State(u32),
}

/// Levels of provisional nodes; entry `i-1` holds the out-arcs of every
/// level-`i` state.
type Levels<const A: usize> = Vec<Vec<[Arc; A]>>;

fn explore<const A: usize, S: SearchSpec>(
    spec: &S,
    budget: usize,
) -> Result<(Levels<A>, SearchStats, bool)> {
    let m = spec.steps();
    let mut levels: Vec<Vec<[Arc; A]>> = Vec::with_capacity(m as usize);
    let mut stats = SearchStats {
        stage: spec.stage(),
        state_counts: Vec::with_capacity(m as usize),
        projection_counts: Vec::new(),
    };
    let mut probe = Vec::new();
    let has_projection = spec.write_projection(&spec.initial(), &mut probe);

    let mut states: Vec<S::State> = vec![spec.initial()];
    let mut total_states: usize = 1;
    for i in 1..=m {
        stats.state_counts.push(states.len());
        if has_projection {
            let mut keys: HashSet<Vec<u8>> = HashSet::with_capacity(states.len());
            for s in &states {
                let mut key = Vec::new();
                spec.write_projection(s, &mut key);
                keys.insert(key);
            }
            stats.projection_counts.push(keys.len());
        }

        let mut next_states: Vec<S::State> = Vec::new();
        let mut merge_table: HashMap<Vec<u8>, u32> = HashMap::new();
        let mut arcs: Vec<[Arc; A]> = Vec::with_capacity(states.len());
        for s in &states {
            let mut out = [Arc::Bottom; A];
            for (branch, slot) in out.iter_mut().enumerate() {
                let Some(ns) = spec.transition(s, i, branch) else {
                    continue;
                };
                *slot = if i == m {
                    if spec.accept(&ns) {
                        Arc::Top
                    } else {
                        Arc::Bottom
                    }
                } else {
                    let mut key = Vec::new();
                    spec.write_key(&ns, &mut key);
                    match merge_table.entry(key) {
                        std::collections::hash_map::Entry::Occupied(e) => Arc::State(*e.get()),
                        std::collections::hash_map::Entry::Vacant(e) => {
                            let idx = next_states.len() as u32;
                            next_states.push(ns);
                            e.insert(idx);
                            total_states += 1;
                            if total_states > budget {
                                return Err(Error::Resource {
                                    stage: spec.stage(),
                                    budget,
                                });
                            }
                            Arc::State(idx)
                        }
                    }
                };
            }
            arcs.push(out);
        }
        levels.push(arcs);
        states = next_states;
    }
    let accept_empty = m == 0 && spec.accept(&spec.initial());
    Ok((levels, stats, accept_empty))
}

/// Run a binary search and fold the result into `store`. The budget caps
/// the total number of merge-table states across all levels.
pub fn run_zdd_search<S: SearchSpec>(
    spec: &S,
    store: &mut ZddStore,
    budget: usize,
) -> Result<(NodeRef, SearchStats)> {
    assert_eq!(
        store.universe(),
        spec.steps(),
        "store universe must match the number of search levels"
    );
    let (levels, stats, accept_empty) = explore::<2, S>(spec, budget)?;
    if levels.is_empty() {
        let root = if accept_empty {
            NodeRef::TOP
        } else {
            NodeRef::BOTTOM
        };
        return Ok((root, stats));
    }
    let mut next: Vec<NodeRef> = Vec::new();
    for (idx, level) in levels.iter().enumerate().rev() {
        let label = idx as u32 + 1;
        let mut cur = Vec::with_capacity(level.len());
        for out in level {
            let lo = resolve_zdd(out[0], &next);
            let hi = resolve_zdd(out[1], &next);
            cur.push(store.node(label, lo, hi));
        }
        next = cur;
    }
    Ok((next[0], stats))
}

fn resolve_zdd(arc: Arc, next: &[NodeRef]) -> NodeRef {
    match arc {
        Arc::Bottom => NodeRef::BOTTOM,
        Arc::Top => NodeRef::TOP,
        Arc::State(k) => next[k as usize],
    }
}

/// Ternary sibling of [`run_zdd_search`]; branch 0 is ZERO, 1 POS, 2 NEG.
pub fn run_tdd_search<S: SearchSpec>(
    spec: &S,
    store: &mut TddStore,
    budget: usize,
) -> Result<(TddRef, SearchStats)> {
    assert_eq!(
        store.universe(),
        spec.steps(),
        "store universe must match the number of search levels"
    );
    let (levels, stats, accept_empty) = explore::<3, S>(spec, budget)?;
    if levels.is_empty() {
        let root = if accept_empty {
            TddRef::TOP
        } else {
            TddRef::BOTTOM
        };
        return Ok((root, stats));
    }
    let mut next: Vec<TddRef> = Vec::new();
    for (idx, level) in levels.iter().enumerate().rev() {
        let label = idx as u32 + 1;
        let mut cur = Vec::with_capacity(level.len());
        for out in level {
            let zero = resolve_tdd(out[0], &next);
            let pos = resolve_tdd(out[1], &next);
            let neg = resolve_tdd(out[2], &next);
            cur.push(store.node(label, zero, pos, neg));
        }
        next = cur;
    }
    Ok((next[0], stats))
}

fn resolve_tdd(arc: Arc, next: &[TddRef]) -> TddRef {
    match arc {
        Arc::Bottom => TddRef::BOTTOM,
        Arc::Top => TddRef::TOP,
        Arc::State(k) => next[k as usize],
    }
}
