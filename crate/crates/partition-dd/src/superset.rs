//! Stage 3: from signed sets to the family of their supersets.
//!
//! An edge set y is a superset of a signed set x when it contains every
//! positive edge of x and avoids every negative edge (zero edges are free).
//! [`lift_to_supersets`] turns a ternary diagram into the zero-suppressed
//! family of all such y — a subset construction that walks every diagram
//! node consistent with the choices made so far. Adding an edge follows
//! POS and ZERO arcs; omitting it follows NEG and ZERO arcs; reaching the
//! accepting terminal makes the whole remaining edge choice free.
//!
//! [`build_isolated_vertex_family`] gives the edge sets leaving one vertex
//! isolated, and [`assemble_sup`] unions those for all vertices lighter
//! than the bound into the lift — together the families a candidate
//! partition must avoid.

use crate::error::Result;
use crate::frontier::{run_zdd_search, SearchSpec, SearchStats};
use crate::graph::Graph;
use crate::tdd::{TddRef, TddStore};
use crate::zdd::{NodeRef, ZddStore};

/// Opaque search state of [`SupersetSpec`]: the diagram nodes still
/// compatible with the edge choices so far, plus whether some signed set
/// has already been fully satisfied.
#[derive(Clone)]
pub struct SupersetState {
    live: Vec<TddRef>,
    matched: bool,
}

pub struct SupersetSpec<'a> {
    tdd: &'a TddStore,
    root: TddRef,
}

impl<'a> SupersetSpec<'a> {
    pub fn new(tdd: &'a TddStore, root: TddRef) -> Self {
        SupersetSpec { tdd, root }
    }
}

impl SearchSpec for SupersetSpec<'_> {
    type State = SupersetState;

    fn stage(&self) -> &'static str {
        "Z_Sup"
    }

    fn steps(&self) -> u32 {
        self.tdd.universe()
    }

    fn initial(&self) -> SupersetState {
        match self.root {
            TddRef::BOTTOM => SupersetState {
                live: Vec::new(),
                matched: false,
            },
            TddRef::TOP => SupersetState {
                live: Vec::new(),
                matched: true,
            },
            r => SupersetState {
                live: vec![r],
                matched: false,
            },
        }
    }

    fn transition(&self, state: &SupersetState, step: u32, branch: usize) -> Option<SupersetState> {
        if state.matched {
            // Some signed set is already satisfied; the rest is free.
            return Some(state.clone());
        }
        let mut live = Vec::new();
        let mut matched = false;
        let mut push = |r: TddRef, live: &mut Vec<TddRef>| match r {
            TddRef::BOTTOM => {}
            TddRef::TOP => matched = true,
            r => {
                if !live.contains(&r) {
                    live.push(r);
                }
            }
        };
        for &r in &state.live {
            if self.tdd.label(r) > step {
                // Suppressed level: this edge is zero in every signed set
                // below r, hence free either way.
                push(r, &mut live);
                continue;
            }
            let (zero, pos, neg) = self.tdd.children(r);
            push(zero, &mut live);
            if branch == 1 {
                push(pos, &mut live);
            } else {
                push(neg, &mut live);
            }
        }
        if matched {
            live.clear();
        } else if live.is_empty() {
            return None;
        }
        live.sort();
        Some(SupersetState { live, matched })
    }

    fn accept(&self, state: &SupersetState) -> bool {
        state.matched
    }

    fn write_key(&self, state: &SupersetState, key: &mut Vec<u8>) {
        key.push(state.matched as u8);
        for r in &state.live {
            key.extend_from_slice(&r.index().to_le_bytes());
        }
    }
}

/// ZDD of every edge set containing the positives and avoiding the
/// negatives of at least one member of `root`.
pub fn lift_to_supersets(
    zdd: &mut ZddStore,
    tdd: &TddStore,
    root: TddRef,
    budget: usize,
) -> Result<(NodeRef, SearchStats)> {
    let spec = SupersetSpec::new(tdd, root);
    run_zdd_search(&spec, zdd, budget)
}

/// ZDD of the edge sets in which vertex `v` is isolated: all subsets of
/// the edges not incident to `v`.
pub fn build_isolated_vertex_family(zdd: &mut ZddStore, g: &Graph, v: u32) -> NodeRef {
    let incident = g.incident_edges(v);
    let mut cur = NodeRef::TOP;
    for i in (1..=g.edge_count()).rev() {
        if !incident.contains(&i) {
            cur = zdd.node(i, cur, cur);
        }
    }
    cur
}

/// The full forbidden family: supersets of the signed sets in `t`, plus
/// every edge set isolating a vertex of weight below `bound`.
pub fn assemble_sup(
    zdd: &mut ZddStore,
    tdd: &TddStore,
    t: TddRef,
    g: &Graph,
    bound: u64,
    budget: usize,
) -> Result<(NodeRef, SearchStats)> {
    let (mut sup, stats) = lift_to_supersets(zdd, tdd, t, budget)?;
    for v in g.vertices() {
        if g.weight(v) < bound {
            let zv = build_isolated_vertex_family(zdd, g, v);
            sup = zdd.union(sup, zv);
        }
    }
    Ok((sup, stats))
}
