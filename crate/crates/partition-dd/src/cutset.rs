//! Stage 2: minimal signed cutsets as a ternary diagram.
//!
//! A signed set assigns each edge one of ZERO / POS / NEG. It is a *minimal
//! cutset* assignment when
//!
//! 1. no vertex has both an incident zero edge and an incident positive
//!    edge, and
//! 2. every negative edge has an endpoint with an incident positive edge.
//!
//! For a connected positive part S these two conditions force the negatives
//! to be exactly the edges outside S touching dom(S) — the minimal set whose
//! absence isolates (dom(S), S) as a whole component. The search tracks per
//! frontier vertex the set of incident edge kinds seen so far (`colors`), a
//! `reserved` flag meaning "this vertex still owes a positive edge", and the
//! frontier-restricted negative adjacency used to discharge reservations
//! when a negatives-only vertex leaves.
//!
//! In subset mode a cursor walks a zero-suppressed family alongside the
//! search, restricting the positive part to members of that family: POS
//! follows the cursor's 1-arc, ZERO and NEG follow its 0-arc, and a cursor
//! label above the current edge means the edge cannot be positive here.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;

use crate::error::Result;
use crate::frontier::{run_tdd_search, FrontierPlan, SearchSpec, SearchStats};
use crate::graph::Graph;
use crate::tdd::{SignedEdgeSet, TddRef, TddStore};
use crate::zdd::{NodeRef, ZddStore};

const ZERO_BIT: u8 = 1;
const POS_BIT: u8 = 2;
const NEG_BIT: u8 = 4;

const BRANCH_ZERO: usize = 0;
const BRANCH_POS: usize = 1;
const BRANCH_NEG: usize = 2;

/// Direct evaluation of the two minimal-cutset conditions; the oracle the
/// diagram construction is tested against.
pub fn check_minimal_cutset(g: &Graph, signed: &SignedEdgeSet) -> bool {
    let n = g.vertex_count() as usize;
    let mut has_zero = vec![false; n + 1];
    let mut has_pos = vec![false; n + 1];
    let mut sign_of = vec![0u8; g.edge_count() as usize + 1];
    for e in signed.positives() {
        sign_of[e as usize] = POS_BIT;
    }
    for e in signed.negatives() {
        sign_of[e as usize] = NEG_BIT;
    }
    for (i, (u, v)) in g.edges() {
        match sign_of[i as usize] {
            POS_BIT => {
                has_pos[u as usize] = true;
                has_pos[v as usize] = true;
            }
            NEG_BIT => {}
            _ => {
                has_zero[u as usize] = true;
                has_zero[v as usize] = true;
            }
        }
    }
    if (1..=n).any(|v| has_zero[v] && has_pos[v]) {
        return false; // condition 1
    }
    for (i, (u, v)) in g.edges() {
        if sign_of[i as usize] == NEG_BIT && !has_pos[u as usize] && !has_pos[v as usize] {
            return false; // condition 2
        }
    }
    true
}

#[derive(Clone, Default, PartialEq, Eq)]
struct VertexState {
    colors: u8,
    reserved: bool,
    /// Frontier vertices joined to this one by processed negative edges;
    /// scrubbed when a neighbor leaves.
    neg: BTreeSet<u32>,
}

/// Opaque search state of [`CutsetSpec`].
#[derive(Clone, Default)]
pub struct CutsetState {
    verts: BTreeMap<u32, VertexState>,
    /// Subset-mode cursor into the positive-part family.
    cursor: Option<NodeRef>,
}

pub struct CutsetSpec<'a> {
    graph: &'a Graph,
    plan: &'a FrontierPlan,
    subset: Option<(&'a ZddStore, NodeRef)>,
}

impl<'a> CutsetSpec<'a> {
    /// All minimal-cutset assignments, connected or not.
    pub fn standalone(graph: &'a Graph, plan: &'a FrontierPlan) -> Self {
        CutsetSpec {
            graph,
            plan,
            subset: None,
        }
    }

    /// Only assignments whose positive part is a member of `family`.
    pub fn subset_of(
        graph: &'a Graph,
        plan: &'a FrontierPlan,
        store: &'a ZddStore,
        family: NodeRef,
    ) -> Self {
        CutsetSpec {
            graph,
            plan,
            subset: Some((store, family)),
        }
    }

    /// Reserve every target: fail on a zero-colored vertex, flag those
    /// without a positive edge yet.
    fn reserve(state: &mut CutsetState, targets: &[u32]) -> Option<()> {
        for t in targets {
            let st = state
                .verts
                .get_mut(t)
                .expect("reserve target must still be present");
            if st.colors & ZERO_BIT != 0 {
                return None;
            }
            if st.colors & POS_BIT == 0 {
                st.reserved = true;
            }
        }
        Some(())
    }
}

impl SearchSpec for CutsetSpec<'_> {
    type State = CutsetState;

    fn stage(&self) -> &'static str {
        "T_Spm"
    }

    fn steps(&self) -> u32 {
        self.graph.edge_count()
    }

    fn initial(&self) -> CutsetState {
        CutsetState {
            verts: BTreeMap::new(),
            cursor: self.subset.map(|(_, family)| family),
        }
    }

    fn transition(&self, state: &CutsetState, step: u32, branch: usize) -> Option<CutsetState> {
        let mut s = state.clone();

        // Subset mode: advance the positive-part cursor first.
        if let Some((zdd, _)) = self.subset {
            let z = s.cursor.unwrap();
            let label = zdd.label(z);
            if branch == BRANCH_POS {
                if label > step {
                    return None; // no member below z takes this edge
                }
                let (_, hi) = zdd.children(z);
                s.cursor = Some(hi);
            } else if label == step {
                let (lo, _) = zdd.children(z);
                if lo == NodeRef::BOTTOM {
                    return None; // every member below z takes this edge
                }
                s.cursor = Some(lo);
            }
            // label > step on a non-POS branch: suppressed node, stay put.
        }

        let (u, v) = self.graph.edge(step);
        for &x in self.plan.enters(step) {
            s.verts.insert(x, VertexState::default());
        }

        for x in [u, v] {
            let st = &s.verts[&x];
            let (colors, reserved) = (st.colors, st.reserved);
            match branch {
                BRANCH_POS => {
                    if colors & ZERO_BIT != 0 {
                        return None; // condition 1
                    }
                    if reserved {
                        s.verts.get_mut(&x).unwrap().reserved = false;
                    }
                }
                BRANCH_ZERO => {
                    if colors & POS_BIT != 0 {
                        return None; // condition 1
                    }
                    if colors == NEG_BIT {
                        // x will never take a positive edge next to a zero
                        // one, so its negative partners must provide it.
                        let targets: Vec<u32> = s.verts[&x]
                            .neg
                            .iter()
                            .copied()
                            .filter(|t| s.verts.contains_key(t))
                            .collect();
                        Self::reserve(&mut s, &targets)?;
                    }
                    if reserved {
                        return None; // owes a positive edge, got a zero one
                    }
                }
                BRANCH_NEG => {
                    if colors & ZERO_BIT != 0 {
                        // Zero-colored endpoint can never satisfy condition
                        // 2 for this edge; the other endpoint must.
                        let other = if x == u { v } else { u };
                        Self::reserve(&mut s, &[other])?;
                    }
                }
                _ => unreachable!(),
            }
            let sign_bit = [ZERO_BIT, POS_BIT, NEG_BIT][branch];
            s.verts.get_mut(&x).unwrap().colors |= sign_bit;
        }

        if branch == BRANCH_NEG {
            s.verts.get_mut(&u).unwrap().neg.insert(v);
            s.verts.get_mut(&v).unwrap().neg.insert(u);
        }

        for &x in self.plan.leaves(step) {
            let st = &s.verts[&x];
            if st.reserved && st.colors & POS_BIT == 0 {
                return None; // left without the owed positive edge
            }
            if st.colors == NEG_BIT {
                // Negatives-only vertex departs: each still-present negative
                // partner must take a positive edge eventually.
                let targets: Vec<u32> = st
                    .neg
                    .iter()
                    .copied()
                    .filter(|t| s.verts.contains_key(t))
                    .collect();
                Self::reserve(&mut s, &targets)?;
            }
            s.verts.remove(&x);
            for st in s.verts.values_mut() {
                st.neg.remove(&x);
            }
        }

        debug_assert!(
            s.verts
                .values()
                .all(|st| !st.reserved || st.colors == NEG_BIT),
            "reservations only coexist with negatives-only colors"
        );
        Some(s)
    }

    fn accept(&self, state: &CutsetState) -> bool {
        debug_assert!(state.verts.is_empty());
        match state.cursor {
            Some(z) => z == NodeRef::TOP,
            None => true,
        }
    }

    fn write_key(&self, state: &CutsetState, key: &mut Vec<u8>) {
        for (&v, st) in &state.verts {
            key.extend_from_slice(&v.to_le_bytes());
            key.push(st.colors | (st.reserved as u8) << 3);
            key.push(st.neg.len() as u8);
            for &t in &st.neg {
                key.extend_from_slice(&t.to_le_bytes());
            }
        }
        if let Some(z) = state.cursor {
            key.extend_from_slice(&z.index().to_le_bytes());
        }
    }

    fn write_projection(&self, state: &CutsetState, key: &mut Vec<u8>) -> bool {
        for st in state.verts.values() {
            key.push(st.colors | (st.reserved as u8) << 3);
        }
        true
    }
}

/// TDD of every minimal-cutset assignment of `g`.
pub fn build_minimal_cutset_tdd(
    store: &mut TddStore,
    g: &Graph,
    budget: usize,
) -> Result<(TddRef, SearchStats)> {
    let plan = FrontierPlan::new(g);
    let spec = CutsetSpec::standalone(g, &plan);
    run_tdd_search(&spec, store, budget)
}

/// TDD of the minimal-cutset assignments whose positive part lies in the
/// family `zs` (one signed set per family member).
pub fn build_cutset_tdd_subset(
    store: &mut TddStore,
    g: &Graph,
    zdd: &ZddStore,
    zs: NodeRef,
    budget: usize,
) -> Result<(TddRef, SearchStats)> {
    let plan = FrontierPlan::new(g);
    let spec = CutsetSpec::subset_of(g, &plan, zdd, zs);
    run_tdd_search(&spec, store, budget)
}

/// `6^{|F_{i-1}|}` per level: the ceiling on distinct (colors, reserved)
/// projections. Each frontier vertex is in one of five color sets
/// ({0}, {-}, {+}, {0,-}, {-,+} — never empty, never 0 with +), with
/// reservation possible only for {-}.
pub fn cutset_projection_bounds(plan: &FrontierPlan) -> Vec<BigUint> {
    (1..=plan.steps())
        .map(|i| BigUint::from(6u32).pow(plan.frontier(i - 1).len() as u32))
        .collect()
}

/// Check per-level projection counts against [`cutset_projection_bounds`];
/// returns the first violating level.
pub fn check_cutset_widths(
    stats: &SearchStats,
    plan: &FrontierPlan,
) -> std::result::Result<(), usize> {
    let limits = cutset_projection_bounds(plan);
    for (idx, (&count, limit)) in stats.projection_counts.iter().zip(&limits).enumerate() {
        if BigUint::from(count) > *limit {
            return Err(idx + 1);
        }
    }
    Ok(())
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::light::build_light_components;
    use crate::zdd::ZddStore;
    use std::collections::BTreeSet;

    /// All 3^m signed assignments passing [`check_minimal_cutset`].
    pub(crate) fn cutset_oracle(g: &Graph) -> BTreeSet<SignedEdgeSet> {
        let m = g.edge_count();
        assert!(m <= 12, "oracle is 3^m");
        let mut out = BTreeSet::new();
        for mut code in 0..3u64.pow(m) {
            let mut pos = Vec::new();
            let mut neg = Vec::new();
            for e in 1..=m {
                match code % 3 {
                    1 => pos.push(e),
                    2 => neg.push(e),
                    _ => {}
                }
                code /= 3;
            }
            let s = SignedEdgeSet::new(&pos, &neg).unwrap();
            if check_minimal_cutset(g, &s) {
                out.insert(s);
            }
        }
        out
    }

    /// The signed set forced by a positive part S: negatives are exactly
    /// the outside edges touching dom(S).
    pub(crate) fn forced_signed(g: &Graph, s: &[u32]) -> SignedEdgeSet {
        let dom: BTreeSet<u32> = s
            .iter()
            .flat_map(|&i| {
                let (u, v) = g.edge(i);
                [u, v]
            })
            .collect();
        let neg: Vec<u32> = g
            .edges()
            .filter(|(i, (u, v))| !s.contains(i) && (dom.contains(u) || dom.contains(v)))
            .map(|(i, _)| i)
            .collect();
        SignedEdgeSet::new(s, &neg).unwrap()
    }

    fn signed(pos: &[u32], neg: &[u32]) -> SignedEdgeSet {
        SignedEdgeSet::new(pos, neg).unwrap()
    }

    fn family(store: &TddStore, root: TddRef) -> BTreeSet<SignedEdgeSet> {
        store.members(root).collect()
    }

    fn worked_example() -> Graph {
        Graph::new(4, vec![1, 1, 3, 3], vec![(1, 2), (2, 3), (1, 4), (3, 4)]).unwrap()
    }

    #[test]
    fn condition_checker_on_small_cases() {
        let p2 = Graph::new(2, vec![1, 1], vec![(1, 2)]).unwrap();
        assert!(check_minimal_cutset(&p2, &signed(&[], &[])));
        assert!(check_minimal_cutset(&p2, &signed(&[1], &[])));
        assert!(!check_minimal_cutset(&p2, &signed(&[], &[1])));

        let p3 = Graph::new(3, vec![1, 1, 1], vec![(1, 2), (2, 3)]).unwrap();
        assert!(check_minimal_cutset(&p3, &signed(&[1, 2], &[])));
        assert!(check_minimal_cutset(&p3, &signed(&[1], &[2])));
        assert!(check_minimal_cutset(&p3, &signed(&[2], &[1])));
        assert!(!check_minimal_cutset(&p3, &signed(&[], &[1, 2])));
        assert!(!check_minimal_cutset(&p3, &signed(&[1], &[]))); // zero+pos at v2
    }

    #[test]
    fn path_of_three_vertices_has_four_cutsets() {
        let g = Graph::new(3, vec![1, 1, 1], vec![(1, 2), (2, 3)]).unwrap();
        let mut store = TddStore::new(2);
        let (root, _) = build_minimal_cutset_tdd(&mut store, &g, 1 << 20).unwrap();
        let expect: BTreeSet<SignedEdgeSet> = [
            signed(&[], &[]),
            signed(&[1, 2], &[]),
            signed(&[1], &[2]),
            signed(&[2], &[1]),
        ]
        .into_iter()
        .collect();
        assert_eq!(family(&store, root), expect);
        assert_eq!(store.count(root), BigUint::from(4u32));
        store.audit().unwrap();
    }

    #[test]
    fn single_edge_rejects_the_lone_negative() {
        let g = Graph::new(2, vec![1, 1], vec![(1, 2)]).unwrap();
        let mut store = TddStore::new(1);
        let (root, _) = build_minimal_cutset_tdd(&mut store, &g, 1 << 20).unwrap();
        let expect: BTreeSet<SignedEdgeSet> =
            [signed(&[], &[]), signed(&[1], &[])].into_iter().collect();
        assert_eq!(family(&store, root), expect);
        assert_eq!(store.count(root), BigUint::from(2u32));
    }

    #[test]
    fn standalone_matches_ternary_brute_force() {
        let graphs = vec![
            worked_example(),
            Graph::new(3, vec![1, 1, 1], vec![(1, 2), (1, 3), (2, 3)]).unwrap(),
            Graph::new(5, vec![1; 5], vec![(1, 2), (2, 3), (3, 4), (4, 5), (1, 5), (2, 4)])
                .unwrap(),
            // disconnected graph with an isolated edge component
            Graph::new(5, vec![1; 5], vec![(1, 2), (3, 4), (4, 5), (3, 5)]).unwrap(),
            // parallel edges
            Graph::new(3, vec![1, 1, 1], vec![(1, 2), (1, 2), (2, 3)]).unwrap(),
        ];
        for g in graphs {
            let mut store = TddStore::new(g.edge_count());
            let (root, stats) = build_minimal_cutset_tdd(&mut store, &g, 1 << 20).unwrap();
            assert_eq!(family(&store, root), cutset_oracle(&g));
            let plan = FrontierPlan::new(&g);
            assert!(check_cutset_widths(&stats, &plan).is_ok());
            store.audit().unwrap();
        }
    }

    #[test]
    fn subset_mode_on_the_worked_example() {
        let g = worked_example();
        let mut zdd = ZddStore::new(4);
        let (zs, _) = build_light_components(&mut zdd, &g, 3, 1 << 20).unwrap();
        let mut tdd = TddStore::new(4);
        let (t, _) = build_cutset_tdd_subset(&mut tdd, &g, &zdd, zs, 1 << 20).unwrap();
        assert_eq!(
            family(&tdd, t),
            BTreeSet::from([signed(&[1], &[2, 3])])
        );
        assert_eq!(tdd.count(t), zdd.count(zs));
    }

    #[test]
    fn subset_of_bottom_is_bottom() {
        let g = worked_example();
        let zdd = ZddStore::new(4);
        let mut tdd = TddStore::new(4);
        let (t, _) =
            build_cutset_tdd_subset(&mut tdd, &g, &zdd, NodeRef::BOTTOM, 1 << 20).unwrap();
        assert_eq!(t, TddRef::BOTTOM);
    }

    #[test]
    fn subset_members_are_the_forced_signed_sets() {
        let graphs = vec![
            worked_example(),
            Graph::new(5, vec![2, 1, 4, 1, 3], vec![(1, 2), (2, 3), (3, 4), (4, 5), (1, 5)])
                .unwrap(),
            Graph::new(
                4,
                vec![1, 2, 1, 2],
                vec![(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)],
            )
            .unwrap(),
        ];
        for g in graphs {
            for bound in [2, 3, 5, 9] {
                let mut zdd = ZddStore::new(g.edge_count());
                let (zs, _) = build_light_components(&mut zdd, &g, bound, 1 << 20).unwrap();
                let mut tdd = TddStore::new(g.edge_count());
                let (t, _) = build_cutset_tdd_subset(&mut tdd, &g, &zdd, zs, 1 << 20).unwrap();

                let expect: BTreeSet<SignedEdgeSet> = zdd
                    .members(zs)
                    .map(|s| forced_signed(&g, &s))
                    .collect();
                assert_eq!(family(&tdd, t), expect, "bound {}", bound);
                assert_eq!(tdd.count(t), zdd.count(zs), "bijection at bound {}", bound);
                for member in &expect {
                    assert!(check_minimal_cutset(&g, member));
                }
            }
        }
    }
}
