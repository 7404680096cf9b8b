//! Zero-suppressed decision diagrams over a fixed universe of edge indices.
//!
//! A [`ZddStore`] owns a node pool with hash-consing, so structurally equal
//! diagrams share the same [`NodeRef`]. Each root-to-⊤ path spells one member
//! of the represented family: taking a node's 1-arc includes its label,
//! taking the 0-arc excludes it. The reduction rule is the zero-suppressed
//! one — a node whose 1-child is ⊥ is never materialized, `node` returns its
//! 0-child instead — and labels strictly increase along every arc. Nodes with
//! equal children are kept; they encode "this element is free".
//!
//! ```
//! use partition_dd::zdd::ZddStore;
//!
//! let mut z = ZddStore::new(3);
//! let f = z.from_sets(&[vec![1, 3], vec![2, 3], vec![3]]).unwrap();
//! assert_eq!(z.count(f).to_string(), "3");
//! assert!(z.contains(f, &[2, 3]));
//! ```

use std::collections::HashMap;
use std::io::{self, Write};

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Label reserved for the two terminals; compares above every real label.
pub const TERMINAL_LABEL: u32 = u32::MAX;

/// Handle to a node. Carries the id of the owning store so that mixing
/// handles between stores is caught instead of silently corrupting results.
/// Terminals use store id 0 and are valid in every store.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct NodeRef {
    store: u32,
    index: u32,
}

impl NodeRef {
    /// The empty family ∅ (no member at all).
    pub const BOTTOM: NodeRef = NodeRef { store: 0, index: 0 };
    /// The family {∅} whose only member is the empty set.
    pub const TOP: NodeRef = NodeRef { store: 0, index: 1 };

    pub fn is_terminal(self) -> bool {
        self.store == 0
    }

    /// Raw pool index; stable within one store, used for canonical state keys.
    pub fn index(self) -> u32 {
        self.index
    }
}

#[derive(Copy, Clone)]
struct Node {
    label: u32,
    lo: NodeRef,
    hi: NodeRef,
}

#[derive(Copy, Clone, PartialEq, Eq, Hash)]
enum Op {
    Union,
    Intersect,
    Difference,
}

static NEXT_STORE_ID: std::sync::atomic::AtomicU32 = std::sync::atomic::AtomicU32::new(1);

/// Node pool for one family universe. Construction and the set operations
/// mutate internal tables (unique table, operation and count memos), so the
/// store follows a single-writer discipline; read-only queries borrow it
/// shared.
pub struct ZddStore {
    id: u32,
    universe: u32,
    nodes: Vec<Node>,
    unique: HashMap<(u32, NodeRef, NodeRef), u32>,
    op_cache: HashMap<(Op, u32, u32), NodeRef>,
    count_cache: HashMap<u32, BigUint>,
}

impl ZddStore {
    /// A store for families over edge indices `1..=universe`.
    pub fn new(universe: u32) -> Self {
        let dummy = Node {
            label: TERMINAL_LABEL,
            lo: NodeRef::BOTTOM,
            hi: NodeRef::BOTTOM,
        };
        ZddStore {
            id: NEXT_STORE_ID.fetch_add(1, std::sync::atomic::Ordering::Relaxed),
            universe,
            nodes: vec![dummy; 2],
            unique: HashMap::new(),
            op_cache: HashMap::new(),
            count_cache: HashMap::new(),
        }
    }

    pub fn universe(&self) -> u32 {
        self.universe
    }

    /// Total nodes in the pool, terminals included. Grows monotonically.
    pub fn pool_size(&self) -> usize {
        self.nodes.len()
    }

    fn check_owned(&self, r: NodeRef) -> NodeRef {
        assert!(
            r.store == 0 || r.store == self.id,
            "NodeRef from a different store (id {}, expected {})",
            r.store,
            self.id
        );
        r
    }

    fn at(&self, r: NodeRef) -> &Node {
        &self.nodes[r.index as usize]
    }

    /// Label of `r`, with terminals reporting [`TERMINAL_LABEL`].
    pub fn label(&self, r: NodeRef) -> u32 {
        if r.is_terminal() {
            TERMINAL_LABEL
        } else {
            self.check_owned(r);
            self.at(r).label
        }
    }

    /// 0-child and 1-child of a non-terminal node.
    pub fn children(&self, r: NodeRef) -> (NodeRef, NodeRef) {
        assert!(!r.is_terminal(), "terminals have no children");
        self.check_owned(r);
        let n = self.at(r);
        (n.lo, n.hi)
    }

    /// The unique reduced node `(label, lo, hi)`. Applies the
    /// zero-suppression rule (`hi == ⊥` collapses to `lo`). Labels must
    /// strictly decrease toward the root: `label` must be smaller than both
    /// children's labels, and lie in `1..=universe`; violations panic, they
    /// are programming errors, not data errors.
    pub fn node(&mut self, label: u32, lo: NodeRef, hi: NodeRef) -> NodeRef {
        assert!(
            label >= 1 && label <= self.universe,
            "label {} outside universe 1..={}",
            label,
            self.universe
        );
        self.check_owned(lo);
        self.check_owned(hi);
        assert!(
            label < self.label(lo) && label < self.label(hi),
            "label ordering violation: {} must precede its children",
            label
        );
        if hi == NodeRef::BOTTOM {
            return lo;
        }
        if let Some(&index) = self.unique.get(&(label, lo, hi)) {
            return NodeRef {
                store: self.id,
                index,
            };
        }
        let index = self.nodes.len() as u32;
        self.nodes.push(Node { label, lo, hi });
        self.unique.insert((label, lo, hi), index);
        NodeRef {
            store: self.id,
            index,
        }
    }

    /// Family holding exactly the given sets (duplicates collapse). Fails if
    /// any element is outside `1..=universe`.
    pub fn from_sets<S: AsRef<[u32]>>(&mut self, sets: &[S]) -> Result<NodeRef> {
        let mut canon: Vec<Vec<u32>> = Vec::with_capacity(sets.len());
        for s in sets {
            let mut v = s.as_ref().to_vec();
            for &e in &v {
                if e < 1 || e > self.universe {
                    return Err(Error::InvalidInput(format!(
                        "edge index {} outside universe 1..={}",
                        e, self.universe
                    )));
                }
            }
            v.sort_unstable();
            v.dedup();
            canon.push(v);
        }
        canon.sort();
        canon.dedup();
        let views: Vec<&[u32]> = canon.iter().map(|v| v.as_slice()).collect();
        Ok(self.build_sets(&views))
    }

    fn build_sets(&mut self, sets: &[&[u32]]) -> NodeRef {
        if sets.is_empty() {
            return NodeRef::BOTTOM;
        }
        // Sorted lexicographically, so an empty set can only sit in front.
        let label = match sets.iter().filter_map(|s| s.first()).min() {
            None => return NodeRef::TOP,
            Some(&l) => l,
        };
        let mut lo_group: Vec<&[u32]> = Vec::new();
        let mut hi_group: Vec<&[u32]> = Vec::new();
        for s in sets {
            match s.first() {
                Some(&e) if e == label => hi_group.push(&s[1..]),
                _ => lo_group.push(s),
            }
        }
        let lo = self.build_sets(&lo_group);
        let hi = self.build_sets(&hi_group);
        self.node(label, lo, hi)
    }

    /// The power set of the universe as a length-`universe` don't-care chain.
    pub fn all_subsets(&mut self) -> NodeRef {
        let mut acc = NodeRef::TOP;
        for label in (1..=self.universe).rev() {
            acc = self.node(label, acc, acc);
        }
        acc
    }

    pub fn union(&mut self, a: NodeRef, b: NodeRef) -> NodeRef {
        self.check_owned(a);
        self.check_owned(b);
        self.apply(Op::Union, a, b)
    }

    pub fn intersect(&mut self, a: NodeRef, b: NodeRef) -> NodeRef {
        self.check_owned(a);
        self.check_owned(b);
        self.apply(Op::Intersect, a, b)
    }

    /// Members of `a` that are not members of `b`.
    pub fn difference(&mut self, a: NodeRef, b: NodeRef) -> NodeRef {
        self.check_owned(a);
        self.check_owned(b);
        self.apply(Op::Difference, a, b)
    }

    fn apply(&mut self, op: Op, a: NodeRef, b: NodeRef) -> NodeRef {
        match op {
            Op::Union => {
                if a == NodeRef::BOTTOM || a == b {
                    return b;
                }
                if b == NodeRef::BOTTOM {
                    return a;
                }
            }
            Op::Intersect => {
                if a == NodeRef::BOTTOM || b == NodeRef::BOTTOM {
                    return NodeRef::BOTTOM;
                }
                if a == b {
                    return a;
                }
            }
            Op::Difference => {
                if a == NodeRef::BOTTOM || a == b {
                    return NodeRef::BOTTOM;
                }
                if b == NodeRef::BOTTOM {
                    return a;
                }
            }
        }
        let key = (op, a.index, b.index);
        if let Some(&r) = self.op_cache.get(&key) {
            return r;
        }
        let (la, lb) = (self.label(a), self.label(b));
        let result = if la < lb {
            let (lo, hi) = self.children(a);
            match op {
                Op::Union => {
                    let l = self.apply(op, lo, b);
                    self.node(la, l, hi)
                }
                Op::Intersect => self.apply(op, lo, b),
                Op::Difference => {
                    let l = self.apply(op, lo, b);
                    self.node(la, l, hi)
                }
            }
        } else if lb < la {
            let (lo, _hi) = self.children(b);
            match op {
                Op::Union => {
                    let l = self.apply(op, a, lo);
                    let (_, hi_b) = self.children(b);
                    self.node(lb, l, hi_b)
                }
                Op::Intersect => self.apply(op, a, lo),
                Op::Difference => self.apply(op, a, lo),
            }
        } else {
            // Equal labels; both are non-terminal here (terminal pairs hit
            // the base cases above).
            let (alo, ahi) = self.children(a);
            let (blo, bhi) = self.children(b);
            let lo = self.apply(op, alo, blo);
            let hi = self.apply(op, ahi, bhi);
            self.node(la, lo, hi)
        };
        self.op_cache.insert(key, result);
        result
    }

    /// Number of members, exact.
    pub fn count(&mut self, a: NodeRef) -> BigUint {
        self.check_owned(a);
        if a == NodeRef::BOTTOM {
            return BigUint::zero();
        }
        if a == NodeRef::TOP {
            return BigUint::one();
        }
        if let Some(c) = self.count_cache.get(&a.index) {
            return c.clone();
        }
        let (lo, hi) = self.children(a);
        let c = self.count(lo) + self.count(hi);
        self.count_cache.insert(a.index, c.clone());
        c
    }

    /// Membership test; walks one root-to-terminal path, O(universe).
    pub fn contains(&self, a: NodeRef, set: &[u32]) -> bool {
        self.check_owned(a);
        let mut want = set.to_vec();
        want.sort_unstable();
        want.dedup();
        let mut next = want.iter().peekable();
        let mut cur = a;
        loop {
            if cur == NodeRef::BOTTOM {
                return false;
            }
            if cur == NodeRef::TOP {
                return next.peek().is_none();
            }
            let label = self.label(cur);
            let (lo, hi) = self.children(cur);
            match next.peek() {
                Some(&&e) if e < label => return false,
                Some(&&e) if e == label => {
                    next.next();
                    cur = hi;
                }
                _ => cur = lo,
            }
        }
    }

    /// Iterator over all members, each exactly once, as sorted index
    /// vectors in a fixed depth-first order (0-arcs before 1-arcs).
    /// Intended for desk-scale families; it materializes one member per
    /// step.
    pub fn members(&self, a: NodeRef) -> Members<'_> {
        self.check_owned(a);
        Members {
            store: self,
            stack: vec![(a, Vec::new())],
        }
    }

    /// The `k`-th member in `members` order, if `k < count(a)`.
    pub fn nth_member(&mut self, a: NodeRef, k: &BigUint) -> Option<Vec<u32>> {
        self.check_owned(a);
        if *k >= self.count(a) {
            return None;
        }
        let mut k = k.clone();
        let mut cur = a;
        let mut member = Vec::new();
        while cur != NodeRef::TOP {
            let label = self.label(cur);
            let (lo, hi) = self.children(cur);
            let lo_count = self.count(lo);
            if k < lo_count {
                cur = lo;
            } else {
                k -= lo_count;
                member.push(label);
                cur = hi;
            }
        }
        Some(member)
    }

    /// Non-terminal nodes reachable from `a`.
    pub fn node_count(&self, a: NodeRef) -> usize {
        self.reachable(a).len()
    }

    /// Reachable node count per label: entry `l - 1` counts nodes labeled `l`.
    pub fn width_profile(&self, a: NodeRef) -> Vec<usize> {
        let mut widths = vec![0usize; self.universe as usize];
        for r in self.reachable(a) {
            widths[self.label(r) as usize - 1] += 1;
        }
        widths
    }

    fn reachable(&self, a: NodeRef) -> Vec<NodeRef> {
        self.check_owned(a);
        let mut seen = std::collections::HashSet::new();
        let mut out = Vec::new();
        let mut stack = vec![a];
        while let Some(r) = stack.pop() {
            if r.is_terminal() || !seen.insert(r.index) {
                continue;
            }
            out.push(r);
            let (lo, hi) = self.children(r);
            stack.push(lo);
            stack.push(hi);
        }
        out
    }

    /// Canonicity audit over the whole pool: no stored node may be in
    /// suppressed form (1-child ⊥), labels must strictly precede both
    /// children's labels, and no `(label, lo, hi)` triple may occur twice.
    pub fn audit(&self) -> std::result::Result<(), String> {
        let mut seen = HashMap::new();
        for (i, n) in self.nodes.iter().enumerate().skip(2) {
            if n.hi == NodeRef::BOTTOM {
                return Err(format!("node {} stored in suppressed form", i));
            }
            if n.label < 1 || n.label > self.universe {
                return Err(format!("node {} label {} outside universe", i, n.label));
            }
            for child in [n.lo, n.hi] {
                if !child.is_terminal() {
                    if child.store != self.id || child.index as usize >= self.nodes.len() {
                        return Err(format!("node {} has a foreign or dangling child", i));
                    }
                    if self.at(child).label <= n.label {
                        return Err(format!("node {} violates label ordering", i));
                    }
                }
            }
            if let Some(prev) = seen.insert((n.label, n.lo, n.hi), i) {
                return Err(format!("nodes {} and {} are duplicates", prev, i));
            }
        }
        Ok(())
    }

    /// Graphviz rendering: one record per node (`id label lo hi` as a
    /// comment), dashed 0-arcs, solid 1-arcs, square terminals.
    pub fn write_dot<W: Write>(&self, a: NodeRef, out: &mut W) -> io::Result<()> {
        self.check_owned(a);
        writeln!(out, "digraph zdd {{")?;
        writeln!(out, "  node [shape=circle];")?;
        writeln!(out, "  t0 [shape=square, label=\"0\"];")?;
        writeln!(out, "  t1 [shape=square, label=\"1\"];")?;
        let mut nodes = self.reachable(a);
        nodes.sort_by_key(|r| (self.label(*r), r.index));
        let name = |r: NodeRef| -> String {
            match r {
                NodeRef::BOTTOM => "t0".into(),
                NodeRef::TOP => "t1".into(),
                _ => format!("n{}", r.index),
            }
        };
        for r in nodes {
            let (lo, hi) = self.children(r);
            writeln!(
                out,
                "  // {} {} {} {}",
                name(r),
                self.label(r),
                name(lo),
                name(hi)
            )?;
            writeln!(out, "  {} [label=\"{}\"];", name(r), self.label(r))?;
            writeln!(out, "  {} -> {} [style=dashed];", name(r), name(lo))?;
            writeln!(out, "  {} -> {};", name(r), name(hi))?;
        }
        if a.is_terminal() {
            writeln!(out, "  // root is {}", name(a))?;
        }
        writeln!(out, "}}")
    }
}

pub struct Members<'a> {
    store: &'a ZddStore,
    stack: Vec<(NodeRef, Vec<u32>)>,
}

impl Iterator for Members<'_> {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        while let Some((r, prefix)) = self.stack.pop() {
            match r {
                NodeRef::BOTTOM => continue,
                NodeRef::TOP => return Some(prefix),
                _ => {
                    let label = self.store.label(r);
                    let (lo, hi) = self.store.children(r);
                    let mut with = prefix.clone();
                    with.push(label);
                    // LIFO: push the 1-branch first so the 0-branch comes
                    // out first; this matches the indexing of `nth_member`.
                    self.stack.push((hi, with));
                    self.stack.push((lo, prefix));
                }
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};
    use std::collections::BTreeSet;

    type Family = BTreeSet<Vec<u32>>;

    fn family_of(store: &ZddStore, a: NodeRef) -> Family {
        store.members(a).collect()
    }

    fn random_family(rng: &mut StdRng, universe: u32, max_sets: usize) -> Vec<Vec<u32>> {
        let n_sets = rng.gen_range(0..=max_sets);
        (0..n_sets)
            .map(|_| {
                (1..=universe)
                    .filter(|_| rng.gen_bool(0.4))
                    .collect::<Vec<u32>>()
            })
            .collect()
    }

    #[test]
    fn zero_suppression_collapses_to_lo_child() {
        let mut z = ZddStore::new(3);
        let x = z.node(3, NodeRef::BOTTOM, NodeRef::TOP);
        assert_eq!(z.node(2, x, NodeRef::BOTTOM), x);
        assert_eq!(z.node(1, NodeRef::TOP, NodeRef::BOTTOM), NodeRef::TOP);
    }

    #[test]
    fn equal_children_nodes_are_kept() {
        let mut z = ZddStore::new(2);
        let free = z.node(2, NodeRef::TOP, NodeRef::TOP);
        assert!(!free.is_terminal());
        assert_eq!(z.count(free).to_string(), "2");
    }

    #[test]
    fn hash_consing_returns_identical_refs() {
        let mut z = ZddStore::new(4);
        let a = z.node(4, NodeRef::BOTTOM, NodeRef::TOP);
        let b = z.node(4, NodeRef::BOTTOM, NodeRef::TOP);
        assert_eq!(a, b);
        assert_eq!(z.pool_size(), 3);
    }

    #[test]
    #[should_panic(expected = "ordering violation")]
    fn label_must_precede_children() {
        let mut z = ZddStore::new(5);
        let x = z.node(2, NodeRef::BOTTOM, NodeRef::TOP);
        z.node(3, x, NodeRef::TOP);
    }

    #[test]
    #[should_panic(expected = "different store")]
    fn cross_store_operands_are_rejected() {
        let mut a = ZddStore::new(3);
        let mut b = ZddStore::new(3);
        let x = a.node(1, NodeRef::BOTTOM, NodeRef::TOP);
        let y = b.node(1, NodeRef::BOTTOM, NodeRef::TOP);
        a.union(x, y);
    }

    #[test]
    fn three_set_family_reduces_to_three_nodes() {
        let mut z = ZddStore::new(3);
        let f = z.from_sets(&[vec![1, 3], vec![2, 3], vec![3]]).unwrap();
        assert_eq!(z.node_count(f), 3);
        assert_eq!(z.count(f).to_string(), "3");
        let members = family_of(&z, f);
        let expected: Family = [vec![1, 3], vec![2, 3], vec![3]].into_iter().collect();
        assert_eq!(members, expected);
        assert!(z.contains(f, &[3]));
        assert!(!z.contains(f, &[1, 2]));
        assert!(!z.contains(f, &[]));
    }

    #[test]
    fn from_sets_edge_cases() {
        let mut z = ZddStore::new(4);
        assert_eq!(z.from_sets::<Vec<u32>>(&[]).unwrap(), NodeRef::BOTTOM);
        assert_eq!(z.from_sets(&[Vec::<u32>::new()]).unwrap(), NodeRef::TOP);
        let dup = z.from_sets(&[vec![2, 1], vec![1, 2], vec![1, 2, 2]]).unwrap();
        assert_eq!(z.count(dup).to_string(), "1");
        assert!(z.contains(dup, &[1, 2]));
        assert!(z.from_sets(&[vec![5]]).is_err());
        assert!(z.from_sets(&[vec![0]]).is_err());
    }

    #[test]
    fn all_subsets_is_a_dont_care_chain() {
        let mut z = ZddStore::new(20);
        let all = z.all_subsets();
        assert_eq!(z.count(all).to_string(), "1048576");
        assert_eq!(z.node_count(all), 20);
        let widths = z.width_profile(all);
        assert!(widths.iter().all(|&w| w == 1));

        let mut small = ZddStore::new(0);
        assert_eq!(small.all_subsets(), NodeRef::TOP);
    }

    #[test]
    fn all_subsets_membership_exhaustive() {
        let mut z = ZddStore::new(12);
        let all = z.all_subsets();
        for mask in 0u32..(1 << 12) {
            let set: Vec<u32> = (1..=12).filter(|e| mask >> (e - 1) & 1 == 1).collect();
            assert!(z.contains(all, &set));
        }
    }

    #[test]
    fn set_algebra_matches_brute_force_oracle() {
        let mut rng = StdRng::seed_from_u64(0x5eed_a1b2);
        for _ in 0..200 {
            let universe = rng.gen_range(1..=8);
            let mut z = ZddStore::new(universe);
            let fa = random_family(&mut rng, universe, 12);
            let fb = random_family(&mut rng, universe, 12);
            let a = z.from_sets(&fa).unwrap();
            let b = z.from_sets(&fb).unwrap();

            let oa: Family = family_of(&z, a);
            let ob: Family = family_of(&z, b);

            let union = z.union(a, b);
            let inter = z.intersect(a, b);
            let diff = z.difference(a, b);

            assert_eq!(family_of(&z, union), oa.union(&ob).cloned().collect());
            assert_eq!(
                family_of(&z, inter),
                oa.intersection(&ob).cloned().collect()
            );
            assert_eq!(family_of(&z, diff), oa.difference(&ob).cloned().collect());

            let c = z.count(union);
            let via_parts = z.count(a) + z.count(b) - z.count(inter);
            assert_eq!(c, via_parts);
            z.audit().unwrap();
        }
    }

    #[test]
    fn counting_is_memo_stable() {
        let mut z = ZddStore::new(6);
        let f = z
            .from_sets(&[vec![1], vec![1, 2], vec![3, 4, 5], vec![6], vec![2, 6]])
            .unwrap();
        let first = z.count(f);
        let second = z.count(f);
        assert_eq!(first, second);
        assert_eq!(first.to_string(), "5");
    }

    #[test]
    fn members_round_trip_and_nth_agree() {
        let mut rng = StdRng::seed_from_u64(0xc0ffee);
        for _ in 0..100 {
            let universe = rng.gen_range(1..=10);
            let mut z = ZddStore::new(universe);
            let sets = random_family(&mut rng, universe, 15);
            let f = z.from_sets(&sets).unwrap();

            let mut canon: Vec<Vec<u32>> = sets
                .iter()
                .map(|s| {
                    let mut v = s.clone();
                    v.sort_unstable();
                    v.dedup();
                    v
                })
                .collect();
            canon.sort();
            canon.dedup();

            let listed: Vec<Vec<u32>> = z.members(f).collect();
            let mut sorted = listed.clone();
            sorted.sort();
            assert_eq!(sorted, canon, "members are exactly the input sets");

            for (k, want) in listed.iter().enumerate() {
                let got = z.nth_member(f, &BigUint::from(k)).unwrap();
                assert_eq!(&got, want);
            }
            assert_eq!(z.nth_member(f, &BigUint::from(listed.len())), None);
        }
    }

    #[test]
    fn dot_export_styles_arcs() {
        let mut z = ZddStore::new(2);
        let f = z.from_sets(&[vec![1], vec![2]]).unwrap();
        let mut buf = Vec::new();
        z.write_dot(f, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.contains("style=dashed"));
        assert!(text.contains("shape=square"));
        // one record comment per reachable node
        assert_eq!(text.matches("  // n").count(), z.node_count(f));
    }

    #[test]
    fn audit_accepts_well_formed_pools() {
        let mut z = ZddStore::new(8);
        let a = z.all_subsets();
        let f = z.from_sets(&[vec![1, 8], vec![2]]).unwrap();
        let d = z.difference(a, f);
        assert!(z.count(d) > BigUint::zero());
        z.audit().unwrap();
    }
}
