//! Ternary decision diagrams for families of signed edge sets.
//!
//! A signed edge set holds, for each edge index, at most one of `+e` / `-e`.
//! Nodes carry three arcs: ZERO (the edge is absent), POS (`+e` is in the
//! set), NEG (`-e` is in the set). The reduction rule mirrors the
//! zero-suppressed one: a node whose POS and NEG children are both ⊥ is never
//! materialized — [`TddStore::node`] returns its ZERO child instead. Labels
//! strictly increase along every arc and hash-consing keeps the diagram
//! canonical. No apply-style binary operations are provided; the pipeline
//! never combines two ternary diagrams.

use std::collections::HashMap;
use std::fmt;
use std::io::{self, Write};

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::zdd::TERMINAL_LABEL;

/// Sign of an edge occurrence in a signed set.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Sign {
    Pos,
    Neg,
}

/// A set of signed edges; each index occurs at most once.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct SignedEdgeSet {
    items: Vec<(u32, Sign)>, // sorted by index
}

impl SignedEdgeSet {
    pub fn new(positives: &[u32], negatives: &[u32]) -> Result<Self> {
        let mut items: Vec<(u32, Sign)> = positives
            .iter()
            .map(|&e| (e, Sign::Pos))
            .chain(negatives.iter().map(|&e| (e, Sign::Neg)))
            .collect();
        items.sort_unstable();
        items.dedup();
        for pair in items.windows(2) {
            if pair[0].0 == pair[1].0 {
                return Err(Error::InvalidInput(format!(
                    "edge {} occurs with both signs",
                    pair[0].0
                )));
            }
        }
        Ok(SignedEdgeSet { items })
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, Sign)> + '_ {
        self.items.iter().copied()
    }

    pub fn positives(&self) -> impl Iterator<Item = u32> + '_ {
        self.items
            .iter()
            .filter(|(_, s)| *s == Sign::Pos)
            .map(|(e, _)| *e)
    }

    pub fn negatives(&self) -> impl Iterator<Item = u32> + '_ {
        self.items
            .iter()
            .filter(|(_, s)| *s == Sign::Neg)
            .map(|(e, _)| *e)
    }

    /// Underlying unsigned edge set (indices of either sign, sorted).
    pub fn abs(&self) -> Vec<u32> {
        self.items.iter().map(|(e, _)| *e).collect()
    }

    fn push(&mut self, e: u32, sign: Sign) {
        debug_assert!(self.items.last().is_none_or(|&(last, _)| last < e));
        self.items.push((e, sign));
    }
}

impl fmt::Display for SignedEdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.items.is_empty() {
            return write!(f, "-");
        }
        for (i, (e, sign)) in self.items.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            match sign {
                Sign::Pos => write!(f, "+{}", e)?,
                Sign::Neg => write!(f, "-{}", e)?,
            }
        }
        Ok(())
    }
}

/// Handle to a ternary node; see [`crate::zdd::NodeRef`] for the
/// store-tagging scheme. Terminals use store id 0.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct TddRef {
    store: u32,
    index: u32,
}

impl TddRef {
    pub const BOTTOM: TddRef = TddRef { store: 0, index: 0 };
    pub const TOP: TddRef = TddRef { store: 0, index: 1 };

    pub fn is_terminal(self) -> bool {
        self.store == 0
    }

    pub fn index(self) -> u32 {
        self.index
    }
}

#[derive(Copy, Clone)]
struct Node {
    label: u32,
    zero: TddRef,
    pos: TddRef,
    neg: TddRef,
}

static NEXT_STORE_ID: std::sync::atomic::AtomicU32 = std::sync::atomic::AtomicU32::new(1);

/// Node pool for ternary diagrams over edge indices `1..=universe`.
pub struct TddStore {
    id: u32,
    universe: u32,
    nodes: Vec<Node>,
    unique: HashMap<(u32, TddRef, TddRef, TddRef), u32>,
    count_cache: HashMap<u32, BigUint>,
}

impl TddStore {
    pub fn new(universe: u32) -> Self {
        let dummy = Node {
            label: TERMINAL_LABEL,
            zero: TddRef::BOTTOM,
            pos: TddRef::BOTTOM,
            neg: TddRef::BOTTOM,
        };
        TddStore {
            id: NEXT_STORE_ID.fetch_add(1, std::sync::atomic::Ordering::Relaxed),
            universe,
            nodes: vec![dummy; 2],
            unique: HashMap::new(),
            count_cache: HashMap::new(),
        }
    }

    pub fn universe(&self) -> u32 {
        self.universe
    }

    pub fn pool_size(&self) -> usize {
        self.nodes.len()
    }

    fn check_owned(&self, r: TddRef) -> TddRef {
        assert!(
            r.store == 0 || r.store == self.id,
            "TddRef from a different store (id {}, expected {})",
            r.store,
            self.id
        );
        r
    }

    fn at(&self, r: TddRef) -> &Node {
        &self.nodes[r.index as usize]
    }

    pub fn label(&self, r: TddRef) -> u32 {
        if r.is_terminal() {
            TERMINAL_LABEL
        } else {
            self.check_owned(r);
            self.at(r).label
        }
    }

    /// (ZERO, POS, NEG) children of a non-terminal node.
    pub fn children(&self, r: TddRef) -> (TddRef, TddRef, TddRef) {
        assert!(!r.is_terminal(), "terminals have no children");
        self.check_owned(r);
        let n = self.at(r);
        (n.zero, n.pos, n.neg)
    }

    /// The unique reduced node `(label, zero, pos, neg)`. A node with both
    /// signed children ⊥ collapses to its ZERO child. Ordering violations
    /// panic.
    pub fn node(&mut self, label: u32, zero: TddRef, pos: TddRef, neg: TddRef) -> TddRef {
        assert!(
            label >= 1 && label <= self.universe,
            "label {} outside universe 1..={}",
            label,
            self.universe
        );
        for child in [zero, pos, neg] {
            self.check_owned(child);
            assert!(
                label < self.label(child),
                "label ordering violation: {} must precede its children",
                label
            );
        }
        if pos == TddRef::BOTTOM && neg == TddRef::BOTTOM {
            return zero;
        }
        if let Some(&index) = self.unique.get(&(label, zero, pos, neg)) {
            return TddRef {
                store: self.id,
                index,
            };
        }
        let index = self.nodes.len() as u32;
        self.nodes.push(Node {
            label,
            zero,
            pos,
            neg,
        });
        self.unique.insert((label, zero, pos, neg), index);
        TddRef {
            store: self.id,
            index,
        }
    }

    /// Family holding exactly the given signed sets (duplicates collapse).
    pub fn from_signed_sets(&mut self, sets: &[SignedEdgeSet]) -> Result<TddRef> {
        for s in sets {
            for (e, _) in s.iter() {
                if e < 1 || e > self.universe {
                    return Err(Error::InvalidInput(format!(
                        "edge index {} outside universe 1..={}",
                        e, self.universe
                    )));
                }
            }
        }
        let mut canon: Vec<&SignedEdgeSet> = sets.iter().collect();
        canon.sort();
        canon.dedup();
        let views: Vec<&[(u32, Sign)]> = canon.iter().map(|s| s.items.as_slice()).collect();
        Ok(self.build_sets(&views))
    }

    fn build_sets(&mut self, sets: &[&[(u32, Sign)]]) -> TddRef {
        if sets.is_empty() {
            return TddRef::BOTTOM;
        }
        let label = match sets.iter().filter_map(|s| s.first()).map(|&(e, _)| e).min() {
            None => return TddRef::TOP,
            Some(l) => l,
        };
        let mut zero_group: Vec<&[(u32, Sign)]> = Vec::new();
        let mut pos_group: Vec<&[(u32, Sign)]> = Vec::new();
        let mut neg_group: Vec<&[(u32, Sign)]> = Vec::new();
        for s in sets {
            match s.first() {
                Some(&(e, sign)) if e == label => match sign {
                    Sign::Pos => pos_group.push(&s[1..]),
                    Sign::Neg => neg_group.push(&s[1..]),
                },
                _ => zero_group.push(s),
            }
        }
        let zero = self.build_sets(&zero_group);
        let pos = self.build_sets(&pos_group);
        let neg = self.build_sets(&neg_group);
        self.node(label, zero, pos, neg)
    }

    /// Number of signed sets, exact.
    pub fn count(&mut self, a: TddRef) -> BigUint {
        self.check_owned(a);
        if a == TddRef::BOTTOM {
            return BigUint::zero();
        }
        if a == TddRef::TOP {
            return BigUint::one();
        }
        if let Some(c) = self.count_cache.get(&a.index) {
            return c.clone();
        }
        let (zero, pos, neg) = self.children(a);
        let c = self.count(zero) + self.count(pos) + self.count(neg);
        self.count_cache.insert(a.index, c.clone());
        c
    }

    /// Membership test; walks one root-to-terminal path.
    pub fn contains(&self, a: TddRef, set: &SignedEdgeSet) -> bool {
        self.check_owned(a);
        let mut next = set.items.iter().peekable();
        let mut cur = a;
        loop {
            if cur == TddRef::BOTTOM {
                return false;
            }
            if cur == TddRef::TOP {
                return next.peek().is_none();
            }
            let label = self.label(cur);
            let (zero, pos, neg) = self.children(cur);
            match next.peek() {
                Some(&&(e, _)) if e < label => return false,
                Some(&&(e, sign)) if e == label => {
                    next.next();
                    cur = if sign == Sign::Pos { pos } else { neg };
                }
                _ => cur = zero,
            }
        }
    }

    /// Iterator over all signed sets, each exactly once, in a fixed
    /// depth-first order (ZERO, then POS, then NEG).
    pub fn members(&self, a: TddRef) -> TddMembers<'_> {
        self.check_owned(a);
        TddMembers {
            store: self,
            stack: vec![(a, SignedEdgeSet::default())],
        }
    }

    pub fn node_count(&self, a: TddRef) -> usize {
        self.reachable(a).len()
    }

    pub fn width_profile(&self, a: TddRef) -> Vec<usize> {
        let mut widths = vec![0usize; self.universe as usize];
        for r in self.reachable(a) {
            widths[self.label(r) as usize - 1] += 1;
        }
        widths
    }

    fn reachable(&self, a: TddRef) -> Vec<TddRef> {
        self.check_owned(a);
        let mut seen = std::collections::HashSet::new();
        let mut out = Vec::new();
        let mut stack = vec![a];
        while let Some(r) = stack.pop() {
            if r.is_terminal() || !seen.insert(r.index) {
                continue;
            }
            out.push(r);
            let (zero, pos, neg) = self.children(r);
            stack.push(zero);
            stack.push(pos);
            stack.push(neg);
        }
        out
    }

    /// Canonicity audit: no stored node with both signed children ⊥, strict
    /// label ordering, no duplicate tuples.
    pub fn audit(&self) -> std::result::Result<(), String> {
        let mut seen = HashMap::new();
        for (i, n) in self.nodes.iter().enumerate().skip(2) {
            if n.pos == TddRef::BOTTOM && n.neg == TddRef::BOTTOM {
                return Err(format!("node {} stored in suppressed form", i));
            }
            if n.label < 1 || n.label > self.universe {
                return Err(format!("node {} label {} outside universe", i, n.label));
            }
            for child in [n.zero, n.pos, n.neg] {
                if !child.is_terminal() {
                    if child.store != self.id || child.index as usize >= self.nodes.len() {
                        return Err(format!("node {} has a foreign or dangling child", i));
                    }
                    if self.at(child).label <= n.label {
                        return Err(format!("node {} violates label ordering", i));
                    }
                }
            }
            if let Some(prev) = seen.insert((n.label, n.zero, n.pos, n.neg), i) {
                return Err(format!("nodes {} and {} are duplicates", prev, i));
            }
        }
        Ok(())
    }

    /// Graphviz rendering: dashed ZERO arcs, solid POS arcs, bold NEG arcs,
    /// square terminals; one record per node as a comment.
    pub fn write_dot<W: Write>(&self, a: TddRef, out: &mut W) -> io::Result<()> {
        self.check_owned(a);
        writeln!(out, "digraph tdd {{")?;
        writeln!(out, "  node [shape=circle];")?;
        writeln!(out, "  t0 [shape=square, label=\"0\"];")?;
        writeln!(out, "  t1 [shape=square, label=\"1\"];")?;
        let mut nodes = self.reachable(a);
        nodes.sort_by_key(|r| (self.label(*r), r.index));
        let name = |r: TddRef| -> String {
            match r {
                TddRef::BOTTOM => "t0".into(),
                TddRef::TOP => "t1".into(),
                _ => format!("n{}", r.index),
            }
        };
        for r in nodes {
            let (zero, pos, neg) = self.children(r);
            writeln!(
                out,
                "  // {} {} {} {} {}",
                name(r),
                self.label(r),
                name(zero),
                name(pos),
                name(neg)
            )?;
            writeln!(out, "  {} [label=\"{}\"];", name(r), self.label(r))?;
            writeln!(out, "  {} -> {} [style=dashed];", name(r), name(zero))?;
            writeln!(out, "  {} -> {};", name(r), name(pos))?;
            writeln!(out, "  {} -> {} [style=bold];", name(r), name(neg))?;
        }
        if a.is_terminal() {
            writeln!(out, "  // root is {}", name(a))?;
        }
        writeln!(out, "}}")
    }
}

pub struct TddMembers<'a> {
    store: &'a TddStore,
    stack: Vec<(TddRef, SignedEdgeSet)>,
}

impl Iterator for TddMembers<'_> {
    type Item = SignedEdgeSet;

    fn next(&mut self) -> Option<SignedEdgeSet> {
        while let Some((r, prefix)) = self.stack.pop() {
            match r {
                TddRef::BOTTOM => continue,
                TddRef::TOP => return Some(prefix),
                _ => {
                    let label = self.store.label(r);
                    let (zero, pos, neg) = self.store.children(r);
                    let mut with_neg = prefix.clone();
                    with_neg.push(label, Sign::Neg);
                    let mut with_pos = prefix.clone();
                    with_pos.push(label, Sign::Pos);
                    self.stack.push((neg, with_neg));
                    self.stack.push((pos, with_pos));
                    self.stack.push((zero, prefix));
                }
            }
        }
        None
    }
}
