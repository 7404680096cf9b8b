//! Turn signed edge sets into the plain family of all edge sets that
//! honor them: contain every +, avoid every −, free elsewhere. Then add
//! the edge sets isolating a light vertex to obtain the full forbidden
//! family.
//!
//! Run with `cargo run --example superset_lift`.

use partition_dd::graph::Graph;
use partition_dd::pipeline::DEFAULT_BUDGET;
use partition_dd::superset::{assemble_sup, build_isolated_vertex_family, lift_to_supersets};
use partition_dd::tdd::{SignedEdgeSet, TddStore};
use partition_dd::zdd::ZddStore;

fn main() -> partition_dd::Result<()> {
    let g = Graph::new(4, vec![1, 1, 3, 3], vec![(1, 2), (2, 3), (1, 4), (3, 4)])?;
    let mut tdd = TddStore::new(4);
    let signed = SignedEdgeSet::new(&[1], &[2, 3])?;
    let t = tdd.from_signed_sets(std::slice::from_ref(&signed))?;

    let mut zdd = ZddStore::new(4);
    let (lift, _) = lift_to_supersets(&mut zdd, &tdd, t, DEFAULT_BUDGET)?;
    println!("supersets of {}:", signed);
    for member in zdd.members(lift) {
        println!("  {:?}", member);
    }

    // Edge sets in which a given vertex stays isolated.
    for v in [1, 3] {
        let zv = build_isolated_vertex_family(&mut zdd, &g, v);
        let members: Vec<Vec<u32>> = zdd.members(zv).collect();
        println!("vertex {} isolated in {} edge sets: {:?}", v, members.len(), members);
    }

    // Everything a partition with bound 3 must avoid: the lifted cuts
    // plus the sets isolating one of the weight-1 vertices.
    let (forbidden, _) = assemble_sup(&mut zdd, &tdd, t, &g, 3, DEFAULT_BUDGET)?;
    println!("forbidden family has {} members:", zdd.count(forbidden));
    for member in zdd.members(forbidden) {
        println!("  {:?}", member);
    }

    zdd.audit().expect("canonical store");
    Ok(())
}
