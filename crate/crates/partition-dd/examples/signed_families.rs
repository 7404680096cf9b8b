//! Store families of signed edge sets — each edge required (+), forbidden
//! (−), or unconstrained — in a ternary diagram.
//!
//! Run with `cargo run --example signed_families`.

use partition_dd::tdd::{SignedEdgeSet, TddStore};

fn main() -> partition_dd::Result<()> {
    let mut store = TddStore::new(4);

    let family = vec![
        SignedEdgeSet::new(&[1], &[2, 3])?,
        SignedEdgeSet::new(&[2, 4], &[1])?,
        SignedEdgeSet::new(&[], &[1, 2, 3, 4])?,
    ];
    let root = store.from_signed_sets(&family)?;

    println!("{} signed sets in {} nodes", store.count(root), store.node_count(root));
    for member in store.members(root) {
        println!("  {}", member);
    }

    let probe = SignedEdgeSet::new(&[1], &[2, 3])?;
    println!("contains {}: {}", probe, store.contains(root, &probe));
    let absent = SignedEdgeSet::new(&[1, 2], &[])?;
    println!("contains {}: {}", absent, store.contains(root, &absent));

    // Graphviz export: dashed = unconstrained, solid = required,
    // bold = forbidden.
    let mut dot = Vec::new();
    store.write_dot(root, &mut dot)?;
    println!("--- DOT ---");
    print!("{}", String::from_utf8_lossy(&dot));

    store.audit().expect("canonical store");
    Ok(())
}
