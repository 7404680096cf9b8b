//! Build families of edge sets, combine them with set algebra, and count
//! and enumerate the results.
//!
//! Run with `cargo run --example family_algebra`.

use partition_dd::zdd::ZddStore;

fn main() -> partition_dd::Result<()> {
    // Families over a universe of five edges, numbered 1..=5.
    let mut store = ZddStore::new(5);

    let f = store.from_sets(&[vec![1, 2], vec![2, 3], vec![4]])?;
    let g = store.from_sets(&[vec![2, 3], vec![4], vec![1, 5]])?;

    let union = store.union(f, g);
    let common = store.intersect(f, g);
    let only_f = store.difference(f, g);

    println!("|F| = {}, |G| = {}", store.count(f), store.count(g));
    println!("|F ∪ G| = {}", store.count(union));
    println!("|F ∩ G| = {}", store.count(common));
    println!("|F ∖ G| = {}", store.count(only_f));

    println!("members of F ∪ G:");
    for member in store.members(union) {
        println!("  {:?}", member);
    }

    // Identical families share identical nodes: rebuilding F lands on the
    // same handle, so equality is pointer equality.
    let f_again = store.from_sets(&[vec![4], vec![1, 2], vec![2, 3]])?;
    assert_eq!(f, f_again);
    println!("rebuilding F returns the same node: {:?}", f == f_again);

    // The full power set needs only one node per edge.
    let all = store.all_subsets();
    println!(
        "all {} subsets fit in {} nodes",
        store.count(all),
        store.node_count(all)
    );

    store.audit().expect("canonical store");
    Ok(())
}
