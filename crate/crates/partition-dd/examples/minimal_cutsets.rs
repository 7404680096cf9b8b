//! Enumerate minimal signed cutsets: assignments of +/−/0 to edges where
//! the positive part is a subgraph and the negative part is exactly the
//! set of edges whose removal detaches it. Standalone mode enumerates all
//! of them; subset mode keeps only those whose positive part belongs to a
//! given family.
//!
//! Run with `cargo run --example minimal_cutsets`.

use partition_dd::cutset::{build_cutset_tdd_subset, build_minimal_cutset_tdd, check_minimal_cutset};
use partition_dd::graph::Graph;
use partition_dd::light::build_light_components;
use partition_dd::pipeline::DEFAULT_BUDGET;
use partition_dd::tdd::{SignedEdgeSet, TddStore};
use partition_dd::zdd::ZddStore;

fn main() -> partition_dd::Result<()> {
    // Standalone: a path on three vertices has four minimal cutsets.
    let p3 = Graph::new(3, vec![1, 1, 1], vec![(1, 2), (2, 3)])?;
    let mut tdd = TddStore::new(p3.edge_count());
    let (all, _) = build_minimal_cutset_tdd(&mut tdd, &p3, DEFAULT_BUDGET)?;
    println!("path of 3: {} minimal cutsets", tdd.count(all));
    for member in tdd.members(all) {
        println!("  {}", member);
    }

    // The direct condition check agrees with membership.
    let yes = SignedEdgeSet::new(&[1], &[2])?;
    let no = SignedEdgeSet::new(&[], &[1, 2])?;
    assert!(check_minimal_cutset(&p3, &yes));
    assert!(!check_minimal_cutset(&p3, &no));
    println!("{} is a cutset, {} is not", yes, no);

    // Subset mode: restrict the positive part to the light connected
    // subgraphs of a weighted 4-cycle. Each family member yields exactly
    // one signed set — its forced cut.
    let g = Graph::new(4, vec![1, 1, 3, 3], vec![(1, 2), (2, 3), (1, 4), (3, 4)])?;
    let mut zdd = ZddStore::new(g.edge_count());
    let (light, _) = build_light_components(&mut zdd, &g, 3, DEFAULT_BUDGET)?;
    let mut tdd = TddStore::new(g.edge_count());
    let (cuts, _) = build_cutset_tdd_subset(&mut tdd, &g, &zdd, light, DEFAULT_BUDGET)?;

    println!(
        "4-cycle, bound 3: {} light subgraphs, {} forced cuts",
        zdd.count(light),
        tdd.count(cuts)
    );
    for member in tdd.members(cuts) {
        println!("  {}", member);
    }

    tdd.audit().expect("canonical store");
    Ok(())
}
