//! Enumerate the connected subgraphs (one or more edges) whose total
//! vertex weight stays below a bound — the "too light to stand alone"
//! subgraphs a partition must not isolate.
//!
//! Run with `cargo run --example light_components`.

use partition_dd::frontier::FrontierPlan;
use partition_dd::graph::Graph;
use partition_dd::light::{build_light_components, light_width_bounds};
use partition_dd::pipeline::DEFAULT_BUDGET;

fn main() -> partition_dd::Result<()> {
    // A 4-cycle: two light corner vertices (weight 1) and two heavy ones.
    let g = Graph::new(4, vec![1, 1, 3, 3], vec![(1, 2), (2, 3), (1, 4), (3, 4)])?;
    let mut store = partition_dd::zdd::ZddStore::new(g.edge_count());

    for bound in [2, 3, 5, 9] {
        let (root, stats) = build_light_components(&mut store, &g, bound, DEFAULT_BUDGET)?;
        let members: Vec<Vec<u32>> = store.members(root).collect();
        println!("bound {}: {} light connected subgraphs", bound, members.len());
        for m in &members {
            println!("  edges {:?}", m);
        }

        // The per-level search width is capped by a Bell-number bound.
        let plan = FrontierPlan::new(&g);
        let limits = light_width_bounds(&plan, bound);
        let widest = stats
            .state_counts
            .iter()
            .zip(&limits)
            .map(|(count, limit)| format!("{}/{}", count, limit))
            .collect::<Vec<_>>()
            .join(" ");
        println!("  states/limit per level: {}", widest);
    }

    store.audit().expect("canonical store");
    Ok(())
}
