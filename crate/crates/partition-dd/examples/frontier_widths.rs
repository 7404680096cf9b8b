//! Inspect the vertex frontiers an edge ordering induces: the vertices
//! shared between the processed and unprocessed parts of the edge list.
//! Frontier width drives the state count of every search in this crate.
//!
//! Run with `cargo run --example frontier_widths`.

use partition_dd::frontier::FrontierPlan;
use partition_dd::graph::Graph;

fn path(n: u32) -> Graph {
    let edges = (1..n).map(|v| (v, v + 1)).collect();
    Graph::new(n, vec![1; n as usize], edges).unwrap()
}

fn grid(rows: u32, cols: u32) -> Graph {
    let at = |r: u32, c: u32| r * cols + c + 1;
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                edges.push((at(r, c), at(r, c + 1)));
            }
            if r + 1 < rows {
                edges.push((at(r, c), at(r + 1, c)));
            }
        }
    }
    Graph::new(rows * cols, vec![1; (rows * cols) as usize], edges).unwrap()
}

fn describe(name: &str, g: &Graph) {
    let plan = FrontierPlan::new(g);
    println!(
        "{}: {} vertices, {} edges, max frontier {}",
        name,
        g.vertex_count(),
        g.edge_count(),
        plan.width()
    );
    if g.edge_count() <= 8 {
        for i in 0..=plan.steps() {
            println!("  F_{} = {:?}", i, plan.frontier(i));
        }
    }
}

fn main() {
    describe("path of 6", &path(6));
    describe("3x3 grid", &grid(3, 3));
    describe("4x6 grid", &grid(4, 6));

    // A long path keeps the frontier at a single vertex no matter how
    // many edges it has.
    let plan = FrontierPlan::new(&path(100));
    assert_eq!(plan.width(), 1);
    println!("path of 100: max frontier {}", plan.width());
}
