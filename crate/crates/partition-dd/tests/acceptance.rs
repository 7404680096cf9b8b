//! Acceptance gate. Seven independent checks, each printing one
//! `criterion N: PASS/FAIL` line (visible with `--nocapture`, and always
//! shown on failure):
//!
//! 1. the fully pinned 4-cycle instance, all four stages;
//! 2. light connected subgraphs vs. a 2^m scan over a 200+ graph corpus;
//! 3. minimal cutsets vs. a 3^m scan, plus the count bijection;
//! 4. the end-to-end filter vs. the explicit reference filter;
//! 5. per-level width bounds on every corpus run;
//! 6. a 4x6 grid smoke test under the default budget;
//! 7. store canonicity audits.
//!
//! The corpus is seeded, so every run sees the same graphs. Tests share a
//! lock to keep wall-clock limits meaningful under the parallel harness.

use std::collections::BTreeSet;
use std::sync::Mutex;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use partition_dd::cutset::{
    build_cutset_tdd_subset, build_minimal_cutset_tdd, check_cutset_widths, check_minimal_cutset,
};
use partition_dd::frontier::FrontierPlan;
use partition_dd::graph::Graph;
use partition_dd::light::{build_light_components, check_light_widths};
use partition_dd::pipeline::{brute_force_filter, Pipeline, DEFAULT_BUDGET};
use partition_dd::tdd::{SignedEdgeSet, TddStore};
use partition_dd::zdd::{NodeRef, ZddStore};

static GATE: Mutex<()> = Mutex::new(());

fn serial() -> std::sync::MutexGuard<'static, ()> {
    GATE.lock().unwrap_or_else(|poisoned| poisoned.into_inner())
}

fn report(criterion: u32, ok: bool, detail: &str) {
    println!(
        "criterion {}: {} — {}",
        criterion,
        if ok { "PASS" } else { "FAIL" },
        detail
    );
    assert!(ok, "criterion {} failed: {}", criterion, detail);
}

const BOUNDS: [u64; 4] = [2, 3, 5, 9];

// --- corpus ---------------------------------------------------------------

fn random_weights(n: u32, rng: &mut StdRng) -> Vec<u64> {
    (0..n).map(|_| rng.gen_range(1..=5)).collect()
}

fn path(n: u32, rng: &mut StdRng) -> Graph {
    let edges = (1..n).map(|v| (v, v + 1)).collect();
    Graph::new(n, random_weights(n, rng), edges).unwrap()
}

fn cycle(n: u32, rng: &mut StdRng) -> Graph {
    let mut edges: Vec<(u32, u32)> = (1..n).map(|v| (v, v + 1)).collect();
    edges.push((n, 1));
    Graph::new(n, random_weights(n, rng), edges).unwrap()
}

fn grid(rows: u32, cols: u32, weights: Vec<u64>) -> Graph {
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
    Graph::new(rows * cols, weights, edges).unwrap()
}

fn random_graph(rng: &mut StdRng) -> Option<Graph> {
    let n = rng.gen_range(3..=8);
    let p = [0.3, 0.5, 0.7][rng.gen_range(0..3)];
    let mut edges = Vec::new();
    for u in 1..=n {
        for v in u + 1..=n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    if edges.is_empty() || edges.len() > 14 {
        return None;
    }
    Some(Graph::new(n, random_weights(n, rng), edges).unwrap())
}

/// Deterministic corpus: paths, cycles, the 3x3 grid, and random graphs
/// with at most 14 edges — at least 200 in total.
fn corpus() -> Vec<Graph> {
    let mut rng = StdRng::seed_from_u64(0xC0FFEE);
    let mut graphs = Vec::new();
    for n in 2..=8 {
        graphs.push(path(n, &mut rng));
    }
    for n in 3..=8 {
        graphs.push(cycle(n, &mut rng));
    }
    graphs.push(grid(3, 3, random_weights(9, &mut rng)));
    while graphs.len() < 210 {
        if let Some(g) = random_graph(&mut rng) {
            graphs.push(g);
        }
    }
    graphs
}

// --- reference scans (breadth-first, independent of the library) -----------

struct MaskInfo {
    /// Selected edges form exactly one connected component.
    connected: bool,
    /// Total weight of the vertices touched by selected edges.
    dom_weight: u64,
    /// Lightest component of the whole graph under the selection,
    /// isolated vertices included.
    min_component: u64,
}

fn scan_mask(g: &Graph, mask: u32, adj: &mut [Vec<u32>]) -> MaskInfo {
    let n = g.vertex_count() as usize;
    for a in adj.iter_mut() {
        a.clear();
    }
    let mut touched = vec![false; n + 1];
    for (i, (u, v)) in g.edges() {
        if mask >> (i - 1) & 1 == 1 {
            adj[u as usize].push(v);
            adj[v as usize].push(u);
            touched[u as usize] = true;
            touched[v as usize] = true;
        }
    }
    let mut seen = vec![false; n + 1];
    let mut queue = Vec::new();
    let mut touched_components = 0usize;
    let mut dom_weight = 0u64;
    let mut min_component = u64::MAX;
    for start in g.vertices() {
        if seen[start as usize] {
            continue;
        }
        if touched[start as usize] {
            touched_components += 1;
        }
        let mut weight = 0u64;
        queue.push(start);
        seen[start as usize] = true;
        while let Some(v) = queue.pop() {
            weight += g.weight(v);
            if touched[v as usize] {
                dom_weight += g.weight(v);
            }
            for &w in &adj[v as usize] {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    queue.push(w);
                }
            }
        }
        min_component = min_component.min(weight);
    }
    MaskInfo {
        connected: mask != 0 && touched_components == 1,
        dom_weight,
        min_component,
    }
}

fn scan_masks(g: &Graph) -> Vec<MaskInfo> {
    let m = g.edge_count();
    assert!(m <= 14, "scan is 2^m");
    let mut adj = vec![Vec::new(); g.vertex_count() as usize + 1];
    (0..1u32 << m).map(|mask| scan_mask(g, mask, &mut adj)).collect()
}

fn mask_to_set(mask: u32, m: u32) -> Vec<u32> {
    (1..=m).filter(|e| mask >> (e - 1) & 1 == 1).collect()
}

fn set_to_mask(set: &[u32]) -> u32 {
    set.iter().fold(0, |acc, e| acc | 1 << (e - 1))
}

fn worked_example() -> Graph {
    Graph::new(4, vec![1, 1, 3, 3], vec![(1, 2), (2, 3), (1, 4), (3, 4)]).unwrap()
}

// --- criteria ---------------------------------------------------------------

#[test]
fn criterion_1_worked_example_all_stages() {
    let _guard = serial();
    let t0 = Instant::now();
    let g = worked_example();
    let mut pipe = Pipeline::new(&g, 3, DEFAULT_BUDGET);

    let a = pipe
        .zdd()
        .from_sets(&[
            vec![1, 2],
            vec![1, 3],
            vec![1, 4],
            vec![2, 3],
            vec![2, 4],
            vec![3, 4],
        ])
        .unwrap();
    let b = pipe.filter(a).unwrap();

    let light = pipe.light_family().unwrap();
    let light_members: BTreeSet<Vec<u32>> = pipe.zdd().members(light).collect();
    let cuts = pipe.cutset_family().unwrap();
    let cut_members: BTreeSet<SignedEdgeSet> = pipe.tdd().members(cuts).collect();
    let forbidden = pipe.forbidden_family().unwrap();
    let forbidden_count = pipe.zdd().count(forbidden);
    let b_members: BTreeSet<Vec<u32>> = pipe.zdd().members(b).collect();

    let elapsed = t0.elapsed();
    let ok = light_members == BTreeSet::from([vec![1]])
        && cut_members == BTreeSet::from([SignedEdgeSet::new(&[1], &[2, 3]).unwrap()])
        && forbidden_count == BigUint::from(8u32)
        && b_members
            == BTreeSet::from([vec![1, 2], vec![1, 3], vec![2, 3]])
        && pipe.zdd().audit().is_ok()
        && pipe.tdd().audit().is_ok()
        && elapsed < Duration::from_secs(1);
    report(
        1,
        ok,
        &format!(
            "4-cycle stages: light={:?} cuts={} forbidden={} result={} in {:.0?}",
            light_members,
            cut_members.len(),
            forbidden_count,
            b_members.len(),
            elapsed
        ),
    );
}

#[test]
fn criterion_2_light_components_match_exhaustive_scan() {
    let _guard = serial();
    let t0 = Instant::now();
    let graphs = corpus();
    let mut failures: Vec<String> = Vec::new();
    let mut runs = 0usize;
    for (gi, g) in graphs.iter().enumerate() {
        let infos = scan_masks(g);
        for &bound in &BOUNDS {
            runs += 1;
            let mut store = ZddStore::new(g.edge_count());
            let (root, _) = build_light_components(&mut store, g, bound, DEFAULT_BUDGET).unwrap();
            let got: BTreeSet<Vec<u32>> = store.members(root).collect();
            let expect: BTreeSet<Vec<u32>> = infos
                .iter()
                .enumerate()
                .filter(|(_, info)| info.connected && info.dom_weight < bound)
                .map(|(mask, _)| mask_to_set(mask as u32, g.edge_count()))
                .collect();
            if got != expect {
                failures.push(format!("graph {} bound {}", gi, bound));
            }
            if store.audit().is_err() {
                failures.push(format!("audit, graph {} bound {}", gi, bound));
            }
        }
    }
    let elapsed = t0.elapsed();
    let ok = graphs.len() >= 200 && failures.is_empty() && elapsed < Duration::from_secs(120);
    report(
        2,
        ok,
        &format!(
            "{} graphs, {} runs vs 2^m scan, {} mismatches in {:.1?}",
            graphs.len(),
            runs,
            failures.len(),
            elapsed
        ),
    );
}

#[test]
fn criterion_3_cutsets_match_ternary_scan_and_counts_agree() {
    let _guard = serial();
    let t0 = Instant::now();
    let graphs = corpus();
    let mut failures: Vec<String> = Vec::new();
    let mut exhaustive_runs = 0usize;
    let mut bijection_runs = 0usize;

    for (gi, g) in graphs.iter().enumerate() {
        let m = g.edge_count();
        if m <= 10 {
            exhaustive_runs += 1;
            let mut store = TddStore::new(m);
            let (root, _) = build_minimal_cutset_tdd(&mut store, g, DEFAULT_BUDGET).unwrap();
            let got: BTreeSet<SignedEdgeSet> = store.members(root).collect();
            let mut expect = BTreeSet::new();
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
                    expect.insert(s);
                }
            }
            if got != expect {
                failures.push(format!("graph {} standalone", gi));
            }
            if store.audit().is_err() {
                failures.push(format!("audit, graph {} standalone", gi));
            }
        }

        for &bound in &BOUNDS {
            bijection_runs += 1;
            let mut zdd = ZddStore::new(m);
            let (zs, _) = build_light_components(&mut zdd, g, bound, DEFAULT_BUDGET).unwrap();
            let mut tdd = TddStore::new(m);
            let (t, _) = build_cutset_tdd_subset(&mut tdd, g, &zdd, zs, DEFAULT_BUDGET).unwrap();
            if tdd.count(t) != zdd.count(zs) {
                failures.push(format!("count bijection, graph {} bound {}", gi, bound));
            }
            if tdd.audit().is_err() {
                failures.push(format!("audit, graph {} bound {}", gi, bound));
            }
        }
    }
    let elapsed = t0.elapsed();
    let ok = failures.is_empty() && elapsed < Duration::from_secs(120);
    report(
        3,
        ok,
        &format!(
            "{} graphs vs 3^m scan, {} count bijections, {} mismatches in {:.1?}",
            exhaustive_runs,
            bijection_runs,
            failures.len(),
            elapsed
        ),
    );
}

#[test]
fn criterion_4_filter_matches_reference_filter() {
    let _guard = serial();
    let t0 = Instant::now();
    let graphs = corpus();
    let mut rng = StdRng::seed_from_u64(0xFEED);
    let mut failures: Vec<String> = Vec::new();
    let mut filter_runs = 0usize;

    for (gi, g) in graphs.iter().enumerate() {
        let m = g.edge_count();
        let infos = scan_masks(g);

        // 50 explicit families per graph, reused across bounds.
        let families: Vec<Vec<Vec<u32>>> = (0..50)
            .map(|_| {
                let size = rng.gen_range(1..=10);
                (0..size)
                    .map(|_| mask_to_set(rng.gen_range(0..1u32 << m), m))
                    .collect()
            })
            .collect();

        for &bound in &BOUNDS {
            let mut pipe = Pipeline::new(g, bound, DEFAULT_BUDGET);

            // candidate family = every edge subset
            let all = pipe.zdd().all_subsets();
            let b = pipe.filter(all).unwrap();
            filter_runs += 1;
            let got: BTreeSet<Vec<u32>> = pipe.zdd().members(b).collect();
            let expect: BTreeSet<Vec<u32>> = infos
                .iter()
                .enumerate()
                .filter(|(_, info)| info.min_component >= bound)
                .map(|(mask, _)| mask_to_set(mask as u32, m))
                .collect();
            if got != expect {
                failures.push(format!("all subsets, graph {} bound {}", gi, bound));
            }

            // explicit families: pipeline vs reference filter vs scan
            for (fi, family) in families.iter().enumerate() {
                filter_runs += 1;
                let a = pipe.zdd().from_sets(family).unwrap();
                let b = pipe.filter(a).unwrap();
                let got: BTreeSet<Vec<u32>> = pipe.zdd().members(b).collect();
                let reference: BTreeSet<Vec<u32>> =
                    brute_force_filter(g, family, bound).into_iter().collect();
                if got != reference {
                    failures.push(format!("family {}, graph {} bound {}", fi, gi, bound));
                }
                // the reference filter itself against the independent scan
                let scanned: BTreeSet<Vec<u32>> = family
                    .iter()
                    .map(|member| {
                        let mut sorted = member.clone();
                        sorted.sort_unstable();
                        sorted.dedup();
                        sorted
                    })
                    .filter(|member| infos[set_to_mask(member) as usize].min_component >= bound)
                    .collect();
                if reference != scanned {
                    failures.push(format!("oracle split, family {} graph {}", fi, gi));
                }
            }
            if pipe.zdd().audit().is_err() || pipe.tdd().audit().is_err() {
                failures.push(format!("audit, graph {} bound {}", gi, bound));
            }
        }
    }
    let elapsed = t0.elapsed();
    let ok = failures.is_empty() && elapsed < Duration::from_secs(300);
    report(
        4,
        ok,
        &format!(
            "{} filter runs on {} graphs, {} mismatches in {:.1?}",
            filter_runs,
            graphs.len(),
            failures.len(),
            elapsed
        ),
    );
}

#[test]
fn criterion_5_width_bounds_hold_on_every_run() {
    let _guard = serial();
    let t0 = Instant::now();
    let graphs = corpus();
    let mut violations: Vec<String> = Vec::new();
    let mut runs = 0usize;
    for (gi, g) in graphs.iter().enumerate() {
        let plan = FrontierPlan::new(g);
        for &bound in &BOUNDS {
            runs += 1;
            let mut zdd = ZddStore::new(g.edge_count());
            let (zs, light_stats) =
                build_light_components(&mut zdd, g, bound, DEFAULT_BUDGET).unwrap();
            if let Err(level) = check_light_widths(&light_stats, &plan, bound) {
                violations.push(format!("component states, graph {} bound {} level {}", gi, bound, level));
            }
            let mut tdd = TddStore::new(g.edge_count());
            let (_, cut_stats) =
                build_cutset_tdd_subset(&mut tdd, g, &zdd, zs, DEFAULT_BUDGET).unwrap();
            if let Err(level) = check_cutset_widths(&cut_stats, &plan) {
                violations.push(format!("cutset projections, graph {} bound {} level {}", gi, bound, level));
            }

            // the standalone cutset search obeys the same projection bound
            let mut tdd2 = TddStore::new(g.edge_count());
            let (_, standalone_stats) =
                build_minimal_cutset_tdd(&mut tdd2, g, DEFAULT_BUDGET).unwrap();
            if let Err(level) = check_cutset_widths(&standalone_stats, &plan) {
                violations.push(format!("standalone projections, graph {} level {}", gi, level));
            }
        }
    }
    let elapsed = t0.elapsed();
    let component_violations = violations
        .iter()
        .filter(|v| v.starts_with("component"))
        .count();
    let cutset_violations = violations.len() - component_violations;
    let ok = violations.is_empty();
    report(
        5,
        ok,
        &format!(
            "{} runs in {:.1?}: component-state bound {} violations, cutset-projection bound {} violations{}",
            runs,
            elapsed,
            component_violations,
            cutset_violations,
            if violations.is_empty() {
                String::new()
            } else {
                format!(" [{}]", violations.join(" | "))
            }
        ),
    );
}

#[test]
fn criterion_6_grid_smoke_test() {
    let _guard = serial();
    let g = grid(4, 6, vec![1; 24]);
    assert_eq!(g.edge_count(), 38);
    let bound = 4u64;

    let t0 = Instant::now();
    let mut pipe = Pipeline::new(&g, bound, DEFAULT_BUDGET);
    let all = pipe.zdd().all_subsets();
    let b = pipe.filter(all).unwrap();
    let elapsed = t0.elapsed();

    let contained = pipe.zdd().difference(b, all) == NodeRef::BOTTOM;

    // sample 100 rejected candidates spread across the whole family and
    // confirm each has a component lighter than the bound
    let rejected = pipe.zdd().difference(all, b);
    let rejected_count = pipe.zdd().count(rejected);
    let mut light_witnesses = 0usize;
    let samples = 100u32;
    let mut adj = vec![Vec::new(); g.vertex_count() as usize + 1];
    for j in 0..samples {
        let index = (rejected_count.clone() - 1u32) * j / (samples - 1);
        let member = pipe
            .zdd()
            .nth_member(rejected, &index)
            .expect("index within family");
        if min_component_weight(&g, &member, &mut adj) < bound {
            light_witnesses += 1;
        }
    }

    let audits = pipe.zdd().audit().is_ok() && pipe.tdd().audit().is_ok();
    let ok = contained
        && light_witnesses == samples as usize
        && audits
        && elapsed < Duration::from_secs(60);
    report(
        6,
        ok,
        &format!(
            "4x6 grid: filtered in {:.1?}, containment {}, {}/{} sampled rejects have a light component",
            elapsed, contained, light_witnesses, samples
        ),
    );
}

/// Weight of the lightest component of (V, member), isolated vertices
/// included; independent of the mask scans (no 2^m table at m = 38).
fn min_component_weight(g: &Graph, member: &[u32], adj: &mut [Vec<u32>]) -> u64 {
    for a in adj.iter_mut() {
        a.clear();
    }
    for &i in member {
        let (u, v) = g.edge(i);
        adj[u as usize].push(v);
        adj[v as usize].push(u);
    }
    let n = g.vertex_count() as usize;
    let mut seen = vec![false; n + 1];
    let mut min = u64::MAX;
    let mut stack = Vec::new();
    for start in g.vertices() {
        if seen[start as usize] {
            continue;
        }
        let mut weight = 0u64;
        seen[start as usize] = true;
        stack.push(start);
        while let Some(v) = stack.pop() {
            weight += g.weight(v);
            for &w in &adj[v as usize] {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    stack.push(w);
                }
            }
        }
        min = min.min(weight);
    }
    min
}

#[test]
fn criterion_7_canonicity_audits() {
    let _guard = serial();
    let t0 = Instant::now();
    let mut audited = 0usize;
    let mut failures: Vec<String> = Vec::new();

    // the worked example plus a slice of the corpus, audited after every
    // stage and after the set operations the pipeline performs
    let mut graphs = vec![worked_example()];
    graphs.extend(corpus().into_iter().take(24));
    for (gi, g) in graphs.iter().enumerate() {
        for &bound in &BOUNDS {
            let mut pipe = Pipeline::new(g, bound, DEFAULT_BUDGET);
            let all = pipe.zdd().all_subsets();
            let _ = pipe.filter(all).unwrap();
            audited += 2;
            if let Err(e) = pipe.zdd().audit() {
                failures.push(format!("zdd, graph {} bound {}: {}", gi, bound, e));
            }
            if let Err(e) = pipe.tdd().audit() {
                failures.push(format!("tdd, graph {} bound {}: {}", gi, bound, e));
            }
        }
    }
    let elapsed = t0.elapsed();
    let ok = failures.is_empty();
    report(
        7,
        ok,
        &format!(
            "{} store audits clean in {:.1?}{}",
            audited,
            elapsed,
            if failures.is_empty() {
                String::new()
            } else {
                format!("; first: {}", failures[0])
            }
        ),
    );
}
