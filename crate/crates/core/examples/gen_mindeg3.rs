//! Regenerates `data/mindeg3_8.g6`: every connected graph of order 8 with
//! minimum degree at least 3, one canonical representative per class,
//! printed to stdout in graph6, sorted.
//!
//! Route: every such graph arises from a connected order-7 graph of
//! minimum degree at least 2 (delete a non-cutvertex; degrees drop by at
//! most one) by attaching a new vertex whose neighbourhood has size at
//! least 3 and covers all degree-2 vertices (they need the new neighbour
//! to reach degree 3). Extending all level-7 representatives over all such
//! neighbourhoods and deduplicating by canonical key is therefore
//! exhaustive.

use std::collections::BTreeMap;

use avgconn_core::canon::{canonical_form, generate_connected_graphs};
use avgconn_core::graph::Graph;

fn main() {
    let base: Vec<Graph> = generate_connected_graphs(7)
        .unwrap()
        .into_iter()
        .filter(|g| (0..7).map(|v| g.degree(v)).min().unwrap() >= 2)
        .collect();
    let mut reps: BTreeMap<u64, Graph> = BTreeMap::new();
    for g in &base {
        let required: u32 = (0..7).filter(|&v| g.degree(v) == 2).map(|v| 1 << v).sum();
        let base_edges = g.edges();
        for mask in 0u32..1 << 7 {
            if mask.count_ones() < 3 || mask & required != required {
                continue;
            }
            let mut edges = base_edges.clone();
            for u in 0..7 {
                if mask >> u & 1 == 1 {
                    edges.push((u, 7));
                }
            }
            let cand = Graph::new(8, &edges).unwrap();
            if (0..8).map(|v| cand.degree(v)).min().unwrap() < 3 {
                continue;
            }
            let (key, rep) = canonical_form(&cand).unwrap();
            reps.entry(key).or_insert(rep);
        }
    }
    let mut lines: Vec<String> = reps.values().map(|g| g.to_graph6().unwrap()).collect();
    lines.sort();
    for line in &lines {
        println!("{line}");
    }
    eprintln!("{} classes", lines.len());
}
