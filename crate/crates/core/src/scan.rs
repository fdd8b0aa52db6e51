//! Exhaustive scans over graph corpora: the global average bound with its
//! unique minimizer, the local and witness bounds with the full auxiliary
//! digraph verification, and the minimum-degree-three / complete-graph /
//! vertex-transitive-cubic findings. Reports are deterministic (rows sorted
//! by graph6) and render to CSV and JSON with exact big-integer fields.

use std::collections::BTreeMap;

use num::rational::BigRational;
use num::BigUint;
use rayon::prelude::*;
use serde::Serialize;

use crate::aux::{self, AuxOptions};
use crate::connected::{self, ConnStats};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::ratio::{plain, ratio, ratio_usize, render};

/// Per-graph scan result.
#[derive(Clone, Debug)]
pub struct ScanRow {
    pub graph6: String,
    pub n: usize,
    /// `N(G)`.
    pub count: BigUint,
    /// Summed order of all connected sets.
    pub total: BigUint,
    /// `A(G)`.
    pub average: BigRational,
    /// `min_v A(G; v)`.
    pub lemma2_min_vertex_avg: BigRational,
    /// Witness vertex (orders below 3 have none).
    pub lemma3_witness: Option<usize>,
    /// `N(G; witness)/N(G)`.
    pub lemma3_ratio: Option<BigRational>,
}

/// A failed check or a rejected input, recorded per graph.
#[derive(Clone, Debug)]
pub struct Violation {
    pub graph6: String,
    pub rule: String,
    pub detail: String,
}

/// Outcome of one scan over one order.
#[derive(Clone, Debug)]
pub struct ScanReport {
    pub n: usize,
    pub graphs_checked: u64,
    pub min_average: Option<BigRational>,
    /// graph6 strings of the graphs attaining `min_average`, sorted.
    pub minimizers: Vec<String>,
    pub violations: Vec<Violation>,
    /// Sorted by graph6.
    pub rows: Vec<ScanRow>,
    /// Findings that are data rather than pass/fail: equality censuses,
    /// conjecture margins, vertex-transitive ratios.
    pub notes: Vec<String>,
}

impl ScanReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

struct GraphOutcome {
    key: String,
    row: Option<ScanRow>,
    violations: Vec<Violation>,
    notes: Vec<String>,
}

fn graph6_of(g: &Graph) -> String {
    g.to_graph6().unwrap_or_else(|_| format!("<order {}>", g.n()))
}

/// Validates order and connectivity; returns the shared row data.
fn base_row(g: &Graph, n: usize) -> std::result::Result<ScanRow, Violation> {
    let graph6 = graph6_of(g);
    if g.n() != n {
        return Err(Violation {
            graph6,
            rule: "wrong-order".into(),
            detail: format!("graph has order {}, scan expects {n}", g.n()),
        });
    }
    if !g.is_connected() {
        return Err(Violation {
            graph6,
            rule: "disconnected".into(),
            detail: "scans cover connected graphs only".into(),
        });
    }
    let capacity = |e: Error| Violation {
        graph6: graph6_of(g),
        rule: "capacity".into(),
        detail: e.to_string(),
    };
    let stats = connected::stats(g).map_err(capacity)?;
    let locals = connected::local_stats_all(g).map_err(capacity)?;
    let lemma2_min = locals.iter().map(|l| l.average()).min().expect("order is at least one");
    let (witness, witness_ratio) = if n >= 3 {
        match aux::lemma_tops_witness(g) {
            Ok(w) => (Some(w.vertex), Some(w.ratio)),
            // Bound failures surface through the lemma scan; the row
            // simply carries no witness.
            Err(_) => (None, None),
        }
    } else {
        (None, None)
    };
    Ok(ScanRow {
        graph6,
        n,
        average: stats.average(),
        count: stats.count,
        total: stats.total_order,
        lemma2_min_vertex_avg: lemma2_min,
        lemma3_witness: witness,
        lemma3_ratio: witness_ratio,
    })
}

fn assemble(n: usize, mut outcomes: Vec<GraphOutcome>, summary_notes: Vec<String>) -> ScanReport {
    outcomes.sort_by(|a, b| a.key.cmp(&b.key));
    let mut rows = Vec::new();
    let mut violations = Vec::new();
    let mut notes = Vec::new();
    for outcome in outcomes {
        rows.extend(outcome.row);
        violations.extend(outcome.violations);
        notes.extend(outcome.notes);
    }
    let min_average = rows.iter().map(|r| r.average.clone()).min();
    let minimizers = match &min_average {
        Some(min) => rows.iter().filter(|r| &r.average == min).map(|r| r.graph6.clone()).collect(),
        None => Vec::new(),
    };
    notes.extend(summary_notes);
    ScanReport {
        n,
        graphs_checked: rows.len() as u64,
        min_average,
        minimizers,
        violations,
        rows,
        notes,
    }
}

fn is_path_graph(g: &Graph) -> bool {
    g.diametral_path().map(|p| p.length() == g.n() - 1).unwrap_or(false)
}

/// Checks `A(G) ≥ (n + 2)/3` on every input, with equality exactly for
/// the path. Compared as `3·total ≥ (n + 2)·count` in integers.
pub fn scan_theorem(graphs: &[Graph], n: usize) -> ScanReport {
    let outcomes: Vec<GraphOutcome> = graphs
        .par_iter()
        .map(|g| {
            let mut out = GraphOutcome {
                key: graph6_of(g),
                row: None,
                violations: Vec::new(),
                notes: Vec::new(),
            };
            let row = match base_row(g, n) {
                Ok(row) => row,
                Err(v) => {
                    out.violations.push(v);
                    return out;
                }
            };
            let lhs = BigUint::from(3u32) * &row.total;
            let rhs = BigUint::from(n + 2) * &row.count;
            let equality = lhs == rhs;
            if lhs < rhs {
                out.violations.push(Violation {
                    graph6: row.graph6.clone(),
                    rule: "global-average-bound".into(),
                    detail: format!("A = {} falls below (n+2)/3", render(&row.average)),
                });
            } else if equality != is_path_graph(g) {
                out.violations.push(Violation {
                    graph6: row.graph6.clone(),
                    rule: "global-average-equality".into(),
                    detail: format!(
                        "equality with (n+2)/3 holds = {equality}, but the graph is \
                         {}a path",
                        if is_path_graph(g) { "" } else { "not " }
                    ),
                });
            }
            out.row = Some(row);
            out
        })
        .collect();
    assemble(n, outcomes, Vec::new())
}

/// Checks the local bound `A(G; v) ≥ (n + 1)/2` at every vertex, the
/// witness bound with its equality structure, and — in the digraph regime
/// `2 ≤ diam ≤ n − 2` — the full structural and claim verification.
/// Equality findings are reported as notes.
pub fn scan_lemmas(graphs: &[Graph], n: usize) -> ScanReport {
    let outcomes: Vec<GraphOutcome> = graphs
        .par_iter()
        .map(|g| {
            let mut out = GraphOutcome {
                key: graph6_of(g),
                row: None,
                violations: Vec::new(),
                notes: Vec::new(),
            };
            let row = match base_row(g, n) {
                Ok(row) => row,
                Err(v) => {
                    out.violations.push(v);
                    return out;
                }
            };
            let graph6 = row.graph6.clone();

            match connected::verify_lemma_local(g) {
                Ok(local_rows) => {
                    for l in &local_rows {
                        if !l.holds {
                            out.violations.push(Violation {
                                graph6: graph6.clone(),
                                rule: "local-average-bound".into(),
                                detail: format!(
                                    "A(G;{}) = {} falls below (n+1)/2",
                                    l.stats.vertex,
                                    render(&l.stats.average())
                                ),
                            });
                        }
                    }
                    let equalities = local_rows.iter().filter(|l| l.equality).count();
                    if equalities > 0 {
                        out.notes.push(format!(
                            "{graph6}: local average meets (n+1)/2 exactly at \
                             {equalities} of {n} vertices"
                        ));
                    }
                }
                Err(e) => out.violations.push(Violation {
                    graph6: graph6.clone(),
                    rule: "local-average-bound".into(),
                    detail: e.to_string(),
                }),
            }

            if n >= 3 {
                match aux::lemma_tops_witness(g) {
                    Ok(_) => {}
                    Err(e) => out.violations.push(Violation {
                        graph6: graph6.clone(),
                        rule: "witness-bound".into(),
                        detail: e.to_string(),
                    }),
                }
                // Log (never assert) exact hits of the witness bound by
                // non-path graphs at any non-cutvertex.
                if !is_path_graph(g) {
                    let total = &row.count;
                    let two_total = BigUint::from(2u32) * total;
                    for local in connected::local_stats_all(g).expect("validated") {
                        let exact = &local.count * BigUint::from(n + 1) == two_total;
                        if exact && !g.is_cutvertex(local.vertex).expect("in range") {
                            out.notes.push(format!(
                                "{graph6}: non-path graph attains N(G;v) = 2N(G)/(n+1) \
                                 at vertex {}",
                                local.vertex
                            ));
                        }
                    }
                }

                match aux::build_aux_digraph(g, &AuxOptions::default()) {
                    Ok(digraph) => {
                        if let Err(e) = digraph.verify_structure() {
                            out.violations.push(Violation {
                                graph6: graph6.clone(),
                                rule: "aux-structure".into(),
                                detail: e.to_string(),
                            });
                        } else if let Err(e) = digraph.verify_claims() {
                            out.violations.push(Violation {
                                graph6: graph6.clone(),
                                rule: "aux-claims".into(),
                                detail: e.to_string(),
                            });
                        }
                    }
                    Err(Error::OutOfRegime { .. }) => {}
                    Err(e) => out.violations.push(Violation {
                        graph6: graph6.clone(),
                        rule: "aux-build".into(),
                        detail: e.to_string(),
                    }),
                }
            }

            out.row = Some(row);
            out
        })
        .collect();
    assemble(n, outcomes, Vec::new())
}

/// Closed form for the complete graph: `N = 2^n − 1` (every nonempty
/// subset) and summed order `n·2^(n−1)`.
pub fn complete_graph_closed_form(n: usize) -> Result<ConnStats> {
    if n == 0 {
        return Err(Error::OrderTooSmall { n: 0, min: 1, what: "complete-graph closed form" });
    }
    let count = (BigUint::from(1u32) << n) - BigUint::from(1u32);
    let total = BigUint::from(n) * (BigUint::from(1u32) << (n - 1));
    Ok(ConnStats::new(count, total))
}

/// Whether some automorphism maps `from` to `to`: depth-first search over
/// partial vertex maps with adjacency consistency pruning.
fn has_automorphism_mapping(g: &Graph, from: usize, to: usize) -> bool {
    let n = g.n();
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    image[from] = to;
    used[to] = true;
    // Map vertices in the order from, 0, 1, … so the seed constraint
    // prunes immediately.
    let order: Vec<usize> = std::iter::once(from).chain((0..n).filter(|&v| v != from)).collect();
    fn extend(
        g: &Graph,
        order: &[usize],
        pos: usize,
        image: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        let n = g.n();
        if pos == order.len() {
            return true;
        }
        let v = order[pos];
        for w in 0..n {
            if used[w] || g.degree(v) != g.degree(w) {
                continue;
            }
            let consistent =
                order[..pos].iter().all(|&u| g.has_edge(v, u) == g.has_edge(w, image[u]));
            if !consistent {
                continue;
            }
            image[v] = w;
            used[w] = true;
            if extend(g, order, pos + 1, image, used) {
                return true;
            }
            image[v] = usize::MAX;
            used[w] = false;
        }
        false
    }
    extend(g, &order, 1, &mut image, &mut used)
}

/// Whether the automorphism group acts transitively on the vertices.
pub fn vertex_transitive(g: &Graph) -> bool {
    (1..g.n()).all(|v| has_automorphism_mapping(g, 0, v))
}

/// Conjecture and closed-form findings over graphs of minimum degree at
/// least 3: the margin `A(G) − n/2` (reported, never asserted), the
/// complete-graph closed form (asserted), and for vertex-transitive cubic
/// graphs the ratio identity `N(G; v)/N(G) = A(G)/n` with the strict cap
/// `A(G)/n < 95831/100000` (both asserted).
pub fn scan_conjectures(graphs: &[Graph], n: usize) -> ScanReport {
    let outcomes: Vec<GraphOutcome> = graphs
        .par_iter()
        .filter(|g| g.n() != n || (0..g.n()).map(|v| g.degree(v)).min().unwrap_or(0) >= 3)
        .map(|g| {
            let mut out = GraphOutcome {
                key: graph6_of(g),
                row: None,
                violations: Vec::new(),
                notes: Vec::new(),
            };
            let row = match base_row(g, n) {
                Ok(row) => row,
                Err(v) => {
                    out.violations.push(v);
                    return out;
                }
            };
            let graph6 = row.graph6.clone();

            if g.edge_count() == n * (n - 1) / 2 {
                let closed = complete_graph_closed_form(n).expect("n >= 1");
                if closed.count != row.count || closed.total_order != row.total {
                    out.violations.push(Violation {
                        graph6: graph6.clone(),
                        rule: "complete-closed-form".into(),
                        detail: format!(
                            "enumerated N = {}, total = {}; closed form gives N = {}, \
                             total = {}",
                            row.count, row.total, closed.count, closed.total_order
                        ),
                    });
                }
            }

            let cubic = (0..n).all(|v| g.degree(v) == 3);
            if cubic && vertex_transitive(g) {
                let density = &row.average / BigRational::from_integer(n.into());
                let cap = ratio_usize(95831, 100000);
                let locals = connected::local_stats_all(g).expect("validated");
                let uniform = locals.iter().all(|l| ratio(&l.count, &row.count) == density);
                if !uniform {
                    out.violations.push(Violation {
                        graph6: graph6.clone(),
                        rule: "vertex-transitive-ratio".into(),
                        detail: "N(G;v)/N(G) differs from A(G)/n at some vertex".into(),
                    });
                }
                if density >= cap {
                    out.violations.push(Violation {
                        graph6: graph6.clone(),
                        rule: "cubic-density-cap".into(),
                        detail: format!("A(G)/n = {} is not below 95831/100000", render(&density)),
                    });
                } else {
                    out.notes.push(format!(
                        "{graph6}: vertex-transitive cubic, A(G)/n = {} < 95831/100000",
                        render(&density)
                    ));
                }
            }

            out.row = Some(row);
            out
        })
        .collect();

    let mut report = assemble(n, outcomes, Vec::new());
    let half_n = ratio_usize(n, 2);
    let margin = report
        .rows
        .iter()
        .map(|r| (r.average.clone() - half_n.clone(), r.graph6.clone()))
        .min_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
    match margin {
        Some((margin, graph6)) => {
            let count = report.graphs_checked;
            report.notes.push(format!(
                "minimum-degree-3 margin: min A(G) - n/2 = {} attained by {graph6} \
                 over {count} graph{}",
                render(&margin),
                if count == 1 { "" } else { "s" }
            ));
        }
        None => {
            report.notes.push(format!(
                "minimum-degree-3 margin: no graphs of minimum degree 3 at order {n}"
            ));
        }
    }
    report
}

/// CSV rendering: fixed header, one row per graph, exact integer fields.
pub fn to_csv_string(report: &ScanReport) -> String {
    let mut out = String::from(
        "graph6,n,N,total,A_num,A_den,lemma2_min_vertex_avg,lemma3_witness,\
         lemma3_ratio_num,lemma3_ratio_den\n",
    );
    for row in &report.rows {
        let (ratio_num, ratio_den) = match &row.lemma3_ratio {
            Some(r) => (r.numer().to_string(), r.denom().to_string()),
            None => (String::new(), String::new()),
        };
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{}\n",
            row.graph6,
            row.n,
            row.count,
            row.total,
            row.average.numer(),
            row.average.denom(),
            plain(&row.lemma2_min_vertex_avg),
            row.lemma3_witness.map(|v| v.to_string()).unwrap_or_default(),
            ratio_num,
            ratio_den,
        ));
    }
    out
}

#[derive(Serialize)]
struct JsonRatio {
    num: String,
    den: String,
}

impl JsonRatio {
    fn of(r: &BigRational) -> JsonRatio {
        JsonRatio { num: r.numer().to_string(), den: r.denom().to_string() }
    }
}

#[derive(Serialize)]
struct JsonRow {
    graph6: String,
    n: usize,
    count: String,
    total: String,
    average: JsonRatio,
    lemma2_min_vertex_avg: JsonRatio,
    #[serde(skip_serializing_if = "Option::is_none")]
    lemma3_witness: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    lemma3_ratio: Option<JsonRatio>,
}

#[derive(Serialize)]
struct JsonViolation {
    graph6: String,
    rule: String,
    detail: String,
}

#[derive(Serialize)]
struct JsonReport {
    n: usize,
    graphs_checked: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    min_average: Option<JsonRatio>,
    minimizers: Vec<String>,
    violations: Vec<JsonViolation>,
    rows: Vec<JsonRow>,
    notes: Vec<String>,
}

/// JSON rendering mirroring the CSV fields, with big integers as strings.
pub fn to_json_string(report: &ScanReport) -> String {
    let mirror = JsonReport {
        n: report.n,
        graphs_checked: report.graphs_checked,
        min_average: report.min_average.as_ref().map(JsonRatio::of),
        minimizers: report.minimizers.clone(),
        violations: report
            .violations
            .iter()
            .map(|v| JsonViolation {
                graph6: v.graph6.clone(),
                rule: v.rule.clone(),
                detail: v.detail.clone(),
            })
            .collect(),
        rows: report
            .rows
            .iter()
            .map(|r| JsonRow {
                graph6: r.graph6.clone(),
                n: r.n,
                count: r.count.to_string(),
                total: r.total.to_string(),
                average: JsonRatio::of(&r.average),
                lemma2_min_vertex_avg: JsonRatio::of(&r.lemma2_min_vertex_avg),
                lemma3_witness: r.lemma3_witness,
                lemma3_ratio: r.lemma3_ratio.as_ref().map(JsonRatio::of),
            })
            .collect(),
        notes: report.notes.clone(),
    };
    let mut rendered = serde_json::to_string_pretty(&mirror).expect("report serializes");
    rendered.push('\n');
    rendered
}

/// Groups an ingested corpus by order so each order scans separately.
pub fn group_by_order(graphs: Vec<Graph>) -> BTreeMap<usize, Vec<Graph>> {
    let mut map: BTreeMap<usize, Vec<Graph>> = BTreeMap::new();
    for g in graphs {
        map.entry(g.n()).or_default().push(g);
    }
    map
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::generate_connected_graphs;

    #[test]
    fn theorem_scan_small_orders() {
        for (n, classes, min_num, min_den) in
            [(1usize, 1usize, 1usize, 1usize), (4, 6, 2, 1), (6, 112, 8, 3)]
        {
            let graphs = generate_connected_graphs(n).unwrap();
            assert_eq!(graphs.len(), classes);
            let report = scan_theorem(&graphs, n);
            assert!(report.passed(), "violations: {:?}", report.violations);
            assert_eq!(report.graphs_checked, classes as u64);
            assert_eq!(report.min_average, Some(ratio_usize(min_num, min_den)));
            assert_eq!(report.minimizers.len(), 1, "unique minimizer");
            let minimizer = Graph::from_graph6(&report.minimizers[0]).unwrap();
            assert!(is_path_graph(&minimizer));
        }
    }

    #[test]
    fn theorem_scan_records_star_row() {
        let graphs = generate_connected_graphs(4).unwrap();
        let report = scan_theorem(&graphs, 4);
        let star6 = crate::canon::canonical_form(&Graph::star(4)).unwrap().1;
        let star_row = report
            .rows
            .iter()
            .find(|r| r.graph6 == star6.to_graph6().unwrap())
            .expect("star present");
        assert_eq!(star_row.average, ratio_usize(23, 11));
        assert_eq!(star_row.count, BigUint::from(11u32));
    }

    #[test]
    fn wrong_order_and_disconnected_inputs_become_violations() {
        let inputs =
            vec![Graph::path(4), Graph::path(3), Graph::new(4, &[(0, 1), (2, 3)]).unwrap()];
        let report = scan_theorem(&inputs, 4);
        assert_eq!(report.graphs_checked, 1);
        assert_eq!(report.violations.len(), 2);
        let rules: Vec<&str> = report.violations.iter().map(|v| v.rule.as_str()).collect();
        assert!(rules.contains(&"wrong-order"));
        assert!(rules.contains(&"disconnected"));
    }

    #[test]
    fn lemma_scan_passes_and_reports_equalities() {
        let graphs = generate_connected_graphs(5).unwrap();
        let report = scan_lemmas(&graphs, 5);
        assert!(report.passed(), "violations: {:?}", report.violations);
        assert_eq!(report.graphs_checked, 21);
        // The path survives the local bound with equality at every vertex.
        let path6 = Graph::path(5);
        let path6 = crate::canon::canonical_form(&path6).unwrap().1.to_graph6().unwrap();
        assert!(report
            .notes
            .iter()
            .any(|note| note.starts_with(&path6) && note.contains("5 of 5 vertices")));
    }

    #[test]
    fn lemma_scan_order_three() {
        let graphs = generate_connected_graphs(3).unwrap();
        let report = scan_lemmas(&graphs, 3);
        assert!(report.passed());
        for row in &report.rows {
            let g = Graph::from_graph6(&row.graph6).unwrap();
            let ratio = row.lemma3_ratio.as_ref().unwrap();
            if is_path_graph(&g) {
                assert_eq!(ratio, &ratio_usize(1, 2), "path endpoint hits 2N/(n+1)");
            } else {
                assert_eq!(ratio, &ratio_usize(4, 7), "K3 vertex ratio");
            }
        }
    }

    #[test]
    fn conjecture_scan_on_order_four() {
        let graphs = generate_connected_graphs(4).unwrap();
        let report = scan_conjectures(&graphs, 4);
        assert!(report.passed(), "violations: {:?}", report.violations);
        // Only K4 has minimum degree 3 at order 4.
        assert_eq!(report.graphs_checked, 1);
        assert_eq!(report.rows[0].average, ratio_usize(32, 15));
        assert!(report
            .notes
            .iter()
            .any(|n| n.contains("vertex-transitive cubic") && n.contains("8/15")));
        assert!(report.notes.iter().any(|n| n.contains("min A(G) - n/2 = 2/15")));
    }

    #[test]
    fn conjecture_scan_notes_absence() {
        let graphs = generate_connected_graphs(3).unwrap();
        let report = scan_conjectures(&graphs, 3);
        assert_eq!(report.graphs_checked, 0);
        assert!(report.notes.iter().any(|n| n.contains("no graphs of minimum degree 3")));
    }

    #[test]
    fn complete_closed_form_matches_enumeration_and_binomials() {
        for n in 1..=9usize {
            let closed = complete_graph_closed_form(n).unwrap();
            let brute = connected::stats(&Graph::complete(n)).unwrap();
            assert_eq!(closed.count, brute.count, "n={n}");
            assert_eq!(closed.total_order, brute.total_order, "n={n}");
        }
        // Independent route: sum k * C(n, k) over nonempty subset sizes.
        for n in 1..=30usize {
            let closed = complete_graph_closed_form(n).unwrap();
            let mut count = BigUint::from(0u32);
            let mut total = BigUint::from(0u32);
            let mut binom = BigUint::from(1u32);
            for k in 1..=n {
                binom = binom * BigUint::from(n - k + 1) / BigUint::from(k);
                count += &binom;
                total += BigUint::from(k) * &binom;
            }
            assert_eq!(closed.count, count, "n={n}");
            assert_eq!(closed.total_order, total, "n={n}");
        }
    }

    #[test]
    fn vertex_transitivity_detection() {
        assert!(vertex_transitive(&Graph::complete(4)));
        assert!(vertex_transitive(&Graph::cycle(5)));
        assert!(vertex_transitive(&Graph::new(1, &[]).unwrap()));
        assert!(!vertex_transitive(&Graph::star(4)));
        assert!(!vertex_transitive(&Graph::path(4)));
        // Triangular prism: cubic and vertex-transitive.
        let prism = Graph::new(
            6,
            &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)],
        )
        .unwrap();
        assert!(vertex_transitive(&prism));
        // Cube graph.
        let cube = Graph::new(
            8,
            &[
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 0),
                (4, 5),
                (5, 6),
                (6, 7),
                (7, 4),
                (0, 4),
                (1, 5),
                (2, 6),
                (3, 7),
            ],
        )
        .unwrap();
        assert!(vertex_transitive(&cube));
        // A cubic graph that is not vertex-transitive: two triangles
        // joined by a path have distinguishable vertices; simplest is the
        // 3-prism with one rung subdivided... instead use K4 minus an edge
        // plus a pendant structure — here, the complement of P6 works, but
        // the clean classic is the "twisted" prism variant below.
        let non_vt = Graph::new(
            6,
            &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5), (0, 4)],
        );
        // Adding a chord breaks regularity, hence transitivity.
        assert!(!vertex_transitive(&non_vt.unwrap()));
    }

    #[test]
    fn csv_is_frozen_for_order_three() {
        let graphs = generate_connected_graphs(3).unwrap();
        let report = scan_lemmas(&graphs, 3);
        let csv = to_csv_string(&report);
        // The canonical path labelling puts the centre last (minimum
        // bitstring), so the canonical P3 encodes as "BW", below "Bw" (K3).
        let expected = "graph6,n,N,total,A_num,A_den,lemma2_min_vertex_avg,lemma3_witness,\
                        lemma3_ratio_num,lemma3_ratio_den\n\
                        BW,3,6,10,5,3,2,0,1,2\n\
                        Bw,3,7,12,12,7,2,0,4,7\n";
        assert_eq!(csv, expected);
    }

    #[test]
    fn json_mirrors_the_report() {
        let graphs = generate_connected_graphs(3).unwrap();
        let report = scan_theorem(&graphs, 3);
        let json = to_json_string(&report);
        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(value["n"], 3);
        assert_eq!(value["graphs_checked"], 2);
        assert_eq!(value["min_average"]["num"], "5");
        assert_eq!(value["min_average"]["den"], "3");
        assert_eq!(value["rows"][0]["graph6"], "BW");
        assert_eq!(value["rows"][0]["count"], "6");
        assert_eq!(value["violations"].as_array().unwrap().len(), 0);
    }

    #[test]
    fn reports_are_deterministic() {
        let graphs = generate_connected_graphs(5).unwrap();
        let a = to_csv_string(&scan_lemmas(&graphs, 5));
        let b = to_csv_string(&scan_lemmas(&graphs, 5));
        assert_eq!(a, b);
        // Input order must not matter either: reversed corpus, same bytes.
        let mut reversed = graphs.clone();
        reversed.reverse();
        let c = to_csv_string(&scan_lemmas(&reversed, 5));
        assert_eq!(a, c);
    }

    #[test]
    fn grouping_by_order() {
        let graphs = vec![Graph::path(3), Graph::path(4), Graph::complete(3)];
        let grouped = group_by_order(graphs);
        assert_eq!(grouped[&3].len(), 2);
        assert_eq!(grouped[&4].len(), 1);
    }
}
