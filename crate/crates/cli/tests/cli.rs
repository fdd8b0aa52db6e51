//! End-to-end tests of the `avgconn` binary: documented output lines,
//! exit codes, and byte-determinism across parallelism settings.

use std::io::Write;
use std::path::Path;
use std::process::{Command, Output};

use avgconn_core::graph::Graph;

fn avgconn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_avgconn")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> &str {
    std::str::from_utf8(&out.stdout).expect("utf-8 stdout")
}

fn stderr(out: &Output) -> &str {
    std::str::from_utf8(&out.stderr).expect("utf-8 stderr")
}

fn exit(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

/// Path of a checked-in data file, relative to the workspace root.
fn data(rel: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..").join(rel).display().to_string()
}

#[test]
fn stats_prints_the_documented_line() {
    let out = avgconn(&["stats", "--format", "graph6", "--in", &data("data/p3.g6")]);
    assert_eq!(exit(&out), 0);
    assert_eq!(stdout(&out), "N=6 total=10 A=5/3 (~1.6667)\n");
}

#[test]
fn stats_reads_edge_lists() {
    let out = avgconn(&["stats", "--edges", &data("data/fig1.txt")]);
    assert_eq!(exit(&out), 0);
    assert_eq!(stdout(&out), "N=43 total=135 A=135/43 (~3.1395)\n");
}

#[test]
fn local_reports_one_or_all_vertices() {
    let p3 = data("data/p3.g6");
    let one = avgconn(&["local", "--in", &p3, "--vertex", "1"]);
    assert_eq!(exit(&one), 0);
    assert_eq!(stdout(&one), "v=1 N=4 total=8 A=2 (~2.0000)\n");

    let all = avgconn(&["local", "--in", &p3]);
    assert_eq!(exit(&all), 0);
    assert_eq!(
        stdout(&all),
        "v=0 N=3 total=6 A=2 (~2.0000)\n\
         v=1 N=4 total=8 A=2 (~2.0000)\n\
         v=2 N=3 total=6 A=2 (~2.0000)\n"
    );
}

#[test]
fn tree_closed_form_and_dp_agree_with_enumeration() {
    let out = avgconn(&["tree", "--n", "6"]);
    assert_eq!(exit(&out), 0);
    assert_eq!(stdout(&out), "N=21 total=56 A=8/3 (~2.6667)\n");

    let big = avgconn(&["tree", "--n", "10000"]);
    assert_eq!(exit(&big), 0);
    assert_eq!(stdout(&big), "N=50005000 total=166716670000 A=3334 (~3334.0000)\n");
}

#[test]
fn tree_rejects_non_trees() {
    let out = avgconn(&["tree", "--edges", &data("data/fig1.txt")]);
    assert_eq!(exit(&out), 2);
    assert!(stderr(&out).contains("not a tree"), "stderr: {}", stderr(&out));
}

#[test]
fn aux_dump_matches_the_golden_component() {
    let out = avgconn(&["aux", "--edges", &data("data/fig1.txt"), "--component", "3", "--dump"]);
    assert_eq!(exit(&out), 0);
    assert_eq!(stdout(&out), include_str!("../../core/tests/fixtures/fig1_component.txt"));
}

#[test]
fn aux_reports_structure_and_claim_checks() {
    let out = avgconn(&["aux", "--edges", &data("data/fig1.txt")]);
    assert_eq!(exit(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("graph: n=6 m=8\n"), "{text}");
    assert!(text.contains("path: 0 1 2 (length 2)\n"), "{text}");
    assert!(text.contains("nodes: 43\n"), "{text}");
    assert!(text.contains("red: 19 paths, 24 edges, mu = 24/19 (~1.2632)\n"), "{text}");
    assert!(
        text.contains("average path length: 24/19 (~1.2632) < 5/2 (~2.5000) = (n-1)/2\n"),
        "{text}"
    );
    assert!(text.contains("checks: structure PASS; claims PASS"), "{text}");
}

#[test]
fn aux_rejects_graphs_outside_the_diameter_regime() {
    let out = avgconn(&["aux", "--in", &data("data/p3.g6")]);
    assert_eq!(exit(&out), 2);
    assert!(stderr(&out).contains("regime"), "stderr: {}", stderr(&out));
}

#[test]
fn verify_summarizes_a_clean_order() {
    let out = avgconn(&["verify", "--n", "5"]);
    assert_eq!(exit(&out), 0);
    let first = stdout(&out).lines().next().expect("summary line");
    assert_eq!(
        first,
        "21 graphs; global average bound PASS; unique minimizer = path \
         (A=7/3 (~2.3333)); local average bound PASS; witness bound PASS; \
         digraph checks PASS"
    );
}

#[test]
fn verify_flags_a_corrupt_corpus_with_exit_one() {
    let dir = tempfile::tempdir().expect("tempdir");
    let path = dir.path().join("bad_corpus.g6");
    let p4 = Graph::path(4).to_graph6().unwrap();
    let two_k2 = Graph::new(4, &[(0, 1), (2, 3)]).unwrap().to_graph6().unwrap();
    let p5 = Graph::path(5).to_graph6().unwrap();
    let mut file = std::fs::File::create(&path).expect("fixture");
    writeln!(file, "{p4}\n{two_k2}\n{p5}").expect("write fixture");
    drop(file);

    let out = avgconn(&["verify", "--in", path.to_str().unwrap()]);
    assert_eq!(exit(&out), 1);
    let text = stdout(&out);
    assert!(text.contains("violation [disconnected]"), "{text}");
    assert!(text.contains("violation [wrong-order]"), "{text}");
    assert!(text.contains("2 inputs rejected"), "{text}");
    assert!(stderr(&out).contains("2 violations"), "stderr: {}", stderr(&out));
}

#[test]
fn scan_emits_the_fixed_csv_schema() {
    let out = avgconn(&["scan", "--n", "3", "--emit", "csv"]);
    assert_eq!(exit(&out), 0);
    assert_eq!(
        stdout(&out),
        "graph6,n,N,total,A_num,A_den,lemma2_min_vertex_avg,lemma3_witness,\
         lemma3_ratio_num,lemma3_ratio_den\n\
         BW,3,6,10,5,3,2,0,1,2\n\
         Bw,3,7,12,12,7,2,0,4,7\n"
    );
}

#[test]
fn scan_writes_the_report_to_a_file() {
    let dir = tempfile::tempdir().expect("tempdir");
    let path = dir.path().join("report.csv");
    let inline = avgconn(&["scan", "--n", "4", "--emit", "csv"]);
    let redirected =
        avgconn(&["scan", "--n", "4", "--emit", "csv", "--out", path.to_str().unwrap()]);
    assert_eq!(exit(&redirected), 0);
    assert_eq!(stdout(&redirected), "");
    let written = std::fs::read_to_string(&path).expect("report written");
    assert_eq!(written, stdout(&inline));
}

#[test]
fn conjecture_reports_order_eight_corpus_findings() {
    let out = avgconn(&["conjecture", "--in", &data("data/mindeg3_8.g6")]);
    assert_eq!(exit(&out), 0);
    let text = stdout(&out);
    assert!(text.starts_with("order 8: 2589 graphs of minimum degree 3\n"), "{text}");
    assert!(
        text.contains("minimum-degree-3 margin: min A(G) - n/2 = 4/255 (~0.0157) attained by"),
        "{text}"
    );
    assert_eq!(text.matches("vertex-transitive cubic").count(), 2, "{text}");
}

#[test]
fn reports_are_byte_identical_across_jobs_and_runs() {
    for emit in ["csv", "json", "text"] {
        let one = avgconn(&["verify", "--n", "6", "--emit", emit, "--jobs", "1"]);
        let four = avgconn(&["verify", "--n", "6", "--emit", emit, "--jobs", "4"]);
        let again = avgconn(&["verify", "--n", "6", "--emit", emit, "--jobs", "4"]);
        assert_eq!(exit(&one), 0);
        assert_eq!(one.stdout, four.stdout, "emit {emit} differs across --jobs");
        assert_eq!(four.stdout, again.stdout, "emit {emit} differs across runs");
    }
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(exit(&avgconn(&[])), 2);
    assert_eq!(exit(&avgconn(&["stats", "--nope"])), 2);
    assert_eq!(exit(&avgconn(&["stats"])), 2);
    assert_eq!(exit(&avgconn(&["stats", "--in", "/nonexistent.g6"])), 2);
    assert_eq!(exit(&avgconn(&["scan"])), 2);
    assert_eq!(exit(&avgconn(&["verify", "--n", "9"])), 2);
    assert_eq!(exit(&avgconn(&["tree", "--n", "0"])), 2);
    // --component and --dump are a pair.
    let fig1 = data("data/fig1.txt");
    assert_eq!(exit(&avgconn(&["aux", "--edges", &fig1, "--component", "3"])), 2);
    assert_eq!(exit(&avgconn(&["aux", "--edges", &fig1, "--dump"])), 2);
}

#[test]
fn graph6_parse_errors_name_the_line() {
    let dir = tempfile::tempdir().expect("tempdir");
    let path = dir.path().join("mangled.g6");
    std::fs::write(&path, "BW\n~~~broken\n").expect("fixture");
    let out = avgconn(&["stats", "--in", path.to_str().unwrap()]);
    assert_eq!(exit(&out), 2);
    assert!(stderr(&out).contains("line 2"), "stderr: {}", stderr(&out));
}
