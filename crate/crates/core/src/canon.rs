//! Exact isomorphism machinery for small graphs: canonical labeling by
//! the minimum adjacency bitstring over all vertex permutations, the
//! exhaustive generator of connected graphs up to order 7, and a free-tree
//! generator with center-rooted canonical encodings.
//!
//! Bit convention: pair `(i, j)` with `i < j` occupies position
//! `j(j-1)/2 + i`, i.e. upper-triangle columns in order — the same layout
//! graph6 uses — and earlier positions are more significant, so comparing
//! packed keys compares bitstrings lexicographically.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Canonical labeling works on at most 11 vertices (55 bits in a `u64`).
pub const MAX_CANON_ORDER: usize = 11;

/// Built-in exhaustive generation stops at order 7; larger corpora must be
/// ingested from pre-deduplicated graph6 files.
pub const MAX_GENERATE_ORDER: usize = 7;

/// Free-tree generation cap.
pub const MAX_TREE_ORDER: usize = 16;

fn require_canon_order(g: &Graph) -> Result<()> {
    if g.n() > MAX_CANON_ORDER {
        return Err(Error::TooLarge { n: g.n(), max: MAX_CANON_ORDER, what: "canonical labeling" });
    }
    Ok(())
}

/// The canonical key: minimum packed adjacency bitstring over all `n!`
/// relabelings. Two graphs of equal order are isomorphic iff their keys
/// are equal.
pub fn canonical_key(g: &Graph) -> Result<u64> {
    Ok(canon_search(g)?.0)
}

/// Canonical key together with the canonically relabeled representative.
pub fn canonical_form(g: &Graph) -> Result<(u64, Graph)> {
    require_canon_order(g)?;
    let key = canonical_key(g)?;
    Ok((key, graph_from_key(g.n(), key)))
}

/// Order of the automorphism group, counted as the number of relabelings
/// that achieve the minimum bitstring.
pub fn automorphism_count(g: &Graph) -> Result<u64> {
    Ok(canon_search(g)?.1)
}

/// Rebuilds the graph encoded by a packed adjacency key.
pub fn graph_from_key(n: usize, key: u64) -> Graph {
    let nbits = n * (n - 1) / 2;
    let mut edges = Vec::new();
    let mut pos = 0;
    for j in 1..n {
        for i in 0..j {
            if key >> (nbits - 1 - pos) & 1 == 1 {
                edges.push((i, j));
            }
            pos += 1;
        }
    }
    Graph::new(n, &edges).expect("key decodes to a simple graph")
}

/// Branch-and-bound search over position assignments. Placing a vertex at
/// position `j` fixes the whole column of bits toward earlier positions,
/// so prefixes are compared column by column and branches that exceed the
/// incumbent minimum are cut. Returns the packed key and the number of
/// permutations attaining it (= order of the automorphism group).
fn canon_search(g: &Graph) -> Result<(u64, u64)> {
    require_canon_order(g)?;
    let n = g.n();
    let mut st = Search {
        g,
        n,
        perm: vec![usize::MAX; n],
        used: vec![false; n],
        // Column j (1-indexed position) compares at cols[j - 1]; u32::MAX
        // stands for "not yet attained".
        best: vec![u32::MAX; n.saturating_sub(1)],
        aut: 0,
    };
    st.descend(0);
    let mut key = 0u64;
    for (j, &col) in st.best.iter().enumerate() {
        debug_assert!(col >> (j + 1) == 0);
        key = key << (j + 1) | col as u64;
    }
    Ok((key, st.aut.max(1)))
}

struct Search<'a> {
    g: &'a Graph,
    n: usize,
    perm: Vec<usize>,
    used: Vec<bool>,
    best: Vec<u32>,
    aut: u64,
}

impl Search<'_> {
    fn descend(&mut self, pos: usize) {
        if pos == self.n {
            self.aut += 1;
            return;
        }
        for v in 0..self.n {
            if self.used[v] {
                continue;
            }
            let mut keep = true;
            if pos > 0 {
                let mut col = 0u32;
                for i in 0..pos {
                    col = col << 1 | self.g.has_edge(self.perm[i], v) as u32;
                }
                match col.cmp(&self.best[pos - 1]) {
                    std::cmp::Ordering::Greater => keep = false,
                    std::cmp::Ordering::Equal => {}
                    std::cmp::Ordering::Less => {
                        // New strict minimum: adopt this column, void the
                        // stale suffix, and restart the attainment count.
                        self.best[pos - 1] = col;
                        for slot in &mut self.best[pos..] {
                            *slot = u32::MAX;
                        }
                        self.aut = 0;
                    }
                }
            }
            if keep {
                self.perm[pos] = v;
                self.used[v] = true;
                self.descend(pos + 1);
                self.used[v] = false;
            }
        }
    }
}

/// All connected graphs of order `n <= 7` up to isomorphism, each given by
/// its canonical representative, sorted by canonical key.
///
/// Generation is incremental: every connected graph of order `k` arises
/// from a connected graph of order `k - 1` (delete a non-cutvertex) by
/// attaching a new vertex to a nonempty neighborhood, so extending all
/// level-`(k-1)` representatives by all nonempty neighborhoods and
/// deduplicating by canonical key covers level `k`.
pub fn generate_connected_graphs(n: usize) -> Result<Vec<Graph>> {
    if n == 0 {
        return Err(Error::OrderTooSmall { n: 0, min: 1, what: "exhaustive generation" });
    }
    if n > MAX_GENERATE_ORDER {
        return Err(Error::TooLarge {
            n,
            max: MAX_GENERATE_ORDER,
            what: "built-in exhaustive generation (ingest larger corpora from graph6 files)",
        });
    }
    static LEVELS: OnceLock<Vec<Vec<Graph>>> = OnceLock::new();
    let levels = LEVELS.get_or_init(|| {
        let mut levels: Vec<Vec<Graph>> = vec![vec![Graph::new(1, &[]).unwrap()]];
        for k in 2..=MAX_GENERATE_ORDER {
            let mut reps: BTreeMap<u64, Graph> = BTreeMap::new();
            for base in &levels[k - 2] {
                let mut edges = base.edges();
                let marker = edges.len();
                for mask in 1u32..1 << (k - 1) {
                    edges.truncate(marker);
                    for u in 0..k - 1 {
                        if mask >> u & 1 == 1 {
                            edges.push((u, k - 1));
                        }
                    }
                    let cand = Graph::new(k, &edges).expect("extension is simple");
                    debug_assert!(cand.is_connected());
                    let (key, rep) = canonical_form(&cand).expect("order within cap");
                    reps.entry(key).or_insert(rep);
                }
            }
            levels.push(reps.into_values().collect());
        }
        levels
    });
    Ok(levels[n - 1].clone())
}

/// All free (unlabeled) trees of order `n <= 16`, one representative per
/// isomorphism class, sorted by their canonical encoding.
///
/// Every tree of order `k` is a tree of order `k - 1` plus a leaf, so leaf
/// extension with canonical dedup is exhaustive.
pub fn free_trees(n: usize) -> Result<Vec<Graph>> {
    if n == 0 {
        return Err(Error::OrderTooSmall { n: 0, min: 1, what: "free-tree generation" });
    }
    if n > MAX_TREE_ORDER {
        return Err(Error::TooLarge { n, max: MAX_TREE_ORDER, what: "free-tree generation" });
    }
    let mut level = vec![Graph::new(1, &[]).unwrap()];
    for k in 2..=n {
        let mut reps: BTreeMap<String, Graph> = BTreeMap::new();
        for base in &level {
            let mut edges = base.edges();
            for v in 0..k - 1 {
                edges.push((v, k - 1));
                let cand = Graph::new(k, &edges).expect("leaf extension is simple");
                reps.entry(tree_encoding(&cand)).or_insert(cand);
                edges.pop();
            }
        }
        level = reps.into_values().collect();
    }
    Ok(level)
}

/// Complete isomorphism invariant for trees: the AHU bracket encoding
/// rooted at the center (or, for bicentral trees, the sorted pair of
/// half-encodings across the central edge).
pub fn tree_encoding(t: &Graph) -> String {
    let centers = tree_centers(t);
    match centers[..] {
        [c] => encode_rooted(t, c, usize::MAX),
        [a, b] => {
            let ea = encode_rooted(t, a, b);
            let eb = encode_rooted(t, b, a);
            if ea <= eb {
                format!("{ea}{eb}")
            } else {
                format!("{eb}{ea}")
            }
        }
        _ => unreachable!("a tree has one or two centers"),
    }
}

fn encode_rooted(t: &Graph, v: usize, parent: usize) -> String {
    let mut parts: Vec<String> =
        t.neighbors(v).iter().filter(|&&w| w != parent).map(|&w| encode_rooted(t, w, v)).collect();
    parts.sort();
    format!("({})", parts.concat())
}

/// The one or two central vertices, found by stripping leaf layers.
fn tree_centers(t: &Graph) -> Vec<usize> {
    let n = t.n();
    if n <= 2 {
        return (0..n).collect();
    }
    let mut deg: Vec<usize> = (0..n).map(|v| t.degree(v)).collect();
    let mut layer: Vec<usize> = (0..n).filter(|&v| deg[v] == 1).collect();
    let mut alive = n;
    loop {
        if alive <= 2 {
            let mut centers: Vec<usize> = (0..n).filter(|&v| deg[v] != 0).collect();
            // Degree bookkeeping zeroes stripped vertices; survivors of a
            // 2-center tree keep degree 1 toward each other.
            centers.sort_unstable();
            return centers;
        }
        let mut next = Vec::new();
        alive -= layer.len();
        for &v in &layer {
            deg[v] = 0;
            for &w in t.neighbors(v) {
                if deg[w] > 1 {
                    deg[w] -= 1;
                    if deg[w] == 1 {
                        next.push(w);
                    }
                }
            }
        }
        layer = next;
    }
}

/// Parses a multi-graph corpus: one graph6 string per non-empty line.
/// Errors carry the 1-indexed line number.
pub fn read_graph6_lines(text: &str) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let g = Graph::from_graph6(line).map_err(|e| match e {
            Error::Parse { offset, reason } => {
                Error::Parse { offset, reason: format!("line {}: {reason}", idx + 1) }
            }
            other => other,
        })?;
        out.push(g);
    }
    Ok(out)
}
