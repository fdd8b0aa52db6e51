//! Core graph representation: simple undirected graphs with 0-indexed
//! vertices, bitmask vertex sets, shortest-path machinery, and the two
//! supported text formats (graph6 and plain edge lists).
//!
//! Representation: sorted adjacency rows in compressed sparse form are the
//! source of truth; for graphs of order at most 64 each row is also
//! materialized as a 64-bit mask so subset and boundary operations are
//! single instructions.

use std::fmt;

use crate::error::{Error, Result};

/// Hard cap for bitmask-based subset work (`VertexSet` carries a `u64`).
pub const MAX_SET_ORDER: usize = 64;

/// Largest order representable by short-form graph6.
pub const MAX_GRAPH6_ORDER: usize = 62;

/// Defensive cap on the order accepted from edge-list headers.
const MAX_EDGE_LIST_ORDER: usize = 1 << 20;

/// A set of vertices of a graph of order at most 64, stored as a bitmask.
///
/// Bit `v` is set iff vertex `v` is a member. The natural integer order on
/// the mask doubles as a deterministic canonical order on sets.
#[derive(Copy, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn singleton(v: usize) -> VertexSet {
        assert!(v < MAX_SET_ORDER, "vertex {v} out of bitmask range");
        VertexSet(1 << v)
    }

    /// All vertices `0..n`.
    pub fn full(n: usize) -> VertexSet {
        assert!(n <= MAX_SET_ORDER);
        if n == MAX_SET_ORDER {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn from_bits(bits: u64) -> VertexSet {
        VertexSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, v: usize) -> bool {
        v < MAX_SET_ORDER && self.0 >> v & 1 == 1
    }

    #[must_use]
    pub fn insert(self, v: usize) -> VertexSet {
        assert!(v < MAX_SET_ORDER, "vertex {v} out of bitmask range");
        VertexSet(self.0 | 1 << v)
    }

    #[must_use]
    pub fn remove(self, v: usize) -> VertexSet {
        assert!(v < MAX_SET_ORDER, "vertex {v} out of bitmask range");
        VertexSet(self.0 & !(1 << v))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn min_vertex(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    pub fn is_subset_of(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersects(self, other: VertexSet) -> bool {
        self.0 & other.0 != 0
    }

    /// Members in ascending order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(v)
            }
        })
    }
}

impl std::ops::BitOr for VertexSet {
    type Output = VertexSet;
    fn bitor(self, rhs: VertexSet) -> VertexSet {
        VertexSet(self.0 | rhs.0)
    }
}

impl std::ops::BitAnd for VertexSet {
    type Output = VertexSet;
    fn bitand(self, rhs: VertexSet) -> VertexSet {
        VertexSet(self.0 & rhs.0)
    }
}

impl std::ops::Sub for VertexSet {
    type Output = VertexSet;
    fn sub(self, rhs: VertexSet) -> VertexSet {
        VertexSet(self.0 & !rhs.0)
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> VertexSet {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s = s.insert(v);
        }
        s
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, v) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Input format accepted by [`Graph::parse`].
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum GraphFormat {
    Graph6,
    EdgeList,
}

/// A finite simple undirected graph on vertices `0..n`, `n >= 1`.
///
/// Adjacency is stored in compressed sparse rows so construction performs
/// a constant number of allocations regardless of order — the subtree DP
/// sweeps build tens of thousands of graphs.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    /// Neighbors of `v` are `flat[offsets[v]..offsets[v + 1]]`, ascending.
    offsets: Vec<usize>,
    flat: Vec<usize>,
    /// Adjacency rows as bitmasks; empty when `n > 64`.
    masks: Vec<u64>,
}

impl Graph {
    /// Builds a graph from an explicit edge list, rejecting loops,
    /// duplicate edges, and out-of-range endpoints.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        if n == 0 {
            return Err(Error::InvalidGraph("order 0 is not supported".into()));
        }
        let mut degree = vec![0usize; n];
        for &(u, v) in edges {
            if u >= n {
                return Err(Error::VertexOutOfRange { vertex: u, n });
            }
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("loop at vertex {u}")));
            }
            degree[u] += 1;
            degree[v] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        let mut acc = 0;
        offsets.push(0);
        for &d in &degree {
            acc += d;
            offsets.push(acc);
        }
        let mut cursor: Vec<usize> = offsets[..n].to_vec();
        let mut flat = vec![0usize; 2 * edges.len()];
        for &(u, v) in edges {
            flat[cursor[u]] = v;
            cursor[u] += 1;
            flat[cursor[v]] = u;
            cursor[v] += 1;
        }
        for v in 0..n {
            let row = &mut flat[offsets[v]..offsets[v + 1]];
            row.sort_unstable();
            if row.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidGraph(format!("duplicate edge at vertex {v}")));
            }
        }
        let masks = if n <= MAX_SET_ORDER {
            (0..n)
                .map(|v| flat[offsets[v]..offsets[v + 1]].iter().fold(0u64, |m, &u| m | 1 << u))
                .collect()
        } else {
            Vec::new()
        };
        Ok(Graph { n, offsets, flat, masks })
    }

    pub fn parse(input: &str, format: GraphFormat) -> Result<Graph> {
        match format {
            GraphFormat::Graph6 => Graph::from_graph6(input),
            GraphFormat::EdgeList => Graph::from_edge_list(input),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.flat.len() / 2
    }

    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    /// Neighbors of `v` in ascending order.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.flat[self.offsets[v]..self.offsets[v + 1]]
    }

    /// Neighborhood of `v` as a bitmask. Panics if `n > 64`; callers below
    /// the bitmask cap check it via [`Graph::has_masks`].
    pub fn neighbor_mask(&self, v: usize) -> VertexSet {
        VertexSet(self.masks[v])
    }

    pub fn has_masks(&self) -> bool {
        !self.masks.is_empty()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        if self.has_masks() {
            u != v && self.masks[u] >> v & 1 == 1
        } else {
            self.neighbors(u).binary_search(&v).is_ok()
        }
    }

    /// Edges as `(u, v)` pairs with `u < v`, lexicographically sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for &v in self.neighbors(u) {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Vertex sets of the connected components, each sorted, ordered by
    /// their minimum vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut head = 0;
            while head < comp.len() {
                let u = comp[head];
                head += 1;
                for &w in self.neighbors(u) {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// True iff removing `v` disconnects the graph; `false` for orders 1
    /// and 2 by convention.
    pub fn is_cutvertex(&self, v: usize) -> Result<bool> {
        if v >= self.n {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
        }
        if self.n == 1 {
            return Ok(false);
        }
        Ok(self.delete_vertex(v)?.components().len() > 1)
    }

    /// The graph on `n - 1` vertices obtained by removing `v`; remaining
    /// vertices are relabeled downward preserving their relative order.
    pub fn delete_vertex(&self, v: usize) -> Result<Graph> {
        if v >= self.n {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
        }
        if self.n == 1 {
            return Err(Error::OrderTooSmall { n: 1, min: 2, what: "delete_vertex" });
        }
        let relabel = |u: usize| if u > v { u - 1 } else { u };
        let edges: Vec<(usize, usize)> = self
            .edges()
            .into_iter()
            .filter(|&(a, b)| a != v && b != v)
            .map(|(a, b)| (relabel(a), relabel(b)))
            .collect();
        Graph::new(self.n - 1, &edges)
    }

    /// All-pairs hop distances via one BFS per vertex.
    pub fn distance_matrix(&self) -> DistanceMatrix {
        let n = self.n;
        let mut d = vec![DistanceMatrix::INF; n * n];
        let mut queue = Vec::with_capacity(n);
        for s in 0..n {
            let row = &mut d[s * n..(s + 1) * n];
            row[s] = 0;
            queue.clear();
            queue.push(s);
            let mut head = 0;
            while head < queue.len() {
                let u = queue[head];
                head += 1;
                let du = row[u];
                for &w in self.neighbors(u) {
                    if row[w] == DistanceMatrix::INF {
                        row[w] = du + 1;
                        queue.push(w);
                    }
                }
            }
        }
        DistanceMatrix { n, d }
    }

    /// A shortest path realizing the diameter, chosen deterministically:
    /// among all pairs at maximum distance the lexicographically least
    /// `(v0, vl)` with `v0 < vl` wins, and among shortest `v0`–`vl` paths
    /// ties are broken toward the lowest-indexed predecessor.
    ///
    /// Order-1 graphs yield the single-vertex path of length 0.
    pub fn diametral_path(&self) -> Result<PathWitness> {
        if self.n == 1 {
            return Ok(PathWitness { vertices: vec![0] });
        }
        let dm = self.distance_matrix();
        let diam = dm.diameter().ok_or(Error::Disconnected)?;
        let (mut v0, mut vl) = (usize::MAX, usize::MAX);
        'outer: for u in 0..self.n {
            for v in u + 1..self.n {
                if dm.get(u, v) == Some(diam) {
                    (v0, vl) = (u, v);
                    break 'outer;
                }
            }
        }
        debug_assert!(v0 < vl);
        let mut vertices = vec![vl];
        let mut cur = vl;
        while cur != v0 {
            let dc = dm.get(v0, cur).unwrap();
            let prev = self
                .neighbors(cur)
                .iter()
                .copied()
                .find(|&w| dm.get(v0, w) == Some(dc - 1))
                .expect("BFS predecessor exists on a shortest path");
            vertices.push(prev);
            cur = prev;
        }
        vertices.reverse();
        let witness = PathWitness { vertices };
        debug_assert_eq!(witness.length(), diam as usize);
        Ok(witness)
    }

    // ----- named constructors used across tests, scans, and benches -----

    /// Path `0 - 1 - ... - n-1`.
    pub fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Graph::new(n, &edges).expect("valid path")
    }

    /// Cycle on `n >= 3` vertices.
    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "cycle needs order >= 3");
        let mut edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        edges.push((0, n - 1));
        Graph::new(n, &edges).expect("valid cycle")
    }

    /// Complete graph on `n` vertices.
    pub fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::new(n, &edges).expect("valid complete graph")
    }

    /// Star with center 0 and `n - 1` leaves.
    pub fn star(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|v| (0, v)).collect();
        Graph::new(n, &edges).expect("valid star")
    }

    // ----- graph6 -----

    /// Parses a short-form graph6 string (order at most 62).
    pub fn from_graph6(s: &str) -> Result<Graph> {
        let bytes = s.as_bytes();
        if bytes.is_empty() {
            return Err(parse_err(0, "empty graph6 input"));
        }
        let b0 = bytes[0];
        if b0 == 126 {
            return Err(parse_err(0, "long-form graph6 (order > 62) is not supported"));
        }
        if !(63..126).contains(&b0) {
            return Err(parse_err(0, format!("header byte {b0} outside 63..=125")));
        }
        let n = (b0 - 63) as usize;
        if n == 0 {
            return Err(parse_err(0, "graph of order 0 is not supported"));
        }
        let nbits = n * (n - 1) / 2;
        let nbytes = nbits.div_ceil(6);
        if bytes.len() < 1 + nbytes {
            return Err(parse_err(
                bytes.len(),
                format!("truncated graph6: order {n} needs {nbytes} data bytes"),
            ));
        }
        if bytes.len() > 1 + nbytes {
            return Err(parse_err(1 + nbytes, "trailing data after graph6 payload"));
        }
        let bit_at = |k: usize| -> Result<bool> {
            let byte = bytes[1 + k / 6];
            if !(63..=126).contains(&byte) {
                return Err(parse_err(1 + k / 6, format!("data byte {byte} outside 63..=126")));
            }
            Ok((byte - 63) >> (5 - k % 6) & 1 == 1)
        };
        let mut edges = Vec::new();
        let mut k = 0;
        for j in 1..n {
            for i in 0..j {
                if bit_at(k)? {
                    edges.push((i, j));
                }
                k += 1;
            }
        }
        for pad in nbits..nbytes * 6 {
            if bit_at(pad)? {
                return Err(parse_err(1 + pad / 6, "nonzero padding bits"));
            }
        }
        Graph::new(n, &edges)
    }

    /// Serializes to short-form graph6; requires order at most 62.
    pub fn to_graph6(&self) -> Result<String> {
        if self.n > MAX_GRAPH6_ORDER {
            return Err(Error::TooLarge {
                n: self.n,
                max: MAX_GRAPH6_ORDER,
                what: "graph6 serialization",
            });
        }
        let nbits = self.n * (self.n - 1) / 2;
        let mut bytes = vec![63 + self.n as u8];
        bytes.resize(1 + nbits.div_ceil(6), 63);
        let mut k = 0;
        for j in 1..self.n {
            for i in 0..j {
                if self.has_edge(i, j) {
                    bytes[1 + k / 6] += 1 << (5 - k % 6);
                }
                k += 1;
            }
        }
        Ok(String::from_utf8(bytes).expect("graph6 bytes are printable ASCII"))
    }

    // ----- edge list -----

    /// Parses the plain text format: first line is the order `n`, each
    /// following non-empty line is one edge `u v` with 0-indexed endpoints.
    pub fn from_edge_list(text: &str) -> Result<Graph> {
        let mut lines = lines_with_offsets(text);
        let (header_off, header) = loop {
            match lines.next() {
                Some((off, line)) => {
                    let toks = tokens_with_offsets(off, line);
                    if toks.is_empty() {
                        continue;
                    }
                    if toks.len() > 1 {
                        return Err(parse_err(
                            toks[1].0,
                            "expected a single order on the first line",
                        ));
                    }
                    break toks[0];
                }
                None => return Err(parse_err(text.len(), "missing order line")),
            }
        };
        let n: usize = header
            .parse()
            .map_err(|_| parse_err(header_off, format!("invalid order `{header}`")))?;
        if n == 0 {
            return Err(parse_err(header_off, "graph of order 0 is not supported"));
        }
        if n > MAX_EDGE_LIST_ORDER {
            return Err(Error::TooLarge { n, max: MAX_EDGE_LIST_ORDER, what: "edge-list order" });
        }
        let mut edges: Vec<(usize, usize)> = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for (off, line) in lines {
            let toks = tokens_with_offsets(off, line);
            if toks.is_empty() {
                continue;
            }
            if toks.len() != 2 {
                return Err(parse_err(off, "expected an edge line `u v`"));
            }
            let mut ends = [0usize; 2];
            for (slot, &(toff, tok)) in ends.iter_mut().zip(&toks) {
                let x: usize =
                    tok.parse().map_err(|_| parse_err(toff, format!("invalid vertex `{tok}`")))?;
                if x >= n {
                    return Err(parse_err(toff, format!("vertex {x} out of range for order {n}")));
                }
                *slot = x;
            }
            let [u, v] = ends;
            if u == v {
                return Err(parse_err(off, format!("loop at vertex {u}")));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(parse_err(off, format!("duplicate edge {u} {v}")));
            }
            edges.push((u, v));
        }
        Graph::new(n, &edges)
    }

    /// Serializes to the edge-list format with edges sorted.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{}\n", self.n);
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

fn parse_err(offset: usize, reason: impl Into<String>) -> Error {
    Error::Parse { offset, reason: reason.into() }
}

fn lines_with_offsets(text: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut offset = 0;
    text.split_inclusive('\n').map(move |raw| {
        let start = offset;
        offset += raw.len();
        (start, raw.trim_end_matches(['\n', '\r']))
    })
}

fn tokens_with_offsets(line_offset: usize, line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut it = line.char_indices().peekable();
    while let Some(&(i, c)) = it.peek() {
        if c.is_whitespace() {
            it.next();
            continue;
        }
        let start = i;
        let mut end = line.len();
        while let Some(&(j, c)) = it.peek() {
            if c.is_whitespace() {
                end = j;
                break;
            }
            it.next();
        }
        out.push((line_offset + start, &line[start..end]));
    }
    out
}

/// All-pairs hop distances; unreachable pairs read back as `None`.
pub struct DistanceMatrix {
    n: usize,
    d: Vec<u32>,
}

impl DistanceMatrix {
    const INF: u32 = u32::MAX;

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, u: usize, v: usize) -> Option<u32> {
        let x = self.d[u * self.n + v];
        (x != Self::INF).then_some(x)
    }

    /// Maximum finite distance; `None` when some pair is unreachable.
    pub fn diameter(&self) -> Option<u32> {
        let mut best = 0;
        for &x in &self.d {
            if x == Self::INF {
                return None;
            }
            best = best.max(x);
        }
        Some(best)
    }

    /// Distance from `v` to the nearest member of `set` (graphs of order
    /// at most 64); `None` when `set` is empty or unreachable.
    pub fn to_set(&self, v: usize, set: VertexSet) -> Option<u32> {
        set.iter().filter_map(|s| self.get(v, s)).min()
    }
}

/// A concrete shortest path `v0, v1, ..., vl` realizing the diameter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathWitness {
    vertices: Vec<usize>,
}

impl PathWitness {
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn v0(&self) -> usize {
        self.vertices[0]
    }

    pub fn v_last(&self) -> usize {
        *self.vertices.last().unwrap()
    }

    /// Number of edges (the diameter).
    pub fn length(&self) -> usize {
        self.vertices.len() - 1
    }

    /// Path vertices as a bitmask; requires order at most 64.
    pub fn mask(&self) -> VertexSet {
        self.vertices.iter().copied().collect()
    }
}
