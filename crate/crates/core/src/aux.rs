//! The auxiliary two-coloured digraph on connected sets.
//!
//! Fix a diametral path `P = v0 v1 … vℓ`. Every connected set `S` grows by
//! one vertex along a red edge (unless `v0 ∈ S`) and along a blue edge
//! (unless `vℓ ∈ S`):
//!
//! * far rule, `d(S, P) ≥ 2`: pick one vertex `x` with `d(x, S) = 1` and
//!   `d(x, P) = d(S, P) − 1`; both colours point to `S ∪ {x}`;
//! * near rule, `d(S, P) ≤ 1`: red adds `v_i` for the minimal `i` with
//!   `d(v_i, S) = 1`, blue adds `v_j` for the maximal such `j`.
//!
//! Each colour class then forms a disjoint union of directed paths; the
//! start of a path is a "top" of that colour, and the final set on a red
//! (blue) path is exactly one containing `v0` (`vℓ`). Average path lengths
//! per colour tie the counts `N(G; v0)`, `N(G; vℓ)` to `N(G)`, and the
//! verifiers in this module re-derive every structural fact and bound in
//! that argument on a concrete graph, in exact arithmetic.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num::rational::BigRational;
use num::BigUint;

use crate::connected::{self, enumerate_connected_sets};
use crate::error::{Error, Result};
use crate::graph::{Graph, PathWitness, VertexSet};
use crate::ratio::{ratio, ratio_usize};

/// Hard cap: the digraph has `N(G)` nodes, exponential in `n`.
pub const DEFAULT_MAX_ORDER: usize = 24;

/// Picks the far-rule vertex for a set: given the graph, the set, and the
/// sorted list of admissible vertices, returns the chosen one.
pub type FarSelector<'a> = &'a dyn Fn(&Graph, VertexSet, &[usize]) -> usize;

/// Build options. The default build is strict (regime `2 ≤ ℓ ≤ n − 2`
/// enforced) and picks the lowest-index admissible far vertex.
#[derive(Default)]
pub struct AuxOptions<'a> {
    /// Skip the regime check so paths and complete graphs can be built for
    /// structural unit tests. Claim verification still refuses them.
    pub relaxed: bool,
    /// Override of [`DEFAULT_MAX_ORDER`] (`None` keeps the default).
    pub max_order: Option<usize>,
    /// Override of the far-rule choice; the returned vertex must be one of
    /// the admissible candidates.
    pub far_selector: Option<FarSelector<'a>>,
}

/// Edge colour of the auxiliary digraph.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub enum Color {
    Red,
    Blue,
}

impl std::fmt::Display for Color {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Color::Red => "red",
            Color::Blue => "blue",
        })
    }
}

/// Position of a top's set relative to the fixed path.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TopClass {
    /// Disjoint from the path.
    High,
    /// Contained in the path.
    Low,
    /// Meets both the path and its complement.
    Normal,
}

/// A pair (set, colour) whose node has no incoming edge of that colour,
/// together with the derived classification data.
#[derive(Clone, Debug)]
pub struct Top {
    pub set: VertexSet,
    pub color: Color,
    /// Number of edges on the monochromatic path starting here.
    pub length: u64,
    pub class: TopClass,
    /// Off-path part of the set (normal tops only).
    pub residue: Option<VertexSet>,
    /// Path vertices of the set strictly between the residue's span
    /// (normal tops only).
    pub interior: Option<VertexSet>,
    /// First set at distance 1 from the path on this top's walk (high tops
    /// only; the walk is colour-independent until then).
    pub extension: Option<VertexSet>,
    /// `(i_X, j_X)`: minimal and maximal path indices adjacent to `X`,
    /// where `X` is the residue (normal) or the extension (high).
    pub span: Option<(usize, usize)>,
}

/// One (residue, interior) bucket of normal tops.
#[derive(Clone, Debug)]
pub struct XyBucket {
    pub residue: VertexSet,
    pub interior: VertexSet,
    pub i_x: usize,
    pub j_x: usize,
    pub count: u64,
    pub total_length: u64,
}

impl XyBucket {
    pub fn mu(&self) -> BigRational {
        ratio(&BigUint::from(self.total_length), &BigUint::from(self.count))
    }
}

/// Exact average path lengths over the tops, globally, per colour, per
/// class, and per (residue, interior) bucket.
#[derive(Clone, Debug)]
pub struct MuReport {
    pub top_count: u64,
    pub red_count: u64,
    pub blue_count: u64,
    pub high_count: u64,
    pub low_count: u64,
    pub normal_count: u64,
    pub mu_all: BigRational,
    pub mu_red: BigRational,
    pub mu_blue: BigRational,
    pub mu_high: Option<BigRational>,
    pub mu_low: Option<BigRational>,
    pub mu_normal: Option<BigRational>,
    /// Keyed by (residue bits, interior bits).
    pub buckets: BTreeMap<(u64, u64), XyBucket>,
}

/// Counts and per-colour averages established by structural verification.
#[derive(Clone, Debug)]
pub struct StructuralReport {
    pub node_count: u64,
    pub red_paths: u64,
    pub blue_paths: u64,
    pub red_edges: u64,
    pub blue_edges: u64,
    pub mu_red: BigRational,
    pub mu_blue: BigRational,
}

/// Summary of a successful claim verification.
#[derive(Clone, Debug)]
pub struct ClaimReport {
    /// Connected sets meeting the path, each checked against the top
    /// characterization in both colours.
    pub meeting_path_sets: u64,
    /// Connected sets disjoint from the path, each checked for red/blue
    /// top symmetry.
    pub off_path_sets: u64,
    /// Nonempty (residue, interior) buckets checked for the average bound.
    pub xy_buckets: u64,
    /// Connected sets at distance 1 from the path (each the extension of
    /// exactly one red and one blue high top).
    pub extension_sets: u64,
    pub mu_all: BigRational,
    /// `(n − 1)/2`; the global average is strictly below it.
    pub strict_bound: BigRational,
}

/// The non-cutvertex guaranteed to hit `N(G; v) ≥ 2 N(G)/(n + 1)`.
#[derive(Clone, Debug)]
pub struct TopsWitness {
    pub vertex: usize,
    /// `N(G; vertex)`.
    pub count: BigUint,
    /// `N(G)`.
    pub node_count: BigUint,
    /// `2 N(G)/(n + 1)`.
    pub bound: BigRational,
    /// `N(G; vertex)/N(G)`.
    pub ratio: BigRational,
    /// True exactly when `count` equals the bound (paths at endpoints).
    pub equality: bool,
}

impl TopsWitness {
    pub fn strict(&self) -> bool {
        !self.equality
    }
}

const NO_SUCC: u32 = u32::MAX;

impl std::fmt::Debug for AuxDigraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("AuxDigraph")
            .field("n", &self.graph.n())
            .field("path", &self.path.vertices())
            .field("nodes", &self.nodes.len())
            .field("relaxed", &self.relaxed)
            .finish()
    }
}

/// The auxiliary digraph of a fixed graph and diametral path.
pub struct AuxDigraph {
    graph: Graph,
    path: PathWitness,
    /// `min_p d(v, p)` over path vertices `p`.
    dist_to_path: Vec<u32>,
    /// All connected sets, ascending by bitmask; indices are node ids.
    nodes: Vec<VertexSet>,
    red_succ: Vec<u32>,
    blue_succ: Vec<u32>,
    /// Far-rule vertex, recorded iff `d(S, P) ≥ 2`.
    chosen_far: Vec<Option<u8>>,
    relaxed: bool,
}

/// Builds the digraph (see [`AuxDigraph::build`]).
pub fn build_aux_digraph(g: &Graph, options: &AuxOptions) -> Result<AuxDigraph> {
    AuxDigraph::build(g, options)
}

impl AuxDigraph {
    pub fn build(g: &Graph, options: &AuxOptions) -> Result<AuxDigraph> {
        let n = g.n();
        let max_order = options.max_order.unwrap_or(DEFAULT_MAX_ORDER);
        if n > max_order {
            return Err(Error::TooLarge { n, max: max_order, what: "auxiliary digraph" });
        }
        if !g.is_connected() {
            return Err(Error::Disconnected);
        }
        let path = g.diametral_path()?;
        let ell = path.length();
        if !options.relaxed && !(2..=n.saturating_sub(2)).contains(&ell) {
            return Err(Error::OutOfRegime { diameter: ell, n });
        }
        let dist = g.distance_matrix();
        let dist_to_path: Vec<u32> = (0..n)
            .map(|v| {
                path.vertices()
                    .iter()
                    .map(|&p| dist.get(v, p).expect("connected"))
                    .min()
                    .expect("path nonempty")
            })
            .collect();

        let mut nodes: Vec<VertexSet> = enumerate_connected_sets(g)?.collect();
        nodes.sort_unstable_by_key(|s| s.bits());
        let index: BTreeMap<u64, u32> =
            nodes.iter().enumerate().map(|(i, s)| (s.bits(), i as u32)).collect();

        let v0 = path.v0();
        let vl = path.v_last();
        let mut red_succ = vec![NO_SUCC; nodes.len()];
        let mut blue_succ = vec![NO_SUCC; nodes.len()];
        let mut chosen_far = vec![None; nodes.len()];

        for (id, &set) in nodes.iter().enumerate() {
            let d_sp = set.iter().map(|v| dist_to_path[v]).min().expect("nonempty");
            if d_sp >= 2 {
                let candidates: Vec<usize> = (0..n)
                    .filter(|&x| {
                        !set.contains(x)
                            && set.iter().any(|s| g.has_edge(s, x))
                            && dist_to_path[x] == d_sp - 1
                    })
                    .collect();
                debug_assert!(!candidates.is_empty(), "a shortest path to P supplies one");
                let x = match options.far_selector {
                    Some(pick) => {
                        let x = pick(g, set, &candidates);
                        if !candidates.contains(&x) {
                            return Err(Error::AuxViolation {
                                rule: "far-selector",
                                set,
                                detail: format!(
                                    "selector chose {x}, admissible candidates are {candidates:?}"
                                ),
                            });
                        }
                        x
                    }
                    None => candidates[0],
                };
                let succ = index[&set.insert(x).bits()];
                red_succ[id] = succ;
                blue_succ[id] = succ;
                chosen_far[id] = Some(x as u8);
            } else {
                if !set.contains(v0) {
                    let i = path
                        .vertices()
                        .iter()
                        .find(|&&p| !set.contains(p) && set.iter().any(|s| g.has_edge(s, p)))
                        .expect("a path vertex at distance 1 exists");
                    red_succ[id] = index[&set.insert(*i).bits()];
                }
                if !set.contains(vl) {
                    let j = path
                        .vertices()
                        .iter()
                        .rev()
                        .find(|&&p| !set.contains(p) && set.iter().any(|s| g.has_edge(s, p)))
                        .expect("a path vertex at distance 1 exists");
                    blue_succ[id] = index[&set.insert(*j).bits()];
                }
            }
        }

        Ok(AuxDigraph {
            graph: g.clone(),
            path,
            dist_to_path,
            nodes,
            red_succ,
            blue_succ,
            chosen_far,
            relaxed: options.relaxed,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn path(&self) -> &PathWitness {
        &self.path
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// All nodes, ascending by bitmask.
    pub fn nodes(&self) -> &[VertexSet] {
        &self.nodes
    }

    fn node_id(&self, set: VertexSet) -> Result<usize> {
        self.nodes
            .binary_search_by_key(&set.bits(), |s| s.bits())
            .map_err(|_| Error::InvalidGraph(format!("{set} is not a connected set")))
    }

    fn succ(&self, color: Color, id: usize) -> Option<usize> {
        let s = match color {
            Color::Red => self.red_succ[id],
            Color::Blue => self.blue_succ[id],
        };
        (s != NO_SUCC).then_some(s as usize)
    }

    pub fn red_successor(&self, set: VertexSet) -> Result<Option<VertexSet>> {
        Ok(self.succ(Color::Red, self.node_id(set)?).map(|t| self.nodes[t]))
    }

    pub fn blue_successor(&self, set: VertexSet) -> Result<Option<VertexSet>> {
        Ok(self.succ(Color::Blue, self.node_id(set)?).map(|t| self.nodes[t]))
    }

    /// The far-rule vertex recorded for a set, if the far rule applied.
    pub fn chosen_far_vertex(&self, set: VertexSet) -> Result<Option<usize>> {
        Ok(self.chosen_far[self.node_id(set)?].map(usize::from))
    }

    fn dist_set_to_path(&self, set: VertexSet) -> u32 {
        set.iter().map(|v| self.dist_to_path[v]).min().expect("nonempty")
    }

    /// Fault injection for verifier tests: reroute or delete a coloured
    /// edge. `to` must be an existing node.
    pub fn override_successor(
        &mut self,
        color: Color,
        from: VertexSet,
        to: Option<VertexSet>,
    ) -> Result<()> {
        let from = self.node_id(from)?;
        let id = match to {
            Some(t) => self.node_id(t)? as u32,
            None => NO_SUCC,
        };
        match color {
            Color::Red => self.red_succ[from] = id,
            Color::Blue => self.blue_succ[from] = id,
        }
        Ok(())
    }

    /// Fault injection for verifier tests: rewrite the recorded far vertex.
    pub fn override_chosen_far(&mut self, from: VertexSet, x: Option<usize>) -> Result<()> {
        let from = self.node_id(from)?;
        self.chosen_far[from] = match x {
            Some(v) => {
                if v >= self.graph.n() {
                    return Err(Error::VertexOutOfRange { vertex: v, n: self.graph.n() });
                }
                Some(v as u8)
            }
            None => None,
        };
        Ok(())
    }

    fn in_degrees(&self, color: Color) -> Vec<u32> {
        let mut deg = vec![0u32; self.nodes.len()];
        for id in 0..self.nodes.len() {
            if let Some(t) = self.succ(color, id) {
                deg[t] += 1;
            }
        }
        deg
    }

    fn violation(&self, rule: &'static str, set: VertexSet, detail: String) -> Error {
        Error::AuxViolation { rule, set, detail }
    }

    /// Checks every structural invariant of the construction: node-set
    /// completeness, the out-degree and in-degree rules, rule conformance
    /// of every edge (including the recorded far vertex and the extremal
    /// choice of path index), the partition of each colour class into
    /// directed paths, and the path-count accounting that yields
    /// `μ_red = N(G)/N(G; v0) − 1` (symmetrically for blue).
    pub fn verify_structure(&self) -> Result<StructuralReport> {
        let g = &self.graph;
        let v0 = self.path.v0();
        let vl = self.path.v_last();

        // Node set is exactly the connected sets, sorted, no duplicates.
        let mut expect: Vec<VertexSet> = enumerate_connected_sets(g)?.collect();
        expect.sort_unstable_by_key(|s| s.bits());
        if expect.len() != self.nodes.len()
            || expect.iter().zip(&self.nodes).any(|(a, b)| a.bits() != b.bits())
        {
            return Err(self.violation(
                "node-set",
                VertexSet::full(g.n()),
                format!(
                    "digraph has {} nodes, the graph has {} connected sets",
                    self.nodes.len(),
                    expect.len()
                ),
            ));
        }

        for (id, &set) in self.nodes.iter().enumerate() {
            let d_sp = self.dist_set_to_path(set);
            for (color, endpoint) in [(Color::Red, v0), (Color::Blue, vl)] {
                let succ = self.succ(color, id);
                if set.contains(endpoint) {
                    if succ.is_some() {
                        return Err(self.violation(
                            "out-degree",
                            set,
                            format!("{color} edge leaves a set already holding vertex {endpoint}"),
                        ));
                    }
                    continue;
                }
                let Some(t) = succ else {
                    return Err(self.violation(
                        "out-degree",
                        set,
                        format!("missing {color} edge (vertex {endpoint} not in the set)"),
                    ));
                };
                let target = self.nodes[t];
                if !set.is_subset_of(target) || target.len() != set.len() + 1 {
                    return Err(self.violation(
                        "successor-shape",
                        set,
                        format!("{color} successor {target} is not the set plus one vertex"),
                    ));
                }
                let added = (target - set).min_vertex().expect("one added vertex");
                if d_sp >= 2 {
                    let Some(x) = self.chosen_far[id] else {
                        return Err(self.violation(
                            "far-record",
                            set,
                            "far set has no recorded chosen vertex".into(),
                        ));
                    };
                    let x = usize::from(x);
                    if added != x {
                        return Err(self.violation(
                            "far-edge",
                            set,
                            format!("{color} edge adds {added}, recorded far vertex is {x}"),
                        ));
                    }
                    let adjacent = set.iter().any(|s| g.has_edge(s, x));
                    if set.contains(x) || !adjacent || self.dist_to_path[x] != d_sp - 1 {
                        return Err(self.violation(
                            "far-vertex",
                            set,
                            format!(
                                "chosen vertex {x} violates d(x,S)=1, d(x,P)=d(S,P)-1 \
                                 (d(S,P)={d_sp})"
                            ),
                        ));
                    }
                } else {
                    if self.chosen_far[id].is_some() {
                        return Err(self.violation(
                            "far-record",
                            set,
                            format!("near set (d(S,P)={d_sp}) carries a far-vertex record"),
                        ));
                    }
                    // The added vertex must be the extremal path vertex at
                    // distance 1: minimal index for red, maximal for blue.
                    let mut eligible = self
                        .path
                        .vertices()
                        .iter()
                        .copied()
                        .filter(|&p| !set.contains(p) && set.iter().any(|s| g.has_edge(s, p)));
                    let want = match color {
                        Color::Red => eligible.next(),
                        Color::Blue => eligible.next_back(),
                    };
                    if want != Some(added) {
                        return Err(self.violation(
                            "near-edge",
                            set,
                            format!(
                                "{color} edge adds {added}, the extremal eligible path vertex \
                                 is {want:?}"
                            ),
                        ));
                    }
                }
            }
        }

        // In-degree at most one per colour, so each colour class is a
        // disjoint union of directed paths (sets only grow, so no cycles).
        for color in [Color::Red, Color::Blue] {
            for (id, &d) in self.in_degrees(color).iter().enumerate() {
                if d > 1 {
                    return Err(self.violation(
                        "in-degree",
                        self.nodes[id],
                        format!("{d} incoming {color} edges"),
                    ));
                }
            }
        }

        let (red_paths, red_edges) = self.color_path_accounting(Color::Red, v0)?;
        let (blue_paths, blue_edges) = self.color_path_accounting(Color::Blue, vl)?;

        let n_v0 = self.nodes.iter().filter(|s| s.contains(v0)).count() as u64;
        let n_vl = self.nodes.iter().filter(|s| s.contains(vl)).count() as u64;
        let total = self.nodes.len() as u64;
        for (color, paths, edges, count) in
            [(Color::Red, red_paths, red_edges, n_v0), (Color::Blue, blue_paths, blue_edges, n_vl)]
        {
            if paths != count || paths + edges != total {
                return Err(self.violation(
                    "path-accounting",
                    VertexSet::full(g.n()),
                    format!(
                        "{color}: {paths} paths, {edges} edges, {count} sets hold the endpoint, \
                         {total} nodes"
                    ),
                ));
            }
        }

        Ok(StructuralReport {
            node_count: total,
            red_paths,
            blue_paths,
            red_edges,
            blue_edges,
            mu_red: ratio(&BigUint::from(red_edges), &BigUint::from(red_paths)),
            mu_blue: ratio(&BigUint::from(blue_edges), &BigUint::from(blue_paths)),
        })
    }

    /// Walks every maximal path of one colour and checks that it ends at —
    /// and only at — a set containing `endpoint`. Returns (paths, edges).
    fn color_path_accounting(&self, color: Color, endpoint: usize) -> Result<(u64, u64)> {
        let incoming = self.in_degrees(color);
        let mut visited = vec![false; self.nodes.len()];
        let mut paths = 0u64;
        let mut edges = 0u64;
        for (start, &indeg) in incoming.iter().enumerate() {
            if indeg > 0 {
                continue;
            }
            paths += 1;
            let mut cur = start;
            loop {
                if visited[cur] {
                    return Err(self.violation(
                        "path-partition",
                        self.nodes[cur],
                        format!("node reached by two {color} walks"),
                    ));
                }
                visited[cur] = true;
                let holds_endpoint = self.nodes[cur].contains(endpoint);
                match self.succ(color, cur) {
                    Some(next) => {
                        if holds_endpoint {
                            return Err(self.violation(
                                "path-endpoint",
                                self.nodes[cur],
                                format!(
                                    "set holds vertex {endpoint} but the {color} walk continues"
                                ),
                            ));
                        }
                        edges += 1;
                        cur = next;
                    }
                    None => {
                        if !holds_endpoint {
                            return Err(self.violation(
                                "path-endpoint",
                                self.nodes[cur],
                                format!("{color} walk ends without vertex {endpoint}"),
                            ));
                        }
                        break;
                    }
                }
            }
        }
        if let Some(missed) = visited.iter().position(|&v| !v) {
            return Err(self.violation(
                "path-partition",
                self.nodes[missed],
                format!("node on no maximal {color} walk"),
            ));
        }
        Ok((paths, edges))
    }

    /// Identifies every top, walks out its path length, classifies it as
    /// high/low/normal, and attaches residue, interior, extension, and
    /// span data. Also assembles the exact average-length report.
    pub fn classify_tops(&self) -> Result<(Vec<Top>, MuReport)> {
        let path_mask = self.path.mask();
        let mut tops = Vec::new();
        for color in [Color::Red, Color::Blue] {
            let incoming = self.in_degrees(color);
            for (id, &set) in self.nodes.iter().enumerate() {
                if incoming[id] > 0 {
                    continue;
                }
                let length = self.walk_length(color, id)?;
                let on_path = set & path_mask;
                let class = if on_path.is_empty() {
                    TopClass::High
                } else if set == on_path {
                    TopClass::Low
                } else {
                    TopClass::Normal
                };
                let mut top = Top {
                    set,
                    color,
                    length,
                    class,
                    residue: None,
                    interior: None,
                    extension: None,
                    span: None,
                };
                match class {
                    TopClass::Normal => {
                        let residue = set - path_mask;
                        let (i_x, j_x) = self.span_of(residue)?;
                        let interior: VertexSet = self
                            .path
                            .vertices()
                            .iter()
                            .enumerate()
                            .filter(|&(k, &p)| k > i_x && k < j_x && set.contains(p))
                            .map(|(_, &p)| p)
                            .collect();
                        top.residue = Some(residue);
                        top.interior = Some(interior);
                        top.span = Some((i_x, j_x));
                    }
                    TopClass::High => {
                        let ext = self.extension_of(color, id)?;
                        top.span = Some(self.span_of(ext)?);
                        top.extension = Some(ext);
                    }
                    TopClass::Low => {}
                }
                tops.push(top);
            }
        }

        let report = self.mu_report(&tops)?;
        Ok((tops, report))
    }

    /// Number of edges on the monochromatic walk starting at `id`.
    fn walk_length(&self, color: Color, id: usize) -> Result<u64> {
        let mut length = 0u64;
        let mut cur = id;
        while let Some(next) = self.succ(color, cur) {
            length += 1;
            if length as usize > self.nodes.len() {
                return Err(self.violation(
                    "walk",
                    self.nodes[id],
                    format!("{color} walk exceeds the node count; digraph is malformed"),
                ));
            }
            cur = next;
        }
        Ok(length)
    }

    /// First set at distance 1 from the path on the walk from a set
    /// disjoint from the path. Far steps are colour-independent, so this
    /// does not depend on the colour for a well-formed digraph; the colour
    /// picks which successor map to follow.
    fn extension_of(&self, color: Color, id: usize) -> Result<VertexSet> {
        let mut cur = id;
        let mut steps = 0usize;
        loop {
            let d = self.dist_set_to_path(self.nodes[cur]);
            if d <= 1 {
                if d == 0 {
                    return Err(self.violation(
                        "extension",
                        self.nodes[id],
                        "walk from an off-path set met the path before distance 1".into(),
                    ));
                }
                return Ok(self.nodes[cur]);
            }
            let Some(next) = self.succ(color, cur) else {
                return Err(self.violation(
                    "extension",
                    self.nodes[cur],
                    format!("far set lacks a {color} successor"),
                ));
            };
            steps += 1;
            if steps > self.nodes.len() {
                return Err(self.violation(
                    "walk",
                    self.nodes[id],
                    "extension walk exceeds the node count".into(),
                ));
            }
            cur = next;
        }
    }

    /// `(i_X, j_X)` for a set `X` at distance 1 from the path: the minimal
    /// and maximal path indices whose vertex has a neighbour in `X`.
    fn span_of(&self, x: VertexSet) -> Result<(usize, usize)> {
        let g = &self.graph;
        let mut indices = self
            .path
            .vertices()
            .iter()
            .enumerate()
            .filter(|&(_, &p)| x.iter().any(|s| g.has_edge(s, p)))
            .map(|(k, _)| k);
        let i_x = indices.next().ok_or_else(|| {
            self.violation("span", x, "no path vertex has a neighbour in the set".into())
        })?;
        let j_x = indices.next_back().unwrap_or(i_x);
        Ok((i_x, j_x))
    }

    fn mu_report(&self, tops: &[Top]) -> Result<MuReport> {
        let mut sums = BTreeMap::<&'static str, (u64, u64)>::new();
        let mut buckets = BTreeMap::<(u64, u64), XyBucket>::new();
        for top in tops {
            let color_key = match top.color {
                Color::Red => "red",
                Color::Blue => "blue",
            };
            let class_key = match top.class {
                TopClass::High => "high",
                TopClass::Low => "low",
                TopClass::Normal => "normal",
            };
            for key in ["all", color_key, class_key] {
                let entry = sums.entry(key).or_insert((0, 0));
                entry.0 += 1;
                entry.1 += top.length;
            }
            if top.class == TopClass::Normal {
                let residue = top.residue.expect("normal top has a residue");
                let interior = top.interior.expect("normal top has an interior");
                let (i_x, j_x) = top.span.expect("normal top has a span");
                let bucket = buckets.entry((residue.bits(), interior.bits())).or_insert(XyBucket {
                    residue,
                    interior,
                    i_x,
                    j_x,
                    count: 0,
                    total_length: 0,
                });
                bucket.count += 1;
                bucket.total_length += top.length;
            }
        }
        let mu_of = |key: &str| -> Option<BigRational> {
            sums.get(key).map(|&(count, total)| ratio(&BigUint::from(total), &BigUint::from(count)))
        };
        let count_of = |key: &str| -> u64 { sums.get(key).map(|&(count, _)| count).unwrap_or(0) };
        let mu_all = mu_of("all").ok_or_else(|| {
            self.violation("tops", VertexSet::full(self.graph.n()), "no tops found".into())
        })?;
        Ok(MuReport {
            top_count: count_of("all"),
            red_count: count_of("red"),
            blue_count: count_of("blue"),
            high_count: count_of("high"),
            low_count: count_of("low"),
            normal_count: count_of("normal"),
            mu_all,
            mu_red: mu_of("red").expect("singletons are red tops"),
            mu_blue: mu_of("blue").expect("singletons are blue tops"),
            mu_high: mu_of("high"),
            mu_low: mu_of("low"),
            mu_normal: mu_of("normal"),
            buckets,
        })
    }

    fn claim_fail(&self, claim: &'static str, detail: String) -> Error {
        Error::ClaimViolation { claim, detail }
    }

    /// Verifies every counting statement and average-length bound that the
    /// digraph construction is designed to deliver, in the regime
    /// `2 ≤ ℓ ≤ n − 2`:
    ///
    /// 1. top characterization for sets meeting the path (both colours);
    /// 2. red/blue top symmetry for sets disjoint from the path;
    /// 3. per-(residue, interior) average bound `ℓ/2` or `(ℓ + 1)/2`;
    /// 4. the four admissible shapes of a normal top's set;
    /// 5. per-residue average bound and the combined high/normal bound
    ///    `(n − 1)/2` via the extension grouping;
    /// 6. extension bijection (each distance-1 connected set serves
    ///    exactly one red and one blue high top) with exact walk lengths
    ///    `d(T, P) + i_X` (red) and `d(T, P) + ℓ − j_X` (blue);
    /// 7. low tops are exactly the path singletons, with lengths `i` and
    ///    `ℓ − i`;
    /// 8. the two-way reconstruction of the global average and the strict
    ///    bound `μ < (n − 1)/2`.
    pub fn verify_claims(&self) -> Result<ClaimReport> {
        let g = &self.graph;
        let n = g.n();
        let ell = self.path.length();
        if !(2..=n.saturating_sub(2)).contains(&ell) {
            return Err(Error::OutOfRegime { diameter: ell, n });
        }
        let path_mask = self.path.mask();
        let path_vertices = self.path.vertices();
        let (tops, mu) = self.classify_tops()?;

        let is_top: BTreeMap<(u64, Color), &Top> =
            tops.iter().map(|t| ((t.set.bits(), t.color), t)).collect();

        // 1. Sets meeting the path: top of a colour iff deleting the
        // extremal path vertex disconnects (or empties) the set, or a more
        // extremal path vertex is adjacent to the remainder.
        let mut meeting = 0u64;
        let mut off_path = 0u64;
        for &set in &self.nodes {
            let on_path = set & path_mask;
            if on_path.is_empty() {
                off_path += 1;
                let red = is_top.contains_key(&(set.bits(), Color::Red));
                let blue = is_top.contains_key(&(set.bits(), Color::Blue));
                if red != blue {
                    return Err(self.claim_fail(
                        "off-path-color-symmetry",
                        format!("{set}: red top = {red}, blue top = {blue}"),
                    ));
                }
                continue;
            }
            meeting += 1;
            for color in [Color::Red, Color::Blue] {
                let positions: Vec<usize> =
                    (0..path_vertices.len()).filter(|&k| set.contains(path_vertices[k])).collect();
                let a = match color {
                    Color::Red => positions[0],
                    Color::Blue => *positions.last().expect("nonempty"),
                };
                let rest = set.remove(path_vertices[a]);
                let rest_disconnected =
                    rest.is_empty() || !crate::connected::is_connected_subset(g, rest);
                let outward_neighbour = match color {
                    Color::Red => {
                        (0..a).any(|i| rest.iter().any(|s| g.has_edge(s, path_vertices[i])))
                    }
                    Color::Blue => {
                        (a + 1..=ell).any(|j| rest.iter().any(|s| g.has_edge(s, path_vertices[j])))
                    }
                };
                let predicted = rest_disconnected || outward_neighbour;
                let actual = is_top.contains_key(&(set.bits(), color));
                if predicted != actual {
                    return Err(self.claim_fail(
                        "top-characterization",
                        format!(
                            "{set} ({color}): characterization predicts {predicted}, \
                             digraph says {actual}"
                        ),
                    ));
                }
            }
        }

        // 3 & 4. Per-(residue, interior) buckets: the average bound and
        // the admissible shapes of every member set.
        let half = |num: usize| ratio_usize(num, 2);
        for bucket in mu.buckets.values() {
            let bound = if bucket.i_x == bucket.j_x { half(ell) } else { half(ell + 1) };
            if bucket.mu() > bound {
                return Err(self.claim_fail(
                    "bucket-average",
                    format!(
                        "residue {} interior {}: mu = {}/{} exceeds {bound}",
                        bucket.residue, bucket.interior, bucket.total_length, bucket.count
                    ),
                ));
            }
        }
        for top in tops.iter().filter(|t| t.class == TopClass::Normal) {
            let (i_x, j_x) = top.span.expect("normal top has a span");
            let left: Vec<usize> =
                (0..=i_x).filter(|&k| top.set.contains(path_vertices[k])).collect();
            let right: Vec<usize> =
                (j_x..=ell).filter(|&k| top.set.contains(path_vertices[k])).collect();
            let left_ok = left.is_empty() || (left[left.len() - 1] == i_x && contiguous(&left));
            let right_ok = right.is_empty() || (right[0] == j_x && contiguous(&right));
            if !left_ok || !right_ok {
                return Err(self.claim_fail(
                    "normal-top-shape",
                    format!(
                        "{} does not split into residue, interior, and intervals \
                         reaching i_X={i_x}, j_X={j_x}",
                        top.set
                    ),
                ));
            }
        }

        // 5 & 6. Group by residue, attach the two high tops per extension,
        // and check the averaged bounds exactly.
        let mut by_residue: BTreeMap<u64, (u64, u64, usize, usize)> = BTreeMap::new();
        for bucket in mu.buckets.values() {
            let entry =
                by_residue.entry(bucket.residue.bits()).or_insert((0, 0, bucket.i_x, bucket.j_x));
            entry.0 += bucket.count;
            entry.1 += bucket.total_length;
        }
        let mut by_extension: BTreeMap<u64, Vec<&Top>> = BTreeMap::new();
        for top in tops.iter().filter(|t| t.class == TopClass::High) {
            by_extension
                .entry(top.extension.expect("high top has an extension").bits())
                .or_default()
                .push(top);
        }
        let distance_one_sets: Vec<VertexSet> =
            self.nodes.iter().copied().filter(|&s| self.dist_set_to_path(s) == 1).collect();
        if by_extension.len() != distance_one_sets.len() {
            return Err(self.claim_fail(
                "extension-coverage",
                format!(
                    "{} extensions but {} connected sets at distance 1",
                    by_extension.len(),
                    distance_one_sets.len()
                ),
            ));
        }
        for &x in &distance_one_sets {
            let Some(pair) = by_extension.get(&x.bits()) else {
                return Err(self.claim_fail(
                    "extension-coverage",
                    format!("{x} is the extension of no high top"),
                ));
            };
            if pair.len() != 2
                || !pair.iter().any(|t| t.color == Color::Red)
                || !pair.iter().any(|t| t.color == Color::Blue)
            {
                return Err(self.claim_fail(
                    "extension-coverage",
                    format!("{x} should serve exactly one red and one blue high top"),
                ));
            }
            let (i_x, j_x) = self.span_of(x)?;
            for top in pair {
                let d_tp = self.dist_set_to_path(top.set) as u64;
                if d_tp > (n - ell - 1) as u64 {
                    return Err(self.claim_fail(
                        "extension-depth",
                        format!(
                            "{}: distance {d_tp} to the path exceeds n-ℓ-1 = {}",
                            top.set,
                            n - ell - 1
                        ),
                    ));
                }
                let (expected, cap) = match top.color {
                    Color::Red => (d_tp + i_x as u64, (n - ell - 1 + i_x) as u64),
                    Color::Blue => (d_tp + (ell - j_x) as u64, (n - 1 - j_x) as u64),
                };
                if top.length != expected || top.length > cap {
                    return Err(self.claim_fail(
                        "high-top-length",
                        format!(
                            "({}, {}): length {} (expected {expected}, cap {cap})",
                            top.set, top.color, top.length
                        ),
                    ));
                }
            }
        }
        // Combined high/normal bound per residue group, then overall.
        let n_minus_1_half = half(n - 1);
        let mut grouped_tops = 0u64;
        for (&x_bits, &(count, total, _i_x, _j_x)) in &by_residue {
            let in_x1 = by_extension.contains_key(&x_bits);
            if in_x1 && count < 2 {
                return Err(self.claim_fail(
                    "residue-multiplicity",
                    format!(
                        "connected residue {} supports only {count} normal tops",
                        VertexSet::from_bits(x_bits)
                    ),
                ));
            }
            let (mut c, mut t) = (count, total);
            if in_x1 {
                for top in &by_extension[&x_bits] {
                    c += 1;
                    t += top.length;
                }
            }
            grouped_tops += c;
            if ratio(&BigUint::from(t), &BigUint::from(c)) > n_minus_1_half {
                return Err(self.claim_fail(
                    "group-average",
                    format!(
                        "residue {} group: mu = {t}/{c} exceeds (n-1)/2",
                        VertexSet::from_bits(x_bits)
                    ),
                ));
            }
        }
        // High tops whose extension is not a residue of any normal top
        // form their own two-element groups.
        for (&x_bits, pair) in &by_extension {
            if by_residue.contains_key(&x_bits) {
                continue;
            }
            grouped_tops += pair.len() as u64;
            let t: u64 = pair.iter().map(|t| t.length).sum();
            if ratio(&BigUint::from(t), &BigUint::from(pair.len() as u64)) > n_minus_1_half {
                return Err(self.claim_fail(
                    "group-average",
                    format!(
                        "extension {} group: mu = {t}/{} exceeds (n-1)/2",
                        VertexSet::from_bits(x_bits),
                        pair.len()
                    ),
                ));
            }
        }
        if grouped_tops != mu.high_count + mu.normal_count {
            return Err(self.claim_fail(
                "group-partition",
                format!(
                    "groups cover {grouped_tops} tops, classes hold {} high + {} normal",
                    mu.high_count, mu.normal_count
                ),
            ));
        }
        if mu.normal_count == 0 {
            return Err(self.claim_fail("normal-nonempty", "no normal tops in regime".into()));
        }
        if mu.high_count < 2 * (n - ell - 1) as u64 {
            return Err(self.claim_fail(
                "high-count",
                format!("{} high tops, at least {} expected", mu.high_count, 2 * (n - ell - 1)),
            ));
        }
        let high_normal_total: u64 =
            tops.iter().filter(|t| t.class != TopClass::Low).map(|t| t.length).sum();
        if ratio(&BigUint::from(high_normal_total), &BigUint::from(mu.high_count + mu.normal_count))
            > n_minus_1_half
        {
            return Err(self.claim_fail(
                "high-normal-average",
                "combined high/normal average exceeds (n-1)/2".into(),
            ));
        }

        // 7. Low tops: exactly the path singletons, with exact lengths.
        if mu.low_count != 2 * (ell as u64 + 1) {
            return Err(self.claim_fail(
                "low-count",
                format!("{} low tops, exactly {} expected", mu.low_count, 2 * (ell + 1)),
            ));
        }
        for (k, &p) in path_vertices.iter().enumerate() {
            let singleton = VertexSet::singleton(p);
            for (color, want) in [(Color::Red, k as u64), (Color::Blue, (ell - k) as u64)] {
                match is_top.get(&(singleton.bits(), color)) {
                    Some(top) if top.length == want => {}
                    Some(top) => {
                        return Err(self.claim_fail(
                            "low-length",
                            format!(
                                "({singleton}, {color}): length {} expected {want}",
                                top.length
                            ),
                        ));
                    }
                    None => {
                        return Err(self.claim_fail(
                            "low-length",
                            format!("({singleton}, {color}) is not a top"),
                        ));
                    }
                }
            }
        }
        let expected_mu_low = half(ell);
        if mu.mu_low.as_ref() != Some(&expected_mu_low) {
            return Err(self.claim_fail(
                "low-average",
                format!("mu over low tops is {:?}, expected {expected_mu_low}", mu.mu_low),
            ));
        }

        // 8. Reconstruction both ways, then the strict global bound.
        let weighted = |parts: &[(u64, Option<&BigRational>)]| -> BigRational {
            let mut num = BigRational::from_integer(0.into());
            let mut den = BigRational::from_integer(0.into());
            for &(count, avg) in parts {
                if count > 0 {
                    let c = BigRational::from_integer(count.into());
                    num += avg.expect("nonempty class has an average") * &c;
                    den += c;
                }
            }
            num / den
        };
        let by_color =
            weighted(&[(mu.red_count, Some(&mu.mu_red)), (mu.blue_count, Some(&mu.mu_blue))]);
        let by_class = weighted(&[
            (mu.high_count, mu.mu_high.as_ref()),
            (mu.normal_count, mu.mu_normal.as_ref()),
            (mu.low_count, mu.mu_low.as_ref()),
        ]);
        if by_color != mu.mu_all || by_class != mu.mu_all {
            return Err(self.claim_fail(
                "reconstruction",
                format!(
                    "global average {} disagrees with colour split {} or class split {}",
                    mu.mu_all, by_color, by_class
                ),
            ));
        }
        if mu.mu_all >= n_minus_1_half {
            return Err(self.claim_fail(
                "strict-global-average",
                format!("mu over all tops is {} ≥ (n-1)/2", mu.mu_all),
            ));
        }

        Ok(ClaimReport {
            meeting_path_sets: meeting,
            off_path_sets: off_path,
            xy_buckets: mu.buckets.len() as u64,
            extension_sets: distance_one_sets.len() as u64,
            mu_all: mu.mu_all,
            strict_bound: n_minus_1_half,
        })
    }

    /// Renders the weakly connected component of `start` as deterministic
    /// text: header, sorted node list, sorted edge list (red before blue
    /// per source, far edges annotated with the recorded vertex).
    pub fn dump_component(&self, start: VertexSet) -> Result<String> {
        let start_id = self.node_id(start)?;
        // Undirected adjacency over both colours.
        let mut neighbours: Vec<Vec<u32>> = vec![Vec::new(); self.nodes.len()];
        for id in 0..self.nodes.len() {
            for color in [Color::Red, Color::Blue] {
                if let Some(t) = self.succ(color, id) {
                    neighbours[id].push(t as u32);
                    neighbours[t].push(id as u32);
                }
            }
        }
        let mut in_component = vec![false; self.nodes.len()];
        let mut queue = std::collections::VecDeque::from([start_id]);
        in_component[start_id] = true;
        while let Some(cur) = queue.pop_front() {
            for &next in &neighbours[cur] {
                if !in_component[next as usize] {
                    in_component[next as usize] = true;
                    queue.push_back(next as usize);
                }
            }
        }
        let members: Vec<usize> = (0..self.nodes.len()).filter(|&i| in_component[i]).collect();
        let mut edges: Vec<(u64, u8, u64, Option<u8>)> = Vec::new();
        for &id in &members {
            for (color, tag) in [(Color::Red, 0u8), (Color::Blue, 1u8)] {
                if let Some(t) = self.succ(color, id) {
                    edges.push((
                        self.nodes[id].bits(),
                        tag,
                        self.nodes[t].bits(),
                        self.chosen_far[id],
                    ));
                }
            }
        }
        edges.sort_unstable();

        let mut out = String::new();
        let path_line =
            self.path.vertices().iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ");
        let _ = writeln!(out, "component of {start}");
        let _ = writeln!(out, "graph: n={} m={}", self.graph.n(), self.graph.edge_count());
        let _ = writeln!(out, "path: {path_line}");
        let _ = writeln!(out, "nodes ({}):", members.len());
        for &id in &members {
            let _ = writeln!(out, "  {}", self.nodes[id]);
        }
        let _ = writeln!(out, "edges ({}):", edges.len());
        for (from, tag, to, far) in edges {
            let arrow = if tag == 0 { "-R->" } else { "-B->" };
            let from = VertexSet::from_bits(from);
            let to = VertexSet::from_bits(to);
            match far {
                Some(x) => {
                    let _ = writeln!(out, "  {from} {arrow} {to} [far x={x}]");
                }
                None => {
                    let _ = writeln!(out, "  {from} {arrow} {to}");
                }
            }
        }
        Ok(out)
    }
}

fn contiguous(sorted: &[usize]) -> bool {
    sorted.windows(2).all(|w| w[1] == w[0] + 1)
}

/// Free-function forms of the verifier entry points.
pub fn verify_structure(digraph: &AuxDigraph) -> Result<StructuralReport> {
    digraph.verify_structure()
}

pub fn classify_tops(digraph: &AuxDigraph) -> Result<(Vec<Top>, MuReport)> {
    digraph.classify_tops()
}

pub fn verify_claims(digraph: &AuxDigraph) -> Result<ClaimReport> {
    digraph.verify_claims()
}

/// Finds a non-cutvertex `v` with `N(G; v) ≥ 2 N(G)/(n + 1)`, with
/// equality exactly for paths (at an endpoint). Complete graphs take any
/// vertex; paths take an endpoint; everything else takes the diametral
/// endpoint with the larger count, which is then strictly above the bound.
pub fn lemma_tops_witness(g: &Graph) -> Result<TopsWitness> {
    let n = g.n();
    if n < 3 {
        return Err(Error::OrderTooSmall { n, min: 3, what: "witness search" });
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let path = g.diametral_path()?;
    let ell = path.length();
    let vertex = if ell == 1 {
        0
    } else if ell == n - 1 {
        path.v0()
    } else {
        let c0 = connected::local_stats(g, path.v0())?;
        let cl = connected::local_stats(g, path.v_last())?;
        if cl.count > c0.count {
            path.v_last()
        } else {
            path.v0()
        }
    };
    if g.is_cutvertex(vertex)? {
        return Err(Error::InvalidGraph(format!("witness vertex {vertex} is a cutvertex")));
    }
    let local = connected::local_stats(g, vertex)?;
    let total = connected::stats(g)?.count;
    let bound = ratio(&(BigUint::from(2u32) * &total), &BigUint::from(n + 1));
    let value = BigRational::from_integer(local.count.clone().into());
    if value < bound {
        return Err(Error::ClaimViolation {
            claim: "witness-bound",
            detail: format!("N(G;{vertex}) = {} below 2N(G)/(n+1) = {bound}", local.count),
        });
    }
    let equality = value == bound;
    let is_path = ell == n - 1;
    if equality != is_path {
        return Err(Error::ClaimViolation {
            claim: "witness-equality",
            detail: format!(
                "equality holds = {equality}, graph is a path = {is_path} (N(G;{vertex}) = {}, \
                 bound = {bound})",
                local.count
            ),
        });
    }
    Ok(TopsWitness {
        vertex,
        ratio: ratio(&local.count, &total),
        count: local.count,
        node_count: total,
        bound,
        equality,
    })
}

/// Free-function form of [`AuxDigraph::dump_component`].
pub fn dump_component(digraph: &AuxDigraph, start: VertexSet) -> Result<String> {
    digraph.dump_component(start)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::fig1;

    fn build(g: &Graph) -> AuxDigraph {
        AuxDigraph::build(g, &AuxOptions::default()).unwrap()
    }

    fn build_relaxed(g: &Graph) -> AuxDigraph {
        AuxDigraph::build(g, &AuxOptions { relaxed: true, ..AuxOptions::default() }).unwrap()
    }

    fn set(vs: &[usize]) -> VertexSet {
        vs.iter().copied().collect()
    }

    #[test]
    fn regime_is_enforced_unless_relaxed() {
        // Paths have diameter n-1, complete graphs diameter 1.
        for g in [Graph::path(4), Graph::complete(4), Graph::path(3)] {
            match AuxDigraph::build(&g, &AuxOptions::default()) {
                Err(Error::OutOfRegime { .. }) => {}
                other => panic!("expected regime error, got {other:?}"),
            }
            build_relaxed(&g);
        }
        build(&Graph::cycle(4));
        build(&Graph::star(4));
    }

    #[test]
    fn relaxed_path_has_the_expected_red_paths() {
        // P3: red walks are {0}; {1}->{0,1}; {2}->{1,2}->{0,1,2}.
        let d = build_relaxed(&Graph::path(3));
        let report = d.verify_structure().unwrap();
        assert_eq!(report.node_count, 6);
        assert_eq!(report.red_paths, 3);
        assert_eq!(report.red_edges, 3);
        assert_eq!(report.mu_red, ratio_usize(1, 1));
        assert_eq!(d.red_successor(set(&[1])).unwrap(), Some(set(&[0, 1])));
        assert_eq!(d.red_successor(set(&[2])).unwrap(), Some(set(&[1, 2])));
        assert_eq!(d.red_successor(set(&[1, 2])).unwrap(), Some(set(&[0, 1, 2])));
        assert_eq!(d.red_successor(set(&[0])).unwrap(), None);
        assert_eq!(d.blue_successor(set(&[1])).unwrap(), Some(set(&[1, 2])));
    }

    #[test]
    fn star_near_rule_adds_the_minimal_path_vertex() {
        // K_{1,3} = center 0, leaves 1..3; diametral path is leaf-center-leaf.
        let g = Graph::star(4);
        let d = build(&g);
        let path = d.path().vertices().to_vec();
        assert_eq!(path.len(), 3);
        assert_eq!(path[1], 0, "center is the middle vertex");
        // The leaf off the path grows toward the center first (the only
        // path vertex at distance 1), in both colours.
        let leaf = (1..4).find(|&v| !path.contains(&v)).unwrap();
        let s = set(&[leaf]);
        assert_eq!(d.red_successor(s).unwrap(), Some(set(&[0, leaf])));
        assert_eq!(d.blue_successor(s).unwrap(), Some(set(&[0, leaf])));
        // From {leaf, center}: red adds the left end, blue the right end.
        let s = set(&[0, leaf]);
        assert_eq!(d.red_successor(s).unwrap(), Some(set(&[0, leaf, path[0]])));
        assert_eq!(d.blue_successor(s).unwrap(), Some(set(&[0, leaf, path[2]])));
        d.verify_structure().unwrap();
        d.verify_claims().unwrap();
    }

    #[test]
    fn figure_component_matches_the_hand_derivation() {
        let g = fig1();
        let d = build(&g);
        assert_eq!(d.path().vertices(), &[0, 1, 2]);
        // {a} = {3} sits at distance 2; admissible vertices are b = 4 and
        // c = 5; the lowest-index rule picks b, for both colours.
        assert_eq!(d.chosen_far_vertex(set(&[3])).unwrap(), Some(4));
        assert_eq!(d.red_successor(set(&[3])).unwrap(), Some(set(&[3, 4])));
        assert_eq!(d.blue_successor(set(&[3])).unwrap(), Some(set(&[3, 4])));
        // Near steps of the component.
        assert_eq!(d.red_successor(set(&[3, 4])).unwrap(), Some(set(&[0, 3, 4])));
        assert_eq!(d.blue_successor(set(&[3, 4])).unwrap(), Some(set(&[1, 3, 4])));
        assert_eq!(d.red_successor(set(&[1, 3, 4])).unwrap(), Some(set(&[0, 1, 3, 4])));
        assert_eq!(d.blue_successor(set(&[1, 3, 4])).unwrap(), Some(set(&[1, 2, 3, 4])));
        assert_eq!(d.red_successor(set(&[0, 3, 4])).unwrap(), None);
        assert_eq!(d.blue_successor(set(&[0, 3, 4])).unwrap(), Some(set(&[0, 1, 3, 4])));
        assert_eq!(d.blue_successor(set(&[0, 1, 3, 4])).unwrap(), Some(set(&[0, 1, 2, 3, 4])));
        assert_eq!(d.red_successor(set(&[1, 2, 3, 4])).unwrap(), Some(set(&[0, 1, 2, 3, 4])));
        assert_eq!(d.red_successor(set(&[0, 1, 2, 3, 4])).unwrap(), None);
        assert_eq!(d.blue_successor(set(&[0, 1, 2, 3, 4])).unwrap(), None);

        let dump = d.dump_component(set(&[3])).unwrap();
        assert!(dump.contains("nodes (7):"));
        assert!(dump.contains("edges (9):"));
        assert!(dump.contains("{3} -R-> {3,4} [far x=4]"));
        assert!(dump.contains("{1,3,4} -B-> {1,2,3,4}"));
    }

    #[test]
    fn figure_blue_top_not_red_top() {
        let d = build(&fig1());
        let (tops, mu) = d.classify_tops().unwrap();
        let status = |s: VertexSet, c: Color| tops.iter().any(|t| t.set == s && t.color == c);
        let target = set(&[0, 3, 4]);
        assert!(status(target, Color::Blue), "{{a,b,v0}} is a blue top");
        assert!(!status(target, Color::Red), "{{a,b,v0}} is not a red top");
        // Global strict bound, exact: mu(T) < (6-1)/2.
        assert!(mu.mu_all < ratio_usize(5, 2));
        d.verify_structure().unwrap();
        d.verify_claims().unwrap();
    }

    #[test]
    fn figure_high_tops_and_extensions() {
        let d = build(&fig1());
        let (tops, mu) = d.classify_tops().unwrap();
        // Off-path connected sets: {3},{4},{5},{3,4},{3,5},{3,4,5}; all
        // but {3,4} have no incoming edges, so |H| = 2*5 = 10.
        assert_eq!(mu.high_count, 10);
        let ext = |s: &[usize]| {
            tops.iter()
                .filter(|t| t.set == set(s) && t.class == TopClass::High)
                .map(|t| t.extension.unwrap())
                .collect::<Vec<_>>()
        };
        assert_eq!(ext(&[3]), vec![set(&[3, 4]), set(&[3, 4])]);
        assert_eq!(ext(&[4]), vec![set(&[4]), set(&[4])]);
        assert_eq!(ext(&[3, 4, 5]), vec![set(&[3, 4, 5]), set(&[3, 4, 5])]);
        // Low tops: exactly the three path singletons in both colours.
        assert_eq!(mu.low_count, 6);
        assert_eq!(mu.mu_low, Some(ratio_usize(1, 1)));
    }

    #[test]
    fn structure_and_claims_pass_on_small_regime_graphs() {
        let mut in_regime = 0;
        for n in 4..=6usize {
            for g in crate::canon::generate_connected_graphs(n).unwrap() {
                match AuxDigraph::build(&g, &AuxOptions::default()) {
                    Ok(d) => {
                        in_regime += 1;
                        d.verify_structure().unwrap();
                        d.verify_claims().unwrap();
                    }
                    Err(Error::OutOfRegime { .. }) => {}
                    Err(e) => panic!("unexpected error: {e}"),
                }
            }
        }
        assert!(in_regime > 100, "most small graphs sit in the regime");
    }

    #[test]
    fn every_admissible_far_choice_satisfies_the_claims() {
        // Drive the far rule through both alternatives on the figure graph
        // ({3} may grow via 4 or 5) and through highest-index choices on a
        // deeper graph with a pendant chain.
        let g = fig1();
        let highest: FarSelector = &|_, _, cands| *cands.last().unwrap();
        let d = AuxDigraph::build(
            &g,
            &AuxOptions { far_selector: Some(highest), ..AuxOptions::default() },
        )
        .unwrap();
        assert_eq!(d.chosen_far_vertex(set(&[3])).unwrap(), Some(5));
        d.verify_structure().unwrap();
        d.verify_claims().unwrap();

        // Pendant chain: vertices 5-6-7 hang off vertex 1 of a 5-cycle,
        // giving sets at distance up to 3 from the diametral path.
        let deep = Graph::new(8, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (1, 5), (5, 6), (6, 7)])
            .unwrap();
        for selector in [None, Some(highest)] {
            let d = AuxDigraph::build(
                &deep,
                &AuxOptions { far_selector: selector, ..AuxOptions::default() },
            )
            .unwrap();
            d.verify_structure().unwrap();
            d.verify_claims().unwrap();
        }
    }

    #[test]
    fn far_selector_must_pick_an_admissible_vertex() {
        let bad: FarSelector = &|_, _, _| 0;
        match AuxDigraph::build(
            &fig1(),
            &AuxOptions { far_selector: Some(bad), ..AuxOptions::default() },
        ) {
            Err(Error::AuxViolation { rule: "far-selector", .. }) => {}
            other => panic!("unexpected: {other:?}"),
        }
    }

    #[test]
    fn tampering_is_detected_per_mutation_class() {
        // Missing edge.
        let mut d = build(&fig1());
        d.override_successor(Color::Red, set(&[3]), None).unwrap();
        match d.verify_structure() {
            Err(Error::AuxViolation { rule: "out-degree", .. }) => {}
            other => panic!("unexpected: {other:?}"),
        }

        // Wrong target for a near edge (also breaks the characterization
        // of tops, which the claim checker sees directly).
        let mut d = build(&fig1());
        d.override_successor(Color::Red, set(&[1]), Some(set(&[1, 2]))).unwrap();
        match d.verify_structure() {
            Err(Error::AuxViolation { rule: "near-edge", set: s, .. }) => {
                assert_eq!(s, set(&[1]));
            }
            other => panic!("unexpected: {other:?}"),
        }
        match d.verify_claims() {
            Err(Error::ClaimViolation { claim: "top-characterization", .. }) => {}
            other => panic!("unexpected: {other:?}"),
        }

        // Wrong recorded far vertex.
        let mut d = build(&fig1());
        d.override_chosen_far(set(&[3]), Some(5)).unwrap();
        match d.verify_structure() {
            Err(Error::AuxViolation { rule: "far-edge", .. }) => {}
            other => panic!("unexpected: {other:?}"),
        }

        // Wrong colour: red edge follows the blue rule.
        let mut d = build(&fig1());
        d.override_successor(Color::Red, set(&[3, 4]), Some(set(&[1, 3, 4]))).unwrap();
        match d.verify_structure() {
            Err(Error::AuxViolation { rule: "near-edge", .. }) => {}
            other => panic!("unexpected: {other:?}"),
        }
    }

    #[test]
    fn witness_handles_all_three_shapes() {
        // Path: endpoint, exact equality N(P3;0) = 3 = 2*6/4.
        let w = lemma_tops_witness(&Graph::path(3)).unwrap();
        assert_eq!(w.vertex, 0);
        assert_eq!(w.count, BigUint::from(3u32));
        assert!(w.equality);

        // Complete: any vertex, strict. N(K3;v) = 4 > 2*7/4.
        let w = lemma_tops_witness(&Graph::complete(3)).unwrap();
        assert_eq!(w.vertex, 0);
        assert_eq!(w.count, BigUint::from(4u32));
        assert!(w.strict());

        // General regime: the figure graph, witness at a diametral end.
        let w = lemma_tops_witness(&fig1()).unwrap();
        assert!(w.vertex == 0 || w.vertex == 2);
        assert!(w.strict());

        assert!(matches!(lemma_tops_witness(&Graph::path(2)), Err(Error::OrderTooSmall { .. })));
    }

    #[test]
    fn witness_is_never_a_cutvertex_and_equality_marks_paths() {
        for n in 3..=6usize {
            for g in crate::canon::generate_connected_graphs(n).unwrap() {
                let w = lemma_tops_witness(&g).unwrap();
                assert!(!g.is_cutvertex(w.vertex).unwrap());
                let is_path = g.diametral_path().unwrap().length() == n - 1;
                assert_eq!(w.equality, is_path, "n={n} g={}", g.to_graph6().unwrap());
            }
        }
    }

    #[test]
    fn builds_are_deterministic() {
        let a = build(&fig1());
        let b = build(&fig1());
        assert_eq!(a.nodes, b.nodes);
        assert_eq!(a.red_succ, b.red_succ);
        assert_eq!(a.blue_succ, b.blue_succ);
        assert_eq!(a.chosen_far, b.chosen_far);
        assert_eq!(a.dump_component(set(&[3])).unwrap(), b.dump_component(set(&[3])).unwrap());
    }

    #[test]
    fn rejects_oversize_and_disconnected_input() {
        let big = Graph::path(30);
        assert!(matches!(
            AuxDigraph::build(&big, &AuxOptions::default()),
            Err(Error::TooLarge { .. })
        ));
        let disconnected = Graph::new(3, &[(0, 1)]).unwrap();
        assert!(matches!(
            AuxDigraph::build(&disconnected, &AuxOptions::default()),
            Err(Error::Disconnected)
        ));
        let d = build(&fig1());
        assert!(d.red_successor(set(&[0, 2])).is_err(), "not a connected set");
    }
}
