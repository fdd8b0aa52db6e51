//! Enumeration of connected vertex sets and their exact statistics: the
//! number of connected sets, their total order, the average order, and the
//! local variants restricted to sets through a fixed vertex.

use num::{BigRational, BigUint};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet, MAX_SET_ORDER};
use crate::ratio::{ratio, ratio_usize};

/// Exact global statistics over all nonempty connected vertex sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnStats {
    /// Number of connected sets.
    pub count: BigUint,
    /// Sum of the orders of all connected sets.
    pub total_order: BigUint,
}

impl ConnStats {
    pub fn new(count: impl Into<BigUint>, total_order: impl Into<BigUint>) -> ConnStats {
        ConnStats { count: count.into(), total_order: total_order.into() }
    }

    /// Average order, exact.
    pub fn average(&self) -> BigRational {
        ratio(&self.total_order, &self.count)
    }
}

/// Exact statistics over connected sets containing a fixed vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalStats {
    pub vertex: usize,
    pub count: BigUint,
    pub total_order: BigUint,
}

impl LocalStats {
    /// Local average order, exact.
    pub fn average(&self) -> BigRational {
        ratio(&self.total_order, &self.count)
    }
}

/// One row of the per-vertex local lower-bound report: compares the local
/// average at `vertex` with `(n + 1) / 2`.
#[derive(Clone, Debug)]
pub struct LemmaLocalRow {
    pub vertex: usize,
    pub stats: LocalStats,
    pub bound: BigRational,
    pub holds: bool,
    pub equality: bool,
}

fn require_mask_order(g: &Graph, what: &'static str) -> Result<()> {
    if g.n() > MAX_SET_ORDER {
        return Err(Error::TooLarge { n: g.n(), max: MAX_SET_ORDER, what });
    }
    Ok(())
}

/// Streams every nonempty connected vertex set of `g` exactly once.
///
/// Each set is produced from its minimum vertex as the root: the walk
/// starts at `{r}` with all vertices below `r` forbidden and grows only
/// through the current boundary, branching on the lowest-indexed candidate
/// first. The emission order is therefore deterministic. Works on
/// disconnected graphs; requires order at most 64.
pub fn enumerate_connected_sets(g: &Graph) -> Result<ConnectedSets<'_>> {
    require_mask_order(g, "connected-set enumeration")?;
    Ok(ConnectedSets { g, next_root: 0, stack: Vec::new() })
}

struct Frame {
    set: u64,
    /// Closed neighborhood accumulated so far (members and their neighbors).
    reach: u64,
    /// Vertices this branch must avoid.
    forbidden: u64,
    /// Boundary candidates not yet branched on.
    cand: u64,
}

pub struct ConnectedSets<'a> {
    g: &'a Graph,
    next_root: usize,
    stack: Vec<Frame>,
}

impl ConnectedSets<'_> {
    fn push(&mut self, set: u64, reach: u64, forbidden: u64) -> VertexSet {
        let cand = reach & !set & !forbidden;
        self.stack.push(Frame { set, reach, forbidden, cand });
        VertexSet::from_bits(set)
    }
}

impl Iterator for ConnectedSets<'_> {
    type Item = VertexSet;

    fn next(&mut self) -> Option<VertexSet> {
        loop {
            if let Some(top) = self.stack.last_mut() {
                if top.cand == 0 {
                    self.stack.pop();
                    continue;
                }
                let v = top.cand.trailing_zeros() as usize;
                let bit = 1u64 << v;
                top.cand ^= bit;
                let (set, reach, forbidden) = (top.set | bit, top.reach, top.forbidden);
                // Later branches at this level must avoid v.
                top.forbidden |= bit;
                let reach = reach | self.g.neighbor_mask(v).bits();
                return Some(self.push(set, reach, forbidden));
            }
            if self.next_root >= self.g.n() {
                return None;
            }
            let r = self.next_root;
            self.next_root += 1;
            let forbidden = if r == 0 { 0 } else { VertexSet::full(r).bits() };
            let set = 1u64 << r;
            let reach = set | self.g.neighbor_mask(r).bits();
            return Some(self.push(set, reach, forbidden));
        }
    }
}

/// Accumulates `(count, total order)` over one enumeration pass.
///
/// The accumulators fit in `u128` for any graph in range: the count is at
/// most `2^64 - 1` and the total at most `64 * (2^64 - 1)`.
fn accumulate(g: &Graph) -> Result<(u128, u128)> {
    let mut count = 0u128;
    let mut total = 0u128;
    for s in enumerate_connected_sets(g)? {
        count += 1;
        total += s.len() as u128;
    }
    Ok((count, total))
}

/// Whether a vertex set induces a connected subgraph. The empty set does
/// not count as connected. All members must be vertices of `g`.
pub fn is_connected_subset(g: &Graph, set: VertexSet) -> bool {
    let Some(root) = set.min_vertex() else {
        return false;
    };
    debug_assert!(root < g.n());
    let bits = set.bits();
    let mut comp = VertexSet::singleton(root).bits();
    loop {
        let mut grown = comp;
        let mut rest = comp;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            grown |= g.neighbor_mask(v).bits() & bits;
        }
        if grown == comp {
            return comp == bits;
        }
        comp = grown;
    }
}

/// Global statistics over the connected sets of a connected graph.
pub fn stats(g: &Graph) -> Result<ConnStats> {
    require_mask_order(g, "connected-set statistics")?;
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let (count, total) = accumulate(g)?;
    Ok(ConnStats::new(count, total))
}

/// Statistics over the connected sets containing `v`.
pub fn local_stats(g: &Graph, v: usize) -> Result<LocalStats> {
    if v >= g.n() {
        return Err(Error::VertexOutOfRange { vertex: v, n: g.n() });
    }
    Ok(local_stats_all(g)?.swap_remove(v))
}

/// Local statistics at every vertex in one enumeration pass.
pub fn local_stats_all(g: &Graph) -> Result<Vec<LocalStats>> {
    require_mask_order(g, "local connected-set statistics")?;
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let n = g.n();
    let mut count = vec![0u128; n];
    let mut total = vec![0u128; n];
    for s in enumerate_connected_sets(g)? {
        let order = s.len() as u128;
        for v in s.iter() {
            count[v] += 1;
            total[v] += order;
        }
    }
    Ok((0..n)
        .map(|v| LocalStats { vertex: v, count: count[v].into(), total_order: total[v].into() })
        .collect())
}

/// Exact count and average order of the subsets `U` of a host graph `h`
/// that are either empty or whose induced components each meet the anchor
/// set `anchor`. The empty set participates with order 0.
///
/// `h` may be disconnected, but `anchor` must meet every component.
pub fn sh_average(h: &Graph, anchor: VertexSet) -> Result<(BigUint, BigRational)> {
    require_mask_order(h, "anchored subset statistics")?;
    let n = h.n();
    if let Some(v) = anchor.iter().find(|&v| v >= n) {
        return Err(Error::VertexOutOfRange { vertex: v, n });
    }
    for comp in h.components() {
        let mask: VertexSet = comp.iter().copied().collect();
        if !mask.intersects(anchor) {
            return Err(Error::ComponentNotCovered { component: mask });
        }
    }
    let mut count = 0u128;
    let mut total = 0u128;
    for u in 0..(1u128 << n) {
        let u = u as u64;
        if anchored(h, u, anchor.bits()) {
            count += 1;
            total += u.count_ones() as u128;
        }
    }
    let count = BigUint::from(count);
    let avg = ratio(&BigUint::from(total), &count);
    Ok((count, avg))
}

/// Does every component of the subgraph induced on `u` meet `anchor`?
fn anchored(h: &Graph, u: u64, anchor: u64) -> bool {
    let mut rest = u;
    while rest != 0 {
        let seed = rest & rest.wrapping_neg();
        let mut comp = seed;
        loop {
            let mut grown = comp;
            let mut frontier = comp;
            while frontier != 0 {
                let v = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                grown |= h.neighbor_mask(v).bits() & rest;
            }
            if grown == comp {
                break;
            }
            comp = grown;
        }
        if comp & anchor == 0 {
            return false;
        }
        rest &= !comp;
    }
    true
}

/// Per-vertex check of the local lower bound `A(G; v) >= (n + 1) / 2` on a
/// connected graph, with exact equality detection.
pub fn verify_lemma_local(g: &Graph) -> Result<Vec<LemmaLocalRow>> {
    let bound = ratio_usize(g.n() + 1, 2);
    Ok(local_stats_all(g)?
        .into_iter()
        .map(|stats| {
            let avg = stats.average();
            LemmaLocalRow {
                vertex: stats.vertex,
                holds: avg >= bound,
                equality: avg == bound,
                bound: bound.clone(),
                stats,
            }
        })
        .collect())
}
