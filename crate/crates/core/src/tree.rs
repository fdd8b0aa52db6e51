//! Linear-time subtree statistics on trees: the classic product-form DP
//! for counting subtrees through a vertex, extended with an order-sum
//! companion and a rerooting pass that yields the local statistics at
//! every vertex in one sweep.
//!
//! Counts grow doubly-exponentially on stars, so the DP runs over a small
//! numeric abstraction: a `u128` fast path serves the common case and the
//! whole computation is redone in `BigUint` on the first overflow.

use num::{BigRational, BigUint, Zero};

use crate::connected::{ConnStats, LocalStats};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::ratio::ratio_usize;

/// Closed-form statistics for the path on `n` vertices: the connected sets
/// are the intervals, so the count is `n(n+1)/2`, the total order is
/// `n(n+1)(n+2)/6`, and the average is `(n+2)/3`.
pub fn path_closed_form(n: usize) -> Result<ConnStats> {
    if n == 0 {
        return Err(Error::OrderTooSmall { n: 0, min: 1, what: "path closed form" });
    }
    let n = BigUint::from(n);
    let count = &n * (&n + 1u32) / 2u32;
    let total = &n * (&n + 1u32) * (&n + 2u32) / 6u32;
    Ok(ConnStats { count, total_order: total })
}

/// The average `(n + 2) / 3` as an exact rational.
pub fn path_average(n: usize) -> BigRational {
    ratio_usize(n + 2, 3)
}

/// Global subtree statistics of a tree, in one post-order pass.
///
/// Every subtree is counted at its unique minimum-depth vertex once the
/// tree is rooted, so the global count is the sum over vertices of the
/// rooted product-form DP.
pub fn tree_stats(g: &Graph) -> Result<ConnStats> {
    let sk = Skeleton::build(g)?;
    if let Some((count, total)) = global_pass::<u128>(&sk) {
        return Ok(ConnStats::new(count, total));
    }
    let (count, total) = global_pass::<BigUint>(&sk).expect("BigUint never overflows");
    Ok(ConnStats { count, total_order: total })
}

/// Local subtree statistics at every vertex via rerooting: a post-order
/// pass computes each child-side family, a pre-order pass propagates the
/// parent-side family, and per-vertex results combine the two with
/// exclude-one prefix/suffix products. No divisions are performed.
pub fn tree_local_stats_all(g: &Graph) -> Result<Vec<LocalStats>> {
    let sk = Skeleton::build(g)?;
    if let Some(rows) = local_pass::<u128>(&sk) {
        return Ok(rows
            .into_iter()
            .enumerate()
            .map(|(v, (count, total))| LocalStats {
                vertex: v,
                count: count.into(),
                total_order: total.into(),
            })
            .collect());
    }
    let rows = local_pass::<BigUint>(&sk).expect("BigUint never overflows");
    Ok(rows
        .into_iter()
        .enumerate()
        .map(|(v, (count, total))| LocalStats { vertex: v, count, total_order: total })
        .collect())
}

/// Rooted-at-0 traversal data; construction validates treeness. Children
/// sit in compressed sparse rows (BFS discovery order within a row) so a
/// skeleton costs a constant number of allocations.
struct Skeleton {
    /// BFS order from the root; parents precede children.
    order: Vec<usize>,
    parent: Vec<usize>,
    child_offsets: Vec<usize>,
    child_flat: Vec<usize>,
}

const NO_PARENT: usize = usize::MAX;

impl Skeleton {
    fn build(g: &Graph) -> Result<Skeleton> {
        let n = g.n();
        let m = g.edge_count();
        if m + 1 != n {
            return Err(Error::NotATree(format!("order {n} with {m} edges")));
        }
        let mut parent = vec![NO_PARENT; n];
        let mut seen = vec![false; n];
        let mut order = Vec::with_capacity(n);
        order.push(0);
        seen[0] = true;
        let mut head = 0;
        while head < order.len() {
            let u = order[head];
            head += 1;
            for &w in g.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = u;
                    order.push(w);
                }
            }
        }
        if order.len() != n {
            return Err(Error::NotATree("disconnected".into()));
        }
        let mut child_offsets = vec![0usize; n + 1];
        for &v in &order[1..] {
            child_offsets[parent[v] + 1] += 1;
        }
        for i in 0..n {
            child_offsets[i + 1] += child_offsets[i];
        }
        let mut cursor = child_offsets[..n].to_vec();
        let mut child_flat = vec![0usize; n - 1];
        for &v in &order[1..] {
            child_flat[cursor[parent[v]]] = v;
            cursor[parent[v]] += 1;
        }
        Ok(Skeleton { order, parent, child_offsets, child_flat })
    }

    fn children(&self, v: usize) -> &[usize] {
        &self.child_flat[self.child_offsets[v]..self.child_offsets[v + 1]]
    }
}

/// Minimal checked arithmetic the DP needs; `None` signals overflow.
trait DpNum: Clone + Sized {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, other: &Self) -> Option<Self>;
    fn mul(&self, other: &Self) -> Option<Self>;
}

impl DpNum for u128 {
    fn zero() -> u128 {
        0
    }
    fn one() -> u128 {
        1
    }
    fn add(&self, other: &u128) -> Option<u128> {
        self.checked_add(*other)
    }
    fn mul(&self, other: &u128) -> Option<u128> {
        self.checked_mul(*other)
    }
}

impl DpNum for BigUint {
    fn zero() -> BigUint {
        Zero::zero()
    }
    fn one() -> BigUint {
        1u32.into()
    }
    fn add(&self, other: &BigUint) -> Option<BigUint> {
        Some(self + other)
    }
    fn mul(&self, other: &BigUint) -> Option<BigUint> {
        Some(self * other)
    }
}

/// A family of vertex sets summarized as (number of sets, summed order).
/// Combining two values describes choosing independently from both
/// families; the identity is the one-option empty choice.
#[derive(Clone)]
struct Family<T> {
    count: T,
    total: T,
}

impl<T: DpNum> Family<T> {
    fn identity() -> Family<T> {
        Family { count: T::one(), total: T::zero() }
    }

    fn combine(&self, other: &Family<T>) -> Option<Family<T>> {
        Some(Family {
            count: self.count.mul(&other.count)?,
            total: self.total.mul(&other.count)?.add(&other.total.mul(&self.count)?)?,
        })
    }

    /// The subtrees hanging off one neighbor, made optional: one extra
    /// choice (take nothing) of order 0.
    fn optional(sub: &Family<T>) -> Option<Family<T>> {
        Some(Family { count: sub.count.add(&T::one())?, total: sub.total.clone() })
    }

    /// Closes the families at an apex vertex: each choice gains the apex,
    /// so the set count is unchanged and each set grows by one.
    fn close(&self) -> Option<Family<T>> {
        Some(Family { count: self.count.clone(), total: self.total.add(&self.count)? })
    }
}

/// Post-order pass: `down[v]` summarizes subtrees containing `v` inside
/// the rooted subtree of `v`.
fn down_pass<T: DpNum>(sk: &Skeleton) -> Option<Vec<Family<T>>> {
    let n = sk.order.len();
    let mut down = vec![Family::<T>::identity(); n];
    for &v in sk.order.iter().rev() {
        let mut acc = Family::identity();
        for &c in sk.children(v) {
            acc = acc.combine(&Family::optional(&down[c])?)?;
        }
        down[v] = acc.close()?;
    }
    Some(down)
}

fn global_pass<T: DpNum>(sk: &Skeleton) -> Option<(T, T)> {
    let down = down_pass::<T>(sk)?;
    let mut count = T::zero();
    let mut total = T::zero();
    for fam in &down {
        count = count.add(&fam.count)?;
        total = total.add(&fam.total)?;
    }
    Some((count, total))
}

fn local_pass<T: DpNum>(sk: &Skeleton) -> Option<Vec<(T, T)>> {
    let n = sk.order.len();
    let down = down_pass::<T>(sk)?;
    // up[v]: subtrees containing parent(v) in the tree minus v's subtree.
    let mut up = vec![Family::<T>::identity(); n];
    let mut out = vec![None; n];
    for &v in &sk.order {
        // Factors seen from v: one per child, plus the parent side.
        let kids = sk.children(v);
        let mut factors = Vec::with_capacity(kids.len() + 1);
        for &c in kids {
            factors.push(Family::optional(&down[c])?);
        }
        if sk.parent[v] != NO_PARENT {
            factors.push(Family::optional(&up[v])?);
        }
        // prefix[i] = product of factors[..i]; suffix[i] = product of factors[i..].
        let mut prefix = vec![Family::<T>::identity(); factors.len() + 1];
        for (i, f) in factors.iter().enumerate() {
            prefix[i + 1] = prefix[i].combine(f)?;
        }
        let mut suffix = vec![Family::<T>::identity(); factors.len() + 1];
        for (i, f) in factors.iter().enumerate().rev() {
            suffix[i] = f.combine(&suffix[i + 1])?;
        }
        let all = prefix[factors.len()].close()?;
        out[v] = Some((all.count.clone(), all.total.clone()));
        for (i, &c) in kids.iter().enumerate() {
            up[c] = prefix[i].combine(&suffix[i + 1])?.close()?;
        }
    }
    out.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connected::{local_stats_all, stats};

    #[test]
    fn closed_form_matches_frozen_examples() {
        for (n, count, total) in [(1usize, 1u32, 1u32), (2, 3, 4), (3, 6, 10), (4, 10, 20)] {
            let s = path_closed_form(n).unwrap();
            assert_eq!(s, ConnStats::new(count, total));
        }
        assert_eq!(path_closed_form(3).unwrap().average(), ratio_usize(5, 3));
        assert_eq!(path_average(4), ratio_usize(2, 1));
        assert!(matches!(path_closed_form(0), Err(Error::OrderTooSmall { .. })));
    }

    #[test]
    fn dp_matches_closed_form_on_paths() {
        for n in 1..=200 {
            let s = tree_stats(&Graph::path(n)).unwrap();
            assert_eq!(s, path_closed_form(n).unwrap(), "P_{n}");
            assert_eq!(s.average(), path_average(n));
        }
    }

    #[test]
    fn dp_matches_enumeration_on_small_trees() {
        let trees = [
            Graph::star(4),
            Graph::star(7),
            Graph::path(7),
            // Spider with legs 2, 2, 1.
            Graph::new(6, &[(0, 1), (1, 2), (0, 3), (3, 4), (0, 5)]).unwrap(),
            // Caterpillar.
            Graph::new(7, &[(0, 1), (1, 2), (2, 3), (1, 4), (2, 5), (2, 6)]).unwrap(),
        ];
        for t in &trees {
            assert_eq!(tree_stats(t).unwrap(), stats(t).unwrap(), "global {t:?}");
            let fast = tree_local_stats_all(t).unwrap();
            let slow = local_stats_all(t).unwrap();
            for (a, b) in fast.iter().zip(&slow) {
                assert_eq!(a, b, "local {t:?}");
            }
        }
    }

    #[test]
    fn local_rows_match_frozen_examples() {
        let rows = tree_local_stats_all(&Graph::path(3)).unwrap();
        let want = [(3u32, 6u32), (4, 8), (3, 6)];
        for (row, (count, total)) in rows.iter().zip(want) {
            assert_eq!(row.count, count.into());
            assert_eq!(row.total_order, total.into());
            assert_eq!(row.average(), ratio_usize(2, 1));
        }
        let k1 = tree_local_stats_all(&Graph::new(1, &[]).unwrap()).unwrap();
        assert_eq!(k1[0].count, 1u32.into());
        assert_eq!(k1[0].average(), ratio_usize(1, 1));
    }

    #[test]
    fn rejects_non_trees() {
        assert!(matches!(tree_stats(&Graph::cycle(4)), Err(Error::NotATree(_))));
        let forest = Graph::new(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(matches!(tree_stats(&forest), Err(Error::NotATree(_))));
        // Same edge count as a tree but disconnected (multi-edge free).
        let bad = Graph::new(4, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        assert!(matches!(tree_local_stats_all(&bad), Err(Error::NotATree(_))));
    }

    #[test]
    fn big_star_takes_the_biguint_path() {
        // The star on n vertices has 2^(n-1) subtrees through the center;
        // n = 140 overflows u128 and must fall back losslessly.
        let n = 140usize;
        let s = tree_stats(&Graph::star(n)).unwrap();
        let pow = BigUint::from(1u32) << (n - 1);
        assert_eq!(s.count, &pow + BigUint::from(n - 1));
        // Total order: the center contributes sum over subsets of rim of
        // (1 + |subset|) = 2^(n-1) + (n-1)2^(n-2); each leaf adds 1.
        let expect_total =
            &pow + BigUint::from(n - 1) * (BigUint::from(1u32) << (n - 2)) + BigUint::from(n - 1);
        assert_eq!(s.total_order, expect_total);

        let local = tree_local_stats_all(&Graph::star(n)).unwrap();
        assert_eq!(local[0].count, pow);
        // A leaf sits in its singleton plus {leaf, center} + rim subset.
        assert_eq!(local[1].count, (BigUint::from(1u32) << (n - 2)) + BigUint::from(1u32));
    }

    #[test]
    fn long_path_has_no_recursion_limit() {
        let n = 10_000;
        let s = tree_stats(&Graph::path(n)).unwrap();
        assert_eq!(s, path_closed_form(n).unwrap());
        let local = tree_local_stats_all(&Graph::path(n)).unwrap();
        // Intervals through an endpoint: n of them.
        assert_eq!(local[0].count, BigUint::from(n));
        assert_eq!(local[n - 1].count, BigUint::from(n));
    }
}
