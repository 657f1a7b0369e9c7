//! Exact arithmetic for link-removal decisions.
//!
//! Every clustering comparison the removal algorithm makes is a strict
//! inequality between sums of rationals e/C(k,2). Evaluating those in
//! floating point risks ties flipping on rounding, so decisions are made
//! here with integer cross-multiplication and [`BigRational`] sums. Float
//! metrics elsewhere are reporting-only.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::scalar::Scalar;
use crate::topology::{NodeId, Topology};

/// C(k, 2) as u64.
pub fn pairs(k: usize) -> u64 {
    let k = k as u64;
    k * k.saturating_sub(1) / 2
}

/// Number of links among the neighbors of `v` (the numerator of its local
/// clustering coefficient).
pub fn neighbor_links<T: Scalar>(t: &Topology<T>, v: NodeId) -> u64 {
    // Each link (x, y) with x, y in N(v) is counted once from each side.
    let mut twice = 0u64;
    for &x in t.neighbors(v) {
        twice += t.common_neighbor_count(v, x) as u64;
    }
    debug_assert!(twice % 2 == 0);
    twice / 2
}

/// Local clustering coefficient of `v` as `(links, pairs)`. `pairs` is 0
/// when the degree is below 2; the coefficient is then defined as 0.
pub fn local_cc_parts<T: Scalar>(t: &Topology<T>, v: NodeId) -> (u64, u64) {
    (neighbor_links(t, v), pairs(t.degree(v)))
}

/// `links / pairs` as an exact rational, 0 when `pairs` is 0.
pub fn cc_ratio(links: u64, pairs: u64) -> BigRational {
    if pairs == 0 {
        BigRational::zero()
    } else {
        BigRational::new(BigInt::from(links), BigInt::from(pairs))
    }
}

/// Exact local clustering coefficient of `v`.
pub fn local_cc<T: Scalar>(t: &Topology<T>, v: NodeId) -> BigRational {
    let (links, pairs) = local_cc_parts(t, v);
    cc_ratio(links, pairs)
}

/// Exact sum of local clustering coefficients over `nodes`.
pub fn sum_local_cc<T: Scalar>(t: &Topology<T>, nodes: &[NodeId]) -> BigRational {
    nodes
        .iter()
        .fold(BigRational::zero(), |acc, &v| acc + local_cc(t, v))
}

/// True when dropping neighbor `u` would strictly raise the local
/// clustering coefficient of `v`. Exact: compares
/// (links - c) / C(k-1, 2) > links / C(k, 2) by cross-multiplication,
/// where c is the number of links between `u` and the rest of N(v).
pub fn removal_raises_local_cc<T: Scalar>(t: &Topology<T>, v: NodeId, u: NodeId) -> bool {
    debug_assert!(t.has_edge(v, u));
    let k = t.degree(v);
    if k < 3 {
        // k <= 1 stays at 0; k == 2 drops to a degree-1 node, also 0.
        return false;
    }
    let links = neighbor_links(t, v);
    let c = t.common_neighbor_count(v, u) as u64;
    debug_assert!(c <= links);
    let lhs = (links - c) as u128 * pairs(k) as u128;
    let rhs = links as u128 * pairs(k - 1) as u128;
    lhs > rhs
}

/// Exact change of `sum_local_cc` over the whole graph caused by removing
/// the existing link `(u, v)`, computed without mutating the topology.
///
/// Only `u`, `v`, and their common neighbors are affected, so this also
/// equals the change of the sum over any node set containing all of them,
/// in particular over N(u) ∪ N(v).
pub fn removal_cc_delta<T: Scalar>(t: &Topology<T>, u: NodeId, v: NodeId) -> BigRational {
    debug_assert!(t.has_edge(u, v));
    let mut delta = endpoint_delta(t, u, v) + endpoint_delta(t, v, u);
    // A common neighbor keeps its degree but loses the link (u, v) from
    // among its neighbors.
    for x in t.common_neighbors(u, v) {
        delta -= cc_ratio(1, pairs(t.degree(x)));
    }
    delta
}

/// Change of `v`'s own local clustering coefficient when it drops `u`.
fn endpoint_delta<T: Scalar>(t: &Topology<T>, v: NodeId, u: NodeId) -> BigRational {
    let k = t.degree(v);
    let links = neighbor_links(t, v);
    let c = t.common_neighbor_count(v, u) as u64;
    cc_ratio(links - c, pairs(k - 1)) - cc_ratio(links, pairs(k))
}
