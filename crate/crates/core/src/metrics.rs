//! Small-world metrics over immutable topology snapshots.
//!
//! All distances are unweighted hop counts. Path metrics are undefined on
//! disconnected input and return [`MetricError::Disconnected`] instead of
//! infinities; callers that want largest-component metrics extract that
//! component first.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact;
use crate::scalar::Scalar;
use crate::topology::{GraphError, NodeId, Topology};

#[derive(Debug, Error, PartialEq)]
pub enum MetricError {
    #[error(transparent)]
    Node(#[from] GraphError),
    #[error("metric undefined on an empty graph")]
    EmptyGraph,
    #[error("metric needs at least 2 nodes")]
    TooFewNodes,
    #[error("metric undefined on a disconnected topology")]
    Disconnected,
    #[error("metric needs a geometric embedding")]
    MissingEmbedding,
    #[error("random baseline undefined for average degree <= 1")]
    DegenerateDegree,
}

/// Local clustering coefficient of `v`: links among its neighbors over
/// C(k, 2), and 0 for degree below 2.
pub fn local_cc<T: Scalar>(t: &Topology<T>, v: NodeId) -> Result<T, MetricError> {
    t.check_node(v)?;
    let (links, pairs) = exact::local_cc_parts(t, v);
    if pairs == 0 {
        Ok(T::zero())
    } else {
        Ok(T::from_count(links as usize) / T::from_count(pairs as usize))
    }
}

/// Mean local clustering coefficient over all nodes.
pub fn avg_cc<T: Scalar>(t: &Topology<T>) -> Result<T, MetricError> {
    let n = t.node_count();
    if n == 0 {
        return Err(MetricError::EmptyGraph);
    }
    let mut sum = T::zero();
    for v in 0..n {
        sum = sum + local_cc(t, v)?;
    }
    Ok(sum / T::from_count(n))
}

/// 2 |L| / n.
pub fn avg_degree<T: Scalar>(t: &Topology<T>) -> Result<T, MetricError> {
    if t.node_count() == 0 {
        return Err(MetricError::EmptyGraph);
    }
    Ok(T::from_count(2 * t.edge_count()) / T::from_count(t.node_count()))
}

/// Hop distances from `v` to every node; `None` marks unreachable nodes.
pub fn shortest_paths_from<T: Scalar>(
    t: &Topology<T>,
    v: NodeId,
) -> Result<Vec<Option<usize>>, MetricError> {
    t.check_node(v)?;
    let mut dist = vec![usize::MAX; t.node_count()];
    bfs(t, v, &mut dist);
    Ok(dist
        .into_iter()
        .map(|d| if d == usize::MAX { None } else { Some(d) })
        .collect())
}

/// True when all nodes lie in one component (vacuously true for n <= 1).
pub fn is_connected<T: Scalar>(t: &Topology<T>) -> bool {
    let n = t.node_count();
    if n <= 1 {
        return true;
    }
    let mut dist = vec![usize::MAX; n];
    let reached = bfs(t, 0, &mut dist);
    reached.visited == n
}

/// Characteristic path length: the median over nodes of each node's mean
/// hop distance to the other n - 1 nodes.
pub fn cpl<T: Scalar>(t: &Topology<T>) -> Result<T, MetricError> {
    Ok(path_stats(t)?.cpl)
}

/// Mean hop distance over all unordered node pairs.
pub fn asp<T: Scalar>(t: &Topology<T>) -> Result<T, MetricError> {
    Ok(path_stats(t)?.asp)
}

/// Maximum eccentricity, in hops.
pub fn diameter<T: Scalar>(t: &Topology<T>) -> Result<usize, MetricError> {
    Ok(ecc_stats(t)?.diameter)
}

/// Mean over nodes of each node's eccentricity. Reported alongside the
/// integer diameter because some table-style summaries average it.
pub fn mean_eccentricity<T: Scalar>(t: &Topology<T>) -> Result<T, MetricError> {
    Ok(ecc_stats(t)?.mean_ecc)
}

/// Critical transmission range: the bottleneck (longest) edge of a minimum
/// spanning tree of the current edge set under Euclidean lengths. Equals
/// the smallest r such that keeping only edges of length <= r leaves the
/// topology connected.
pub fn ctr<T: Scalar>(t: &Topology<T>) -> Result<T, MetricError> {
    let n = t.node_count();
    if n == 0 {
        return Err(MetricError::EmptyGraph);
    }
    if t.embedding().is_none() {
        return Err(MetricError::MissingEmbedding);
    }
    if n == 1 {
        return Ok(T::zero());
    }
    let mut edges: Vec<(T, NodeId, NodeId)> = t
        .edges()
        .into_iter()
        .map(|(u, v)| (t.edge_length(u, v).expect("embedded"), u, v))
        .collect();
    edges.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite lengths"));

    // Kruskal; the last edge that joins two components is the bottleneck.
    let mut dsu = Dsu::new(n);
    let mut joined = 0;
    for (len, u, v) in edges {
        if dsu.union(u, v) {
            joined += 1;
            if joined == n - 1 {
                return Ok(len);
            }
        }
    }
    Err(MetricError::Disconnected)
}

/// Comparison of (cc, cpl) against the degree-matched random-graph
/// baselines cc_random = k/n and cpl_random = ln n / ln k.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SmallWorldReport<T> {
    pub cc: T,
    pub cpl: T,
    pub cc_random: T,
    pub cpl_random: T,
    pub cc_ratio: T,
    pub cpl_ratio: T,
}

/// No thresholding is applied: the report carries the ratios and the caller
/// judges "CPL close to random, CC far above it".
pub fn small_world_check<T: Scalar>(t: &Topology<T>) -> Result<SmallWorldReport<T>, MetricError> {
    let n = t.node_count();
    if n == 0 {
        return Err(MetricError::EmptyGraph);
    }
    if n < 2 {
        return Err(MetricError::TooFewNodes);
    }
    let k = avg_degree(t)?;
    if k <= T::one() {
        return Err(MetricError::DegenerateDegree);
    }
    let cc = avg_cc(t)?;
    let cpl = cpl(t)?;
    let n_t = T::from_count(n);
    let cc_random = k / n_t;
    let cpl_random = n_t.ln() / k.ln();
    Ok(SmallWorldReport {
        cc,
        cpl,
        cc_random,
        cpl_random,
        cc_ratio: cc / cc_random,
        cpl_ratio: cpl / cpl_random,
    })
}

/// Full metric vector of one topology. Path metrics are `None` when the
/// topology is disconnected; `ctr` is additionally `None` without an
/// embedding.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsReport<T> {
    pub cc: T,
    pub cpl: Option<T>,
    pub asp: Option<T>,
    pub k: T,
    pub d: Option<usize>,
    pub mean_ecc: Option<T>,
    pub ctr: Option<T>,
    pub connected: bool,
}

pub fn metrics_report<T: Scalar>(t: &Topology<T>) -> Result<MetricsReport<T>, MetricError> {
    let n = t.node_count();
    if n == 0 {
        return Err(MetricError::EmptyGraph);
    }
    let connected = is_connected(t);
    let (cpl, asp, d, mean_ecc) = if connected && n >= 2 {
        let sweep = sweep(t).expect("connected");
        (
            Some(sweep.cpl),
            Some(sweep.asp),
            Some(sweep.diameter),
            Some(sweep.mean_ecc),
        )
    } else if connected {
        // single node: eccentricity 0, no pairs
        (None, None, Some(0), Some(T::zero()))
    } else {
        (None, None, None, None)
    };
    let ctr = if connected && t.embedding().is_some() {
        Some(ctr(t).expect("connected and embedded"))
    } else {
        None
    };
    Ok(MetricsReport {
        cc: avg_cc(t)?,
        cpl,
        asp,
        k: avg_degree(t)?,
        d,
        mean_ecc,
        ctr,
        connected,
    })
}

struct BfsOutcome {
    visited: usize,
    sum: u64,
    ecc: usize,
}

/// Fills `dist` (pre-seeded with usize::MAX) with hop counts from `start`.
fn bfs<T: Scalar>(t: &Topology<T>, start: NodeId, dist: &mut [usize]) -> BfsOutcome {
    let mut queue = std::collections::VecDeque::new();
    dist[start] = 0;
    queue.push_back(start);
    let mut out = BfsOutcome {
        visited: 0,
        sum: 0,
        ecc: 0,
    };
    while let Some(u) = queue.pop_front() {
        out.visited += 1;
        out.sum += dist[u] as u64;
        out.ecc = out.ecc.max(dist[u]);
        for &w in t.neighbors(u) {
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    out
}

struct PathSweep<T> {
    cpl: T,
    asp: T,
    diameter: usize,
    mean_ecc: T,
}

/// One all-pairs BFS sweep computing every path metric. `None` when the
/// topology is disconnected.
fn sweep<T: Scalar>(t: &Topology<T>) -> Option<PathSweep<T>> {
    let n = t.node_count();
    debug_assert!(n >= 2);
    let mut dist = vec![usize::MAX; n];
    let mut node_means: Vec<T> = Vec::with_capacity(n);
    let mut total: u64 = 0;
    let mut ecc_sum: u64 = 0;
    let mut diameter = 0;
    for v in 0..n {
        dist.fill(usize::MAX);
        let out = bfs(t, v, &mut dist);
        if out.visited != n {
            return None;
        }
        node_means.push(T::from_count(out.sum as usize) / T::from_count(n - 1));
        total += out.sum;
        ecc_sum += out.ecc as u64;
        diameter = diameter.max(out.ecc);
    }
    node_means.sort_by(|a, b| a.partial_cmp(b).expect("finite means"));
    let cpl = if n % 2 == 1 {
        node_means[n / 2]
    } else {
        let two = T::from_count(2);
        (node_means[n / 2 - 1] + node_means[n / 2]) / two
    };
    let asp = T::from_count(total as usize) / T::from_count(n * (n - 1));
    let mean_ecc = T::from_count(ecc_sum as usize) / T::from_count(n);
    Some(PathSweep {
        cpl,
        asp,
        diameter,
        mean_ecc,
    })
}

fn path_stats<T: Scalar>(t: &Topology<T>) -> Result<PathSweep<T>, MetricError> {
    match t.node_count() {
        0 => Err(MetricError::EmptyGraph),
        1 => Err(MetricError::TooFewNodes),
        _ => sweep(t).ok_or(MetricError::Disconnected),
    }
}

struct EccStats<T> {
    diameter: usize,
    mean_ecc: T,
}

fn ecc_stats<T: Scalar>(t: &Topology<T>) -> Result<EccStats<T>, MetricError> {
    match t.node_count() {
        0 => Err(MetricError::EmptyGraph),
        1 => Ok(EccStats {
            diameter: 0,
            mean_ecc: T::zero(),
        }),
        _ => {
            let s = sweep(t).ok_or(MetricError::Disconnected)?;
            Ok(EccStats {
                diameter: s.diameter,
                mean_ecc: s.mean_ecc,
            })
        }
    }
}

/// Disjoint-set forest with path halving and union by size.
struct Dsu {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// False when both were already in the same set.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (big, small) = if self.size[ra] >= self.size[rb] {
            (ra, rb)
        } else {
            (rb, ra)
        };
        self.parent[small] = big;
        self.size[big] += self.size[small];
        true
    }
}
