//! Brute-force reference implementations used to cross-check the library's
//! metrics. Everything here trades speed for obviousness: Floyd-Warshall
//! instead of BFS sweeps, quadratic pair scans instead of sorted-list
//! merges, and connectivity-by-threshold instead of a spanning tree. None
//! of it shares code with the production paths.

#![allow(dead_code)]

use rand::Rng;
use reckful_core::seed;
use reckful_core::topology::Position;
use reckful_core::Topology;

pub type Topo = Topology<f64>;

const UNREACHED: usize = usize::MAX;

/// All-pairs hop distances by Floyd-Warshall. `None` marks unreachable
/// pairs; the diagonal is `Some(0)`.
pub fn floyd_warshall(t: &Topo) -> Vec<Vec<Option<usize>>> {
    let n = t.node_count();
    let mut d = vec![vec![UNREACHED; n]; n];
    for v in 0..n {
        d[v][v] = 0;
    }
    for (u, v) in t.edges() {
        d[u][v] = 1;
        d[v][u] = 1;
    }
    for k in 0..n {
        for i in 0..n {
            if d[i][k] == UNREACHED {
                continue;
            }
            for j in 0..n {
                if d[k][j] == UNREACHED {
                    continue;
                }
                let via = d[i][k] + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    d.into_iter()
        .map(|row| {
            row.into_iter()
                .map(|x| if x == UNREACHED { None } else { Some(x) })
                .collect()
        })
        .collect()
}

pub fn connected(t: &Topo) -> bool {
    let n = t.node_count();
    if n <= 1 {
        return true;
    }
    let d = floyd_warshall(t);
    d[0].iter().all(Option::is_some)
}

/// Per-node mean hop distance to the other n - 1 nodes. `None` when the
/// graph is disconnected.
fn per_node_means(t: &Topo) -> Option<Vec<f64>> {
    let n = t.node_count();
    let d = floyd_warshall(t);
    let mut means = Vec::with_capacity(n);
    for row in &d {
        let mut sum = 0usize;
        for x in row {
            sum += (*x)?;
        }
        means.push(sum as f64 / (n - 1) as f64);
    }
    Some(means)
}

fn median(values: &mut [f64]) -> f64 {
    values.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    let m = values.len();
    if m % 2 == 1 {
        values[m / 2]
    } else {
        (values[m / 2 - 1] + values[m / 2]) / 2.0
    }
}

pub fn naive_cpl(t: &Topo) -> Option<f64> {
    let mut means = per_node_means(t)?;
    Some(median(&mut means))
}

pub fn naive_asp(t: &Topo) -> Option<f64> {
    let n = t.node_count();
    let d = floyd_warshall(t);
    let mut sum = 0usize;
    for i in 0..n {
        for j in (i + 1)..n {
            sum += d[i][j]?;
        }
    }
    Some(sum as f64 / (n * (n - 1) / 2) as f64)
}

pub fn naive_diameter(t: &Topo) -> Option<usize> {
    let d = floyd_warshall(t);
    let mut max = 0;
    for row in &d {
        for x in row {
            max = max.max((*x)?);
        }
    }
    Some(max)
}

pub fn naive_mean_ecc(t: &Topo) -> Option<f64> {
    let n = t.node_count();
    let d = floyd_warshall(t);
    let mut sum = 0usize;
    for row in &d {
        let mut ecc = 0;
        for x in row {
            ecc = ecc.max((*x)?);
        }
        sum += ecc;
    }
    Some(sum as f64 / n as f64)
}

pub fn naive_local_cc(t: &Topo, v: usize) -> f64 {
    let nb = t.neighbors(v);
    let k = nb.len();
    if k < 2 {
        return 0.0;
    }
    let mut links = 0;
    for i in 0..k {
        for j in (i + 1)..k {
            if t.has_edge(nb[i], nb[j]) {
                links += 1;
            }
        }
    }
    links as f64 / (k * (k - 1) / 2) as f64
}

pub fn naive_avg_cc(t: &Topo) -> f64 {
    let n = t.node_count();
    let sum: f64 = (0..n).map(|v| naive_local_cc(t, v)).sum();
    sum / n as f64
}

/// Smallest r such that keeping only edges of Euclidean length <= r leaves
/// the topology connected, found by trying every edge length as the
/// threshold. `None` when even the full edge set is disconnected.
pub fn naive_ctr(t: &Topo) -> Option<f64> {
    let n = t.node_count();
    if n <= 1 {
        return Some(0.0);
    }
    if !connected(t) {
        return None;
    }
    let mut lengths: Vec<f64> = t
        .edges()
        .into_iter()
        .map(|(u, v)| t.edge_length(u, v).expect("embedded"))
        .collect();
    lengths.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    let embedding = t.embedding().expect("embedded");
    for &r in &lengths {
        let mut capped = Topology::with_embedding(
            embedding.positions.clone(),
            embedding.side,
            embedding.range,
        );
        for (u, v) in t.edges() {
            if t.edge_length(u, v).expect("embedded") <= r {
                capped.add_edge(u, v).expect("fresh edge");
            }
        }
        if connected(&capped) {
            return Some(r);
        }
    }
    None
}

/// Random embedded graph: uniform positions in the unit square and an
/// arbitrary (not unit-disk) edge set with the given density.
pub fn random_embedded(rng: &mut seed::Rng, n: usize, p: f64) -> Topo {
    let positions: Vec<Position<f64>> = (0..n)
        .map(|_| Position::new(rng.random_range(0.0..=1.0), rng.random_range(0.0..=1.0)))
        .collect();
    let mut t = Topology::with_embedding(positions, 1.0, 1.0);
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.random_bool(p) {
                t.add_edge(u, v).expect("fresh edge");
            }
        }
    }
    t
}

pub fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-12 * b.abs().max(1.0)
}
