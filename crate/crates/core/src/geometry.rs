//! Spatial topology generation: uniform placement on a square, unit-disk
//! linking, the network-density closed form, border-area handling, and the
//! ring-lattice/rewiring baseline generator.

use std::f64::consts::PI;

use rand::Rng;
use thiserror::Error;

use crate::scalar::Scalar;
use crate::seed;
use crate::topology::{NodeId, Position, Topology};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GeometryError {
    #[error("ring lattice needs an even neighbor count, got {0}")]
    OddLatticeDegree(usize),
    #[error("ring lattice needs k < n, got k = {k}, n = {n}")]
    LatticeDegreeTooLarge { k: usize, n: usize },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlacementConfig<T> {
    pub n: usize,
    pub side: T,
    pub seed: u64,
}

/// `n` positions i.i.d. uniform on the square `[0, side]²`. The sampling
/// order (x then y, node by node) is part of the determinism contract:
/// the same seed always yields the same positions.
pub fn place_uniform<T: Scalar>(config: &PlacementConfig<T>) -> Vec<Position<T>> {
    let mut rng = seed::rng_from_seed(config.seed);
    let mut out = Vec::with_capacity(config.n);
    for _ in 0..config.n {
        let x = rng.random_range(T::zero()..=config.side);
        let y = rng.random_range(T::zero()..=config.side);
        out.push(Position::new(x, y));
    }
    out
}

/// Links every pair within Euclidean distance `tr`, boundary inclusive:
/// a pair at distance exactly `tr` is connected.
pub fn unit_disk<T: Scalar>(positions: Vec<Position<T>>, side: T, tr: T) -> Topology<T> {
    let n = positions.len();
    let mut t = Topology::with_embedding(positions, side, tr);
    let pos = t.embedding().expect("just embedded").positions.clone();

    // Nodes are bucketed into a square grid with cells no narrower than tr,
    // so every link partner sits in the 3x3 cell neighborhood. Grid
    // resolution is capped at √n cells per axis to keep the bucket table
    // linear in n; one cell degenerates to the all-pairs scan.
    let by_range = if tr > T::zero() {
        (side / tr).to_usize().unwrap_or(1)
    } else {
        1
    };
    let by_count = (n as f64).sqrt() as usize;
    let grid = by_range.min(by_count).max(1);
    let scale = T::from_count(grid) / side;
    let cell_of = |p: &Position<T>| -> (usize, usize) {
        let cx = (p.x * scale).to_usize().unwrap_or(0).min(grid - 1);
        let cy = (p.y * scale).to_usize().unwrap_or(0).min(grid - 1);
        (cx, cy)
    };
    let mut buckets: Vec<Vec<NodeId>> = vec![Vec::new(); grid * grid];
    for (v, p) in pos.iter().enumerate() {
        let (cx, cy) = cell_of(p);
        buckets[cy * grid + cx].push(v);
    }

    for u in 0..n {
        let (cx, cy) = cell_of(&pos[u]);
        for row in cy.saturating_sub(1)..=(cy + 1).min(grid - 1) {
            for col in cx.saturating_sub(1)..=(cx + 1).min(grid - 1) {
                for &v in &buckets[row * grid + col] {
                    if v > u && pos[u].dist(&pos[v]) <= tr {
                        t.add_edge(u, v).expect("fresh edge");
                    }
                }
            }
        }
    }
    t
}

/// Network density for a uniform range assignment: total nodal coverage
/// over the simulation area, π·tr²·n / l². Disks reaching beyond the square
/// are not clipped; the closed form depends on that.
pub fn network_density<T: Scalar>(n: usize, tr: T, side: T) -> T {
    T::from_f64c(PI) * tr * tr * T::from_count(n) / (side * side)
}

/// Density for per-node ranges: Σ π·tr_v² / l².
pub fn network_density_general<T: Scalar>(ranges: &[T], side: T) -> T {
    let sum = ranges
        .iter()
        .fold(T::zero(), |acc, &tr| acc + T::from_f64c(PI) * tr * tr);
    sum / (side * side)
}

/// Inverts the density closed form: tr = l·√(k*/(π·n)).
pub fn tr_for_density<T: Scalar>(k_star: T, n: usize, side: T) -> T {
    side * (k_star / (T::from_f64c(PI) * T::from_count(n))).sqrt()
}

/// Nodes at least `margin` away from every side of the square, boundary
/// inclusive.
pub fn nodes_off_border<T: Scalar>(
    positions: &[Position<T>],
    margin: T,
    side: T,
) -> Vec<NodeId> {
    let hi = side - margin;
    positions
        .iter()
        .enumerate()
        .filter(|(_, p)| p.x >= margin && p.x <= hi && p.y >= margin && p.y <= hi)
        .map(|(v, _)| v)
        .collect()
}

/// Nodes outside the border strip of tr/2 width along every side.
pub fn interior_nodes<T: Scalar>(positions: &[Position<T>], tr: T, side: T) -> Vec<NodeId> {
    if tr > side {
        log::warn!("transmission range exceeds side length; interior is empty");
        return Vec::new();
    }
    nodes_off_border(positions, tr / T::from_count(2), side)
}

/// Nodes whose coverage disk lies fully inside the square. A node closer
/// than tr to a side has part of its disk clipped and a proportionally
/// depressed expected degree, so unbiased degree-versus-density estimates
/// average over these nodes only.
pub fn full_coverage_nodes<T: Scalar>(
    positions: &[Position<T>],
    tr: T,
    side: T,
) -> Vec<NodeId> {
    if tr + tr > side {
        log::warn!("coverage disks cannot fit inside the area; no full-coverage nodes");
        return Vec::new();
    }
    nodes_off_border(positions, tr, side)
}

/// Ring lattice: each node linked to its k/2 nearest neighbors on each
/// side. `k` must be even and below `n`.
pub fn ring_lattice<T: Scalar>(n: usize, k: usize) -> Result<Topology<T>, GeometryError> {
    if k % 2 != 0 {
        return Err(GeometryError::OddLatticeDegree(k));
    }
    if k >= n {
        return Err(GeometryError::LatticeDegreeTooLarge { k, n });
    }
    let mut t = Topology::new(n);
    for v in 0..n {
        for step in 1..=(k / 2) {
            let w = (v + step) % n;
            t.add_edge(v, w).expect("fresh lattice edge");
        }
    }
    Ok(t)
}

/// Watts-Strogatz rewiring: visits each original edge once (ascending
/// order), and with probability `p` replaces the larger endpoint by a
/// uniformly random node. Self-loops and duplicates are rejected by
/// re-sampling up to n times, after which the edge stays untouched, so the
/// edge count is always preserved.
pub fn ws_rewire<T: Scalar>(topology: &Topology<T>, p: f64, seed_value: u64) -> Topology<T> {
    assert!((0.0..=1.0).contains(&p), "probability out of range");
    let mut t = topology.clone();
    let n = t.node_count();
    if n < 2 {
        return t;
    }
    let mut rng = seed::rng_from_seed(seed_value);
    for (u, v) in topology.edges() {
        if !rng.random_bool(p) {
            continue;
        }
        // The edge may already have been displaced by an earlier rewire
        // that landed on it; skip in that case.
        if !t.has_edge(u, v) {
            continue;
        }
        for _ in 0..n {
            let w = rng.random_range(0..n);
            if w != u && w != v && !t.has_edge(u, w) {
                t.remove_edge(u, v).expect("present");
                t.add_edge(u, w).expect("fresh");
                break;
            }
        }
    }
    t
}
