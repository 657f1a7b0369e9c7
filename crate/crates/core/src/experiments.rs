//! Seeded Monte-Carlo harnesses: density/degree convergence, link-removal
//! trend curves over repeated applications, a randomized search for a
//! small paradox fixture, and a connectivity probe over densities.
//!
//! Every experiment is bit-reproducible from its config and master seed.
//! Trial i draws its sub-seed deterministically from the master seed, so
//! trials are independent and may run in parallel; aggregation folds over
//! trial index order, which makes scheduling irrelevant to the result.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{self, PlacementConfig};
use crate::metrics::{self, MetricsReport};
use crate::rr::{self, RrConfig};
use crate::scalar::Scalar;
use crate::seed;
use crate::stats::TrialStats;
use crate::topology::{NodeId, Topology};

/// Calibration rows for the interior mean degree at n = 1000: density,
/// measured mean, 95% half-width, sample standard deviation. Gathered at
/// roughly a thousand runs per density (the ci/σ pairs back-solve to
/// R ≈ 1000); the density experiment is expected to reproduce the means.
pub const DENSITY_REFERENCE: [DensityReference; 6] = [
    DensityReference {
        k_star: 6.11,
        mean_degree: 6.10,
        ci95: 0.0087,
        std_dev: 0.14,
    },
    DensityReference {
        k_star: 9.96,
        mean_degree: 9.95,
        ci95: 0.0127,
        std_dev: 0.20,
    },
    DensityReference {
        k_star: 13.74,
        mean_degree: 13.72,
        ci95: 0.0172,
        std_dev: 0.28,
    },
    DensityReference {
        k_star: 16.35,
        mean_degree: 16.32,
        ci95: 0.0201,
        std_dev: 0.32,
    },
    DensityReference {
        k_star: 25.13,
        mean_degree: 25.08,
        ci95: 0.0323,
        std_dev: 0.52,
    },
    DensityReference {
        k_star: 39.27,
        mean_degree: 39.17,
        ci95: 0.0540,
        std_dev: 0.87,
    },
];

/// Densities the trend experiment is calibrated at.
pub const TREND_DENSITIES: [f64; 4] = [6.11, 9.96, 13.74, 25.13];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DensityReference {
    pub k_star: f64,
    pub mean_degree: f64,
    pub ci95: f64,
    pub std_dev: f64,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExperimentError {
    #[error("no connected topology within {attempts} attempts (n = {n}, density too low?)")]
    GenerationBudget { attempts: usize, n: usize },
}

// ---------------------------------------------------------------------
// phase series

/// Metric vectors across the phases of one run (phase 0 = input), raw and
/// normalized to phase 0. Normalized entries are `None` when either value
/// is undefined or the phase-0 value is zero; defined phase-0 entries are
/// exactly 1.0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhaseSeries<T> {
    pub reports: Vec<MetricsReport<T>>,
    pub normalized: Vec<NormalizedReport<T>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormalizedReport<T> {
    pub cc: Option<T>,
    pub cpl: Option<T>,
    pub asp: Option<T>,
    pub k: Option<T>,
    pub d: Option<T>,
    pub mean_ecc: Option<T>,
    pub ctr: Option<T>,
}

fn norm<T: Scalar>(value: Option<T>, base: Option<T>) -> Option<T> {
    match (value, base) {
        (Some(v), Some(b)) if b != T::zero() => Some(v / b),
        _ => None,
    }
}

impl<T: Scalar> PhaseSeries<T> {
    pub fn from_reports(reports: Vec<MetricsReport<T>>) -> Self {
        assert!(!reports.is_empty(), "need at least the input phase");
        let base = reports[0].clone();
        let normalized = reports
            .iter()
            .map(|r| NormalizedReport {
                cc: norm(Some(r.cc), Some(base.cc)),
                cpl: norm(r.cpl, base.cpl),
                asp: norm(r.asp, base.asp),
                k: norm(Some(r.k), Some(base.k)),
                d: norm(
                    r.d.map(T::from_count),
                    base.d.map(T::from_count),
                ),
                mean_ecc: norm(r.mean_ecc, base.mean_ecc),
                ctr: norm(r.ctr, base.ctr),
            })
            .collect();
        Self {
            reports,
            normalized,
        }
    }

    pub fn phases(&self) -> usize {
        self.reports.len()
    }
}

// ---------------------------------------------------------------------
// generation

/// Unit-disk topology at the given density; the trial index selects the
/// placement sub-seed.
pub fn generate<T: Scalar>(
    n: usize,
    k_star: T,
    side: T,
    master_seed: u64,
    trial: u64,
) -> Topology<T> {
    let tr = geometry::tr_for_density(k_star, n, side);
    let positions = geometry::place_uniform(&PlacementConfig {
        n,
        side,
        seed: seed::sub_seed(master_seed, &[seed::TRIAL, trial]),
    });
    geometry::unit_disk(positions, side, tr)
}

/// Like [`generate`], but resamples with fresh attempt sub-seeds until the
/// topology is connected. Returns the topology and the number of rejected
/// (disconnected) draws.
pub fn generate_connected<T: Scalar>(
    n: usize,
    k_star: T,
    side: T,
    master_seed: u64,
    trial: u64,
    max_attempts: usize,
) -> Result<(Topology<T>, usize), ExperimentError> {
    let tr = geometry::tr_for_density(k_star, n, side);
    for attempt in 0..max_attempts {
        let positions = geometry::place_uniform(&PlacementConfig {
            n,
            side,
            seed: seed::sub_seed(
                master_seed,
                &[seed::TRIAL, trial, seed::ATTEMPT, attempt as u64],
            ),
        });
        let t = geometry::unit_disk(positions, side, tr);
        if metrics::is_connected(&t) {
            return Ok((t, attempt));
        }
    }
    Err(ExperimentError::GenerationBudget {
        attempts: max_attempts,
        n,
    })
}

// ---------------------------------------------------------------------
// density convergence

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityConvergenceConfig<T> {
    pub k_star: T,
    pub node_counts: Vec<usize>,
    pub side: T,
    pub runs: usize,
    pub master_seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DensityPoint<T> {
    pub n: usize,
    pub stats: TrialStats<T>,
}

/// Mean node degree per node count, restricted to nodes whose coverage
/// disk lies fully inside the area (shallower border exclusions leave
/// clipped disks in the sample and bias the mean low). An empty selection
/// contributes 0.
pub fn density_convergence<T: Scalar>(cfg: &DensityConvergenceConfig<T>) -> Vec<DensityPoint<T>> {
    cfg.node_counts
        .iter()
        .map(|&n| {
            let tr = geometry::tr_for_density(cfg.k_star, n, cfg.side);
            let samples: Vec<T> = (0..cfg.runs as u64)
                .into_par_iter()
                .map(|trial| {
                    let positions = geometry::place_uniform(&PlacementConfig {
                        n,
                        side: cfg.side,
                        seed: seed::sub_seed(
                            cfg.master_seed,
                            &[seed::TRIAL, n as u64, trial],
                        ),
                    });
                    let t = geometry::unit_disk(positions, cfg.side, tr);
                    let sampled = geometry::full_coverage_nodes(
                        &t.embedding().expect("embedded").positions,
                        tr,
                        cfg.side,
                    );
                    if sampled.is_empty() {
                        return T::zero();
                    }
                    let total: usize = sampled.iter().map(|&v| t.degree(v)).sum();
                    T::from_count(total) / T::from_count(sampled.len())
                })
                .collect();
            DensityPoint {
                n,
                stats: TrialStats::from_samples(&samples),
            }
        })
        .collect()
}

// ---------------------------------------------------------------------
// removal trend

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrendConfig<T> {
    pub k_star: T,
    pub n: usize,
    pub side: T,
    pub runs: usize,
    pub master_seed: u64,
    /// Variant, guard, and round count for each run. The order seed is
    /// overridden per run from the master seed chain.
    pub rr: RrConfig,
    pub max_generation_attempts: usize,
}

impl<T: Scalar> TrendConfig<T> {
    pub fn new(k_star: T, runs: usize, master_seed: u64) -> Self {
        Self {
            k_star,
            n: 1000,
            side: T::one(),
            runs,
            master_seed,
            rr: RrConfig::default(),
            // sparse densities connect rarely (at k* = 6.11, n = 1000 only
            // about 1 draw in 5000 comes out connected), so the resampling
            // cap sits far above the expected attempt count
            max_generation_attempts: 50_000,
        }
    }
}

/// Across-run aggregate of one normalized metric at one phase. `None`
/// when fewer than 2 runs had the metric defined.
pub type MetricAggregate<T> = Option<TrialStats<T>>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhaseAggregate<T> {
    pub phase: usize,
    pub cc: MetricAggregate<T>,
    pub cpl: MetricAggregate<T>,
    pub asp: MetricAggregate<T>,
    pub k: MetricAggregate<T>,
    pub d: MetricAggregate<T>,
    pub mean_ecc: MetricAggregate<T>,
    pub ctr: MetricAggregate<T>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrendSummary<T> {
    pub k_star: T,
    pub runs: usize,
    /// Disconnected draws rejected during generation, summed over runs.
    pub rejected_topologies: usize,
    /// Aggregates of the normalized metrics, one entry per phase.
    pub phases: Vec<PhaseAggregate<T>>,
    /// Raw per-run series, in trial order.
    pub series: Vec<PhaseSeries<T>>,
}

/// Applies the removal algorithm to `runs` connected topologies and
/// aggregates the normalized metric series across runs.
pub fn rr_trend_experiment<T: Scalar>(
    cfg: &TrendConfig<T>,
) -> Result<TrendSummary<T>, ExperimentError> {
    let outcomes: Vec<Result<(PhaseSeries<T>, usize), ExperimentError>> = (0..cfg.runs as u64)
        .into_par_iter()
        .map(|trial| {
            let (t, rejected) = generate_connected(
                cfg.n,
                cfg.k_star,
                cfg.side,
                cfg.master_seed,
                trial,
                cfg.max_generation_attempts,
            )?;
            let rr_config = RrConfig {
                order_policy: rr::OrderPolicy::Random {
                    seed: seed::sub_seed(cfg.master_seed, &[seed::TRIAL, trial, seed::ORDER]),
                },
                ..cfg.rr
            };
            let outcome = rr::run_rr(&t, &rr_config).expect("connected input");
            Ok((outcome.phases, rejected))
        })
        .collect();

    let mut series = Vec::with_capacity(cfg.runs);
    let mut rejected_topologies = 0;
    for outcome in outcomes {
        let (s, rejected) = outcome?;
        series.push(s);
        rejected_topologies += rejected;
    }

    let phase_count = series.iter().map(PhaseSeries::phases).max().unwrap_or(0);
    let phases = (0..phase_count)
        .map(|phase| {
            let pick = |f: &dyn Fn(&NormalizedReport<T>) -> Option<T>| -> MetricAggregate<T> {
                let values: Vec<T> = series
                    .iter()
                    .filter_map(|s| s.normalized.get(phase).and_then(f))
                    .collect();
                (values.len() >= 2).then(|| TrialStats::from_samples(&values))
            };
            PhaseAggregate {
                phase,
                cc: pick(&|r| r.cc),
                cpl: pick(&|r| r.cpl),
                asp: pick(&|r| r.asp),
                k: pick(&|r| r.k),
                d: pick(&|r| r.d),
                mean_ecc: pick(&|r| r.mean_ecc),
                ctr: pick(&|r| r.ctr),
            }
        })
        .collect();

    Ok(TrendSummary {
        k_star: cfg.k_star,
        runs: cfg.runs,
        rejected_topologies,
        phases,
        series,
    })
}

// ---------------------------------------------------------------------
// paradox fixture search

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParadoxConfig<T> {
    pub n: usize,
    pub links: usize,
    /// Required number of committed removals, exactly.
    pub removals: usize,
    /// Target mean clustering coefficient at 2-decimal rounding.
    pub cc_before: f64,
    pub cc_after: f64,
    pub side: T,
    pub master_seed: u64,
    pub budget: usize,
    pub rr: RrConfig,
}

impl<T: Scalar> ParadoxConfig<T> {
    /// The published example: 7 nodes, 11 links, 2 removals, clustering
    /// 0.70 before and 0.81 after.
    pub fn standard(master_seed: u64, budget: usize) -> Self {
        Self {
            n: 7,
            links: 11,
            removals: 2,
            cc_before: 0.70,
            cc_after: 0.81,
            side: T::one(),
            master_seed,
            budget,
            rr: RrConfig {
                order_policy: rr::OrderPolicy::Index,
                ..RrConfig::default()
            },
        }
    }
}

/// Exhaustive cross-check of a fixture: every unordered pair of links is
/// hypothetically removed (in both orders, each removal required to pass
/// the connectivity guard on the live topology) and the resulting mean
/// clustering compared against the pair the algorithm chose.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RemovalPairScan<T> {
    pub pairs_considered: usize,
    pub guard_feasible: usize,
    /// Best mean clustering over guard-feasible pairs.
    pub best_cc: T,
    /// Mean clustering after the algorithm's own removals.
    pub chosen_cc: T,
    pub chosen_is_optimal: bool,
    /// Replay of the algorithm's removals: each passed the guard and
    /// strictly raised the 2-hop clustering sum on the live topology.
    pub chosen_pair_valid: bool,
}

#[derive(Debug, Clone)]
pub struct ParadoxFixture<T> {
    pub topology: Topology<T>,
    pub removed: Vec<(NodeId, NodeId)>,
    pub before: MetricsReport<T>,
    pub after: MetricsReport<T>,
    pub scan: RemovalPairScan<T>,
}

/// Structurally valid candidates seen on the way, for nearest-miss
/// reporting when the budget runs out.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParadoxSearchLog {
    pub attempts: usize,
    /// Connected draws with the requested link count.
    pub structural_hits: usize,
    /// ... whose initial clustering also rounded to the target.
    pub cc_before_hits: usize,
    /// Closest (cc_before, cc_after) pair over structural hits.
    pub nearest: Option<(f64, f64)>,
}

#[derive(Debug, Clone)]
pub struct ParadoxOutcome<T> {
    pub fixture: Option<ParadoxFixture<T>>,
    pub log: ParadoxSearchLog,
}

fn round2(x: f64) -> f64 {
    (x * 100.0).round() / 100.0
}

/// Randomized search for a small connected unit-disk topology with the
/// requested link count whose clustering matches `cc_before`, and on
/// which the removal algorithm commits exactly `removals` links landing
/// on `cc_after`. The transmission range of each draw is set to the
/// links-th smallest pairwise distance so the link count is exact by
/// construction; draws with a distance tie there are skipped.
pub fn paradox_search<T: Scalar>(cfg: &ParadoxConfig<T>) -> ParadoxOutcome<T> {
    assert!(cfg.n >= 2 && cfg.links <= cfg.n * (cfg.n - 1) / 2);
    let mut log = ParadoxSearchLog {
        attempts: 0,
        structural_hits: 0,
        cc_before_hits: 0,
        nearest: None,
    };
    let mut nearest_score = f64::INFINITY;

    for attempt in 0..cfg.budget as u64 {
        log.attempts += 1;
        let positions = geometry::place_uniform(&PlacementConfig {
            n: cfg.n,
            side: cfg.side,
            seed: seed::sub_seed(cfg.master_seed, &[seed::ATTEMPT, attempt]),
        });
        let mut dists: Vec<T> = Vec::with_capacity(cfg.n * (cfg.n - 1) / 2);
        for i in 0..cfg.n {
            for j in (i + 1)..cfg.n {
                dists.push(positions[i].dist(&positions[j]));
            }
        }
        dists.sort_by(|a, b| a.partial_cmp(b).expect("finite distances"));
        let tr = dists[cfg.links - 1];
        if cfg.links < dists.len() && dists[cfg.links] <= tr {
            continue; // tie would produce extra links
        }
        let t = geometry::unit_disk(positions, cfg.side, tr);
        debug_assert_eq!(t.edge_count(), cfg.links);
        if !metrics::is_connected(&t) {
            continue;
        }
        log.structural_hits += 1;

        let cc_b = metrics::avg_cc(&t).expect("nonempty").to_f64().expect("finite");
        let outcome = rr::run_rr(&t, &cfg.rr).expect("connected input");
        let removed: Vec<(NodeId, NodeId)> = outcome
            .rounds
            .iter()
            .flat_map(|r| r.removed.iter().copied())
            .collect();
        let cc_a = metrics::avg_cc(&outcome.topology)
            .expect("nonempty")
            .to_f64()
            .expect("finite");

        let score = (cc_b - cfg.cc_before).abs() + (cc_a - cfg.cc_after).abs();
        if score < nearest_score {
            nearest_score = score;
            log.nearest = Some((cc_b, cc_a));
        }

        if (round2(cc_b) - cfg.cc_before).abs() > 1e-9 {
            continue;
        }
        log.cc_before_hits += 1;
        if removed.len() != cfg.removals || (round2(cc_a) - cfg.cc_after).abs() > 1e-9 {
            continue;
        }

        let scan = scan_removal_pairs(&t, &removed, &outcome.topology, &cfg.rr);
        return ParadoxOutcome {
            fixture: Some(ParadoxFixture {
                before: metrics::metrics_report(&t).expect("nonempty"),
                after: metrics::metrics_report(&outcome.topology).expect("nonempty"),
                topology: t,
                removed,
                scan,
            }),
            log,
        };
    }
    ParadoxOutcome { fixture: None, log }
}

/// See [`RemovalPairScan`]. `removed` must hold exactly 2 links.
fn scan_removal_pairs<T: Scalar>(
    initial: &Topology<T>,
    removed: &[(NodeId, NodeId)],
    final_topology: &Topology<T>,
    config: &RrConfig,
) -> RemovalPairScan<T> {
    let chosen_cc = metrics::avg_cc(final_topology).expect("nonempty");
    let edges = initial.edges();
    let mut guard_feasible = 0;
    let mut best_cc = T::zero();
    let mut pairs_considered = 0;
    for i in 0..edges.len() {
        for j in (i + 1)..edges.len() {
            pairs_considered += 1;
            let mut feasible = false;
            for order in [[edges[i], edges[j]], [edges[j], edges[i]]] {
                let mut t = initial.clone();
                let mut ok = true;
                for (u, v) in order {
                    if !rr::guard_passes(&t, u, v, config.guard_mode) {
                        ok = false;
                        break;
                    }
                    t.remove_edge(u, v).expect("present");
                }
                if ok {
                    feasible = true;
                    let cc = metrics::avg_cc(&t).expect("nonempty");
                    if cc > best_cc {
                        best_cc = cc;
                    }
                }
            }
            if feasible {
                guard_feasible += 1;
            }
        }
    }

    // replay the algorithm's own removals with independent checks
    let mut t = initial.clone();
    let mut chosen_pair_valid = true;
    for &(u, v) in removed {
        let set = rr::two_hop_set(&t, u, v);
        let before = crate::exact::sum_local_cc(&t, &set);
        let guard = rr::guard_passes(&t, u, v, config.guard_mode);
        t.remove_edge(u, v).expect("present");
        let after = crate::exact::sum_local_cc(&t, &set);
        if !guard || after <= before {
            chosen_pair_valid = false;
        }
    }

    let tol = T::from_f64c(1e-12);
    RemovalPairScan {
        pairs_considered,
        guard_feasible,
        best_cc,
        chosen_cc,
        chosen_is_optimal: best_cc - chosen_cc <= tol,
        chosen_pair_valid,
    }
}

// ---------------------------------------------------------------------
// connectivity probe

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeConfig<T> {
    pub densities: Vec<T>,
    pub n: usize,
    pub side: T,
    pub runs: usize,
    pub master_seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProbePoint<T> {
    pub k_star: T,
    pub connected_fraction: f64,
}

/// Fraction of generated topologies that come out connected, per density.
pub fn connectivity_threshold_probe<T: Scalar>(cfg: &ProbeConfig<T>) -> Vec<ProbePoint<T>> {
    cfg.densities
        .iter()
        .enumerate()
        .map(|(di, &k_star)| {
            let connected: usize = (0..cfg.runs as u64)
                .into_par_iter()
                .map(|run| {
                    let t = generate(
                        cfg.n,
                        k_star,
                        cfg.side,
                        seed::sub_seed(cfg.master_seed, &[seed::TRIAL, di as u64]),
                        run,
                    );
                    usize::from(metrics::is_connected(&t))
                })
                .sum();
            ProbePoint {
                k_star,
                connected_fraction: connected as f64 / cfg.runs as f64,
            }
        })
        .collect()
}
