//! Acceptance gate: ten checks (A1 to A10), one test each, covering
//! density calibration, the removal trend, connectivity and monotonicity
//! invariants, order insensitivity, stabilization, the paradox fixture,
//! oracle equivalence, and the rewiring sanity check. Each test prints a
//! single `[An] PASS/FAIL` line with the measured numbers (visible under
//! `--nocapture`; the per-test result line carries the verdict otherwise).
//!
//! Seeds, tolerances, and reference values are pinned below. Two checks
//! (A3 trend bands, A7 stabilization) encode externally reported values
//! that the commit discipline implemented here provably cannot reproduce;
//! they fail with a pointer to README.md's reproduction notes instead of
//! being loosened. The regression envelopes around today's measured means
//! still hold those checks to the current behavior.

mod common;

use reckful_core::experiments::{
    self, DensityConvergenceConfig, ParadoxConfig, TrendConfig, DENSITY_REFERENCE, TREND_DENSITIES,
};
use reckful_core::geometry::{ring_lattice, ws_rewire};
use reckful_core::rr::{self, OrderPolicy};
use reckful_core::{exact, metrics, seed, MetricError, RrConfig, Topology};

// Every experiment below is deterministic in its master seed; reruns are
// byte-identical. The seeds were fixed before the reference values were
// frozen and are not tuned.
const A1_SEED: u64 = 101;
const A2_SEED: u64 = 102;
const A3_SEED: u64 = 40301;
const A4_SEED: u64 = 40401;
const A5_SEED: u64 = 40501;
const A6_SEED: u64 = 40601;
const A7_SEED: u64 = 40701;
const A8_SEED: u64 = 0;
const A9_SEED: u64 = 0xACC;
const A10_SEED: u64 = 41001;

/// A1: published interior mean degrees at n = 1000 (the `mean_degree`
/// column of `DENSITY_REFERENCE`), matched to ±0.15 over 100 runs each.
#[test]
fn a1_density_degree_reference() {
    const TOLERANCE: f64 = 0.15;
    const RUNS: usize = 100;
    let mut lines = Vec::new();
    let mut pass = true;
    for row in DENSITY_REFERENCE {
        let cfg = DensityConvergenceConfig {
            k_star: row.k_star,
            node_counts: vec![1000],
            side: 1.0,
            runs: RUNS,
            master_seed: A1_SEED,
        };
        let mean = experiments::density_convergence(&cfg)[0].stats.mean;
        let ok = (mean - row.mean_degree).abs() <= TOLERANCE;
        pass &= ok;
        lines.push(format!(
            "k*={} mean {mean:.4} ref {} {}",
            row.k_star,
            row.mean_degree,
            if ok { "ok" } else { "MISS" }
        ));
    }
    println!(
        "[A1] {} — interior mean degree ±{TOLERANCE}: {}",
        if pass { "PASS" } else { "FAIL" },
        lines.join("; ")
    );
    assert!(pass, "interior mean degree off the reference table");
}

/// A2: at fixed density the interior mean degree approaches the density
/// value as n grows; at n = 1000 it lands within ±0.2.
#[test]
fn a2_density_convergence() {
    const K_STAR: f64 = 13.74;
    let cfg = DensityConvergenceConfig {
        k_star: K_STAR,
        node_counts: vec![50, 100, 200, 500, 1000],
        side: 1.0,
        runs: 100,
        master_seed: A2_SEED,
    };
    let points = experiments::density_convergence(&cfg);
    let dev: Vec<f64> = points.iter().map(|p| (p.stats.mean - K_STAR).abs()).collect();
    let first = dev[0];
    let last = *dev.last().unwrap();
    let pass = last < first && last <= 0.2;
    println!(
        "[A2] {} — deviation from {K_STAR} by n {:?}: {:?}",
        if pass { "PASS" } else { "FAIL" },
        points.iter().map(|p| p.n).collect::<Vec<_>>(),
        dev.iter().map(|d| (d * 1e4).round() / 1e4).collect::<Vec<_>>()
    );
    assert!(last < first, "deviation did not shrink from n=50 to n=1000");
    assert!(last <= 0.2, "n=1000 mean degree off by more than 0.2");
}

/// A3: normalized removal trend after 4 rounds, 30 runs per density.
///
/// Direction and cross-density ordering are required outright. The bands
/// transcribe the originally reported trend; the serialized commit
/// discipline implemented here removes fewer links per run than the
/// distributed rounds those numbers came from, so part of the bands is
/// out of reach (measured means pinned below; see README.md, section
/// "Reproduction notes"). The band comparison is still asserted, so this
/// test fails until the discipline question is resolved; the regression
/// envelope (±0.04 around today's means) separately protects against
/// silent behavioral drift.
#[test]
fn a3_removal_trend_bands() {
    const RUNS: usize = 30;
    const ROUNDS: usize = 4;
    // cc, k, cpl bands at the two pinned densities; ctr band everywhere.
    const CC_BAND: [(f64, [f64; 2]); 2] = [(6.11, [1.04, 1.12]), (25.13, [1.14, 1.24])];
    const K_BAND: [(f64, [f64; 2]); 2] = [(6.11, [0.74, 0.86]), (25.13, [0.52, 0.64])];
    const CPL_BAND: [(f64, [f64; 2]); 2] = [(6.11, [1.03, 1.12]), (25.13, [1.33, 1.53])];
    const CTR_BAND: [f64; 2] = [0.98, 1.05];
    // Means measured at the pinned seed (R = 30, 4 rounds), frozen as the
    // regression reference: (k*, cc, k, cpl, ctr).
    const MEASURED: [(f64, f64, f64, f64, f64); 4] = [
        (6.11, 1.1088, 0.8781, 1.0709, 1.0005),
        (9.96, 1.1923, 0.8051, 1.1492, 1.0188),
        (13.74, 1.2326, 0.7697, 1.1968, 1.0513),
        (25.13, 1.2540, 0.7352, 1.2470, 1.2364),
    ];
    const ENVELOPE: f64 = 0.04;

    let mut finals = Vec::new();
    for &k_star in TREND_DENSITIES.iter() {
        let cfg = TrendConfig {
            rr: RrConfig {
                max_rounds: ROUNDS,
                ..RrConfig::default()
            },
            ..TrendConfig::new(k_star, RUNS, A3_SEED)
        };
        let summary = experiments::rr_trend_experiment(&cfg).unwrap();
        let last = summary.phases.last().unwrap().clone();
        let get = |agg: &Option<reckful_core::TrialStats<f64>>| agg.as_ref().unwrap().mean;
        finals.push((k_star, get(&last.cc), get(&last.k), get(&last.cpl), get(&last.ctr)));
    }

    // Direction at every density: clustering up, degree down, paths up.
    for &(k_star, cc, k, cpl, _) in &finals {
        assert!(cc > 1.0 && k < 1.0 && cpl > 1.0, "trend direction broken at k*={k_star}");
    }
    // Ordering across densities: the denser the network, the more
    // clustering it gains, the more links it sheds, and the further the
    // paths stretch. Monotone over all four densities, not just the ends.
    for pair in finals.windows(2) {
        let (lo, hi) = (pair[0], pair[1]);
        assert!(
            hi.1 > lo.1 && hi.2 < lo.2 && hi.3 > lo.3,
            "cross-density ordering broken between k*={} and k*={}",
            lo.0,
            hi.0
        );
    }
    // Regression envelope around the frozen means.
    for (&(k_star, cc, k, cpl, ctr), &(_, rc, rk, rcpl, rctr)) in finals.iter().zip(&MEASURED) {
        for (name, got, reference) in
            [("cc", cc, rc), ("k", k, rk), ("cpl", cpl, rcpl), ("ctr", ctr, rctr)]
        {
            assert!(
                (got - reference).abs() <= ENVELOPE,
                "normalized {name} drifted at k*={k_star}: {got:.4} vs frozen {reference:.4}"
            );
        }
    }

    let in_band = |x: f64, band: [f64; 2]| x >= band[0] && x <= band[1];
    let mut misses = Vec::new();
    for (bands, idx, name) in [(CC_BAND, 1, "cc"), (K_BAND, 2, "k"), (CPL_BAND, 3, "cpl")] {
        for (k_star, band) in bands {
            let row = finals.iter().find(|f| f.0 == k_star).unwrap();
            let value = [row.0, row.1, row.2, row.3, row.4][idx];
            if !in_band(value, band) {
                misses.push(format!("{name}@{k_star} {value:.4} outside [{}, {}]", band[0], band[1]));
            }
        }
    }
    for &(k_star, _, _, _, ctr) in &finals {
        if !in_band(ctr, CTR_BAND) {
            misses.push(format!(
                "ctr@{k_star} {ctr:.4} outside [{}, {}]",
                CTR_BAND[0], CTR_BAND[1]
            ));
        }
    }
    let pass = misses.is_empty();
    println!(
        "[A3] {} — trend after {ROUNDS} rounds, {RUNS} runs: {}{}",
        if pass { "PASS" } else { "FAIL" },
        finals
            .iter()
            .map(|f| format!("k*={} cc {:.3} k {:.3} cpl {:.3} ctr {:.3}", f.0, f.1, f.2, f.3, f.4))
            .collect::<Vec<_>>()
            .join("; "),
        if pass { String::new() } else { format!(" | out of band: {}", misses.join(", ")) }
    );
    assert!(
        pass,
        "reported trend bands missed: {}. Direction, ordering, and the regression \
         envelope all hold; the serialized commit discipline cannot reach these \
         bands (README.md, Reproduction notes).",
        misses.join(", ")
    );
}

/// A4: the guarded variant never disconnects anything: every phase of
/// every run stays connected, over at least 500 runs spread across all
/// reference densities.
#[test]
fn a4_guard_preserves_connectivity() {
    const RUNS_PER_DENSITY: usize = 84;
    const N: usize = 150;
    let mut runs = 0usize;
    for (di, row) in DENSITY_REFERENCE.iter().enumerate() {
        for trial in 0..RUNS_PER_DENSITY as u64 {
            let (t, _) = experiments::generate_connected(
                N,
                row.k_star,
                1.0,
                seed::sub_seed(A4_SEED, &[di as u64]),
                trial,
                2_000,
            )
            .unwrap();
            let config = RrConfig {
                order_policy: OrderPolicy::Random {
                    seed: seed::sub_seed(A4_SEED, &[seed::TRIAL, trial, seed::ORDER]),
                },
                ..RrConfig::default()
            };
            let outcome = rr::run_rr(&t, &config).unwrap();
            for (phase, report) in outcome.phases.reports.iter().enumerate() {
                assert!(
                    report.connected,
                    "disconnected at k*={} trial {trial} phase {phase}",
                    row.k_star
                );
            }
            runs += 1;
        }
    }
    assert!(runs >= 500);
    println!("[A4] PASS — {runs} guarded runs, every phase connected");
}

/// A5: every committed removal strictly raises the exact clustering sum
/// (rational arithmetic, no float tolerance), and the per-phase mean
/// never drops. Verified two ways: the per-commit instrumentation inside
/// the round loop (active in this build) and an independent replay of the
/// removal logs below.
#[test]
fn a5_monotone_clustering_per_commit() {
    assert!(
        cfg!(debug_assertions),
        "acceptance must run with debug assertions so per-commit instrumentation is active"
    );
    const N: usize = 150;
    let mut commits = 0usize;
    let mut runs = 0usize;
    for (di, k_star) in [6.11, 13.74, 25.13].into_iter().enumerate() {
        for trial in 0..10u64 {
            let (t, _) = experiments::generate_connected(
                N,
                k_star,
                1.0,
                seed::sub_seed(A5_SEED, &[di as u64]),
                trial,
                2_000,
            )
            .unwrap();
            let config = RrConfig {
                order_policy: OrderPolicy::Random {
                    seed: seed::sub_seed(A5_SEED, &[seed::TRIAL, trial, seed::ORDER]),
                },
                ..RrConfig::default()
            };
            let outcome = rr::run_rr(&t, &config).unwrap();
            // Replay the logged removals in commit order on a copy and
            // recheck the global exact sum around every single commit.
            let mut replay = t.clone();
            let everyone: Vec<_> = (0..replay.node_count()).collect();
            let mut sum = exact::sum_local_cc(&replay, &everyone);
            for round in &outcome.rounds {
                for &(v, u) in &round.removed {
                    replay.remove_edge(v, u).unwrap();
                    let next = exact::sum_local_cc(&replay, &everyone);
                    assert!(next > sum, "commit ({v}, {u}) did not raise the exact sum");
                    sum = next;
                    commits += 1;
                }
                assert!(
                    round.avg_cc_after >= round.avg_cc_before - 1e-12,
                    "mean clustering dropped across round {}",
                    round.round
                );
            }
            assert_eq!(replay, outcome.topology, "replay diverged from the reported result");
            runs += 1;
        }
    }
    println!("[A5] PASS — exact clustering sum rose at each of {commits} commits over {runs} runs");
}

/// A6: commit order barely matters: across 20 evaluation orders on the
/// same topology, the final mean clustering spreads by at most 2%.
#[test]
fn a6_order_insensitivity() {
    const SPREAD_LIMIT: f64 = 0.02;
    let mut worst = 0.0_f64;
    for trial in 0..10u64 {
        let (t, _) =
            experiments::generate_connected(1000, 13.74, 1.0, A6_SEED, trial, 400).unwrap();
        let mut finals = Vec::new();
        for order_seed in 0..20u64 {
            let config = RrConfig {
                order_policy: OrderPolicy::Random { seed: order_seed },
                ..RrConfig::default()
            };
            let outcome = rr::run_rr(&t, &config).unwrap();
            finals.push(metrics::avg_cc(&outcome.topology).unwrap());
        }
        let max = finals.iter().cloned().fold(f64::MIN, f64::max);
        let min = finals.iter().cloned().fold(f64::MAX, f64::min);
        let spread = (max - min) / (finals.iter().sum::<f64>() / finals.len() as f64);
        worst = worst.max(spread);
    }
    let pass = worst <= SPREAD_LIMIT;
    println!(
        "[A6] {} — worst relative spread of final clustering over orders: {worst:.4}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "order sensitivity above {SPREAD_LIMIT}");
}

/// A7: stabilization: runs should reach a removal-free round by round 6
/// in at least 95% of cases across the reference densities.
///
/// The serialized discipline trails off more slowly than that at high
/// density (each round re-opens a small frontier of newly profitable
/// pairs), so this check fails honestly; the measured stabilization
/// profile is pinned in README.md's reproduction notes alongside A3.
#[test]
fn a7_stabilization_by_round_six() {
    const TRIALS_PER_DENSITY: usize = 10;
    let mut quiet_by_6 = 0usize;
    let mut total = 0usize;
    let mut profile = Vec::new();
    for (di, row) in DENSITY_REFERENCE.iter().enumerate() {
        let mut quiet_rounds = Vec::new();
        for trial in 0..TRIALS_PER_DENSITY as u64 {
            let (t, _) = experiments::generate_connected(
                1000,
                row.k_star,
                1.0,
                seed::sub_seed(A7_SEED, &[di as u64]),
                trial,
                200_000,
            )
            .unwrap();
            let config = RrConfig {
                max_rounds: 10,
                stop_when_stable: true,
                order_policy: OrderPolicy::Random { seed: trial },
                ..RrConfig::default()
            };
            let outcome = rr::run_rr(&t, &config).unwrap();
            let quiet = outcome.rounds.iter().find(|r| r.removed.is_empty()).map(|r| r.round);
            if quiet.is_some_and(|q| q <= 6) {
                quiet_by_6 += 1;
            }
            quiet_rounds.push(quiet);
            total += 1;
        }
        profile.push(format!("k*={} quiet rounds {:?}", row.k_star, quiet_rounds));
    }
    let fraction = quiet_by_6 as f64 / total as f64;
    let pass = fraction >= 0.95;
    println!(
        "[A7] {} — {quiet_by_6}/{total} runs quiet by round 6 ({:.0}%): {}",
        if pass { "PASS" } else { "FAIL" },
        fraction * 100.0,
        profile.join("; ")
    );
    assert!(
        pass,
        "only {quiet_by_6}/{total} runs reached a removal-free round by round 6; the \
         serialized discipline keeps finding small gains past round 6 at high density \
         (README.md, Reproduction notes)"
    );
}

/// A8: the link-removal paradox reproduced as a concrete artifact: a
/// 7-node, 11-link connected topology whose mean clustering rounds to
/// 0.70, on which the guarded algorithm removes exactly 2 links and lands
/// on 0.81, with an exhaustive scan over removal pairs confirming the
/// committed pair is guard-feasible, gain-positive, and optimal.
///
/// The fixture found at this seed also reproduces the secondary values of
/// the originally published example: ASP 1.57 -> 1.76 directly, and CPL
/// 1.29 -> 1.71 plus the fractional diameter 1.71 -> 1.71 once per-node
/// mean distances are divided by n instead of n - 1 (the convention the
/// original table used). The one published value no fixture can match is
/// k after removal: 9 remaining links over 7 nodes force 18/7 = 2.57, not
/// the reported 2.75.
#[test]
fn a8_paradox_fixture() {
    let cfg = ParadoxConfig::<f64>::standard(A8_SEED, 50_000);
    let outcome = experiments::paradox_search(&cfg);
    let fixture = outcome.fixture.expect("pinned seed reproduces the fixture");
    let round2 = |x: f64| (x * 100.0).round() / 100.0;
    let n = fixture.topology.node_count();
    assert_eq!(n, 7);
    assert_eq!(fixture.topology.edge_count(), 11);
    assert!(fixture.before.connected && fixture.after.connected);
    assert_eq!(round2(fixture.before.cc), 0.70);
    assert_eq!(fixture.removed.len(), 2);
    assert_eq!(round2(fixture.after.cc), 0.81);
    assert!(fixture.scan.chosen_pair_valid, "replayed removals must pass guard and gain");
    assert!(fixture.scan.guard_feasible > 0);
    assert!(fixture.scan.chosen_cc <= fixture.scan.best_cc + 1e-12);

    // Secondary values against the published example.
    assert_eq!(round2(fixture.before.asp.unwrap()), 1.57);
    assert_eq!(round2(fixture.after.asp.unwrap()), 1.76);
    let rescale = (n - 1) as f64 / n as f64;
    assert_eq!(round2(fixture.before.cpl.unwrap() * rescale), 1.29);
    assert_eq!(round2(fixture.after.cpl.unwrap() * rescale), 1.71);
    let max_mean_over_n = |t: &Topology<f64>| {
        (0..n)
            .map(|v| {
                let d = metrics::shortest_paths_from(t, v).unwrap();
                d.iter().map(|x| x.unwrap() as f64).sum::<f64>() / n as f64
            })
            .fold(f64::MIN, f64::max)
    };
    let mut after = fixture.topology.clone();
    for &(a, b) in &fixture.removed {
        after.remove_edge(a, b).unwrap();
    }
    assert_eq!(round2(max_mean_over_n(&fixture.topology)), 1.71);
    assert_eq!(round2(max_mean_over_n(&after)), 1.71);
    assert!(common::close(fixture.before.k, 22.0 / 7.0));
    assert!(common::close(fixture.after.k, 18.0 / 7.0));

    println!(
        "[A8] PASS — paradox fixture: removed {:?}, cc {:.4} -> {:.4}, scan {}/{} feasible pairs, chosen optimal: {}",
        fixture.removed,
        fixture.before.cc,
        fixture.after.cc,
        fixture.scan.guard_feasible,
        fixture.scan.pairs_considered,
        fixture.scan.chosen_is_optimal,
    );
}

/// A9: the metric stack agrees with independent brute-force oracles to
/// 1e-12 relative error on a thousand random small graphs plus the named
/// closed-form families.
#[test]
fn a9_metric_oracle_equivalence() {
    use rand::Rng;
    let mut rng = seed::rng_from_seed(A9_SEED);
    let mut checked = 0usize;
    for _ in 0..1000 {
        let n = rng.random_range(2..=8);
        let p = rng.random_range(0.15..0.95);
        let t = common::random_embedded(&mut rng, n, p);
        check_against_oracles(&t);
        checked += 1;
    }
    let mut named: Vec<common::Topo> = Vec::new();
    for n in 3..=8 {
        named.push(Topology::complete(n));
    }
    for n in 2..=10 {
        named.push(Topology::path(n));
    }
    for n in 3..=12 {
        named.push(Topology::cycle(n));
    }
    for leaves in 2..=9 {
        named.push(Topology::star(leaves));
    }
    for (n, k) in [(8, 2), (10, 4), (12, 6), (24, 4), (30, 6)] {
        named.push(ring_lattice(n, k).unwrap());
    }
    for t in &named {
        check_against_oracles(t);
        checked += 1;
    }
    println!("[A9] PASS — {checked} graphs agree with the brute-force oracles to 1e-12");
}

/// A10: rewiring a ring lattice at p = 0.1 cuts path length much faster
/// than clustering: the normalized path length sits below the normalized
/// clustering, averaged over 20 seeds.
#[test]
fn a10_rewiring_shortcut_effect() {
    let base: Topology<f64> = ring_lattice(1000, 10).unwrap();
    let base_cc = metrics::avg_cc(&base).unwrap();
    let base_cpl = metrics::cpl(&base).unwrap();
    let mut norm_cc = 0.0;
    let mut norm_cpl = 0.0;
    const SEEDS: usize = 20;
    for s in 0..SEEDS as u64 {
        let rewired = ws_rewire(&base, 0.1, seed::sub_seed(A10_SEED, &[s]));
        norm_cc += metrics::avg_cc(&rewired).unwrap() / base_cc / SEEDS as f64;
        norm_cpl += metrics::cpl(&rewired).unwrap() / base_cpl / SEEDS as f64;
    }
    let pass = norm_cpl < norm_cc;
    println!(
        "[A10] {} — p=0.1 normalized cpl {norm_cpl:.4} vs normalized cc {norm_cc:.4}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "path length should collapse before clustering does");
}

/// Compares every metric against the brute-force oracles in
/// `tests/common`, to 1e-12 relative error, including the
/// defined/undefined pattern on disconnected graphs.
fn check_against_oracles(t: &common::Topo) {
    for v in 0..t.node_count() {
        assert!(common::close(
            metrics::local_cc(t, v).unwrap(),
            common::naive_local_cc(t, v)
        ));
    }
    assert!(common::close(metrics::avg_cc(t).unwrap(), common::naive_avg_cc(t)));
    assert_eq!(metrics::is_connected(t), common::connected(t));
    match common::naive_cpl(t) {
        Some(want) => {
            assert!(common::close(metrics::cpl(t).unwrap(), want));
            assert!(common::close(metrics::asp(t).unwrap(), common::naive_asp(t).unwrap()));
            assert_eq!(metrics::diameter(t).unwrap(), common::naive_diameter(t).unwrap());
            assert!(common::close(
                metrics::mean_eccentricity(t).unwrap(),
                common::naive_mean_ecc(t).unwrap()
            ));
        }
        None => {
            assert_eq!(metrics::cpl(t), Err(MetricError::Disconnected));
            assert_eq!(metrics::asp(t), Err(MetricError::Disconnected));
            assert_eq!(metrics::diameter(t), Err(MetricError::Disconnected));
        }
    }
    if t.embedding().is_some() {
        match common::naive_ctr(t) {
            Some(want) => assert!(common::close(metrics::ctr(t).unwrap(), want)),
            None => assert_eq!(metrics::ctr(t), Err(MetricError::Disconnected)),
        }
    }
}
