//! Reckful Roaming: link removal that trades degree for clustering.
//!
//! Each round has three phases, mirroring the distributed protocol on a
//! single topology snapshot:
//!
//! 1. every node v computes its remove candidates: neighbors whose link,
//!    if dropped, strictly raises v's own local clustering coefficient;
//! 2. a link (v, u) survives to the final phase only when each endpoint
//!    proposed the other (mutual confirmation);
//! 3. every confirmed link is re-evaluated against the live topology: it
//!    is removed iff the sum of local clustering coefficients over
//!    N(v) ∪ N(u) strictly increases, and, for the connectivity-preserving
//!    variant, a guard certifies a short detour around the removed link.
//!
//! The protocol's permit synchronization is realized by serializing
//! commits: confirmed pairs are visited in order and each decision sees
//! all previous removals, which is what makes the global clustering sum
//! strictly increase at every commit. All comparisons are exact rational
//! arithmetic ([`crate::exact`]); ties never remove.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use num_traits::Signed;

use rand::seq::SliceRandom;

use crate::exact;
use crate::metrics;
use crate::scalar::Scalar;
use crate::seed;
use crate::topology::{GraphError, NodeId, Topology};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Variant {
    /// Unguarded removal; the result may be partitioned.
    Rr,
    /// Connectivity-preserving removal (guard required per commit).
    RrC,
}

/// Two readings of the guard that certifies a detour around (v, u).
///
/// Either one preserves connectivity on its own: a common neighbor gives a
/// 2-hop detour, a linked pair of neighbors a 3-hop detour. The common
/// neighbor form is strictly stronger (it implies the cross form).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GuardMode {
    /// Some x adjacent to both v and u must exist.
    CommonNeighbor,
    /// Some x ∈ N(v)\{u} and y ∈ N(u)\{v} with x = y or x adjacent to y.
    CrossNeighbor,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OrderPolicy {
    /// Confirmed pairs visited in ascending (v, u) order.
    Index,
    /// Confirmed pairs shuffled per round from this seed.
    Random { seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RrConfig {
    pub variant: Variant,
    pub guard_mode: GuardMode,
    pub max_rounds: usize,
    pub order_policy: OrderPolicy,
    pub stop_when_stable: bool,
}

impl Default for RrConfig {
    fn default() -> Self {
        Self {
            variant: Variant::RrC,
            guard_mode: GuardMode::CommonNeighbor,
            max_rounds: 4,
            order_policy: OrderPolicy::Random { seed: 0 },
            stop_when_stable: false,
        }
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum RrError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("topology has no nodes")]
    EmptyTopology,
    #[error("connectivity-preserving variant needs a connected input")]
    DisconnectedInput,
}

/// Outcome of phase 1 for one node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateSet {
    pub owner: NodeId,
    /// Sorted; always a subset of the owner's neighbors.
    pub candidates: Vec<NodeId>,
}

/// Neighbors of `v` whose link removal strictly raises v's local
/// clustering coefficient. The topology is not modified.
pub fn compute_remove_candidates<T: Scalar>(
    t: &Topology<T>,
    v: NodeId,
) -> Result<CandidateSet, RrError> {
    t.check_node(v)?;
    let candidates = t
        .neighbors(v)
        .iter()
        .copied()
        .filter(|&u| exact::removal_raises_local_cc(t, v, u))
        .collect();
    Ok(CandidateSet {
        owner: v,
        candidates,
    })
}

/// Pairs {v, u} proposed by both endpoints, as ascending (v, u) with
/// v < u. All candidate sets must come from the same topology snapshot.
pub fn confirm_mutual(sets: &[CandidateSet]) -> Vec<(NodeId, NodeId)> {
    let max_owner = sets.iter().map(|s| s.owner).max().unwrap_or(0);
    let mut by_owner: Vec<&[NodeId]> = vec![&[]; max_owner + 1];
    for s in sets {
        by_owner[s.owner] = &s.candidates;
    }
    let mut out = Vec::new();
    for s in sets {
        let v = s.owner;
        for &u in &s.candidates {
            if v < u && u <= max_owner && by_owner[u].binary_search(&v).is_ok() {
                out.push((v, u));
            }
        }
    }
    out.sort_unstable();
    out
}

/// Sorted union N(v) ∪ N(u); with the link (v, u) present it contains both
/// endpoints.
pub fn two_hop_set<T: Scalar>(t: &Topology<T>, v: NodeId, u: NodeId) -> Vec<NodeId> {
    let (a, b) = (t.neighbors(v), t.neighbors(u));
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let next = match (a.get(i), b.get(j)) {
            (Some(&x), Some(&y)) if x == y => {
                i += 1;
                j += 1;
                x
            }
            (Some(&x), Some(&y)) if x < y => {
                i += 1;
                x
            }
            (Some(_), Some(&y)) => {
                j += 1;
                y
            }
            (Some(&x), None) => {
                i += 1;
                x
            }
            (None, Some(&y)) => {
                j += 1;
                y
            }
            (None, None) => unreachable!(),
        };
        out.push(next);
    }
    out
}

/// Σ local_cc over N(v) ∪ N(u) on the current topology. Reporting value;
/// decisions use the exact-rational equivalent.
pub fn neighborhood_cc_sum<T: Scalar>(
    t: &Topology<T>,
    v: NodeId,
    u: NodeId,
) -> Result<T, RrError> {
    t.check_node(v)?;
    t.check_node(u)?;
    if !t.has_edge(v, u) {
        return Err(GraphError::EdgeAbsent(v, u).into());
    }
    let mut sum = T::zero();
    for x in two_hop_set(t, v, u) {
        sum = sum + metrics::local_cc(t, x).expect("valid node");
    }
    Ok(sum)
}

/// True when the configured detour certificate exists for the link (v, u).
pub fn guard_passes<T: Scalar>(t: &Topology<T>, v: NodeId, u: NodeId, mode: GuardMode) -> bool {
    // Common neighbors never contain an endpoint (no self-loops).
    let common = t.common_neighbor_count(v, u) > 0;
    match mode {
        GuardMode::CommonNeighbor => common,
        GuardMode::CrossNeighbor => {
            if common {
                return true;
            }
            t.neighbors(v).iter().any(|&x| {
                x != u
                    && t.neighbors(u)
                        .iter()
                        .any(|&y| y != v && (x == y || t.has_edge(x, y)))
            })
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Decision {
    Commit,
    RejectNoGain,
    RejectGuard,
}

/// Final-phase test for a confirmed pair against the current topology. The
/// gain test comes first, the guard applies only under the
/// connectivity-preserving variant, and the topology is not modified.
///
/// Callers are responsible for passing confirmed pairs; the function
/// itself only requires the link to be present.
pub fn evaluate_removal<T: Scalar>(
    t: &Topology<T>,
    v: NodeId,
    u: NodeId,
    config: &RrConfig,
) -> Result<Decision, RrError> {
    t.check_node(v)?;
    t.check_node(u)?;
    if !t.has_edge(v, u) {
        return Err(GraphError::EdgeAbsent(v, u).into());
    }
    if !exact::removal_cc_delta(t, v, u).is_positive() {
        return Ok(Decision::RejectNoGain);
    }
    if config.variant == Variant::RrC && !guard_passes(t, v, u, config.guard_mode) {
        return Ok(Decision::RejectGuard);
    }
    Ok(Decision::Commit)
}

/// What one round did: the removals in commit order plus the average
/// clustering coefficient before and after.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RoundLog<T> {
    pub round: usize,
    pub removed: Vec<(NodeId, NodeId)>,
    pub avg_cc_before: T,
    pub avg_cc_after: T,
}

/// One full round: candidates and confirmation on the round-start
/// snapshot, then serialized commits re-evaluated against the live
/// topology. `rng` drives the visiting order when the policy is random.
pub fn run_round<T: Scalar>(
    t: &mut Topology<T>,
    config: &RrConfig,
    rng: &mut seed::Rng,
    round: usize,
) -> RoundLog<T> {
    let avg_cc_before = metrics::avg_cc(t).expect("nonempty topology");
    let sets: Vec<CandidateSet> = (0..t.node_count())
        .map(|v| compute_remove_candidates(t, v).expect("valid node"))
        .collect();
    let mut pairs = confirm_mutual(&sets);
    if let OrderPolicy::Random { .. } = config.order_policy {
        pairs.shuffle(rng);
    }

    let mut removed = Vec::new();
    for (v, u) in pairs {
        if !t.has_edge(v, u) {
            continue;
        }
        if evaluate_removal(t, v, u, config).expect("link present") != Decision::Commit {
            continue;
        }
        #[cfg(debug_assertions)]
        let watched = {
            let set = two_hop_set(t, v, u);
            let before = exact::sum_local_cc(t, &set);
            (set, before)
        };
        t.remove_edge(v, u).expect("link present");
        #[cfg(debug_assertions)]
        {
            let (set, before) = &watched;
            let after = exact::sum_local_cc(t, set);
            debug_assert!(
                after > *before,
                "commit must strictly raise the clustering sum over the 2-hop set"
            );
            if config.variant == Variant::RrC {
                debug_assert!(
                    metrics::is_connected(t),
                    "guarded removal must not disconnect the topology"
                );
            }
        }
        removed.push((v, u));
    }

    RoundLog {
        round,
        removed,
        avg_cc_before,
        avg_cc_after: metrics::avg_cc(t).expect("nonempty topology"),
    }
}

/// Result of a complete run: the final topology, per-round removal logs,
/// and the metric series (phase 0 = input, one phase per executed round).
#[derive(Debug, Clone)]
pub struct RrOutcome<T> {
    pub topology: Topology<T>,
    pub rounds: Vec<RoundLog<T>>,
    pub phases: crate::experiments::PhaseSeries<T>,
}

/// Runs up to `max_rounds` rounds. With `stop_when_stable` the run halts
/// after the first round that removes nothing (that round is still
/// logged). The connectivity-preserving variant rejects disconnected
/// input.
pub fn run_rr<T: Scalar>(input: &Topology<T>, config: &RrConfig) -> Result<RrOutcome<T>, RrError> {
    assert!(config.max_rounds >= 1, "max_rounds must be at least 1");
    if input.node_count() == 0 {
        return Err(RrError::EmptyTopology);
    }
    if config.variant == Variant::RrC && !metrics::is_connected(input) {
        return Err(RrError::DisconnectedInput);
    }
    let mut rng = match config.order_policy {
        OrderPolicy::Random { seed: s } => seed::rng_from_seed(seed::sub_seed(s, &[seed::ORDER])),
        OrderPolicy::Index => seed::rng_from_seed(0),
    };
    let mut t = input.clone();
    let mut reports = vec![metrics::metrics_report(&t).expect("nonempty topology")];
    let mut rounds = Vec::new();
    for round in 1..=config.max_rounds {
        let log = run_round(&mut t, config, &mut rng, round);
        reports.push(metrics::metrics_report(&t).expect("nonempty topology"));
        let stable = log.removed.is_empty();
        rounds.push(log);
        if config.stop_when_stable && stable {
            break;
        }
    }
    Ok(RrOutcome {
        topology: t,
        rounds,
        phases: crate::experiments::PhaseSeries::from_reports(reports),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    type Topo = Topology<f64>;

    fn index_config(variant: Variant) -> RrConfig {
        RrConfig {
            variant,
            order_policy: OrderPolicy::Index,
            ..RrConfig::default()
        }
    }

    /// Two triangles joined by the bridge (0, 3): 0-1-2 and 3-4-5.
    fn bridged_triangles() -> Topo {
        Topo::from_edges(
            6,
            &[(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5), (0, 3)],
        )
        .unwrap()
    }

    #[test]
    fn candidate_examples() {
        // 0 sees {1, 2, 3}; only 2-3 linked: dropping 1 lifts 1/3 to 1.
        let t = Topo::from_edges(4, &[(0, 1), (0, 2), (0, 3), (2, 3)]).unwrap();
        let rc = compute_remove_candidates(&t, 0).unwrap();
        assert_eq!(rc.candidates, vec![1]);

        // complete neighborhood: nothing to gain
        let k3 = Topo::complete(3);
        assert!(compute_remove_candidates(&k3, 0)
            .unwrap()
            .candidates
            .is_empty());

        // degree 1 and triangle-free neighborhoods propose nothing
        let star = Topo::star(3);
        for v in 0..4 {
            assert!(compute_remove_candidates(&star, v)
                .unwrap()
                .candidates
                .is_empty());
        }
    }

    #[test]
    fn confirmation_requires_both_sides() {
        let sets = vec![
            CandidateSet {
                owner: 0,
                candidates: vec![1, 2],
            },
            CandidateSet {
                owner: 1,
                candidates: vec![0],
            },
            CandidateSet {
                owner: 2,
                candidates: vec![],
            },
        ];
        assert_eq!(confirm_mutual(&sets), vec![(0, 1)]);
        assert_eq!(confirm_mutual(&[]), vec![]);
    }

    #[test]
    fn neighborhood_sum_examples() {
        let k3 = Topo::complete(3);
        assert!((neighborhood_cc_sum(&k3, 0, 1).unwrap() - 3.0).abs() < 1e-12);

        // star 0 with leaves 1, 2: sum over {0, 1, 2} is 0
        let star = Topo::star(2);
        assert!((neighborhood_cc_sum(&star, 0, 1).unwrap()).abs() < 1e-12);

        let absent = neighborhood_cc_sum(&star, 1, 2);
        assert_eq!(absent, Err(RrError::Graph(GraphError::EdgeAbsent(1, 2))));
    }

    #[test]
    fn two_hop_set_is_sorted_union() {
        let t = bridged_triangles();
        assert_eq!(two_hop_set(&t, 0, 3), vec![0, 1, 2, 3, 4, 5]);
    }

    #[test]
    fn bridge_is_guard_rejected_but_commits_unguarded() {
        let t = bridged_triangles();
        // both endpoints gain (1/3 to 1) and confirmation is mutual
        let sets: Vec<_> = (0..6)
            .map(|v| compute_remove_candidates(&t, v).unwrap())
            .collect();
        assert_eq!(confirm_mutual(&sets), vec![(0, 3)]);

        let rrc = index_config(Variant::RrC);
        assert_eq!(evaluate_removal(&t, 0, 3, &rrc).unwrap(), Decision::RejectGuard);

        // no cross link between the triangles either
        let cross = RrConfig {
            guard_mode: GuardMode::CrossNeighbor,
            ..rrc
        };
        assert_eq!(
            evaluate_removal(&t, 0, 3, &cross).unwrap(),
            Decision::RejectGuard
        );

        // a link between the triangles satisfies the cross guard only
        let mut linked = t.clone();
        linked.add_edge(1, 4).unwrap();
        assert_eq!(
            evaluate_removal(&linked, 0, 3, &cross).unwrap(),
            Decision::Commit
        );
        assert_eq!(
            evaluate_removal(&linked, 0, 3, &rrc).unwrap(),
            Decision::RejectGuard
        );

        // unguarded, the bridge goes and the topology splits
        let rr = index_config(Variant::Rr);
        assert_eq!(evaluate_removal(&t, 0, 3, &rr).unwrap(), Decision::Commit);
        let outcome = run_rr(&t, &rr).unwrap();
        assert_eq!(outcome.rounds[0].removed, vec![(0, 3)]);
        assert!(!metrics::is_connected(&outcome.topology));
    }

    #[test]
    fn confirmed_pair_can_lack_two_hop_gain() {
        // 0 and 1 are linked and share only neighbor 2, which has degree
        // 2 and so loses its entire coefficient (1 to 0) on removal. Each
        // endpoint gains 1/30 from its private fan (3/10 to 1/3), far too
        // little to offset that.
        let t = Topo::from_edges(
            9,
            &[
                (0, 1),
                (0, 2),
                (1, 2),
                (0, 3),
                (0, 4),
                (0, 5),
                (3, 4),
                (3, 5),
                (1, 6),
                (1, 7),
                (1, 8),
                (6, 7),
                (6, 8),
            ],
        )
        .unwrap();
        // both directions of the candidate test hold
        assert!(exact::removal_raises_local_cc(&t, 0, 1));
        assert!(exact::removal_raises_local_cc(&t, 1, 0));
        let sets: Vec<_> = (0..9)
            .map(|v| compute_remove_candidates(&t, v).unwrap())
            .collect();
        assert_eq!(confirm_mutual(&sets), vec![(0, 1)]);
        // the guard would pass; the 2-hop sum is what rejects
        assert!(guard_passes(&t, 0, 1, GuardMode::CommonNeighbor));
        let config = index_config(Variant::RrC);
        assert_eq!(
            evaluate_removal(&t, 0, 1, &config).unwrap(),
            Decision::RejectNoGain
        );
        // independent recomputation agrees
        let set = two_hop_set(&t, 0, 1);
        let before = exact::sum_local_cc(&t, &set);
        let mut after_t = t.clone();
        after_t.remove_edge(0, 1).unwrap();
        let after = exact::sum_local_cc(&after_t, &set);
        assert!(after < before);
        // and the round leaves the topology untouched
        let outcome = run_rr(&t, &config).unwrap();
        assert_eq!(outcome.topology, t);
    }

    #[test]
    fn quiet_inputs_stay_untouched() {
        for t in [Topo::path(6), Topo::complete(3), Topo::star(4)] {
            let outcome = run_rr(&t, &index_config(Variant::RrC)).unwrap();
            assert!(outcome.rounds.iter().all(|r| r.removed.is_empty()));
            assert_eq!(outcome.topology, t);
        }
    }

    #[test]
    fn stable_stop_halts_after_quiet_round() {
        let config = RrConfig {
            stop_when_stable: true,
            max_rounds: 10,
            ..index_config(Variant::RrC)
        };
        let outcome = run_rr(&Topo::complete(4), &config).unwrap();
        assert_eq!(outcome.rounds.len(), 1);
        assert_eq!(outcome.phases.reports.len(), 2);
    }

    #[test]
    fn disconnected_input_is_rejected_for_guarded_variant() {
        let t = Topo::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(
            run_rr(&t, &index_config(Variant::RrC)).unwrap_err(),
            RrError::DisconnectedInput
        );
        assert!(run_rr(&t, &index_config(Variant::Rr)).is_ok());
    }

    #[test]
    fn runs_are_deterministic_per_seed() {
        let positions = crate::geometry::place_uniform(&crate::geometry::PlacementConfig {
            n: 60,
            side: 1.0,
            seed: 5,
        });
        let tr = crate::geometry::tr_for_density(13.74, 60, 1.0);
        let t = crate::geometry::unit_disk(positions, 1.0, tr);
        let (members, t) = t.largest_component();
        assert!(members.len() > 30, "unexpectedly sparse sample");

        let config = RrConfig {
            order_policy: OrderPolicy::Random { seed: 9 },
            ..RrConfig::default()
        };
        let a = run_rr(&t, &config).unwrap();
        let b = run_rr(&t, &config).unwrap();
        assert_eq!(a.topology, b.topology);
        assert_eq!(a.rounds, b.rounds);

        // clustering never drops across phases, edges only disappear
        let ccs: Vec<f64> = a.phases.reports.iter().map(|r| r.cc).collect();
        assert!(ccs.windows(2).all(|w| w[1] >= w[0] - 1e-12));
        for (u, v) in a.topology.edges() {
            assert!(t.has_edge(u, v));
        }
    }
}
