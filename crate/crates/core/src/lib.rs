//! Simulation toolkit for wireless multi-hop topologies: unit-disk graph
//! generation at controlled network density, small-world metrics, and the
//! Reckful Roaming link-removal algorithm that trades node degree for
//! clustering while (optionally) preserving connectivity.
//!
//! The crate is organized around an immutable-ish [`Topology`]:
//!
//! - [`geometry`] places nodes uniformly on a square, links them by
//!   transmission range, and relates range to network density; it also
//!   provides a ring-lattice/rewiring baseline generator.
//! - [`metrics`] measures clustering, path lengths, diameter, and the
//!   critical transmission range on a snapshot.
//! - [`rr`] runs the link-removal rounds; every decision is made in exact
//!   rational arithmetic ([`exact`]) so results are identical across
//!   float widths and never depend on rounding.
//! - [`experiments`] wraps the above in seeded, bit-reproducible
//!   Monte-Carlo harnesses; [`stats`] aggregates trials; [`io`] reads and
//!   writes the topology JSON, DOT, and CSV formats.
//!
//! Numeric code is generic over [`Scalar`] (`f32` or `f64`); the aliases
//! below fix the common choice.

pub mod exact;
pub mod experiments;
pub mod geometry;
pub mod io;
pub mod metrics;
pub mod rr;
pub mod scalar;
pub mod seed;
pub mod stats;
pub mod topology;

pub use metrics::{MetricError, MetricsReport};
pub use rr::{Decision, GuardMode, OrderPolicy, RrConfig, Variant};
pub use scalar::Scalar;
pub use stats::TrialStats;
pub use topology::{Embedding, GraphError, NodeId, Position, Topology};

pub type Topology32 = Topology<f32>;
pub type Topology64 = Topology<f64>;
pub type Position64 = Position<f64>;
pub type MetricsReport64 = MetricsReport<f64>;
pub type TrialStats64 = TrialStats<f64>;
pub type PhaseSeries64 = experiments::PhaseSeries<f64>;
