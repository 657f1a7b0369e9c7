//! `reckful`: command-line front end for the topology toolkit.
//!
//! Subcommands: `generate` (place nodes, link by range, write JSON),
//! `metrics` (one topology, one metric table), `rr` (run the link-removal
//! rounds), `experiment` (the seeded Monte-Carlo harnesses: `density`,
//! `rr-trend`, `paradox`, `threshold`), and `export-dot`.
//!
//! Every randomized subcommand takes a seed (default 42) and echoes it in
//! its output header; rerunning the identical invocation reproduces every
//! artifact byte for byte. CSV artifacts carry `#` header lines with the
//! tool version, the exact invocation, and the seed; JSON artifacts get
//! the same record as a `<file>.manifest.json` sidecar.
//!
//! Exit codes: 0 success, 2 validation (bad flags, bad input state),
//! 3 file I/O, 4 undefined metric (e.g. path lengths of a disconnected
//! topology without `--largest-component`).
//!
//! `RECKFUL_THREADS` caps the worker threads used by experiment trials;
//! results never depend on it.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use reckful_core::experiments::{
    self, DensityConvergenceConfig, ParadoxConfig, ProbeConfig, TrendConfig, TREND_DENSITIES,
};
use reckful_core::rr::{self, RrError};
use reckful_core::{geometry, io, metrics, GuardMode, OrderPolicy, RrConfig, Topology, Variant};

const EXIT_VALIDATION: u8 = 2;
const EXIT_IO: u8 = 3;
const EXIT_UNDEFINED: u8 = 4;

type Topo = Topology<f64>;

#[derive(Parser)]
#[command(name = "reckful", version, about = "Unit-disk topology toolkit: generation, small-world metrics, and clustering-driven link removal", long_about = None)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Place nodes uniformly on a square and link every pair in range.
    Generate(GenerateArgs),
    /// Print the metric table of a topology file.
    Metrics(MetricsArgs),
    /// Run link-removal rounds on a topology file.
    Rr(RrArgs),
    /// Seeded Monte-Carlo harnesses writing CSV artifacts.
    #[command(subcommand)]
    Experiment(ExperimentCmd),
    /// Write a topology as Graphviz DOT.
    ExportDot(ExportDotArgs),
}

#[derive(Args)]
struct GenerateArgs {
    /// Number of nodes.
    #[arg(short, long)]
    nodes: usize,
    /// Network density k*; the transmission range is derived from it.
    #[arg(long, conflicts_with = "tr")]
    density: Option<f64>,
    /// Transmission range, as an alternative to --density.
    #[arg(long)]
    tr: Option<f64>,
    /// Side length of the square area.
    #[arg(long, default_value_t = 1.0)]
    side: f64,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Output topology JSON.
    #[arg(short, long)]
    out: PathBuf,
}

#[derive(Args)]
struct MetricsArgs {
    /// Input topology JSON.
    #[arg(long = "in")]
    input: PathBuf,
    /// On disconnected input, measure the largest component instead of
    /// exiting with an undefined-metric error.
    #[arg(long)]
    largest_component: bool,
    /// Also write the table as a one-row CSV.
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Args)]
struct RrArgs {
    /// Input topology JSON.
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = VariantArg::Rrc)]
    variant: VariantArg,
    #[arg(long, value_enum, default_value_t = GuardArg::CommonNeighbor)]
    guard: GuardArg,
    #[arg(long, default_value_t = 4)]
    rounds: usize,
    #[arg(long, value_enum, default_value_t = OrderArg::Random)]
    order: OrderArg,
    /// Order seed (used with --order random).
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Stop after the first round that removes nothing.
    #[arg(long)]
    stop_when_stable: bool,
    /// Final topology JSON.
    #[arg(short, long)]
    out: Option<PathBuf>,
    /// Per-round removal log CSV.
    #[arg(long)]
    rounds_csv: Option<PathBuf>,
    /// Per-phase metric series CSV.
    #[arg(long)]
    phases_csv: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VariantArg {
    /// Unguarded; may disconnect the topology.
    Rr,
    /// Connectivity-preserving.
    Rrc,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GuardArg {
    /// Keep a link unless its endpoints share a neighbor.
    CommonNeighbor,
    /// Keep a link unless some neighbor of one endpoint reaches a
    /// neighbor of the other in at most one hop.
    CrossNeighbor,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OrderArg {
    /// Evaluate confirmed pairs in ascending id order.
    Index,
    /// Shuffle the evaluation order with --seed.
    Random,
}

#[derive(Subcommand)]
enum ExperimentCmd {
    /// Mean interior degree vs node count at fixed density.
    Density(DensityArgs),
    /// Normalized metric trend across removal rounds.
    RrTrend(TrendArgs),
    /// Search for the small removal-paradox fixture.
    Paradox(ParadoxArgs),
    /// Connected fraction of raw draws per density.
    Threshold(ThresholdArgs),
}

#[derive(Args)]
struct DensityArgs {
    #[arg(long, default_value_t = 13.74)]
    density: f64,
    /// Node counts to sweep.
    #[arg(long, value_delimiter = ',', default_values_t = [50, 100, 200, 500, 1000])]
    node_counts: Vec<usize>,
    #[arg(long, default_value_t = 100)]
    runs: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
}

#[derive(Args)]
struct TrendArgs {
    /// Densities to run; defaults to the calibrated four.
    #[arg(long, value_delimiter = ',')]
    density: Vec<f64>,
    #[arg(long, default_value_t = 30)]
    runs: usize,
    #[arg(long, default_value_t = 4)]
    rounds: usize,
    #[arg(long, value_enum, default_value_t = VariantArg::Rrc)]
    variant: VariantArg,
    #[arg(long, value_enum, default_value_t = GuardArg::CommonNeighbor)]
    guard: GuardArg,
    #[arg(long, default_value_t = 1000)]
    nodes: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Resampling cap per connected topology.
    #[arg(long, default_value_t = 50_000)]
    max_attempts: usize,
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
}

#[derive(Args)]
struct ParadoxArgs {
    #[arg(long, default_value_t = 7)]
    nodes: usize,
    #[arg(long, default_value_t = 11)]
    links: usize,
    #[arg(long, default_value_t = 2)]
    removals: usize,
    #[arg(long, default_value_t = 0.70)]
    cc_before: f64,
    #[arg(long, default_value_t = 0.81)]
    cc_after: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 50_000)]
    budget: usize,
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
}

#[derive(Args)]
struct ThresholdArgs {
    #[arg(long, value_delimiter = ',', default_values_t = [6.11, 9.96, 13.74, 16.35, 25.13, 39.27])]
    densities: Vec<f64>,
    #[arg(long, default_value_t = 1000)]
    nodes: usize,
    #[arg(long, default_value_t = 400)]
    runs: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
}

#[derive(Args)]
struct ExportDotArgs {
    /// Input topology JSON.
    #[arg(long = "in")]
    input: PathBuf,
    /// Output DOT file; standard output when omitted.
    #[arg(short, long)]
    out: Option<PathBuf>,
}

// -------------------------------------------------------------------
// errors and artifact plumbing

enum CliError {
    Validation(String),
    Io(String),
    Undefined(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Validation(_) => EXIT_VALIDATION,
            CliError::Io(_) => EXIT_IO,
            CliError::Undefined(_) => EXIT_UNDEFINED,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Validation(m) | CliError::Io(m) | CliError::Undefined(m) => m,
        }
    }
}

impl From<io::IoError> for CliError {
    fn from(e: io::IoError) -> Self {
        match e {
            io::IoError::Io(_) => CliError::Io(e.to_string()),
            _ => CliError::Validation(e.to_string()),
        }
    }
}

/// The reproduction record attached to every artifact: tool version, the
/// exact invocation, and the seed. Deliberately no timestamps, so a rerun
/// is byte-identical.
#[derive(Serialize)]
struct Manifest {
    tool: &'static str,
    version: &'static str,
    invocation: Vec<String>,
    /// None for commands without randomness; serialized as null.
    seed: Option<u64>,
    outputs: Vec<String>,
}

impl Manifest {
    fn new(seed: impl Into<Option<u64>>) -> Self {
        Manifest {
            tool: "reckful",
            version: env!("CARGO_PKG_VERSION"),
            invocation: std::env::args().collect(),
            seed: seed.into(),
            outputs: Vec::new(),
        }
    }

    /// `#`-prefixed CSV header carrying the same record.
    fn csv_header(&self) -> String {
        format!(
            "# {} {}\n# invocation: {}\n# seed: {}\n",
            self.tool,
            self.version,
            self.invocation.join(" "),
            self.seed.map_or_else(|| "none".into(), |s| s.to_string())
        )
    }

    fn write_sidecar(&self, artifact: &Path) -> Result<(), CliError> {
        let stamped = Manifest {
            invocation: self.invocation.clone(),
            outputs: vec![artifact.display().to_string()],
            ..*self
        };
        let mut path = artifact.as_os_str().to_owned();
        path.push(".manifest.json");
        let text = serde_json::to_string_pretty(&stamped).expect("manifest serializes") + "\n";
        write_text(Path::new(&path), &text)
    }
}

/// False for NaN too, which plain `<= 0.0` validation would let through.
fn positive(x: f64) -> bool {
    x > 0.0
}

fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text)
        .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}

fn read_topo(path: &Path) -> Result<Topo, CliError> {
    Ok(io::read_topology(path)?)
}

fn write_topo(path: &Path, t: &Topo, manifest: &Manifest) -> Result<(), CliError> {
    io::write_topology(path, t)?;
    manifest.write_sidecar(path)
}

/// Honors RECKFUL_THREADS when set; trial aggregation is order-fixed, so
/// the thread count never changes any result.
fn init_threads() -> Result<(), CliError> {
    match std::env::var("RECKFUL_THREADS") {
        Err(_) => Ok(()),
        Ok(raw) => {
            let n: usize = raw.parse().map_err(|_| {
                CliError::Validation(format!("RECKFUL_THREADS must be a positive integer, got {raw:?}"))
            })?;
            if n == 0 {
                return Err(CliError::Validation(
                    "RECKFUL_THREADS must be a positive integer, got 0".into(),
                ));
            }
            rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global()
                .map_err(|e| CliError::Validation(format!("thread pool: {e}")))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = init_threads().and_then(|()| run(cli)) {
        eprintln!("error: {}", e.message());
        return ExitCode::from(e.code());
    }
    ExitCode::SUCCESS
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Generate(args) => cmd_generate(args),
        Command::Metrics(args) => cmd_metrics(args),
        Command::Rr(args) => cmd_rr(args),
        Command::Experiment(cmd) => cmd_experiment(cmd),
        Command::ExportDot(args) => cmd_export_dot(args),
    }
}

// -------------------------------------------------------------------
// generate

fn cmd_generate(args: GenerateArgs) -> Result<(), CliError> {
    if args.nodes == 0 {
        return Err(CliError::Validation("--nodes must be positive".into()));
    }
    if !positive(args.side) {
        return Err(CliError::Validation("--side must be positive".into()));
    }
    let tr = match (args.density, args.tr) {
        (Some(k), None) if positive(k) => geometry::tr_for_density(k, args.nodes, args.side),
        (None, Some(tr)) if positive(tr) => tr,
        (Some(_), None) | (None, Some(_)) => {
            return Err(CliError::Validation("--density/--tr must be positive".into()))
        }
        _ => {
            return Err(CliError::Validation(
                "exactly one of --density or --tr is required".into(),
            ))
        }
    };
    let positions = geometry::place_uniform(&geometry::PlacementConfig {
        n: args.nodes,
        side: args.side,
        seed: args.seed,
    });
    let t = geometry::unit_disk(positions, args.side, tr);
    let manifest = Manifest::new(args.seed);
    write_topo(&args.out, &t, &manifest)?;
    println!(
        "n: {}\ntr: {}\ndensity: {}\nconnected: {}\nseed: {}\nwrote: {}",
        t.node_count(),
        tr,
        geometry::network_density(args.nodes, tr, args.side),
        metrics::is_connected(&t),
        args.seed,
        args.out.display()
    );
    Ok(())
}

// -------------------------------------------------------------------
// metrics

fn format_opt<T: std::fmt::Display>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "n/a".into(), T::to_string)
}

fn cmd_metrics(args: MetricsArgs) -> Result<(), CliError> {
    let loaded = read_topo(&args.input)?;
    let connected = metrics::is_connected(&loaded);
    let (t, note) = if connected || !args.largest_component {
        (loaded, String::new())
    } else {
        let (kept, sub) = loaded.largest_component();
        let note = format!(" (largest component: {} of {} nodes)", kept.len(), loaded.node_count());
        (sub, note)
    };
    if !metrics::is_connected(&t) {
        return Err(CliError::Undefined(format!(
            "{} is disconnected; path metrics are undefined (rerun with --largest-component)",
            args.input.display()
        )));
    }
    let report = metrics::metrics_report(&t)
        .map_err(|e| CliError::Undefined(format!("{}: {e}", args.input.display())))?;
    println!("topology: {}{note}", args.input.display());
    println!("n: {}", t.node_count());
    println!("links: {}", t.edge_count());
    println!("cc: {}", report.cc);
    println!("cpl: {}", format_opt(&report.cpl));
    println!("asp: {}", format_opt(&report.asp));
    println!("k: {}", report.k);
    println!("d: {}", format_opt(&report.d));
    println!("mean_ecc: {}", format_opt(&report.mean_ecc));
    println!("ctr: {}", format_opt(&report.ctr));
    println!("connected: {}", report.connected);
    if let Some(csv) = args.csv {
        let manifest = Manifest::new(None);
        let mut text = String::from("n,links,cc,cpl,asp,k,d,mean_ecc,ctr,connected\n");
        let _ = writeln!(
            text,
            "{},{},{},{},{},{},{},{},{},{}",
            t.node_count(),
            t.edge_count(),
            report.cc,
            format_opt(&report.cpl),
            format_opt(&report.asp),
            report.k,
            format_opt(&report.d),
            format_opt(&report.mean_ecc),
            format_opt(&report.ctr),
            report.connected
        );
        write_text(&csv, &(manifest.csv_header() + &text))?;
    }
    Ok(())
}

// -------------------------------------------------------------------
// rr

fn rr_config(variant: VariantArg, guard: GuardArg, rounds: usize, order: OrderArg, seed: u64, stop: bool) -> RrConfig {
    RrConfig {
        variant: match variant {
            VariantArg::Rr => Variant::Rr,
            VariantArg::Rrc => Variant::RrC,
        },
        guard_mode: match guard {
            GuardArg::CommonNeighbor => GuardMode::CommonNeighbor,
            GuardArg::CrossNeighbor => GuardMode::CrossNeighbor,
        },
        max_rounds: rounds,
        order_policy: match order {
            OrderArg::Index => OrderPolicy::Index,
            OrderArg::Random => OrderPolicy::Random { seed },
        },
        stop_when_stable: stop,
    }
}

fn cmd_rr(args: RrArgs) -> Result<(), CliError> {
    if args.rounds == 0 {
        return Err(CliError::Validation("--rounds must be at least 1".into()));
    }
    let t = read_topo(&args.input)?;
    let config = rr_config(args.variant, args.guard, args.rounds, args.order, args.seed, args.stop_when_stable);
    let outcome = rr::run_rr(&t, &config).map_err(|e| match e {
        RrError::DisconnectedInput => CliError::Validation(format!(
            "{} is disconnected; the guarded variant requires connected input",
            args.input.display()
        )),
        other => CliError::Validation(other.to_string()),
    })?;
    let removed: usize = outcome.rounds.iter().map(|r| r.removed.len()).sum();
    let first = outcome.phases.reports.first().expect("input phase");
    let last = outcome.phases.reports.last().expect("final phase");
    println!(
        "rounds: {}\nremoved: {}\ncc: {} -> {}\nlinks: {} -> {}\nconnected: {}\nseed: {}",
        outcome.rounds.len(),
        removed,
        first.cc,
        last.cc,
        t.edge_count(),
        outcome.topology.edge_count(),
        last.connected,
        args.seed
    );
    let manifest = Manifest::new(args.seed);
    if let Some(out) = &args.out {
        write_topo(out, &outcome.topology, &manifest)?;
    }
    if let Some(path) = &args.rounds_csv {
        write_text(path, &(manifest.csv_header() + &io::round_log_csv(&outcome.rounds)))?;
    }
    if let Some(path) = &args.phases_csv {
        write_text(path, &(manifest.csv_header() + &io::phase_series_csv(&outcome.phases)))?;
    }
    Ok(())
}

// -------------------------------------------------------------------
// experiments

fn ensure_dir(dir: &Path) -> Result<(), CliError> {
    std::fs::create_dir_all(dir)
        .map_err(|e| CliError::Io(format!("cannot create {}: {e}", dir.display())))
}

fn cmd_experiment(cmd: ExperimentCmd) -> Result<(), CliError> {
    match cmd {
        ExperimentCmd::Density(args) => {
            if args.runs < 2 {
                return Err(CliError::Validation("--runs must be at least 2".into()));
            }
            if !positive(args.density) {
                return Err(CliError::Validation("--density must be positive".into()));
            }
            if args.node_counts.is_empty() || args.node_counts.contains(&0) {
                return Err(CliError::Validation("--node-counts must be positive".into()));
            }
            ensure_dir(&args.out_dir)?;
            let cfg = DensityConvergenceConfig {
                k_star: args.density,
                node_counts: args.node_counts.clone(),
                side: 1.0,
                runs: args.runs,
                master_seed: args.seed,
            };
            let points = experiments::density_convergence(&cfg);
            let manifest = Manifest::new(args.seed);
            let path = args.out_dir.join("density.csv");
            write_text(&path, &(manifest.csv_header() + &io::density_csv(&points)))?;
            manifest.write_sidecar(&path)?;
            println!("k*: {}\nruns: {}\nseed: {}\nwrote: {}", args.density, args.runs, args.seed, path.display());
            Ok(())
        }
        ExperimentCmd::RrTrend(args) => {
            if args.runs < 2 {
                return Err(CliError::Validation("--runs must be at least 2".into()));
            }
            if args.rounds == 0 {
                return Err(CliError::Validation("--rounds must be at least 1".into()));
            }
            let densities = if args.density.is_empty() {
                TREND_DENSITIES.to_vec()
            } else {
                args.density.clone()
            };
            if !densities.iter().all(|k| positive(*k)) {
                return Err(CliError::Validation("--density must be positive".into()));
            }
            ensure_dir(&args.out_dir)?;
            for k_star in densities {
                let cfg = TrendConfig {
                    k_star,
                    n: args.nodes,
                    side: 1.0,
                    runs: args.runs,
                    master_seed: args.seed,
                    rr: rr_config(
                        args.variant,
                        args.guard,
                        args.rounds,
                        OrderArg::Random,
                        args.seed,
                        false,
                    ),
                    max_generation_attempts: args.max_attempts,
                };
                let summary = experiments::rr_trend_experiment(&cfg).map_err(|e| {
                    CliError::Validation(format!("k* = {k_star}: {e}"))
                })?;
                let manifest = Manifest::new(args.seed);
                let path = args.out_dir.join(format!("trend_{k_star}.csv"));
                write_text(&path, &(manifest.csv_header() + &io::trend_csv(&summary)))?;
                manifest.write_sidecar(&path)?;
                println!("k*: {k_star}\nrejected draws: {}\nwrote: {}", summary.rejected_topologies, path.display());
            }
            Ok(())
        }
        ExperimentCmd::Paradox(args) => {
            if args.nodes < 2 || args.links > args.nodes * (args.nodes - 1) / 2 {
                return Err(CliError::Validation("impossible --nodes/--links combination".into()));
            }
            ensure_dir(&args.out_dir)?;
            let cfg = ParadoxConfig {
                n: args.nodes,
                links: args.links,
                removals: args.removals,
                cc_before: args.cc_before,
                cc_after: args.cc_after,
                side: 1.0,
                master_seed: args.seed,
                budget: args.budget,
                rr: RrConfig {
                    order_policy: OrderPolicy::Index,
                    ..RrConfig::default()
                },
            };
            let outcome = experiments::paradox_search(&cfg);
            let manifest = Manifest::new(args.seed);
            let report_path = args.out_dir.join("paradox_report.json");
            match outcome.fixture {
                Some(fixture) => {
                    let topo_path = args.out_dir.join("paradox_topology.json");
                    write_topo(&topo_path, &fixture.topology, &manifest)?;
                    let report = serde_json::json!({
                        "found": true,
                        "removed": fixture.removed,
                        "cc_before": fixture.before.cc,
                        "cc_after": fixture.after.cc,
                        "scan": fixture.scan,
                        "search": outcome.log,
                    });
                    write_text(&report_path, &(serde_json::to_string_pretty(&report).expect("report serializes") + "\n"))?;
                    manifest.write_sidecar(&report_path)?;
                    println!(
                        "found: true\nremoved: {:?}\ncc: {} -> {}\nwrote: {}, {}",
                        fixture.removed,
                        fixture.before.cc,
                        fixture.after.cc,
                        topo_path.display(),
                        report_path.display()
                    );
                }
                None => {
                    let report = serde_json::json!({
                        "found": false,
                        "search": outcome.log,
                    });
                    write_text(&report_path, &(serde_json::to_string_pretty(&report).expect("report serializes") + "\n"))?;
                    manifest.write_sidecar(&report_path)?;
                    println!(
                        "found: false\nattempts: {}\nnearest (cc before, cc after): {:?}\nwrote: {}",
                        outcome.log.attempts, outcome.log.nearest, report_path.display()
                    );
                }
            }
            Ok(())
        }
        ExperimentCmd::Threshold(args) => {
            if args.runs == 0 {
                return Err(CliError::Validation("--runs must be at least 1".into()));
            }
            if args.densities.is_empty() || !args.densities.iter().all(|k| positive(*k)) {
                return Err(CliError::Validation("--densities must be positive".into()));
            }
            ensure_dir(&args.out_dir)?;
            let cfg = ProbeConfig {
                densities: args.densities.clone(),
                n: args.nodes,
                side: 1.0,
                runs: args.runs,
                master_seed: args.seed,
            };
            let points = experiments::connectivity_threshold_probe(&cfg);
            let mut text = String::from("k_star,connected_fraction\n");
            for p in &points {
                let _ = writeln!(text, "{},{}", p.k_star, p.connected_fraction);
            }
            let manifest = Manifest::new(args.seed);
            let path = args.out_dir.join("threshold.csv");
            write_text(&path, &(manifest.csv_header() + &text))?;
            manifest.write_sidecar(&path)?;
            println!("densities: {:?}\nruns: {}\nseed: {}\nwrote: {}", args.densities, args.runs, args.seed, path.display());
            Ok(())
        }
    }
}

// -------------------------------------------------------------------
// export-dot

fn cmd_export_dot(args: ExportDotArgs) -> Result<(), CliError> {
    let t = read_topo(&args.input)?;
    let dot = io::topology_to_dot(&t);
    match args.out {
        Some(path) => {
            write_text(&path, &dot)?;
            Manifest::new(None).write_sidecar(&path)
        }
        None => {
            print!("{dot}");
            Ok(())
        }
    }
}
