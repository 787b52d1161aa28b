//! Command-line front end: trade-off curve emission, repair experiments,
//! min-cut oracle verification, and full-payload round-trip checks.
//!
//! Exit codes: 0 success, 1 verification/reconstruction failure, 2 invalid
//! configuration, 3 enumeration budget exceeded.

use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num::{BigRational, One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

use broadrep::error::Error;
use broadrep::flowgraph::{build_graph, enumerate_patterns, min_cut};
use broadrep::presets;
use broadrep::ratio::{format_significant, parse_ratio};
use broadrep::sim::{
    bytes_to_packets, minimal_extension_degree, packets_to_bytes, run_experiment,
    CodeConfig, SimMode, StorageSystem,
};
use broadrep::tradeoff::{cut_term_breakdown, emit_curve, min_cut_capacity, SystemParams};

#[derive(Parser)]
#[command(
    name = "broadrep",
    version,
    about = "Regenerating-code toolkit: broadcast repair of multiple partial failures"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Emit the exact storage / repair-bandwidth trade-off curve
    Tradeoff(TradeoffArgs),
    /// Run a seeded repair experiment and report subspace dimensions
    Simulate(SimulateArgs),
    /// Cross-check the closed-form min-cut against flow-graph enumeration
    VerifyMincut(VerifyArgs),
    /// Encode a file, run repair rounds, reconstruct, and byte-compare
    Roundtrip(RoundtripArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct TradeoffArgs {
    /// Total number of nodes (defaults to d + r)
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    d: usize,
    #[arg(long)]
    r: usize,
    /// Surviving fraction of a faulty node (rational, e.g. 0, 1/2, 0.5)
    #[arg(long, default_value = "0")]
    rho: String,
    /// File size (rational)
    #[arg(long = "M", default_value = "1")]
    m: String,
    /// Number of evenly spaced curve samples (corners are always included)
    #[arg(long, default_value_t = 25)]
    points: usize,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Output path (default stdout)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SimulateArgs {
    /// Load a named parameter row, e.g. tableII:7 (overrides n/k/d/r/j-bar/e/q)
    #[arg(long)]
    preset: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    /// Trade-off index, 1 ..= k/r
    #[arg(long = "j-bar")]
    j_bar: Option<usize>,
    /// Helper sampling surplus
    #[arg(long, default_value_t = 0)]
    e: usize,
    /// Field characteristic (prime)
    #[arg(long)]
    q: Option<u64>,
    /// Expansion factor (rho * xi must be an integer)
    #[arg(long, default_value_t = 1)]
    xi: usize,
    /// Surviving fraction of a faulty node
    #[arg(long, default_value = "0")]
    rho: String,
    /// Extension degree (defaults to the minimum (n-r) * S)
    #[arg(long)]
    l: Option<usize>,
    #[arg(long, value_enum, default_value = "dimension-tracking")]
    mode: CliMode,
    #[arg(long, default_value_t = 100)]
    rounds: usize,
    #[arg(long, default_value_t = 50)]
    trials: usize,
    /// Per-round k-subset probes; > 0 also samples the independence checks
    #[arg(long, default_value_t = 0)]
    dc_samples: usize,
    #[arg(long, env = "REGEN_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CliMode {
    DimensionTracking,
    FullPayload,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    d: usize,
    #[arg(long)]
    r: usize,
    #[arg(long, default_value = "0")]
    rho: String,
    /// Repair rounds to enumerate (defaults to ceil(k/r), the worst-case depth)
    #[arg(long)]
    max_rounds: Option<usize>,
    /// Enumeration budget in flow evaluations
    #[arg(long, default_value_t = 200_000)]
    budget: u64,
    /// Grid resolution: checks grid^2 exact rational (alpha, beta) pairs
    #[arg(long, default_value_t = 4)]
    grid: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RoundtripArgs {
    /// File to encode and recover
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    d: usize,
    #[arg(long)]
    r: usize,
    #[arg(long = "j-bar")]
    j_bar: usize,
    #[arg(long, default_value_t = 0)]
    e: usize,
    #[arg(long)]
    q: u64,
    #[arg(long, default_value_t = 1)]
    xi: usize,
    #[arg(long, default_value = "0")]
    rho: String,
    #[arg(long, default_value_t = 5)]
    rounds: usize,
    /// Duplicate the first helper into the last slot each round, so the
    /// round effectively reaches d-1 distinct helpers
    #[arg(long)]
    sabotage: bool,
    #[arg(long, env = "REGEN_SEED", default_value_t = 0)]
    seed: u64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.cmd {
        Cmd::Tradeoff(a) => cmd_tradeoff(a),
        Cmd::Simulate(a) => cmd_simulate(a),
        Cmd::VerifyMincut(a) => cmd_verify_mincut(a),
        Cmd::Roundtrip(a) => cmd_roundtrip(a),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::BudgetExceeded(_) => 3,
                Error::DimensionDeficit { .. } => 1,
                _ => 2,
            };
            ExitCode::from(code)
        }
    }
}

fn write_out(path: Option<&PathBuf>, content: &str) -> Result<(), Error> {
    match path {
        Some(p) => fs::write(p, content)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(content.as_bytes())?;
        }
    }
    Ok(())
}

fn sig12(x: &BigRational) -> String {
    format_significant(x, 12)
}

fn cmd_tradeoff(a: TradeoffArgs) -> Result<u8, Error> {
    let n = a.n.unwrap_or(a.d + a.r);
    let rho = parse_ratio(&a.rho)?;
    let m = parse_ratio(&a.m)?;
    let params = SystemParams::new(n, a.k, a.d, a.r, rho, m)?;
    let curve = emit_curve(&params, a.points.max(2))?;
    let content = match a.format {
        Format::Csv => {
            let mut s = String::from("gamma,alpha,gamma_normalized,segment\n");
            for pt in &curve {
                s.push_str(&format!(
                    "{},{},{},{}\n",
                    sig12(&pt.gamma),
                    sig12(&pt.alpha),
                    sig12(&pt.gamma_normalized),
                    pt.segment
                ));
            }
            s
        }
        Format::Json => {
            let rows: Vec<serde_json::Value> = curve
                .iter()
                .map(|pt| {
                    serde_json::json!({
                        "gamma": sig12(&pt.gamma),
                        "alpha": sig12(&pt.alpha),
                        "gamma_normalized": sig12(&pt.gamma_normalized),
                        "segment": pt.segment.to_string(),
                    })
                })
                .collect();
            let mut s = serde_json::to_string_pretty(&rows)?;
            s.push('\n');
            s
        }
    };
    write_out(a.out.as_ref(), &content)?;
    Ok(0)
}

fn simulate_config(a: &SimulateArgs) -> Result<CodeConfig, Error> {
    if let Some(name) = &a.preset {
        let row = presets::lookup(name)?;
        let mut config = row.config(a.seed)?;
        config.seed = a.seed;
        return Ok(config);
    }
    let missing = |what: &str| {
        Error::InvalidParams(format!("--{what} is required unless --preset is given"))
    };
    let n = a.n.ok_or_else(|| missing("n"))?;
    let k = a.k.ok_or_else(|| missing("k"))?;
    let d = a.d.ok_or_else(|| missing("d"))?;
    let r = a.r.ok_or_else(|| missing("r"))?;
    let j_bar = a.j_bar.ok_or_else(|| missing("j-bar"))?;
    let q = a.q.ok_or_else(|| missing("q"))?;
    let rho = parse_ratio(&a.rho)?;
    let params = SystemParams::new(n, k, d, r, rho, BigRational::one())?;
    let s = (d - (j_bar - 1) * r) * a.xi;
    let l = a.l.unwrap_or((n - r) * s);
    let mode = match a.mode {
        CliMode::DimensionTracking => SimMode::DimensionTracking,
        CliMode::FullPayload => SimMode::FullPayload,
    };
    CodeConfig::new(params, j_bar, a.e, a.xi, q, l, mode, a.seed)
}

fn cmd_simulate(a: SimulateArgs) -> Result<u8, Error> {
    let config = simulate_config(&a)?;
    if config.mode == SimMode::FullPayload && config.l > 128 {
        eprintln!(
            "warning: full-payload mode at extension degree {} will be slow; \
             dimension-tracking gives the same dimension statistics",
            config.l
        );
    }
    let report = run_experiment(&config, a.rounds, a.trials, a.dc_samples)?;
    let mut content = serde_json::to_string_pretty(&report)?;
    content.push('\n');
    write_out(a.out.as_ref(), &content)?;
    eprintln!(
        "min_dim {} vs target {}: {} ({} ms)",
        report.min_dim,
        report.pstar,
        if report.target_met { "met" } else { "NOT MET" },
        report.wall_ms
    );
    Ok(if report.target_met { 0 } else { 1 })
}

fn cmd_verify_mincut(a: VerifyArgs) -> Result<u8, Error> {
    let rho = parse_ratio(&a.rho)?;
    let params = SystemParams::new(a.n, a.k, a.d, a.r, rho, BigRational::one())?;
    let rounds = a.max_rounds.unwrap_or(a.k.div_ceil(a.r));
    if a.grid == 0 {
        return Err(Error::InvalidParams("grid must be positive".into()));
    }
    let patterns = enumerate_patterns(&params, rounds, a.budget)?;
    let mut max_disc = BigRational::zero();
    let mut mismatches: Vec<serde_json::Value> = Vec::new();
    let mut pairs = 0usize;
    for i in 1..=a.grid {
        for j in 1..=a.grid {
            let alpha = BigRational::new(i.into(), a.grid.into());
            let beta = BigRational::new(j.into(), a.grid.into());
            let mut oracle: Option<BigRational> = None;
            for pat in &patterns {
                let cut = min_cut(&build_graph(&params, pat, &alpha, &beta)?)?;
                if oracle.as_ref().is_none_or(|best| &cut < best) {
                    oracle = Some(cut);
                }
            }
            let oracle = oracle.expect("at least the empty pattern");
            let formula = min_cut_capacity(&params, &alpha, &beta);
            pairs += 1;
            if oracle != formula {
                let diff = (&oracle - &formula).abs();
                if diff > max_disc {
                    max_disc = diff.clone();
                }
                let terms: Vec<serde_json::Value> = cut_term_breakdown(&params, &alpha, &beta)
                    .iter()
                    .map(|t| {
                        serde_json::json!({
                            "newcomers": t.newcomers,
                            "fresh": t.fresh,
                            "remainder": t.remainder,
                            "arm": if t.storage_arm { "storage" } else { "bandwidth" },
                            "value": t.value.to_string(),
                        })
                    })
                    .collect();
                mismatches.push(serde_json::json!({
                    "alpha": alpha.to_string(),
                    "beta": beta.to_string(),
                    "enumerated": oracle.to_string(),
                    "closed_form": formula.to_string(),
                    "closed_form_terms": terms,
                }));
            }
        }
    }
    let summary = serde_json::json!({
        "n": a.n, "k": a.k, "d": a.d, "r": a.r,
        "rho": params.rho.to_string(),
        "max_rounds": rounds,
        "patterns": patterns.len(),
        "pairs_checked": pairs,
        "max_discrepancy": max_disc.to_string(),
        "mismatches": mismatches,
    });
    let mut content = serde_json::to_string_pretty(&summary)?;
    content.push('\n');
    write_out(a.out.as_ref(), &content)?;
    Ok(if max_disc.is_zero() { 0 } else { 1 })
}

fn cmd_roundtrip(a: RoundtripArgs) -> Result<u8, Error> {
    let data = fs::read(&a.input)?;
    let rho = parse_ratio(&a.rho)?;
    let params = SystemParams::new(a.n, a.k, a.d, a.r, rho, BigRational::one())?;
    let s = (a.d - (a.j_bar - 1) * a.r) * a.xi;
    // the ambient degree must both admit the construction and fit the payload
    let target = broadrep::tradeoff::pstar(a.k, a.d, a.r, a.j_bar, &params.rho, a.xi)?;
    let l = ((a.n - a.r) * s).max(minimal_extension_degree(a.q, target as usize, data.len()));
    let config = CodeConfig::new(
        params,
        a.j_bar,
        a.e,
        a.xi,
        a.q,
        l,
        SimMode::FullPayload,
        a.seed,
    )?;
    let partial = config.params.rho > BigRational::zero();
    let ctx = broadrep::field::make_ext_field(a.q, l)?;
    let coeffs = bytes_to_packets(a.q, l, &data, target as usize)?;
    let mut packets = Vec::with_capacity(coeffs.len());
    for c in coeffs {
        packets.push(ctx.from_coeffs(c)?);
    }
    let mut sys = StorageSystem::init(config, &packets)?;
    let mut rng = ChaCha20Rng::seed_from_u64(a.seed);
    for _ in 0..a.rounds {
        let failed = rand::seq::index::sample(&mut rng, a.n, a.r).into_vec();
        let alive: Vec<usize> = (0..a.n).filter(|i| !failed.contains(i)).collect();
        let mut helpers: Vec<usize> = rand::seq::index::sample(&mut rng, alive.len(), a.d)
            .iter()
            .map(|i| alive[i])
            .collect();
        if a.sabotage {
            helpers[a.d - 1] = helpers[0];
        }
        if partial {
            let nonce = sys.rounds_run();
            for &f in &failed {
                sys.erase_random(f, nonce)?;
            }
        }
        sys.repair_with_slots(&failed, &helpers, partial)?;
    }
    let dc = rand::seq::index::sample(&mut rng, a.n, a.k).into_vec();
    let rec = sys.reconstruct(&dc)?;
    let recovered = rec.packets.ok_or_else(|| {
        Error::InvalidParams("reconstruction returned no payloads".into())
    })?;
    let digit_rows: Vec<Vec<u64>> = recovered.into_iter().map(|p| p.coeffs).collect();
    let out = packets_to_bytes(a.q, l, &digit_rows)?;
    if out == data {
        eprintln!(
            "roundtrip ok: {} bytes through {} rounds, dimension {}",
            data.len(),
            a.rounds,
            rec.dim
        );
        Ok(0)
    } else {
        eprintln!("roundtrip FAILED: payload mismatch at dimension {}", rec.dim);
        Ok(1)
    }
}
