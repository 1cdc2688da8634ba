//! Command-line surface: generate posets, compute exact dimension
//! invariants, unfold, run the extraction pipelines, and verify
//! certificates.
//!
//! Exit codes: 0 success, 1 verified negative (rejected certificate, oracle
//! found nothing), 2 usage error, 3 infeasible or failed extraction.

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use coverdim::bits::Bits;
use coverdim::dim;
use coverdim::dot;
use coverdim::extract::{self, ExtractParams, ExtractionReport, Mode};
use coverdim::gens::{self, GenSpec};
use coverdim::io::{parse_poset, write_poset};
use coverdim::kk::{kk_extract, KKParams};
use coverdim::minor::{self, SubdivisionCertificate, UGraph};
use coverdim::poset::{PointSet, Poset};
use coverdim::unfold;
use std::io::Read;
use std::path::PathBuf;

const EXIT_OK: i32 = 0;
const EXIT_NEGATIVE: i32 = 1;
const EXIT_USAGE: i32 = 2;
const EXIT_FAILED: i32 = 3;

#[derive(Parser)]
#[command(name = "coverdim", version, about = "Poset dimension and cover-graph subdivision toolkit")]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a poset in the text format
    Gen(GenArgs),
    /// Exact dimension of a poset
    Dim(InputArgs),
    /// Exact dimension over min-max pairs only
    Dimstar(InputArgs),
    /// Exact chi(A, B) for point sets A and B (defaults: minimals, maximals)
    Chi(ChiArgs),
    /// Unfold a connected poset from a minimal root
    Unfold(UnfoldArgs),
    /// Run the bounded-height extraction pipeline
    Extract(ExtractArgs),
    /// Run the (k+k)-free extraction pipeline
    KkExtract(KkExtractArgs),
    /// Check a subdivision certificate against a poset's cover graph
    Verify(VerifyArgs),
    /// Brute-force search for a clique subdivision in the cover graph
    Oracle(OracleArgs),
    /// Emit the cover graph as DOT
    ExportDot(ExportDotArgs),
    /// Exact big-integer constants of the extraction theorems
    Constants(ConstantsArgs),
}

#[derive(Args)]
struct GenArgs {
    /// Family to generate
    #[arg(long, value_enum)]
    family: Family,
    /// Size parameter d (standard, kelly)
    #[arg(long)]
    d: Option<usize>,
    /// Element count n (chain, antichain, random, tree, interval)
    #[arg(long)]
    n: Option<usize>,
    /// Number of atoms (boolean lattice)
    #[arg(long)]
    atoms: Option<u32>,
    /// Arc probability (random)
    #[arg(long)]
    prob: Option<f64>,
    /// Random seed
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write to a file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Chain,
    Antichain,
    Standard,
    Kelly,
    Boolean,
    Random,
    Tree,
    Interval,
}

#[derive(Args)]
struct InputArgs {
    /// Poset file in the text format; stdin when absent
    #[arg(long)]
    input: Option<PathBuf>,
    /// Emit the full certificate as JSON
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ChiArgs {
    #[arg(long)]
    input: Option<PathBuf>,
    /// Comma-separated elements of A; defaults to the minimal points
    #[arg(long)]
    a: Option<String>,
    /// Comma-separated elements of B; defaults to the maximal points
    #[arg(long)]
    b: Option<String>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct UnfoldArgs {
    #[arg(long)]
    input: Option<PathBuf>,
    /// Root minimal element; defaults to the lowest minimal
    #[arg(long)]
    root: Option<usize>,
    /// Emit a layered DOT rendering instead of the layer listing
    #[arg(long)]
    dot: bool,
}

#[derive(Args)]
struct ExtractArgs {
    #[arg(long)]
    input: Option<PathBuf>,
    /// Target clique size
    #[arg(long)]
    n: usize,
    /// Height bound
    #[arg(long)]
    h: usize,
    /// paper (exact thresholds, reported infeasible) or best-effort
    #[arg(long, value_enum, default_value_t = RunMode::BestEffort)]
    mode: RunMode,
    /// Comma-separated per-iteration chi thresholds (best-effort)
    #[arg(long)]
    thresholds: Option<String>,
    /// Collection cap (best-effort)
    #[arg(long)]
    cap: Option<usize>,
    /// Print the per-step invariant audit to stderr
    #[arg(long)]
    check_invariants: bool,
    /// Write the JSON report to this file (stdout gets a summary)
    #[arg(long)]
    report: Option<PathBuf>,
    /// Write a DOT rendering with the certificate highlighted
    #[arg(long)]
    dot: Option<PathBuf>,
    /// Print the JSON report to stdout instead of the summary
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct KkExtractArgs {
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long)]
    n: usize,
    /// Chain-pair bound k of (k+k)-freeness
    #[arg(long)]
    k: usize,
    #[arg(long, value_enum, default_value_t = RunMode::BestEffort)]
    mode: RunMode,
    #[arg(long)]
    thresholds: Option<String>,
    #[arg(long)]
    cap: Option<usize>,
    #[arg(long)]
    check_invariants: bool,
    #[arg(long)]
    report: Option<PathBuf>,
    #[arg(long)]
    dot: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum RunMode {
    Paper,
    BestEffort,
}

#[derive(Args)]
struct VerifyArgs {
    /// Poset file whose cover graph hosts the certificate
    #[arg(long)]
    graph: PathBuf,
    /// Certificate JSON file
    #[arg(long)]
    certificate: PathBuf,
    /// Clique size the certificate claims
    #[arg(long)]
    n: usize,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long)]
    n: usize,
    /// Hard vertex cutoff for the exhaustive search
    #[arg(long, default_value_t = minor::DEFAULT_ORACLE_LIMIT)]
    limit: usize,
}

#[derive(Args)]
struct ExportDotArgs {
    #[arg(long)]
    input: Option<PathBuf>,
    /// Rank the drawing by the unfolding from this root
    #[arg(long)]
    layered_from: Option<usize>,
    /// Highlight a subdivision certificate from this JSON file
    #[arg(long)]
    highlight: Option<PathBuf>,
}

#[derive(Args)]
struct ConstantsArgs {
    #[arg(long)]
    n: u32,
    /// Height bound of the bounded-height theorem
    #[arg(long)]
    h: Option<u32>,
    /// Chain bound of the (k+k)-free theorem
    #[arg(long)]
    k: Option<u32>,
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            std::process::exit(EXIT_USAGE);
        }
    }
}

fn run(cli: Cli) -> Result<i32> {
    match cli.cmd {
        Command::Gen(args) => cmd_gen(args),
        Command::Dim(args) => cmd_dim(args, false),
        Command::Dimstar(args) => cmd_dim(args, true),
        Command::Chi(args) => cmd_chi(args),
        Command::Unfold(args) => cmd_unfold(args),
        Command::Extract(args) => cmd_extract(args),
        Command::KkExtract(args) => cmd_kk_extract(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Oracle(args) => cmd_oracle(args),
        Command::ExportDot(args) => cmd_export_dot(args),
        Command::Constants(args) => cmd_constants(args),
    }
}

fn read_poset(input: &Option<PathBuf>) -> Result<Poset> {
    let text = match input {
        Some(path) => std::fs::read_to_string(path)
            .with_context(|| format!("reading {}", path.display()))?,
        None => {
            let mut buf = String::new();
            std::io::stdin().read_to_string(&mut buf).context("reading stdin")?;
            buf
        }
    };
    parse_poset(&text).map_err(|e| anyhow!("parsing poset: {e}"))
}

fn parse_points(p: &Poset, spec: &str) -> Result<PointSet> {
    let mut set = Bits::new(p.n());
    for tok in spec.split(',').filter(|t| !t.trim().is_empty()) {
        let ix: usize = tok.trim().parse().with_context(|| format!("bad element `{tok}`"))?;
        if ix >= p.n() {
            bail!("element {ix} out of range for a poset on {} elements", p.n());
        }
        set.insert(ix);
    }
    Ok(set)
}

fn cmd_gen(args: GenArgs) -> Result<i32> {
    let need = |v: Option<usize>, what: &str| v.ok_or_else(|| anyhow!("--{what} is required for this family"));
    let spec = match args.family {
        Family::Chain => GenSpec::Chain { n: need(args.n, "n")? },
        Family::Antichain => GenSpec::Antichain { n: need(args.n, "n")? },
        Family::Standard => GenSpec::Standard { d: need(args.d, "d")? },
        Family::Kelly => GenSpec::Kelly { d: need(args.d, "d")? },
        Family::Boolean => GenSpec::BooleanLattice {
            atoms: args.atoms.ok_or_else(|| anyhow!("--atoms is required for boolean"))?,
        },
        Family::Random => GenSpec::Random {
            n: need(args.n, "n")?,
            prob: args.prob.ok_or_else(|| anyhow!("--prob is required for random"))?,
            seed: args.seed,
        },
        Family::Tree => GenSpec::TreeCover { n: need(args.n, "n")?, seed: args.seed },
        Family::Interval => GenSpec::IntervalOrder { n: need(args.n, "n")?, seed: args.seed },
    };
    let p = gens::corpus(&spec).map_err(|e| anyhow!("{e}"))?;
    let text = write_poset(&p);
    match args.out {
        Some(path) => std::fs::write(&path, text)
            .with_context(|| format!("writing {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(EXIT_OK)
}

fn cmd_dim(args: InputArgs, star: bool) -> Result<i32> {
    let p = read_poset(&args.input)?;
    let (d, cert) = if star { dim::dim_star_exact(&p) } else { dim::dim_exact(&p) };
    if args.json {
        let doc = serde_json::json!({
            "dim": d,
            "min_max_only": star,
            "classes": cert.classes,
            "extensions": cert.extensions,
        });
        println!("{}", serde_json::to_string_pretty(&doc)?);
    } else {
        println!("{d}");
    }
    Ok(EXIT_OK)
}

fn cmd_chi(args: ChiArgs) -> Result<i32> {
    let p = read_poset(&args.input)?;
    let a = match &args.a {
        Some(s) => parse_points(&p, s)?,
        None => p.minimals(),
    };
    let b = match &args.b {
        Some(s) => parse_points(&p, s)?,
        None => p.maximals(),
    };
    let (chi, classes) = dim::chi_partition(&p, &a, &b);
    if args.json {
        let doc = serde_json::json!({ "chi": chi, "classes": classes });
        println!("{}", serde_json::to_string_pretty(&doc)?);
    } else {
        println!("{chi}");
    }
    Ok(EXIT_OK)
}

fn cmd_unfold(args: UnfoldArgs) -> Result<i32> {
    let p = read_poset(&args.input)?;
    let a = p.minimals();
    let b = p.maximals();
    let root = match args.root {
        Some(r) => r,
        None => a.first().ok_or_else(|| anyhow!("poset has no minimal point"))?,
    };
    let u = unfold::unfold(&p, &a, &b, root).map_err(|e| anyhow!("{e}"))?;
    if args.dot {
        print!("{}", dot::poset_dot_layered(&p, &u));
    } else {
        for (i, layer) in u.a_layers.iter().enumerate() {
            println!("A{i}: {}", join(layer));
        }
        for (i, layer) in u.b_layers.iter().enumerate() {
            println!("B{}: {}", i + 1, join(layer));
        }
    }
    Ok(EXIT_OK)
}

fn join(s: &PointSet) -> String {
    s.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

fn parse_thresholds(spec: &Option<String>) -> Result<Vec<u64>> {
    let Some(spec) = spec else {
        bail!("--thresholds is required in best-effort mode");
    };
    spec.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.trim().parse::<u64>().with_context(|| format!("bad threshold `{t}`")))
        .collect()
}

fn build_mode(mode: RunMode, thresholds: &Option<String>, cap: Option<usize>) -> Result<Mode> {
    match mode {
        RunMode::Paper => Ok(Mode::Paper),
        RunMode::BestEffort => Ok(Mode::BestEffort {
            thresholds: parse_thresholds(thresholds)?,
            cap: cap.ok_or_else(|| anyhow!("--cap is required in best-effort mode"))?,
        }),
    }
}

fn finish_extraction(
    p: &Poset,
    rep: &ExtractionReport,
    json: bool,
    check_invariants: bool,
    report_path: &Option<PathBuf>,
    dot_path: &Option<PathBuf>,
) -> Result<i32> {
    if let Some(path) = report_path {
        std::fs::write(path, serde_json::to_string_pretty(rep)?)
            .with_context(|| format!("writing {}", path.display()))?;
    }
    if let Some(path) = dot_path {
        let rendering = match &rep.certificate {
            Some(cert) => dot::poset_dot_highlighted(p, cert),
            None => dot::poset_dot(p),
        };
        std::fs::write(path, rendering).with_context(|| format!("writing {}", path.display()))?;
    }
    if check_invariants {
        match &rep.failure {
            Some(f) if matches!(f.kind, extract::FailureKind::InvariantViolation { .. }) => {
                eprintln!("invariants: VIOLATION at {} step {}", f.phase, f.step);
            }
            _ => eprintln!(
                "invariants: {} phase-1 steps and {} phase-2 rounds audited, no violation",
                rep.phase1.len().saturating_sub(1),
                rep.phase2.len()
            ),
        }
    }
    if json {
        println!("{}", serde_json::to_string_pretty(rep)?);
    } else if rep.succeeded() {
        let cert = rep.certificate.as_ref().unwrap();
        println!(
            "subdivision of K_{} found: principals {:?}, {} paths, verified",
            rep.n,
            cert.principals,
            cert.paths.len()
        );
    } else if let Some(f) = &rep.failure {
        println!(
            "extraction failed in {} at step {}: {}",
            f.phase,
            f.step,
            serde_json::to_string(&f.kind)?
        );
    }
    Ok(if rep.succeeded() { EXIT_OK } else { EXIT_FAILED })
}

fn cmd_extract(args: ExtractArgs) -> Result<i32> {
    let p = read_poset(&args.input)?;
    let mode = build_mode(args.mode, &args.thresholds, args.cap)?;
    let params = ExtractParams { n: args.n, h: args.h, mode };
    let rep = extract::extract(&p, &params);
    finish_extraction(&p, &rep, args.json, args.check_invariants, &args.report, &args.dot)
}

fn cmd_kk_extract(args: KkExtractArgs) -> Result<i32> {
    let p = read_poset(&args.input)?;
    let mode = build_mode(args.mode, &args.thresholds, args.cap)?;
    let params = KKParams { n: args.n, k: args.k, mode };
    let rep = kk_extract(&p, &params);
    finish_extraction(&p, &rep, args.json, args.check_invariants, &args.report, &args.dot)
}

fn cmd_verify(args: VerifyArgs) -> Result<i32> {
    let p = read_poset(&Some(args.graph))?;
    let text = std::fs::read_to_string(&args.certificate)
        .with_context(|| format!("reading {}", args.certificate.display()))?;
    let cert: SubdivisionCertificate =
        serde_json::from_str(&text).context("parsing certificate JSON")?;
    let g = UGraph::from_cover(&p.cover_digraph());
    match minor::verify_subdivision(&g, &cert, args.n) {
        Ok(()) => {
            println!("certificate: ACCEPTED (K_{} subdivision)", args.n);
            Ok(EXIT_OK)
        }
        Err(defect) => {
            println!("certificate: REJECTED ({defect})");
            Ok(EXIT_NEGATIVE)
        }
    }
}

fn cmd_oracle(args: OracleArgs) -> Result<i32> {
    let p = read_poset(&args.input)?;
    let g = UGraph::from_cover(&p.cover_digraph());
    match minor::find_clique_subdivision_with_limit(&g, args.n, args.limit) {
        Err(e) => Err(anyhow!("{e}")),
        Ok(Some(cert)) => {
            println!("{}", serde_json::to_string_pretty(&cert)?);
            Ok(EXIT_OK)
        }
        Ok(None) => {
            println!("none");
            Ok(EXIT_NEGATIVE)
        }
    }
}

fn cmd_export_dot(args: ExportDotArgs) -> Result<i32> {
    let p = read_poset(&args.input)?;
    if let Some(path) = &args.highlight {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading {}", path.display()))?;
        let cert: SubdivisionCertificate =
            serde_json::from_str(&text).context("parsing certificate JSON")?;
        print!("{}", dot::poset_dot_highlighted(&p, &cert));
    } else if let Some(root) = args.layered_from {
        let u = unfold::unfold(&p, &p.minimals(), &p.maximals(), root).map_err(|e| anyhow!("{e}"))?;
        print!("{}", dot::poset_dot_layered(&p, &u));
    } else {
        print!("{}", dot::poset_dot(&p));
    }
    Ok(EXIT_OK)
}

fn cmd_constants(args: ConstantsArgs) -> Result<i32> {
    let c = match (args.h, args.k) {
        (Some(h), None) => {
            if args.n < 3 || h < 2 {
                bail!("constants need n >= 3 and h >= 2");
            }
            extract::paper_constants(args.n, h)
        }
        (None, Some(k)) => {
            if args.n < 3 || k < 2 {
                bail!("constants need n >= 3 and k >= 2");
            }
            extract::kk_constants(args.n, k)
        }
        _ => bail!("pass exactly one of --h (bounded height) or --k ((k+k)-free)"),
    };
    println!("M = {}", c.m);
    println!("L = {}", c.l);
    println!("digits(n^L) = {}", c.dim_threshold_digits);
    Ok(EXIT_OK)
}
