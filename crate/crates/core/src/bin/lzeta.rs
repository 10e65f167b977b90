//! Command-line front door: parse graph/local-system JSON, dispatch to the
//! pipelines, emit machine-readable reports.
//!
//! Exit codes: 0 success, 1 usage or I/O, 2 validation, 3 budget,
//! 4 identity verification failure.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use serde::Serialize;

use lzeta::cover::{
    build_cover, composite_permutation_cover, homology_tower, random_cover, trivial_cover,
    CoverGraph, FiniteGroup,
};
use lzeta::error::{Error, ErrorCategory};
use lzeta::geodesic::{enumerate_primitive, euler_product_log_series, EnumerationBudget};
use lzeta::graph::{GraphMode, Multigraph};
use lzeta::io::{
    format_f64, graph_from_json, graph_to_json, local_system_from_json, poly_to_strings,
    scalar_to_string, series_to_strings, AnyLocalSystem,
};
use lzeta::l2det::{convergence_experiment, gamma_heat_trace, l2det_closed, PrecisionConfig};
use lzeta::local_system::LocalSystem;
use lzeta::scalar::{format_rational, parse_rational, rational_to_f64};
use lzeta::with_local_system;
use lzeta::zeta::{
    bass_zeta, edge_zeta, laplacian_zeta, t0t1_zeta, verify_main_theorem,
};

#[derive(Parser)]
#[command(
    name = "lzeta",
    version,
    about = "Zeta functions of graphs with unitary local systems, voltage covers, and normalized-determinant convergence experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Regular,
    General,
}

impl From<ModeArg> for GraphMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Regular => GraphMode::Regular,
            ModeArg::General => GraphMode::General,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Bass,
    Edge,
    T0t1,
    Laplacian,
    Geodesic,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Zeta polynomial (or its geodesic log-series) of a graph with an
    /// optional local system
    Zeta {
        graph: PathBuf,
        #[arg(long, value_enum)]
        method: Method,
        /// Truncation degree for the geodesic method
        #[arg(long)]
        max_len: Option<usize>,
        #[arg(long)]
        local_system: Option<PathBuf>,
        /// Enumeration budget override (elementary steps)
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long, value_enum, default_value = "general")]
        mode: ModeArg,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Include wall-clock timing in the report (non-deterministic
        /// field, off by default)
        #[arg(long)]
        timing: bool,
    },
    /// Enumerate primitive closed geodesic classes
    Geodesics {
        graph: PathBuf,
        #[arg(long)]
        max_len: usize,
        #[arg(long)]
        local_system: Option<PathBuf>,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long, value_enum, default_value = "general")]
        mode: ModeArg,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Verify the determinant-quotient identity for the zeta function
    VerifyMain {
        graph: PathBuf,
        #[arg(long)]
        local_system: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "general")]
        mode: ModeArg,
    },
    /// Build a seeded cover (group voltages or random permutations)
    Cover {
        graph: PathBuf,
        /// Elementary abelian group spec like Z2^3 (seeded voltages)
        #[arg(long, conflicts_with = "degree")]
        group: Option<String>,
        /// Permutation cover degree (seeded permutations)
        #[arg(long)]
        degree: Option<usize>,
        #[arg(long)]
        seed: u64,
        #[arg(long, value_enum, default_value = "general")]
        mode: ModeArg,
    },
    /// Iterated mod-p homology covers
    Tower {
        graph: PathBuf,
        #[arg(long)]
        prime: usize,
        #[arg(long)]
        levels: usize,
        #[arg(long, default_value_t = 16_384)]
        index_cap: u64,
        #[arg(long, value_enum, default_value = "general")]
        mode: ModeArg,
    },
    /// Normalized determinant convergence along a cover sequence
    Converge {
        graph: PathBuf,
        /// Comma list of covers: trivial | tower:LEVELS | random:DEGREE
        #[arg(long)]
        covers: String,
        #[arg(long)]
        u: String,
        #[arg(long)]
        seed: Option<u64>,
        /// Prime for tower covers
        #[arg(long, default_value_t = 2)]
        prime: usize,
        /// Vertex count up to which determinants stay exact rational
        #[arg(long, default_value_t = 200)]
        exact_limit: usize,
        /// Significant digits for the high-precision float fallback
        #[arg(long, default_value_t = 60)]
        digits: u32,
        #[arg(long, value_enum, default_value = "general")]
        mode: ModeArg,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Closed-form normalized determinant of Laplacian + lambda_u
    L2det {
        #[arg(long)]
        q: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        u: String,
    },
    /// Truncated tree heat trace with a certified tail bound
    HeatTrace {
        #[arg(long)]
        q: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        t: String,
        #[arg(long, default_value_t = 40)]
        terms: usize,
    },
}

fn main() -> ExitCode {
    // Die quietly when a downstream pipe closes instead of panicking.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    if let Ok(threads) = std::env::var("LZETA_THREADS") {
        if let Ok(n) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global();
        }
    }
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0u8,
                _ => 1u8,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let (label, code) = match e.category() {
                ErrorCategory::Usage => ("usage", 1u8),
                ErrorCategory::Validation => ("validation", 2),
                ErrorCategory::Budget => ("budget", 3),
                ErrorCategory::VerifyFailed => ("verify-failed", 4),
            };
            eprintln!("error[{label}]: {e}");
            ExitCode::from(code)
        }
    }
}

fn load_graph(path: &Path, mode: ModeArg) -> Result<Arc<Multigraph>, Error> {
    let text = std::fs::read_to_string(path)?;
    Ok(Arc::new(graph_from_json(&text, mode.into())?))
}

fn load_local_system(
    graph: &Arc<Multigraph>,
    path: Option<&PathBuf>,
) -> Result<AnyLocalSystem, Error> {
    match path {
        None => Ok(AnyLocalSystem::Rational(LocalSystem::trivial(
            graph.clone(),
            1,
        ))),
        Some(p) => {
            let text = std::fs::read_to_string(p)?;
            local_system_from_json(graph.clone(), &text)
        }
    }
}

#[derive(Serialize)]
struct ZetaReport {
    method: String,
    coefficient_kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    degree: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    truncation: Option<usize>,
    coefficients: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    timing_ms: Option<u128>,
}

#[derive(Serialize)]
struct GeodesicRow {
    length: usize,
    darts: Vec<usize>,
    trace: String,
}

#[derive(Serialize)]
struct VerifyReport {
    pass: bool,
    lhs_coeffs: Vec<String>,
    rhs_coeffs: Vec<String>,
    first_mismatch: Option<usize>,
}

#[derive(Serialize)]
struct CoverReport {
    base: serde_json::Value,
    total: serde_json::Value,
    index: usize,
    normal: bool,
    projection_vertices: Vec<usize>,
    projection_darts: Vec<usize>,
    girth: Option<usize>,
}

#[derive(Serialize)]
struct L2detReport {
    q: usize,
    n: usize,
    r: usize,
    u: String,
    value: String,
    value_f64: String,
}

#[derive(Serialize)]
struct HeatTraceReport {
    q: usize,
    n: usize,
    r: usize,
    t: String,
    terms: usize,
    value: String,
    tail_bound: String,
}

fn run(command: Command) -> Result<(), Error> {
    match command {
        Command::Zeta {
            graph,
            method,
            max_len,
            local_system,
            budget,
            mode,
            format,
            timing,
        } => {
            let g = load_graph(&graph, mode)?;
            let ls = load_local_system(&g, local_system.as_ref())?;
            let budget = EnumerationBudget {
                max_steps: budget.unwrap_or(EnumerationBudget::default().max_steps),
            };
            let start = Instant::now();
            let report = match method {
                Method::Geodesic => {
                    let max_len = max_len.ok_or_else(|| {
                        Error::Parse("--max-len is required for the geodesic method".into())
                    })?;
                    let coefficients = with_local_system!(&ls, sys => {
                        euler_product_log_series(sys, max_len, &budget)
                            .map(|s| series_to_strings(&s))
                    })?;
                    ZetaReport {
                        method: "geodesic".into(),
                        coefficient_kind: ls.kind().to_string(),
                        degree: None,
                        truncation: Some(max_len),
                        coefficients,
                        timing_ms: timing.then(|| start.elapsed().as_millis()),
                    }
                }
                _ => {
                    let name = match method {
                        Method::Bass => "bass",
                        Method::Edge => "edge",
                        Method::T0t1 => "t0t1",
                        Method::Laplacian => "laplacian",
                        Method::Geodesic => unreachable!(),
                    };
                    let (degree, coefficients) = with_local_system!(&ls, sys => {
                        let poly = match method {
                            Method::Bass => bass_zeta(sys),
                            Method::Edge => edge_zeta(sys),
                            Method::T0t1 => t0t1_zeta(sys),
                            Method::Laplacian => laplacian_zeta(sys),
                            Method::Geodesic => unreachable!(),
                        }?;
                        Ok::<_, Error>((poly.degree(), poly_to_strings(&poly)))
                    })?;
                    ZetaReport {
                        method: name.into(),
                        coefficient_kind: ls.kind().to_string(),
                        degree,
                        truncation: None,
                        coefficients,
                        timing_ms: timing.then(|| start.elapsed().as_millis()),
                    }
                }
            };
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&report)?),
                Format::Csv => {
                    for (k, c) in report.coefficients.iter().enumerate() {
                        println!("{k},{c}");
                    }
                }
            }
            Ok(())
        }
        Command::Geodesics {
            graph,
            max_len,
            local_system,
            budget,
            mode,
            format,
        } => {
            let g = load_graph(&graph, mode)?;
            let ls = load_local_system(&g, local_system.as_ref())?;
            let budget = EnumerationBudget {
                max_steps: budget.unwrap_or(EnumerationBudget::default().max_steps),
            };
            let classes = enumerate_primitive(&g, max_len, &budget)?;
            let rows: Vec<GeodesicRow> = classes
                .iter()
                .map(|class| {
                    let trace = with_local_system!(&ls, sys => {
                        sys.monodromy(class.darts()).map(|m| scalar_to_string(&m.trace()))
                    })?;
                    Ok(GeodesicRow {
                        length: class.len(),
                        darts: class.darts().to_vec(),
                        trace,
                    })
                })
                .collect::<Result<_, Error>>()?;
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&rows)?),
                Format::Csv => {
                    for row in rows {
                        let darts: Vec<String> =
                            row.darts.iter().map(|d| d.to_string()).collect();
                        println!("{} {} {}", row.length, darts.join(","), row.trace);
                    }
                }
            }
            Ok(())
        }
        Command::VerifyMain {
            graph,
            local_system,
            mode,
        } => {
            let g = load_graph(&graph, mode)?;
            let ls = load_local_system(&g, local_system.as_ref())?;
            let report = with_local_system!(&ls, sys => {
                verify_main_theorem(sys).map(|r| VerifyReport {
                    pass: r.pass,
                    lhs_coeffs: poly_to_strings(&r.lhs),
                    rhs_coeffs: poly_to_strings(&r.rhs),
                    first_mismatch: r.first_mismatch,
                })
            })?;
            println!("{}", serde_json::to_string_pretty(&report)?);
            if !report.pass {
                let k = report.first_mismatch.unwrap_or(0);
                return Err(Error::IdentityFailed {
                    index: k,
                    lhs: report.lhs_coeffs.get(k).cloned().unwrap_or_default(),
                    rhs: report.rhs_coeffs.get(k).cloned().unwrap_or_default(),
                });
            }
            Ok(())
        }
        Command::Cover {
            graph,
            group,
            degree,
            seed,
            mode,
        } => {
            let g = load_graph(&graph, mode)?;
            let cover = match (group, degree) {
                (Some(spec), None) => seeded_group_cover(&g, &spec, seed)?,
                (None, Some(d)) => random_cover(g.clone(), d, seed)?,
                _ => {
                    return Err(Error::Parse(
                        "exactly one of --group or --degree is required".into(),
                    ))
                }
            };
            println!("{}", serde_json::to_string_pretty(&cover_report(&cover))?);
            Ok(())
        }
        Command::Tower {
            graph,
            prime,
            levels,
            index_cap,
            mode,
        } => {
            if !is_prime(prime) {
                return Err(Error::Parse(format!("{prime} is not prime")));
            }
            let g = load_graph(&graph, mode)?;
            let covers = homology_tower(g, prime, levels, index_cap)?;
            let reports: Vec<CoverReport> = covers.iter().map(cover_report).collect();
            println!("{}", serde_json::to_string_pretty(&reports)?);
            Ok(())
        }
        Command::Converge {
            graph,
            covers,
            u,
            seed,
            prime,
            exact_limit,
            digits,
            mode,
            format,
        } => {
            let g = load_graph(&graph, mode)?;
            let u = parse_rational(&u)?;
            let cover_list = parse_cover_specs(&g, &covers, seed, prime)?;
            let report = convergence_experiment(
                &cover_list,
                &u,
                &PrecisionConfig {
                    exact_vertex_limit: exact_limit,
                    float_digits: digits,
                },
            )?;
            match format {
                Format::Csv => {
                    println!("index,girth,value,target,error,certified_bound");
                    for row in &report.rows {
                        println!(
                            "{},{},{},{},{},{}",
                            row.index,
                            row.girth,
                            format_f64(row.value),
                            format_f64(row.target),
                            format_f64(row.error),
                            format_f64(row.certified_bound)
                        );
                    }
                }
                Format::Json => {
                    #[derive(Serialize)]
                    struct Row {
                        index: usize,
                        girth: usize,
                        value: String,
                        target: String,
                        error: String,
                        certified_bound: String,
                    }
                    let rows: Vec<Row> = report
                        .rows
                        .iter()
                        .map(|r| Row {
                            index: r.index,
                            girth: r.girth,
                            value: format_f64(r.value),
                            target: format_f64(r.target),
                            error: format_f64(r.error),
                            certified_bound: format_f64(r.certified_bound),
                        })
                        .collect();
                    println!("{}", serde_json::to_string_pretty(&rows)?);
                }
            }
            Ok(())
        }
        Command::L2det { q, n, r, u } => {
            let u = parse_rational(&u)?;
            let value = l2det_closed(q, n, r, &u)?;
            let report = L2detReport {
                q,
                n,
                r,
                u: format_rational(&u),
                value: format_rational(&value),
                value_f64: format_f64(rational_to_f64(&value)),
            };
            println!("{}", serde_json::to_string_pretty(&report)?);
            Ok(())
        }
        Command::HeatTrace { q, n, r, t, terms } => {
            let t = parse_rational(&t)?;
            let h = gamma_heat_trace(q, n, r, &t, terms)?;
            let report = HeatTraceReport {
                q,
                n,
                r,
                t: format_rational(&t),
                terms,
                value: format_f64(h.value),
                tail_bound: format_f64(h.tail_bound),
            };
            println!("{}", serde_json::to_string_pretty(&report)?);
            Ok(())
        }
    }
}

fn cover_report(cover: &CoverGraph) -> CoverReport {
    let total = cover.total();
    CoverReport {
        base: serde_json::from_str(&graph_to_json(cover.base())).expect("valid json"),
        total: serde_json::from_str(&graph_to_json(total)).expect("valid json"),
        index: cover.index(),
        normal: cover.is_normal(),
        projection_vertices: (0..total.vertex_count())
            .map(|v| cover.project_vertex(v))
            .collect(),
        projection_darts: (0..total.dart_count())
            .map(|d| cover.project_dart(d))
            .collect(),
        girth: total.girth().ok(),
    }
}

/// "Z<p>^<k>" or "Z<p>": the elementary abelian group (Z/p)^k.
fn parse_group_spec(spec: &str) -> Result<(usize, usize), Error> {
    let body = spec
        .strip_prefix('Z')
        .or_else(|| spec.strip_prefix('z'))
        .ok_or_else(|| Error::Parse(format!("bad group spec {spec:?}, expected Zp^k")))?;
    let (p, k) = match body.split_once('^') {
        Some((p, k)) => (p, k),
        None => (body, "1"),
    };
    let p: usize = p
        .parse()
        .map_err(|_| Error::Parse(format!("bad group modulus in {spec:?}")))?;
    let k: usize = k
        .parse()
        .map_err(|_| Error::Parse(format!("bad group exponent in {spec:?}")))?;
    if p < 2 || k < 1 {
        return Err(Error::Parse(format!("degenerate group spec {spec:?}")));
    }
    Ok((p, k))
}

/// Group cover with seeded uniform voltages on the non-tree edges
/// (identity on tree edges), retried with sub-seeds until connected.
fn seeded_group_cover(
    base: &Arc<Multigraph>,
    spec: &str,
    seed: u64,
) -> Result<CoverGraph, Error> {
    const MAX_ATTEMPTS: usize = 100;
    let (p, k) = parse_group_spec(spec)?;
    let group = FiniteGroup::elementary_abelian(p, k)?;
    let tree = base.spanning_tree();
    for attempt in 0..MAX_ATTEMPTS {
        let mut rng = ChaCha20Rng::seed_from_u64(
            seed ^ (attempt as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15),
        );
        let mut voltage = vec![0usize; base.edge_count()];
        for e in tree.non_tree_edges() {
            voltage[e] = rng.gen_range(0..group.order());
        }
        match build_cover(base.clone(), group.clone(), voltage) {
            Ok(cover) => return Ok(cover),
            Err(Error::NonGeneratingVoltage { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::ConnectivityRetries {
        attempts: MAX_ATTEMPTS,
    })
}

fn is_prime(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Parses "trivial,tower:2,random:4,..." into concrete covers.
fn parse_cover_specs(
    base: &Arc<Multigraph>,
    spec: &str,
    seed: Option<u64>,
    prime: usize,
) -> Result<Vec<CoverGraph>, Error> {
    if spec.trim().is_empty() {
        return Err(Error::Parse("empty cover list".into()));
    }
    let mut covers = Vec::new();
    for item in spec.split(',') {
        let item = item.trim();
        if item == "trivial" {
            covers.push(trivial_cover(base.clone()));
        } else if let Some(levels) = item.strip_prefix("tower:") {
            let levels: usize = levels
                .parse()
                .map_err(|_| Error::Parse(format!("bad tower spec {item:?}")))?;
            if !is_prime(prime) {
                return Err(Error::Parse(format!("{prime} is not prime")));
            }
            let mut chain = Vec::new();
            let mut current = base.clone();
            for _ in 0..levels {
                let mut level = homology_tower(current.clone(), prime, 1, 16_384)?;
                let cover = level.pop().expect("one level");
                current = cover.total().clone();
                chain.push(cover);
            }
            covers.push(composite_permutation_cover(&chain)?);
        } else if let Some(degree) = item.strip_prefix("random:") {
            let degree: usize = degree
                .parse()
                .map_err(|_| Error::Parse(format!("bad random spec {item:?}")))?;
            let seed = seed.ok_or_else(|| {
                Error::Parse("--seed is required when random covers are requested".into())
            })?;
            covers.push(random_cover(base.clone(), degree, seed)?);
        } else {
            return Err(Error::Parse(format!(
                "unknown cover spec {item:?}; expected trivial, tower:K, or random:D"
            )));
        }
    }
    Ok(covers)
}
