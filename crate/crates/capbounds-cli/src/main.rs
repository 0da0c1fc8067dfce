//! Command-line surface: compute bound reports, verify certificates, run the
//! inertia bound and capacity powers, and drive the property suites.
//!
//! Exit codes: 0 success/accept; 1 IO, parse, or parameter errors; 2 chain
//! violation or suite failure (a theorem-backed check failed); 3 budget
//! exhaustion with a partial report; 4 certificate rejected.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use capbounds::capacity::suites::{suite_lattice, suite_sandwich, suite_spectral_point, SuiteConfig, SuiteResult};
use capbounds::capacity::{
    bounds_report_with_certs, capacity_lower, BoundSelection, HaemersCert, ReportConfig,
};
use capbounds::error::Error;
use capbounds::graphs::{generate, parse_edge_list, parse_graph6, Family, Graph};
use capbounds::inertia::{
    inertia_bound, optimize_weights, verify_isotropic, verify_packing, OptimizeConfig,
    WeightedAdjacency,
};
use capbounds::numkit::exchange::{parse_f64_matrix, parse_rat_matrix};
use capbounds::numkit::SymMat;
use capbounds::reps::certfile::{parse_certificate, Certificate};
use capbounds::reps::{verify_projrank_cert, verify_qhom_cert, Verdict};

#[derive(Parser)]
#[command(
    name = "capbounds",
    version,
    about = "Bounds on graph independence numbers and Shannon capacity",
    after_help = "Graphs are file paths (edge list or graph6) or generator specs:\n  \
petersen | cycle:K | complete:D | empty:D | kneser:N,K\n\
Thread count follows RAYON_NUM_THREADS. Budgets are deterministic work units."
)]
struct Cli {
    /// Master seed recorded in all randomized output.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Deterministic work budget in approximate milliseconds.
    #[arg(long, global = true)]
    budget_ms: Option<u64>,
    /// Override the floating comparison tolerance in reports.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a bounds report for a graph.
    Compute {
        /// Graph file or generator spec.
        #[arg(long)]
        graph: String,
        /// Comma-separated subset of bounds to compute
        /// (alpha,theta,chifrac,clique-cover,inertia,haemers,capacity).
        #[arg(long)]
        bounds: Option<String>,
        /// Largest strong power for the capacity lower bound.
        #[arg(long, default_value_t = 2)]
        k_max: u32,
        /// Optimize inertia weights instead of unit weights.
        #[arg(long)]
        optimize_inertia: bool,
        /// Vertex budget for exact solvers.
        #[arg(long, default_value_t = 128)]
        alpha_budget: usize,
        /// Subspace-rep or fitting certificate files feeding the
        /// Haemers-upper minimum (repeatable).
        #[arg(long = "haemers-cert")]
        haemers_certs: Vec<PathBuf>,
    },
    /// Verify a certificate against a graph; exit 0 accept, 4 reject.
    Verify {
        /// Certificate kind: subspace-rep, pair-rep, fitting, qhom,
        /// projrank, packing, isotropic.
        kind: String,
        /// Graph file or generator spec.
        #[arg(long)]
        graph: String,
        /// Certificate file.
        #[arg(long)]
        cert: PathBuf,
        /// Target graph H (qhom only).
        #[arg(long)]
        target: Option<String>,
        /// Weighting matrix file (packing and isotropic; defaults to unit
        /// adjacency weights).
        #[arg(long)]
        weights: Option<PathBuf>,
    },
    /// Inertia bound of a graph, optionally optimizing edge weights.
    Inertia {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        optimize: bool,
        /// Annealing steps per restart when optimizing.
        #[arg(long, default_value_t = 200)]
        iters: usize,
        #[arg(long, default_value_t = 8)]
        restarts: usize,
    },
    /// Independence numbers of strong powers and the capacity lower bound.
    Power {
        #[arg(long)]
        graph: String,
        #[arg(long, default_value_t = 2)]
        k: u32,
        #[arg(long, default_value_t = 128)]
        alpha_budget: usize,
    },
    /// Run a property suite; exit 0 iff zero failures.
    Suite {
        /// spectral-point, lattice, or sandwich.
        name: String,
        #[arg(long)]
        samples: Option<usize>,
        /// Dimension range for the lattice suite, e.g. 2..12.
        #[arg(long)]
        dims: Option<String>,
        /// Vertex-count range for graph suites, e.g. 3..8.
        #[arg(long)]
        n: Option<String>,
        /// Directory for counterexample dumps.
        #[arg(long)]
        dump: Option<PathBuf>,
        /// Random weightings per graph (sandwich suite).
        #[arg(long, default_value_t = 50)]
        weightings: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::ChainViolation(_) => 2,
                Error::Budget { .. } => 3,
                _ => 1,
            })
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match &cli.command {
        Command::Compute { graph, bounds, k_max, optimize_inertia, alpha_budget, haemers_certs } => {
            let g = load_graph(graph)?;
            let mut config = ReportConfig {
                seed: cli.seed,
                k_max: *k_max,
                optimize_inertia: *optimize_inertia,
                alpha_budget: *alpha_budget,
                ..ReportConfig::default()
            };
            config.optimize.seed = cli.seed;
            if let Some(t) = cli.tol {
                config.tol = t;
            }
            if let Some(ms) = cli.budget_ms {
                config.clique_budget = (ms as usize).saturating_mul(10).max(100);
            }
            if let Some(spec) = bounds {
                config.enabled = parse_bound_selection(spec)?;
            }
            let mut certs = Vec::new();
            for path in haemers_certs {
                let text = std::fs::read_to_string(path)?;
                match parse_certificate(&text)? {
                    Certificate::Subspace(rep) => certs.push(HaemersCert::Subspace(rep)),
                    Certificate::Fitting(fit) => certs.push(HaemersCert::Fitting(fit)),
                    other => {
                        return Err(Error::Certificate(format!(
                            "--haemers-cert accepts subspace-rep or fitting certificates, got {}",
                            other.kind()
                        )));
                    }
                }
            }
            let report = bounds_report_with_certs(&g, graph, &config, &certs)?;
            let partial = report.partial;
            emit(&cli, &serde_json::to_value(&report).expect("serializable"));
            Ok(if partial { ExitCode::from(3) } else { ExitCode::SUCCESS })
        }
        Command::Verify { kind, graph, cert, target, weights } => {
            let g = load_graph(graph)?;
            let text = std::fs::read_to_string(cert)?;
            let parsed = parse_certificate(&text)?;
            if parsed.kind() != kind {
                return Err(Error::Certificate(format!(
                    "certificate file is a {:?}, requested {kind:?}",
                    parsed.kind()
                )));
            }
            let outcome = verify_dispatch(&cli, &g, parsed, target.as_deref(), weights.as_deref())?;
            emit(&cli, &outcome.json);
            Ok(if outcome.accepted { ExitCode::SUCCESS } else { ExitCode::from(4) })
        }
        Command::Inertia { graph, optimize, iters, restarts } => {
            let g = load_graph(graph)?;
            let json = if *optimize {
                let cfg = OptimizeConfig {
                    restarts: *restarts,
                    steps: *iters,
                    seed: cli.seed,
                    ..OptimizeConfig::default()
                };
                let (bound, w) = optimize_weights(&g, &cfg)?;
                let (_, sig) = inertia_bound(&w)?;
                serde_json::json!({
                    "graph": graph_meta(graph, &g),
                    "inertia": bound,
                    "signature": {"zero": sig.n_zero, "pos": sig.n_pos, "neg": sig.n_neg},
                    "optimized": true,
                    "seed": cli.seed,
                    "restarts": restarts,
                    "steps": iters,
                    "weights": weights_rows(&w),
                })
            } else {
                let w = WeightedAdjacency::unit(g.clone());
                let (bound, sig) = inertia_bound(&w)?;
                serde_json::json!({
                    "graph": graph_meta(graph, &g),
                    "inertia": bound,
                    "signature": {"zero": sig.n_zero, "pos": sig.n_pos, "neg": sig.n_neg},
                    "optimized": false,
                })
            };
            emit(&cli, &json);
            Ok(ExitCode::SUCCESS)
        }
        Command::Power { graph, k, alpha_budget } => {
            let g = load_graph(graph)?;
            let c = capacity_lower(&g, *k, *alpha_budget)?;
            let powers: Vec<serde_json::Value> = c
                .powers
                .iter()
                .map(|p| {
                    serde_json::json!({
                        "k": p.k,
                        "vertices": p.vertices,
                        "alpha": p.alpha,
                        "root": p.root,
                    })
                })
                .collect();
            let json = serde_json::json!({
                "graph": graph_meta(graph, &g),
                "k_max": k,
                "powers": powers,
                "capacity_lower": {"value": c.best, "k": c.best_k},
                "complete": c.complete,
            });
            emit(&cli, &json);
            Ok(if c.complete { ExitCode::SUCCESS } else { ExitCode::from(3) })
        }
        Command::Suite { name, samples, dims, n, dump, weightings } => {
            let mut cfg = SuiteConfig { seed: cli.seed, weightings: *weightings, ..Default::default() };
            if let Some(s) = samples {
                cfg.samples = *s;
            }
            if let Some(d) = dims {
                let (lo, hi) = parse_range(d)?;
                cfg.dim_min = lo;
                cfg.dim_max = hi;
            }
            if let Some(r) = n {
                let (lo, hi) = parse_range(r)?;
                cfg.n_min = lo;
                cfg.n_max = hi;
            }
            let result = match name.as_str() {
                "spectral-point" => suite_spectral_point(&cfg)?,
                "lattice" => suite_lattice(&cfg)?,
                "sandwich" => {
                    if n.is_none() {
                        cfg.n_min = 3;
                        cfg.n_max = 8;
                    }
                    suite_sandwich(&cfg)?
                }
                other => {
                    return Err(Error::Param(format!(
                        "unknown suite {other:?}: spectral-point, lattice, sandwich"
                    )));
                }
            };
            if let Some(dir) = dump {
                dump_failures(dir, &result)?;
            }
            let failures = result.failure_count();
            emit(&cli, &serde_json::to_value(&result).expect("serializable"));
            Ok(if failures == 0 { ExitCode::SUCCESS } else { ExitCode::from(2) })
        }
    }
}

struct VerifyOutcome {
    accepted: bool,
    json: serde_json::Value,
}

fn verify_dispatch(
    _cli: &Cli,
    g: &Graph,
    cert: Certificate,
    target: Option<&str>,
    weights: Option<&Path>,
) -> Result<VerifyOutcome, Error> {
    let outcome = |accepted: bool, detail: serde_json::Value| VerifyOutcome {
        accepted,
        json: detail,
    };
    Ok(match cert {
        Certificate::Subspace(rep) => match rep.verify(g)? {
            Verdict::Accept(value) => outcome(
                true,
                serde_json::json!({
                    "kind": "subspace-rep", "verdict": "accept",
                    "value": {"num": value.numer().to_string(), "den": value.denom().to_string()},
                }),
            ),
            Verdict::Reject { reason } => outcome(
                false,
                serde_json::json!({"kind": "subspace-rep", "verdict": "reject", "reason": reason}),
            ),
        },
        Certificate::Pair { rep, r } => match rep.verify(g, r)? {
            Verdict::Accept(()) => outcome(
                true,
                serde_json::json!({"kind": "pair-rep", "verdict": "accept", "r": r}),
            ),
            Verdict::Reject { reason } => outcome(
                false,
                serde_json::json!({"kind": "pair-rep", "verdict": "reject", "reason": reason}),
            ),
        },
        Certificate::Fitting(fit) => match fit.verify(g)? {
            Verdict::Accept(rank) => outcome(
                true,
                serde_json::json!({"kind": "fitting", "verdict": "accept", "rank": rank}),
            ),
            Verdict::Reject { reason } => outcome(
                false,
                serde_json::json!({"kind": "fitting", "verdict": "reject", "reason": reason}),
            ),
        },
        Certificate::QHom(cert) => {
            let t = target.ok_or_else(|| {
                Error::Param("qhom verification needs --target for the graph H".into())
            })?;
            let h = load_graph(t)?;
            match verify_qhom_cert(g, &h, &cert)? {
                Verdict::Accept(()) => outcome(
                    true,
                    serde_json::json!({"kind": "qhom", "verdict": "accept", "d": cert.d}),
                ),
                Verdict::Reject { reason } => outcome(
                    false,
                    serde_json::json!({"kind": "qhom", "verdict": "reject", "reason": reason}),
                ),
            }
        }
        Certificate::ProjRank(cert) => match verify_projrank_cert(g, &cert)? {
            Verdict::Accept(acc) => outcome(
                true,
                serde_json::json!({
                    "kind": "projrank", "verdict": "accept",
                    "achieved": {
                        "num": acc.achieved.numer().to_string(),
                        "den": acc.achieved.denom().to_string(),
                    },
                    "claim_ok": acc.claim_ok,
                }),
            ),
            Verdict::Reject { reason } => outcome(
                false,
                serde_json::json!({"kind": "projrank", "verdict": "reject", "reason": reason}),
            ),
        },
        Certificate::Packing(fam) => {
            let w = load_weighting(g, weights)?;
            match verify_packing(g, &fam, &w)? {
                Verdict::Accept(acc) => outcome(
                    true,
                    serde_json::json!({
                        "kind": "packing", "verdict": "accept",
                        "lambda": {
                            "num": acc.lambda.numer().to_string(),
                            "den": acc.lambda.denom().to_string(),
                        },
                        "inertia": acc.inertia,
                    }),
                ),
                Verdict::Reject { reason } => outcome(
                    false,
                    serde_json::json!({"kind": "packing", "verdict": "reject", "reason": reason}),
                ),
            }
        }
        Certificate::Isotropic(basis) => {
            let w = load_weighting(g, weights)?;
            match verify_isotropic(&w.a, &basis)? {
                Verdict::Accept(dim) => outcome(
                    true,
                    serde_json::json!({"kind": "isotropic", "verdict": "accept", "dimension": dim}),
                ),
                Verdict::Reject { reason } => outcome(
                    false,
                    serde_json::json!({"kind": "isotropic", "verdict": "reject", "reason": reason}),
                ),
            }
        }
    })
}

fn load_weighting(g: &Graph, weights: Option<&Path>) -> Result<WeightedAdjacency, Error> {
    match weights {
        None => Ok(WeightedAdjacency::unit(g.clone())),
        Some(path) => {
            let text = std::fs::read_to_string(path)?;
            // Accept rational or float matrices; exact entries convert
            // losslessly.
            let mat = match parse_rat_matrix(&text) {
                Ok(m) => {
                    m.map(|r| num_traits::ToPrimitive::to_f64(r).unwrap_or(f64::INFINITY))
                }
                Err(_) => parse_f64_matrix(&text)?,
            };
            if !mat.all_finite() {
                return Err(Error::Certificate("weight matrix entries overflow f64".into()));
            }
            WeightedAdjacency::new(g.clone(), SymMat::new(mat)?)
        }
    }
}

fn graph_meta(name: &str, g: &Graph) -> serde_json::Value {
    serde_json::json!({"name": name, "vertices": g.n(), "edges": g.edge_count()})
}

fn weights_rows(w: &WeightedAdjacency) -> Vec<Vec<f64>> {
    let n = w.graph.n();
    (0..n).map(|i| w.a.mat().row(i).to_vec()).collect()
}

/// Load a graph from a file path or a generator spec.
fn load_graph(spec: &str) -> Result<Graph, Error> {
    let path = Path::new(spec);
    if path.exists() {
        let text = std::fs::read_to_string(path)?;
        return parse_graph_text(&text);
    }
    parse_generator(spec)
}

fn parse_graph_text(text: &str) -> Result<Graph, Error> {
    let first = text
        .lines()
        .map(|l| match l.find('#') {
            Some(p) => &l[..p],
            None => l,
        })
        .map(str::trim)
        .find(|l| !l.is_empty())
        .unwrap_or("");
    if first.chars().next().is_some_and(|c| c.is_ascii_digit()) {
        parse_edge_list(text)
    } else {
        parse_graph6(text)
    }
}

fn parse_generator(spec: &str) -> Result<Graph, Error> {
    if spec == "petersen" {
        return generate(&Family::Petersen);
    }
    let (name, args) = spec
        .split_once(':')
        .ok_or_else(|| Error::Param(format!("no such file and not a generator spec: {spec:?}")))?;
    let nums: Vec<usize> = args
        .split(',')
        .map(|a| {
            a.trim()
                .parse()
                .map_err(|_| Error::Param(format!("bad generator argument {a:?}")))
        })
        .collect::<Result<_, _>>()?;
    match (name, nums.as_slice()) {
        ("cycle", [k]) => generate(&Family::Cycle(*k)),
        ("complete", [d]) => generate(&Family::Complete(*d)),
        ("empty", [d]) => generate(&Family::Empty(*d)),
        ("kneser", [n, k]) => generate(&Family::Kneser(*n, *k)),
        _ => Err(Error::Param(format!("unknown generator spec {spec:?}"))),
    }
}

fn parse_bound_selection(spec: &str) -> Result<BoundSelection, Error> {
    let mut sel = BoundSelection {
        alpha: false,
        theta: false,
        chifrac: false,
        inertia: false,
        haemers: false,
        capacity: false,
        clique_cover: false,
    };
    for item in spec.split(',') {
        match item.trim() {
            "alpha" => sel.alpha = true,
            "theta" => sel.theta = true,
            "chifrac" => sel.chifrac = true,
            "clique-cover" => sel.clique_cover = true,
            "inertia" => sel.inertia = true,
            "haemers" => sel.haemers = true,
            "capacity" => sel.capacity = true,
            other => return Err(Error::Param(format!("unknown bound {other:?}"))),
        }
    }
    Ok(sel)
}

fn parse_range(spec: &str) -> Result<(usize, usize), Error> {
    let (lo, hi) = spec
        .split_once("..")
        .ok_or_else(|| Error::Param(format!("expected a range like 2..12, got {spec:?}")))?;
    let lo = lo
        .trim()
        .parse()
        .map_err(|_| Error::Param(format!("bad range start {lo:?}")))?;
    let hi = hi
        .trim()
        .parse()
        .map_err(|_| Error::Param(format!("bad range end {hi:?}")))?;
    if lo > hi {
        return Err(Error::Param(format!("empty range {spec:?}")));
    }
    Ok((lo, hi))
}

fn dump_failures(dir: &Path, result: &SuiteResult) -> Result<(), Error> {
    std::fs::create_dir_all(dir)?;
    for (i, failure) in result.failures.iter().enumerate() {
        let path = dir.join(format!("{}-failure-{i:04}.json", result.name));
        std::fs::write(&path, serde_json::to_string_pretty(failure).expect("serializable"))?;
    }
    Ok(())
}

/// JSON is the machine contract; the table rendering is derived from the
/// same JSON value, never computed separately.
fn emit(cli: &Cli, value: &serde_json::Value) {
    match cli.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(value).expect("valid json")),
        Format::Table => {
            let mut rows = Vec::new();
            flatten("", value, &mut rows);
            let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
            for (k, v) in rows {
                println!("{k:<width$}  {v}");
            }
        }
    }
}

fn flatten(prefix: &str, value: &serde_json::Value, rows: &mut Vec<(String, String)>) {
    match value {
        serde_json::Value::Object(map) => {
            for (k, v) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, v, rows);
            }
        }
        serde_json::Value::Array(items) => {
            for (i, v) in items.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), v, rows);
            }
        }
        other => rows.push((prefix.to_string(), other.to_string())),
    }
}
