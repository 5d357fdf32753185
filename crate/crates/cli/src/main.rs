use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::{json, Value};

use sturmion::harness::{all_passed, run_all, CheckReport, Status};
use sturmion::spectral::{dual_weights, primal_weights};
use sturmion::{build_chain, count_roots, sturmian_pair, Error, GridKind, GridSpec, Polynomial, Scalar};

#[derive(Parser)]
#[command(name = "sturmion", version, about = "Sturm chains and finite orthogonal polynomials on classical grids")]
struct Cli {
    /// Float precision in bits for trigonometric grids.
    #[arg(long, global = true, env = "STURMION_PRECISION", default_value_t = sturmion::DEFAULT_PRECISION)]
    precision: usize,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Recurrence coefficients, nodes and both weight sets for a grid.
    Chain {
        /// linear, quad:tau=T, exp:q=Q, trig1, trig2
        #[arg(long)]
        grid: String,
        #[arg(long)]
        n: usize,
        /// Fills in `quad` when the grid string has no tau.
        #[arg(long)]
        tau: Option<String>,
        /// Fills in `exp` when the grid string has no q.
        #[arg(long)]
        q: Option<String>,
    },
    /// Number of real roots of a polynomial in (lo, hi].
    Count {
        #[arg(long)]
        poly: String,
        #[arg(long, allow_hyphen_values = true)]
        lo: String,
        #[arg(long, allow_hyphen_values = true)]
        hi: String,
    },
    /// Run every grid check for N = 1..=nmax.
    Verify {
        #[arg(long, default_value_t = 12)]
        nmax: usize,
        /// Exponential-grid bases; repeatable.
        #[arg(long = "q", default_values_t = vec!["1/2".to_string()])]
        qs: Vec<String>,
    },
    /// Legendre duality on random rational grids.
    Random {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 8)]
        nmax: usize,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) | Error::InvalidGrid(_) | Error::InvalidParameter(_) | Error::InvalidInterval => 2,
            Error::DegenerateGrid => 3,
            Error::EndpointIsRoot(_) => 5,
            _ => 4,
        };
        Failure { code, message: e.to_string() }
    }
}

fn parse_scalar(s: &str) -> Result<Scalar, Failure> {
    s.parse::<Scalar>().map_err(|e| Failure { code: 2, message: format!("`{s}`: {e}") })
}

fn parse_grid(grid: &str, tau: Option<&str>, q: Option<&str>) -> Result<GridKind, Failure> {
    let text = match (grid.trim(), tau, q) {
        ("quad", Some(t), _) => format!("quad:tau={t}"),
        ("exp", _, Some(q)) => format!("exp:q={q}"),
        (g, _, _) => g.to_string(),
    };
    Ok(text.parse::<GridKind>()?)
}

fn strings(v: &[Scalar]) -> Vec<String> {
    v.iter().map(Scalar::to_canonical_string).collect()
}

fn chain(kind: GridKind, n: usize, precision: usize) -> Result<Value, Failure> {
    let spec = GridSpec::new(kind, n)?;
    let (top, next) = sturmian_pair(&spec.characteristic_polynomial()?)?;
    let chain = build_chain(&top, &next)?;
    let nodes = spec.nodes(precision)?;
    let primal = primal_weights(&chain, &nodes)?;
    let dual = dual_weights(chain.top(), chain.poly(n), &nodes)?;
    Ok(json!({
        "b": strings(chain.b()),
        "u": strings(chain.u()),
        "nodes": strings(&nodes),
        "primal_weights": strings(primal.weights()),
        "dual_weights": strings(dual.weights()),
    }))
}

fn chain_csv(payload: &Value) -> String {
    let col = |k: &str| payload[k].as_array().cloned().unwrap_or_default();
    let (b, u, x, w, wd) = (col("b"), col("u"), col("nodes"), col("primal_weights"), col("dual_weights"));
    let cell = |v: &[Value], i: usize| v.get(i).and_then(Value::as_str).unwrap_or("").to_string();
    let mut out = String::from("n,b,u,node,primal_weight,dual_weight\n");
    for i in 0..b.len() {
        // u is 1-based
        let ui = if i == 0 { String::new() } else { cell(&u, i - 1) };
        out += &format!("{i},{},{ui},{},{},{}\n", cell(&b, i), cell(&x, i), cell(&w, i), cell(&wd, i));
    }
    out
}

fn status_label(s: &Status) -> &'static str {
    match s {
        Status::ExactMatch => "exact-match",
        Status::WithinTolerance(_) => "within-tolerance",
        Status::Mismatch(_) => "mismatch",
        Status::Skipped(_) => "skipped",
        Status::KnownDiscrepancy(_) => "known-discrepancy",
    }
}

fn reports_csv(reports: &[CheckReport]) -> String {
    let mut out = String::from("name,grid,n,status\n");
    for r in reports {
        out += &format!("{},{},{},{}\n", r.name, r.grid.kind, r.n, status_label(&r.status));
    }
    out
}

fn random_duality(seed: u64, trials: usize, nmax: usize) -> Result<Value, Failure> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut cases = Vec::new();
    for _ in 0..trials {
        let n = rng.gen_range(1..=nmax.max(1));
        let mut x = Scalar::ratio(rng.gen_range(-20..20), rng.gen_range(1..5));
        let mut nodes = vec![x.clone()];
        for _ in 0..n {
            x = x + Scalar::ratio(rng.gen_range(1..30), rng.gen_range(1..7));
            nodes.push(x.clone());
        }
        let (top, next) = sturmian_pair(&Polynomial::from_roots(&nodes))?;
        let chain = build_chain(&top, &next)?;
        let dual = dual_weights(chain.top(), chain.poly(n), &nodes)?;
        let flat = Scalar::ratio(1, n as i64 + 1);
        let ok = dual.weights().iter().all(|w| *w == flat);
        cases.push(json!({ "nodes": strings(&nodes), "constant_dual_weights": ok }));
    }
    let passed = cases.iter().all(|c| c["constant_dual_weights"] == true);
    Ok(json!({ "seed": seed, "passed": passed, "cases": cases }))
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn envelope(command: &str, inputs: Value, payload: Value, precision: usize) -> Value {
    json!({
        "command": command,
        "inputs": inputs,
        "payload": payload,
        "versions": { "engine": sturmion::VERSION, "default_precision": sturmion::DEFAULT_PRECISION, "precision": precision },
    })
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let precision = cli.precision;
    let json_out = cli.format == Format::Json;
    let print = |v: &Value| emit(&format!("{}\n", serde_json::to_string_pretty(v).expect("json")));
    match cli.command {
        Command::Chain { grid, n, tau, q } => {
            let kind = parse_grid(&grid, tau.as_deref(), q.as_deref())?;
            let payload = chain(kind.clone(), n, precision)?;
            if json_out {
                let inputs = json!({ "grid": kind.to_string(), "n": n });
                print(&envelope("chain", inputs, payload, precision));
            } else {
                emit(&chain_csv(&payload));
            }
            Ok(0)
        }
        Command::Count { poly, lo, hi } => {
            let p: Polynomial = poly.parse()?;
            let (a, b) = (parse_scalar(&lo)?, parse_scalar(&hi)?);
            let count = count_roots(&p, &a, &b)?;
            if json_out {
                let inputs = json!({ "poly": p.to_string(), "lo": a.to_canonical_string(), "hi": b.to_canonical_string() });
                print(&envelope("count", inputs, json!({ "count": count }), precision));
            } else {
                emit(&format!("count\n{count}\n"));
            }
            Ok(0)
        }
        Command::Verify { nmax, qs } => {
            let qv = qs.iter().map(|s| parse_scalar(s)).collect::<Result<Vec<_>, _>>()?;
            let reports = run_all(nmax, &qv, precision);
            let passed = all_passed(&reports);
            if json_out {
                let inputs = json!({ "nmax": nmax, "q": strings(&qv) });
                let payload = json!({ "passed": passed, "reports": reports });
                print(&envelope("verify", inputs, payload, precision));
            } else {
                emit(&reports_csv(&reports));
            }
            Ok(if passed { 0 } else { 1 })
        }
        Command::Random { seed, trials, nmax } => {
            let payload = random_duality(seed, trials, nmax)?;
            let passed = payload["passed"] == true;
            if json_out {
                let inputs = json!({ "seed": seed, "trials": trials, "nmax": nmax });
                print(&envelope("random", inputs, payload, precision));
            } else {
                emit(&format!("seed,passed\n{seed},{passed}\n"));
            }
            Ok(if passed { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
