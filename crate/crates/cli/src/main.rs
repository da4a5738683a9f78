//! `czeta`: chromatic polynomials, certified chromatic zeta products, and
//! lattice-visibility experiments from the command line.
//!
//! Exit codes: 0 success, 2 usage error, 3 budget/cap exceeded,
//! 4 internal invariant failure.

mod output;

use clap::{Args, Parser, Subcommand, ValueEnum};
use czeta_core::chromatic::{
    chromatic_polynomial_with_budget, eval_at_prime_power, DEFAULT_DC_NODE_BUDGET,
    DEFAULT_ENUM_BUDGET,
};
use czeta_core::graph::{Graph, KnownShape};
use czeta_core::lattice::{count_hp_visible_residue_tuples, exact_probability};
use czeta_core::mc::{
    convergence_sweep, estimate_conditional_with_confidence,
    estimate_probability_with_confidence, sweep_csv_header, Estimate,
};
use czeta_core::{
    conditional_limit_with_caps, cycle_limit_closed_form_with_cap, rearick_ratio_with_cap,
    zeta_h_inverse_with_caps, CertifiedProduct, DEFAULT_PRIME_CAP,
};
use num_traits::ToPrimitive;
use output::{fmt_f64, to_json};
use serde_json::{json, Value};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "czeta",
    version,
    about = "Chromatic zeta functions of graphs: exact polynomials, certified Euler products, \
             and reproducible lattice-visibility Monte Carlo"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args)]
struct GraphArgs {
    /// Built-in family: path:K, cycle:K, complete:K, empty:K, star:K
    #[arg(long, conflicts_with = "file", required_unless_present = "file")]
    family: Option<String>,
    /// Edge-list file: first non-comment line is the vertex count, then
    /// one "u v" edge per line; '#' starts a comment
    #[arg(long)]
    file: Option<PathBuf>,
    /// Vertex-count guard (chromatic work grows exponentially)
    #[arg(long, default_value_t = 16)]
    max_k: usize,
}

impl GraphArgs {
    fn load(&self) -> Result<(Graph, String), CliError> {
        if let Some(spec) = &self.family {
            let g = Graph::family_with_limit(spec, self.max_k)?;
            return Ok((g, format!("family:{}", spec)));
        }
        let path = self.file.as_ref().expect("clap enforces family xor file");
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read {}: {}", path.display(), e)))?;
        let g = Graph::parse_with_limit(&text, self.max_k)?;
        Ok((g, format!("file:{}", path.display())))
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Exact chromatic polynomial, with a factored form when the shape is
    /// recognized
    Poly {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, env = "CZETA_DC_BUDGET", default_value_t = DEFAULT_DC_NODE_BUDGET)]
        dc_budget: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Certified truncated Euler product for the inverse chromatic zeta
    Zeta {
        #[command(flatten)]
        graph: GraphArgs,
        /// Exponent s > 1 (integer s takes the exact route)
        #[arg(long)]
        s: f64,
        #[arg(long, default_value_t = 1e-10)]
        target_tail: f64,
        #[arg(long, env = "CZETA_PRIME_CAP", default_value_t = DEFAULT_PRIME_CAP)]
        prime_cap: u64,
        #[arg(long, env = "CZETA_DC_BUDGET", default_value_t = DEFAULT_DC_NODE_BUDGET)]
        dc_budget: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Closed-form cycle limit zeta^-k(s) * prod_p (1 + (-1)^k/(p^s-1)^(k-1))
    CycleLimit {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        s: f64,
        #[arg(long, default_value_t = 1e-10)]
        target_tail: f64,
        #[arg(long, env = "CZETA_PRIME_CAP", default_value_t = DEFAULT_PRIME_CAP)]
        prime_cap: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Rearick product prod_p (1 - m/p^s); exactly zero when m >= 2^s
    Rearick {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        s: u32,
        #[arg(long, default_value_t = 1e-10)]
        target_tail: f64,
        #[arg(long, env = "CZETA_PRIME_CAP", default_value_t = DEFAULT_PRIME_CAP)]
        prime_cap: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Conditional limit P(H-visible | H'-visible) for a subgraph H' of H,
    /// optionally cross-checked by simulation
    Conditional {
        #[command(flatten)]
        graph: GraphArgs,
        /// Conditioning subgraph on the same vertex count
        #[arg(long, conflicts_with = "sub_file", required_unless_present = "sub_file")]
        sub_family: Option<String>,
        #[arg(long)]
        sub_file: Option<PathBuf>,
        #[arg(long)]
        s: f64,
        #[arg(long, default_value_t = 1e-10)]
        target_tail: f64,
        #[arg(long, env = "CZETA_PRIME_CAP", default_value_t = DEFAULT_PRIME_CAP)]
        prime_cap: u64,
        #[arg(long, env = "CZETA_DC_BUDGET", default_value_t = DEFAULT_DC_NODE_BUDGET)]
        dc_budget: u64,
        /// Also run the Monte Carlo conditional estimator with this many trials
        #[arg(long)]
        trials: Option<u64>,
        /// Box side for the simulation (needed with --trials)
        #[arg(long)]
        n: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[arg(long, default_value_t = 0.95)]
        confidence: f64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Monte Carlo estimate of the H-visibility probability in [1,n]^s
    Simulate {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 2)]
        s: u32,
        #[arg(long)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[arg(long, default_value_t = 0.95)]
        confidence: f64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Estimates across several box sides with the analytic limit attached
    Sweep {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, default_value_t = 2)]
        s: u32,
        /// Comma-separated ascending box sides, e.g. 100,10000,1000000
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<u64>,
        #[arg(long)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Exact H-visibility probability in [1,n]^s by full enumeration
    Enumerate {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 2)]
        s: u32,
        #[arg(long, env = "CZETA_ENUM_BUDGET", default_value_t = DEFAULT_ENUM_BUDGET)]
        budget: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Count residue tuples mod p with adjacent vertices distinct; checks
    /// the count against P_H(p^s)
    Residues {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 2)]
        s: u32,
        #[arg(long, env = "CZETA_ENUM_BUDGET", default_value_t = DEFAULT_ENUM_BUDGET)]
        budget: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run the embedded invariant suite
    Selftest,
}

enum CliError {
    Usage(String),
    Budget(String),
    Internal(String),
}

impl CliError {
    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Budget(m) | CliError::Internal(m) => m,
        }
    }

    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Budget(_) => 3,
            CliError::Internal(_) => 4,
        }
    }
}

impl From<czeta_core::Error> for CliError {
    fn from(e: czeta_core::Error) -> Self {
        use czeta_core::Error as E;
        match e {
            E::BudgetExceeded { .. } | E::PrimeCapExceeded { .. } | E::TailUnreachable { .. } => {
                CliError::Budget(e.to_string())
            }
            E::Internal(_) => CliError::Internal(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}

/// Emits the resolved run configuration, as `# key = value` lines (text
/// and csv) so every run is self-describing.
fn print_config_text(pairs: &[(&str, String)]) {
    for (k, v) in pairs {
        println!("# {} = {}", k, v);
    }
}

fn config_json(command: &str, pairs: &[(&str, String)]) -> Value {
    let mut map = serde_json::Map::new();
    map.insert("command".into(), json!(command));
    for (k, v) in pairs {
        map.insert((*k).to_string(), json!(v));
    }
    Value::Object(map)
}

fn certified_json(cp: &CertifiedProduct) -> Value {
    json!({
        "value": cp.value,
        "lower": cp.lower,
        "upper": cp.upper,
        "truncation_prime": cp.truncation_prime,
        "tail_epsilon": cp.tail_epsilon,
        "exact_zero": cp.exact_zero,
    })
}

fn print_certified_text(cp: &CertifiedProduct) {
    if cp.exact_zero {
        println!("value = 0 (exact zero: the factor at p = {} vanishes)", cp.truncation_prime);
        return;
    }
    println!("value = {}", fmt_f64(cp.value));
    println!("lower = {}", fmt_f64(cp.lower));
    println!("upper = {}", fmt_f64(cp.upper));
    println!("truncation_prime = {}", cp.truncation_prime);
    println!("tail_epsilon = {}", fmt_f64(cp.tail_epsilon));
    println!("exact_zero = false");
}

fn estimate_json(e: &Estimate) -> Value {
    json!({
        "successes": e.successes,
        "trials": e.trials,
        "point": e.point,
        "ci_low": e.ci_low,
        "ci_high": e.ci_high,
        "seed": e.seed,
    })
}

fn print_estimate_text(e: &Estimate) {
    println!("successes = {}", e.successes);
    println!("trials = {}", e.trials);
    println!("point = {}", fmt_f64(e.point));
    println!("ci_low = {}", fmt_f64(e.ci_low));
    println!("ci_high = {}", fmt_f64(e.ci_high));
}

fn reject_csv(format: Format, what: &str) -> Result<(), CliError> {
    if format == Format::Csv {
        return Err(CliError::Usage(format!(
            "csv output is not defined for {}; use text or json",
            what
        )));
    }
    Ok(())
}

fn factored_form(g: &Graph) -> Option<String> {
    let k = g.k();
    match g.known_shape()? {
        KnownShape::Empty => Some(format!("x^{}", k)),
        KnownShape::Tree => Some(format!("x*(x-1)^{}", k - 1)),
        KnownShape::Cycle => {
            let tail = if k.is_multiple_of(2) { "+ (x-1)" } else { "- (x-1)" };
            Some(format!("(x-1)^{} {}", k, tail))
        }
        KnownShape::Complete => {
            let mut parts = vec!["x".to_string()];
            for i in 1..k {
                parts.push(format!("(x-{})", i));
            }
            Some(parts.join("*"))
        }
    }
}

fn run(cmd: Cmd) -> Result<(), CliError> {
    match cmd {
        Cmd::Poly {
            graph,
            dc_budget,
            format,
        } => {
            reject_csv(format, "poly")?;
            let (g, source) = graph.load()?;
            let poly = chromatic_polynomial_with_budget(&g, dc_budget)?;
            let config = [
                ("graph", source),
                ("k", g.k().to_string()),
                ("edges", g.edge_count().to_string()),
                ("dc_budget", dc_budget.to_string()),
            ];
            match format {
                Format::Json => {
                    let result = json!({
                        "coefficients": poly.coeff_strings(),
                        "expanded": poly.expanded_form(),
                        "factored": factored_form(&g),
                    });
                    println!(
                        "{}",
                        to_json(&json!({"config": config_json("poly", &config), "result": result}))
                    );
                }
                _ => {
                    print_config_text(&[("command", "poly".into())]);
                    print_config_text(&config);
                    println!("coefficients (constant first) = [{}]", poly.coeff_strings().join(", "));
                    println!("expanded = {}", poly.expanded_form());
                    if let Some(f) = factored_form(&g) {
                        println!("factored = {}", f);
                    }
                }
            }
            Ok(())
        }
        Cmd::Zeta {
            graph,
            s,
            target_tail,
            prime_cap,
            dc_budget,
            format,
        } => {
            reject_csv(format, "zeta")?;
            let (g, source) = graph.load()?;
            let cp = zeta_h_inverse_with_caps(&g, s, target_tail, prime_cap, dc_budget)?;
            let config = [
                ("graph", source),
                ("s", fmt_f64(s)),
                ("target_tail", fmt_f64(target_tail)),
                ("prime_cap", prime_cap.to_string()),
                ("dc_budget", dc_budget.to_string()),
            ];
            emit_certified("zeta", &config, &cp, format);
            Ok(())
        }
        Cmd::CycleLimit {
            k,
            s,
            target_tail,
            prime_cap,
            format,
        } => {
            reject_csv(format, "cycle-limit")?;
            let cp = cycle_limit_closed_form_with_cap(k, s, target_tail, prime_cap)?;
            let config = [
                ("k", k.to_string()),
                ("s", fmt_f64(s)),
                ("target_tail", fmt_f64(target_tail)),
                ("prime_cap", prime_cap.to_string()),
            ];
            emit_certified("cycle-limit", &config, &cp, format);
            Ok(())
        }
        Cmd::Rearick {
            m,
            s,
            target_tail,
            prime_cap,
            format,
        } => {
            reject_csv(format, "rearick")?;
            let cp = rearick_ratio_with_cap(m, s, target_tail, prime_cap)?;
            let config = [
                ("m", m.to_string()),
                ("s", s.to_string()),
                ("target_tail", fmt_f64(target_tail)),
                ("prime_cap", prime_cap.to_string()),
            ];
            emit_certified("rearick", &config, &cp, format);
            Ok(())
        }
        Cmd::Conditional {
            graph,
            sub_family,
            sub_file,
            s,
            target_tail,
            prime_cap,
            dc_budget,
            trials,
            n,
            seed,
            workers,
            confidence,
            format,
        } => {
            reject_csv(format, "conditional")?;
            let (g, source) = graph.load()?;
            let sub_args = GraphArgs {
                family: sub_family,
                file: sub_file,
                max_k: graph.max_k,
            };
            let (g_sub, sub_source) = sub_args.load()?;
            let cp = conditional_limit_with_caps(&g, &g_sub, s, target_tail, prime_cap, dc_budget)?;
            let mut config = vec![
                ("graph", source),
                ("subgraph", sub_source),
                ("s", fmt_f64(s)),
                ("target_tail", fmt_f64(target_tail)),
                ("prime_cap", prime_cap.to_string()),
            ];
            let mc = match trials {
                Some(trials) => {
                    let n = n.ok_or_else(|| {
                        CliError::Usage("--trials needs --n for the simulation box".into())
                    })?;
                    if s.fract() != 0.0 || s < 2.0 {
                        return Err(CliError::Usage(
                            "simulation needs integer s >= 2".into(),
                        ));
                    }
                    config.extend([
                        ("trials", trials.to_string()),
                        ("n", n.to_string()),
                        ("seed", seed.to_string()),
                        ("workers", workers.to_string()),
                        ("confidence", fmt_f64(confidence)),
                    ]);
                    Some(estimate_conditional_with_confidence(
                        &g, &g_sub, n, s as u32, trials, seed, workers, confidence,
                    )?)
                }
                None => None,
            };
            match format {
                Format::Json => {
                    let mut result = serde_json::Map::new();
                    result.insert("limit".into(), certified_json(&cp));
                    if let Some(mc) = &mc {
                        result.insert("subgraph_estimate".into(), estimate_json(&mc.subgraph));
                        result.insert("conditional_estimate".into(), estimate_json(&mc.conditional));
                    }
                    println!(
                        "{}",
                        to_json(&json!({
                            "config": config_json("conditional", &config),
                            "result": Value::Object(result),
                        }))
                    );
                }
                _ => {
                    print_config_text(&[("command", "conditional".into())]);
                    print_config_text(&config);
                    println!("-- analytic limit --");
                    print_certified_text(&cp);
                    if let Some(mc) = &mc {
                        println!("-- conditioning rate --");
                        print_estimate_text(&mc.subgraph);
                        println!("-- conditional estimate --");
                        print_estimate_text(&mc.conditional);
                    }
                }
            }
            Ok(())
        }
        Cmd::Simulate {
            graph,
            n,
            s,
            trials,
            seed,
            workers,
            confidence,
            format,
        } => {
            let (g, source) = graph.load()?;
            let est = estimate_probability_with_confidence(
                &g, n, s, trials, seed, workers, confidence,
            )?;
            let config = [
                ("graph", source),
                ("n", n.to_string()),
                ("s", s.to_string()),
                ("trials", trials.to_string()),
                ("seed", seed.to_string()),
                ("workers", workers.to_string()),
                ("confidence", fmt_f64(confidence)),
            ];
            match format {
                Format::Json => println!(
                    "{}",
                    to_json(&json!({
                        "config": config_json("simulate", &config),
                        "result": estimate_json(&est),
                    }))
                ),
                Format::Csv => {
                    print_config_text(&[("command", "simulate".into())]);
                    print_config_text(&config);
                    println!("n,trials,successes,point,ci_low,ci_high");
                    println!(
                        "{},{},{},{},{},{}",
                        n,
                        est.trials,
                        est.successes,
                        fmt_f64(est.point),
                        fmt_f64(est.ci_low),
                        fmt_f64(est.ci_high)
                    );
                }
                Format::Text => {
                    print_config_text(&[("command", "simulate".into())]);
                    print_config_text(&config);
                    print_estimate_text(&est);
                }
            }
            Ok(())
        }
        Cmd::Sweep {
            graph,
            s,
            n,
            trials,
            seed,
            workers,
            format,
        } => {
            let (g, source) = graph.load()?;
            let rows = convergence_sweep(&g, s, &n, trials, seed, workers)?;
            let config = [
                ("graph", source),
                ("s", s.to_string()),
                (
                    "n_list",
                    n.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","),
                ),
                ("trials", trials.to_string()),
                ("seed", seed.to_string()),
                ("workers", workers.to_string()),
            ];
            match format {
                Format::Json => {
                    let result: Vec<Value> = rows
                        .iter()
                        .map(|r| {
                            json!({
                                "n": r.n,
                                "estimate": estimate_json(&r.estimate),
                                "limit": certified_json(&r.limit),
                                "deviation": r.deviation,
                            })
                        })
                        .collect();
                    println!(
                        "{}",
                        to_json(&json!({
                            "config": config_json("sweep", &config),
                            "result": result,
                        }))
                    );
                }
                _ => {
                    print_config_text(&[("command", "sweep".into())]);
                    print_config_text(&config);
                    println!("{}", sweep_csv_header());
                    for r in &rows {
                        println!("{}", r.csv_row());
                    }
                }
            }
            Ok(())
        }
        Cmd::Enumerate {
            graph,
            n,
            s,
            budget,
            format,
        } => {
            reject_csv(format, "enumerate")?;
            let (g, source) = graph.load()?;
            let pr = exact_probability(&g, n, s, budget)?;
            let as_float = pr.to_f64().unwrap_or(f64::NAN);
            let config = [
                ("graph", source),
                ("n", n.to_string()),
                ("s", s.to_string()),
                ("budget", budget.to_string()),
            ];
            match format {
                Format::Json => println!(
                    "{}",
                    to_json(&json!({
                        "config": config_json("enumerate", &config),
                        "result": {
                            "fraction": format!("{}/{}", pr.numer(), pr.denom()),
                            "value": as_float,
                        },
                    }))
                ),
                _ => {
                    print_config_text(&[("command", "enumerate".into())]);
                    print_config_text(&config);
                    println!("fraction = {}/{}", pr.numer(), pr.denom());
                    println!("value = {}", fmt_f64(as_float));
                }
            }
            Ok(())
        }
        Cmd::Residues {
            graph,
            p,
            s,
            budget,
            format,
        } => {
            reject_csv(format, "residues")?;
            let (g, source) = graph.load()?;
            let count = count_hp_visible_residue_tuples(&g, p, s, budget)?;
            let poly = chromatic_polynomial_with_budget(&g, DEFAULT_DC_NODE_BUDGET)?;
            let expect = eval_at_prime_power(&poly, p, s)?;
            let x = u64::pow(p, s);
            if czeta_core::num_bigint::BigInt::from(count) != expect {
                return Err(CliError::Internal(format!(
                    "residue count {} disagrees with P_H({}) = {}",
                    count, x, expect
                )));
            }
            let config = [
                ("graph", source),
                ("p", p.to_string()),
                ("s", s.to_string()),
                ("budget", budget.to_string()),
            ];
            match format {
                Format::Json => println!(
                    "{}",
                    to_json(&json!({
                        "config": config_json("residues", &config),
                        "result": {
                            "count": count,
                            "annotation": format!("== P_H({})", x),
                        },
                    }))
                ),
                _ => {
                    print_config_text(&[("command", "residues".into())]);
                    print_config_text(&config);
                    println!("count = {}  (== P_H({}))", count, x);
                }
            }
            Ok(())
        }
        Cmd::Selftest => {
            let checks = czeta_core::selftest::run_selftest();
            let mut failed = 0;
            for c in &checks {
                if c.passed {
                    println!("ok   {} ({})", c.name, c.detail);
                } else {
                    println!("FAIL {}: {}", c.name, c.detail);
                    failed += 1;
                }
            }
            println!("{} of {} checks passed", checks.len() - failed, checks.len());
            if failed > 0 {
                return Err(CliError::Internal(format!("{} selftest checks failed", failed)));
            }
            Ok(())
        }
    }
}

fn emit_certified(command: &str, config: &[(&str, String)], cp: &CertifiedProduct, format: Format) {
    match format {
        Format::Json => println!(
            "{}",
            to_json(&json!({
                "config": config_json(command, config),
                "result": certified_json(cp),
            }))
        ),
        _ => {
            print_config_text(&[("command", command.to_string())]);
            print_config_text(config);
            print_certified_text(cp);
        }
    }
}
