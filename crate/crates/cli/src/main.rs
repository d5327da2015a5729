//! `jackvk`: command-line front end for Jack and shifted Jack computations,
//! identity suites and convergence experiments.
//!
//! Exit status: 0 on success, 1 on a validation error, 2 when an identity
//! suite finds a counterexample (serialized on stdout).

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use jackvk::asymptotics::{binomial_expand, convergence_experiment, link_weights, measure_from_phi, ExperimentConfig};
use jackvk::jack::JackEngine;
use jackvk::par::ExecMode;
use jackvk::scalar::format_q;
use jackvk::shifted::ShiftedEngine;
use jackvk::suites::{run_suite, Suite, SuiteParams};
use jackvk::{Error, Partition, Signature, Theta};

/// Largest `|λ_i|` accepted on exact paths without `--force`.
const MAX_PART: i64 = 12;
/// Largest number of variables accepted on exact paths without `--force`.
const MAX_VARS: usize = 10;

#[derive(Parser, Debug)]
#[command(name = "jackvk", version, about = "Exact Jack polynomials, shifted Jack polynomials and VK asymptotics")]
struct Cli {
    /// Output format (default: csv for `converge`, json otherwise).
    #[arg(long, value_enum, global = true)]
    format: Option<Format>,
    /// Lift the desk-scale limits (|λ_i| ≤ 12, n ≤ 10) on exact paths.
    #[arg(long, global = true)]
    force: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Jack polynomial P_λ (or Q_λ) in n variables.
    Jack(JackArgs),
    /// Shifted Jack polynomial P*_μ in n variables.
    Pstar(PstarArgs),
    /// Branching coefficient ψ_{λ/μ}.
    Psi(PsiArgs),
    /// Binomial expansion of the normalized Jack function Φ_λ.
    Binomial(BinomialArgs),
    /// Exact identity suites over finite families.
    Identities(IdentitiesArgs),
    /// Finite-n convergence experiment along a VK sequence.
    Converge(ConvergeArgs),
    /// Link weights Λ(λ → μ) from n to n−1 coordinates.
    Links(SigArgs),
    /// The probability measure M_n on Z read off Φ_λ(z, 1, …, 1).
    Measure(SigArgs),
}

#[derive(Args, Debug)]
struct JackArgs {
    /// Partition or signature, e.g. `[2,1]` or `[2,0,-1]`.
    #[arg(long, allow_hyphen_values = true)]
    lambda: String,
    /// Number of variables (defaults to the length of λ).
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    theta: String,
    /// Return the dual normalization Q_λ (partitions only).
    #[arg(long)]
    dual: bool,
}

#[derive(Args, Debug)]
struct PstarArgs {
    #[arg(long, allow_hyphen_values = true)]
    mu: String,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    theta: String,
}

#[derive(Args, Debug)]
struct PsiArgs {
    /// Signature of length n.
    #[arg(long, allow_hyphen_values = true)]
    lambda: String,
    /// Signature of length n−1 interlacing λ.
    #[arg(long, allow_hyphen_values = true)]
    mu: String,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    theta: String,
}

#[derive(Args, Debug)]
struct BinomialArgs {
    #[arg(long, allow_hyphen_values = true)]
    lambda: String,
    /// Number of free variables z_1, …, z_k.
    #[arg(long, default_value_t = 1)]
    k: usize,
    /// Largest |μ| in the expansion.
    #[arg(long, default_value_t = 4)]
    degree: usize,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    theta: String,
}

#[derive(Args, Debug)]
struct IdentitiesArgs {
    /// cauchy, oracle, norm, pstar, binomial, gstar, split, convolution,
    /// moments, links, power-bound or all.
    #[arg(long)]
    suite: String,
    #[arg(long, default_value_t = 2)]
    n: usize,
    #[arg(long, default_value_t = 2)]
    m: usize,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    theta: String,
    #[arg(long, default_value_t = 4)]
    degree: usize,
    /// Signature entries range over [-bound, bound].
    #[arg(long, default_value_t = 2)]
    bound: i64,
    #[arg(long, default_value_t = 200)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args, Debug)]
struct ConvergeArgs {
    /// Experiment configuration (JSON).
    #[arg(long)]
    config: PathBuf,
    /// Write the CSV here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Also write the full report as JSON.
    #[arg(long)]
    summary: Option<PathBuf>,
    /// Run on one thread.
    #[arg(long)]
    sequential: bool,
}

#[derive(Args, Debug)]
struct SigArgs {
    #[arg(long, allow_hyphen_values = true)]
    lambda: String,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    theta: String,
}

/// What a verb produced: a JSON value plus a table view for `--format csv`.
struct Output {
    json: Value,
    table: Table,
    pretty: String,
}

struct Table {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    fn new(header: &[&str]) -> Self {
        Table { header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    fn to_csv(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for r in &self.rows {
            out.push_str(&r.iter().map(|c| csv_cell(c)).collect::<Vec<_>>().join(","));
            out.push('\n');
        }
        out
    }
}

fn csv_cell(s: &str) -> String {
    if s.contains([',', '"']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

enum Failure {
    Validation(String),
    Identity(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Validation(e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn invalid(msg: impl Into<String>) -> Failure {
    Failure::Validation(msg.into())
}

fn parse_theta(s: &str) -> CliResult<Theta> {
    s.parse::<Theta>().map_err(|e| invalid(format!("--theta: {e}")))
}

fn parse_signature(flag: &str, s: &str) -> CliResult<Signature> {
    s.parse::<Signature>().map_err(|e| invalid(format!("--{flag}: {e}")))
}

fn parse_partition(flag: &str, s: &str) -> CliResult<Partition> {
    s.parse::<Partition>().map_err(|e| invalid(format!("--{flag}: {e}")))
}

struct Guard {
    force: bool,
}

impl Guard {
    fn vars(&self, flag: &str, n: usize) -> CliResult<()> {
        if !self.force && n > MAX_VARS {
            return Err(invalid(format!("{flag} = {n} exceeds the exact-path limit {MAX_VARS} (pass --force)")));
        }
        Ok(())
    }

    fn parts(&self, flag: &str, parts: &[i64]) -> CliResult<()> {
        self.vars(&format!("length of --{flag}"), parts.len())?;
        if let Some(p) = parts.iter().find(|p| p.abs() > MAX_PART) {
            if !self.force {
                return Err(invalid(format!("--{flag} has part {p}; exact paths need |λ_i| ≤ {MAX_PART} (pass --force)")));
            }
        }
        Ok(())
    }
}

fn poly_table(terms: impl Iterator<Item = (Vec<i64>, String)>) -> Table {
    let mut t = Table::new(&["exponent", "coefficient"]);
    for (e, c) in terms {
        let e: Vec<String> = e.iter().map(|x| x.to_string()).collect();
        t.rows.push(vec![e.join(" "), c]);
    }
    t
}

fn run_jack(a: &JackArgs, g: &Guard) -> CliResult<Output> {
    let theta = parse_theta(&a.theta)?;
    let sig = parse_signature("lambda", &a.lambda)?;
    let n = a.n.unwrap_or(sig.len());
    g.parts("lambda", sig.parts())?;
    g.vars("--n", n)?;
    let mut e = JackEngine::new(theta.clone());
    let f = if a.dual || a.n.is_some() && n != sig.len() {
        let p = sig.to_partition().map_err(|_| invalid("--n different from ℓ(λ) and --dual need a partition λ"))?;
        if a.dual {
            e.jack_q(&p, n)?
        } else {
            e.jack_p_partition(&p, n)?
        }
    } else {
        e.jack_p(&sig)
    };
    let poly = f.to_poly();
    let table = poly_table(poly.terms().iter().rev().map(|(k, c)| (k.iter().map(|&x| x as i64).collect(), format_q(c))));
    let name = if a.dual { "Q" } else { "P" };
    Ok(Output {
        pretty: format!("{name}_{sig}(x_1..x_{n}; θ={theta}) = {poly}\n"),
        json: f.to_json(),
        table,
    })
}

fn run_pstar(a: &PstarArgs, g: &Guard) -> CliResult<Output> {
    let theta = parse_theta(&a.theta)?;
    let mu = parse_partition("mu", &a.mu)?;
    let n = a.n.unwrap_or(mu.len().max(1));
    g.parts("mu", &mu.padded(mu.len()))?;
    g.vars("--n", n)?;
    let f = ShiftedEngine::new(theta.clone()).pstar(&mu, n)?;
    let table =
        poly_table(f.poly().terms().iter().rev().map(|(k, c)| (k.iter().map(|&x| x as i64).collect(), format_q(c))));
    Ok(Output { pretty: format!("P*_{mu}(x_1..x_{n}; θ={theta}) = {}\n", f.poly()), json: f.to_json(), table })
}

fn run_psi(a: &PsiArgs, g: &Guard) -> CliResult<Output> {
    let theta = parse_theta(&a.theta)?;
    let lambda = parse_signature("lambda", &a.lambda)?;
    let mu = jackvk::partition::parse_bracketed(&a.mu).map_err(|e| invalid(format!("--mu: {e}")))?;
    g.parts("lambda", lambda.parts())?;
    let psi = JackEngine::new(theta.clone()).psi(&lambda, &mu)?;
    let mu_s = format!("[{}]", mu.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","));
    let mut table = Table::new(&["lambda", "mu", "theta", "psi"]);
    table.rows.push(vec![lambda.to_string(), mu_s.clone(), theta.to_string(), format_q(&psi)]);
    Ok(Output {
        json: json!({"lambda": lambda.parts(), "mu": mu, "theta": theta.to_string(), "psi": format_q(&psi)}),
        pretty: format!("ψ_{lambda}/{mu_s}(θ={theta}) = {}\n", format_q(&psi)),
        table,
    })
}

fn run_binomial(a: &BinomialArgs, g: &Guard) -> CliResult<Output> {
    let theta = parse_theta(&a.theta)?;
    let lambda = parse_signature("lambda", &a.lambda)?;
    g.parts("lambda", lambda.parts())?;
    if a.k == 0 {
        return Err(invalid("--k must be at least 1"));
    }
    if !g.force && a.degree > MAX_PART as usize {
        return Err(invalid(format!("--degree {} exceeds the exact-path limit {MAX_PART} (pass --force)", a.degree)));
    }
    let mut e = ShiftedEngine::new(theta.clone());
    let exp = binomial_expand(&mut e, &lambda, a.k, a.degree)?;
    let mut table = Table::new(&["mu", "coefficient"]);
    let mut pretty = format!("Φ_{lambda}(1+t_1..1+t_{}, 1, …; θ={theta}) = Σ c_μ P_μ(t) with\n", a.k);
    let mut coefs = Vec::new();
    for (mu, c) in &exp.coefficients {
        table.rows.push(vec![mu.to_string(), format_q(c)]);
        let _ = writeln!(pretty, "  c_{mu} = {}", format_q(c));
        coefs.push(json!({"mu": mu.parts(), "coef": format_q(c)}));
    }
    Ok(Output {
        json: json!({
            "lambda": lambda.parts(),
            "theta": theta.to_string(),
            "k": a.k,
            "degree": a.degree,
            "coefficients": coefs,
        }),
        pretty,
        table,
    })
}

fn run_identities(a: &IdentitiesArgs, g: &Guard) -> CliResult<Output> {
    let suite: Suite = a.suite.parse().map_err(|e: Error| invalid(format!("--suite: {e}")))?;
    let theta = parse_theta(&a.theta)?;
    g.vars("--n", a.n)?;
    g.vars("--m", a.m)?;
    if !g.force && (a.bound > MAX_PART || a.degree > MAX_PART as usize) {
        return Err(invalid(format!("--bound and --degree must be at most {MAX_PART} (pass --force)")));
    }
    if a.n == 0 {
        return Err(invalid("--n must be at least 1"));
    }
    let params = SuiteParams {
        n: a.n,
        m: a.m,
        theta,
        degree: a.degree,
        bound: a.bound,
        samples: a.samples,
        seed: a.seed,
    };
    let reports = run_suite(suite, &params)?;
    if let Some(bad) = reports.iter().find(|r| !r.holds) {
        return Err(Failure::Identity(json!({
            "suite": bad.suite,
            "cases": bad.cases,
            "counterexample": bad.counterexample,
        })));
    }
    let mut table = Table::new(&["suite", "holds", "cases"]);
    let mut pretty = String::new();
    for r in &reports {
        table.rows.push(vec![r.suite.clone(), r.holds.to_string(), r.cases.to_string()]);
        let _ = writeln!(pretty, "{:<12} holds ({} cases)", r.suite, r.cases);
    }
    Ok(Output { json: serde_json::to_value(&reports).expect("reports serialize"), table, pretty })
}

fn run_converge(a: &ConvergeArgs, g: &Guard, format: Format) -> CliResult<Option<Output>> {
    let text = fs::read_to_string(&a.config).map_err(|e| invalid(format!("--config {}: {e}", a.config.display())))?;
    let cfg: ExperimentConfig =
        serde_json::from_str(&text).map_err(|e| invalid(format!("--config {}: {e}", a.config.display())))?;
    if cfg.k > 1 {
        g.vars("k", cfg.k)?;
    }
    let mode = if a.sequential { ExecMode::Sequential } else { ExecMode::Parallel };
    let report = convergence_experiment(&cfg, mode)?;
    if let Some(path) = &a.summary {
        let s = serde_json::to_string_pretty(&report.summary_json()).expect("summary serializes");
        fs::write(path, s + "\n").map_err(|e| invalid(format!("--summary {}: {e}", path.display())))?;
    }
    let csv = report.to_csv();
    if let Some(path) = &a.output {
        fs::write(path, &csv).map_err(|e| invalid(format!("--output {}: {e}", path.display())))?;
        return Ok(None);
    }
    Ok(Some(match format {
        Format::Csv => Output { json: Value::Null, table: Table::new(&[]), pretty: csv },
        Format::Json => Output { json: report.summary_json(), table: Table::new(&[]), pretty: String::new() },
        Format::Pretty => {
            let mut pretty = format!("theta={} k={} seed={} grid_size={}\n", report.theta, report.k, report.seed, report.grid_size);
            for r in &report.rows {
                let _ = writeln!(pretty, "n={:<8} sup_error={:.3e} moments={:?}", r.n, r.sup_error, r.moment_errors);
            }
            Output { json: report.summary_json(), table: Table::new(&[]), pretty }
        }
    }))
}

fn run_links(a: &SigArgs, g: &Guard) -> CliResult<Output> {
    let theta = parse_theta(&a.theta)?;
    let lambda = parse_signature("lambda", &a.lambda)?;
    g.parts("lambda", lambda.parts())?;
    let links = link_weights(&mut JackEngine::new(theta.clone()), &lambda)?;
    let mut table = Table::new(&["mu", "weight"]);
    let mut pretty = format!("links from {lambda} (θ={theta})\n");
    let mut list = Vec::new();
    for (mu, w) in &links {
        table.rows.push(vec![mu.to_string(), format_q(w)]);
        let _ = writeln!(pretty, "  {mu}  {}", format_q(w));
        list.push(json!({"mu": mu.parts(), "weight": format_q(w)}));
    }
    Ok(Output { json: json!({"lambda": lambda.parts(), "theta": theta.to_string(), "links": list}), table, pretty })
}

fn run_measure(a: &SigArgs, g: &Guard) -> CliResult<Output> {
    let theta = parse_theta(&a.theta)?;
    let lambda = parse_signature("lambda", &a.lambda)?;
    g.parts("lambda", lambda.parts())?;
    let m = measure_from_phi(&mut JackEngine::new(theta.clone()), &lambda)?;
    let mut table = Table::new(&["x", "mass"]);
    let mut pretty = format!("M for {lambda} (θ={theta})\n");
    for (x, w) in m.support().iter().zip(m.masses()) {
        table.rows.push(vec![x.to_string(), format_q(w)]);
        let _ = writeln!(pretty, "  {x:>4}  {}", format_q(w));
    }
    Ok(Output { json: m.to_json(), table, pretty })
}

fn dispatch(cli: &Cli, format: Format) -> CliResult<Option<Output>> {
    let g = Guard { force: cli.force };
    Ok(Some(match &cli.command {
        Command::Jack(a) => run_jack(a, &g)?,
        Command::Pstar(a) => run_pstar(a, &g)?,
        Command::Psi(a) => run_psi(a, &g)?,
        Command::Binomial(a) => run_binomial(a, &g)?,
        Command::Identities(a) => run_identities(a, &g)?,
        Command::Converge(a) => return run_converge(a, &g, format),
        Command::Links(a) => run_links(a, &g)?,
        Command::Measure(a) => run_measure(a, &g)?,
    }))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let format = cli.format.unwrap_or(match cli.command {
        Command::Converge(_) => Format::Csv,
        _ => Format::Json,
    });
    match dispatch(&cli, format) {
        Ok(None) => ExitCode::SUCCESS,
        Ok(Some(out)) => {
            let text = match format {
                Format::Json => serde_json::to_string(&out.json).expect("output serializes") + "\n",
                Format::Csv if out.table.header.is_empty() => out.pretty,
                Format::Csv => out.table.to_csv(),
                Format::Pretty => out.pretty,
            };
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(Failure::Validation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Identity(v)) => {
            println!("{}", serde_json::to_string(&v).expect("counterexample serializes"));
            eprintln!("identity failed");
            ExitCode::from(2)
        }
    }
}
