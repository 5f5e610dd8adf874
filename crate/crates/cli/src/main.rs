//! `qtopo`: build entanglement filtrations from states or graphs, report their barcodes
//! and invariants, and run the verification suites.

mod svg;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use qtopo::correlations::{epsilon_max, CorrelationFunctional, CorrelationKind};
use qtopo::graphstates::{graph_state_vector, BuiltinGraph, Graph};
use qtopo::homology::export::{barcode_json, betti_csv, fmt_sig, SIGNIFICANT_DIGITS};
use qtopo::homology::{betti_curves, build_filtration, persistence_pairs};
use qtopo::invariants::{ade, betti_integrals, bounds_report, iec_closed_form};
use qtopo::qstate::{make_ghz, make_product, make_w, random_pure};
use qtopo::verify::{run_suite, Suite};
use qtopo::{graphstates, oracle, Error, QubitSubset, State};

#[derive(Parser)]
#[command(name = "qtopo", version, about = "Persistent homology of multipartite entanglement")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the filtration of one state and report its barcode and invariants.
    Analyze(AnalyzeArgs),
    /// Run a verification suite and print a JSON pass/fail report.
    Verify(VerifyArgs),
}

#[derive(Args)]
#[group(id = "source", required = true, multiple = false)]
struct Source {
    /// ghz, w, product, pentagon5, wheel6, star, complete, path, cycle, kuniform8_1..3
    #[arg(long, group = "source")]
    builtin: Option<String>,
    /// Edge-list file: header `n <count>`, then 1-indexed `u v` lines.
    #[arg(long, group = "source")]
    graph: Option<PathBuf>,
    /// State JSON: {"n": .., "amplitudes": [[re, im], ..]}.
    #[arg(long, group = "source")]
    state: Option<PathBuf>,
    /// Seeded Gaussian random state, given as `n,seed`.
    #[arg(long, group = "source", value_name = "N,SEED")]
    random: Option<String>,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    source: Source,
    /// Register size for builtins that take one.
    #[arg(long)]
    n: Option<usize>,
    /// vn-total or tsallis2-total.
    #[arg(long, default_value = "vn-total")]
    functional: CorrelationKind,
    /// Largest simplex dimension; defaults to n-1.
    #[arg(long)]
    max_dim: Option<usize>,
    /// Tolerance for birth comparisons and snapping.
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    /// Barcode JSON.
    #[arg(long)]
    out_json: Option<PathBuf>,
    /// Betti curves as CSV, one row per critical value.
    #[arg(long)]
    out_csv: Option<PathBuf>,
    /// Barcode figure.
    #[arg(long)]
    out_svg: Option<PathBuf>,
    /// Cross-check against the brute-force reference implementations (n <= 8).
    #[arg(long)]
    oracle: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// ghz-footprint, iec-identity, ade-bounds, kuniform or appendix.
    #[arg(long)]
    suite: Suite,
    /// Functional the caller intends; suites tied to one theorem refuse the other.
    #[arg(long)]
    functional: Option<CorrelationKind>,
    /// Also write the report here.
    #[arg(long)]
    out_json: Option<PathBuf>,
}

/// Failure modes mapped to exit codes.
enum Failure {
    Usage(String),
    Run(String),
    Checks(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Argument(_) | Error::UnknownName(_) | Error::Size(_) => Failure::Usage(e.to_string()),
            other => Failure::Run(other.to_string()),
        }
    }
}

/// `println!` that exits with status 1 instead of panicking when stdout is closed.
macro_rules! out {
    ($($arg:tt)*) => {
        if writeln!(std::io::stdout(), $($arg)*).is_err() {
            std::process::exit(1);
        }
    };
}

fn num(x: f64) -> String {
    fmt_sig(x, SIGNIFICANT_DIGITS)
}

fn load_source(source: &Source, n: Option<usize>) -> Result<(String, State, Option<Graph>), Failure> {
    if let Some(name) = &source.builtin {
        let need_n = || n.ok_or_else(|| Failure::Usage(format!("--builtin {name} needs --n")));
        return match name.as_str() {
            "ghz" => Ok((format!("ghz{}", need_n()?), make_ghz(need_n()?)?, None)),
            "w" => Ok((format!("w{}", need_n()?), make_w(need_n()?)?, None)),
            "product" => Ok((format!("product{}", need_n()?), make_product(need_n()?)?, None)),
            _ => {
                let builtin = BuiltinGraph::parse(name, n)?;
                let g = builtin.graph()?;
                if n.is_some_and(|n| n != g.n_vertices()) {
                    return Err(Failure::Usage(format!("{builtin} has {} vertices, --n says {}", g.n_vertices(), n.unwrap())));
                }
                Ok((builtin.to_string(), graph_state_vector(&g)?, Some(g)))
            }
        };
    }
    if n.is_some() {
        return Err(Failure::Usage("--n only applies to --builtin".into()));
    }
    if let Some(path) = &source.graph {
        let g = Graph::load(path)?;
        return Ok((path.display().to_string(), graph_state_vector(&g)?, Some(g)));
    }
    if let Some(path) = &source.state {
        return Ok((path.display().to_string(), State::load(path)?, None));
    }
    let spec = source.random.as_deref().expect("clap enforces one source");
    let parsed = spec
        .split_once(',')
        .and_then(|(a, b)| Some((a.trim().parse::<usize>().ok()?, b.trim().parse::<u64>().ok()?)));
    let (n, seed) = parsed.ok_or_else(|| Failure::Usage(format!("--random expects `n,seed`, got `{spec}`")))?;
    Ok((format!("random{n}/seed{seed}"), random_pure(n, seed)?, None))
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Run(format!("cannot write {}: {e}", path.display())))
}

fn analyze(args: &AnalyzeArgs) -> Result<(), Failure> {
    if !(args.tol >= 0.0) {
        return Err(Failure::Usage(format!("--tol must be nonnegative, got {}", args.tol)));
    }
    let (name, state, graph) = load_source(&args.source, args.n)?;
    let n = state.n_qubits();
    let max_dim = args.max_dim.unwrap_or(n - 1);
    if max_dim + 1 > n {
        return Err(Failure::Usage(format!("--max-dim {max_dim} exceeds n - 1 = {}", n - 1)));
    }
    let functional = CorrelationFunctional::new(args.functional).with_tolerance(args.tol);
    let complex = build_filtration(&state, &functional, max_dim)?;
    let curves = betti_curves(&complex);
    let bars = persistence_pairs(&complex);

    out!("state           {name} ({n} qubits)");
    out!("functional      {} (tolerance {})", args.functional, num(args.tol));
    out!("max_dim         {max_dim}");
    let grid: Vec<String> = complex.critical_values().iter().map(|&v| num(v)).collect();
    out!("critical        {}", grid.join(" "));
    for k in 0..=max_dim {
        let total = bars.in_dim(k).count();
        if total > 0 {
            let essential = bars.in_dim(k).filter(|i| i.is_essential()).count();
            out!("bars H{k}         {total} ({essential} essential)");
        }
    }
    for i in &bars.intervals {
        let death = i.death.map_or("inf".to_string(), num);
        out!("  H{} [{}, {})", i.dim, num(i.birth), death);
    }
    out!("epsilon_max     {}", num(epsilon_max(&state, &functional)?));
    let closed = iec_closed_form(&state, args.functional.entropy())?;
    if max_dim + 1 == n {
        let integrals = betti_integrals(&curves)?;
        let integral = integrals
            .iter()
            .enumerate()
            .fold(0.0, |acc, (k, &x)| if k % 2 == 0 { acc + x } else { acc - x });
        out!("iec_integral    {}", num(integral));
    } else {
        eprintln!("warning: max_dim < n-1, the IEC integral is not defined and will not match the closed form");
    }
    out!("iec_closed_form {}", num(closed));
    let b = bounds_report(&state)?;
    out!("ade             {}", num(b.ade));
    out!("bounds (vn)     lower {} upper {} slack {}", num(b.lower), num(b.upper), num(b.slack));

    if let Some(path) = &args.out_json {
        write_file(path, &barcode_json(n, args.functional.as_str(), &bars))?;
    }
    if let Some(path) = &args.out_csv {
        write_file(path, &betti_csv(&curves)?)?;
    }
    if let Some(path) = &args.out_svg {
        let title = format!("{name}, {}", args.functional);
        write_file(path, &svg::render_svg(&bars, &title))?;
    }

    if args.oracle {
        run_oracles(&state, graph.as_ref(), &complex, &curves, args.functional)?;
    }
    Ok(())
}

fn run_oracles(
    state: &State,
    graph: Option<&Graph>,
    complex: &qtopo::Complex,
    curves: &[qtopo::Curve],
    kind: CorrelationKind,
) -> Result<(), Failure> {
    let n = state.n_qubits();
    if n > 8 {
        return Err(Failure::Usage(format!("--oracle supports n <= 8, got {n}")));
    }
    let mut failed = Vec::new();
    let mut report = |name: &str, ok: bool| {
        out!("oracle {name:<22} {}", if ok { "ok" } else { "MISMATCH" });
        if !ok {
            failed.push(name.to_string());
        }
    };
    report("ade", (oracle::ade(state)? - ade(state)?).abs() < 1e-9);
    let entropy = kind.entropy();
    report("iec-subset-sum", (oracle::iec_subset_sum(state, entropy)? - iec_closed_form(state, entropy)?).abs() < 1e-9);
    let betti_ok = curves[0].breakpoints.iter().enumerate().all(|(i, &eps)| {
        let dense = oracle::betti_numbers(complex, eps);
        curves.iter().all(|c| c.values[i] == dense[c.dim])
    });
    report("betti", betti_ok);
    if let Some(g) = graph {
        let mut stab_ok = true;
        for m in 0..1u32 << n {
            let a = QubitSubset::new(m, n)?;
            stab_ok &= graphstates::count_supported_stabilizers(g, &a)? == oracle::supported_stabilizers(g, &a);
        }
        report("stabilizer-count", stab_ok);
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Checks(format!("oracle mismatch: {}", failed.join(", "))))
    }
}

fn verify(args: &VerifyArgs) -> Result<(), Failure> {
    if let Some(kind) = args.functional {
        args.suite.check_functional(kind)?;
    }
    let report = run_suite(args.suite)?;
    let json = serde_json::to_string_pretty(&report).expect("serializable report");
    out!("{json}");
    if let Some(path) = &args.out_json {
        write_file(path, &json)?;
    }
    if report.passed {
        Ok(())
    } else {
        Err(Failure::Checks(format!(
            "{} of {} checks failed:\n  {}",
            report.failures,
            report.checks,
            report.violations.join("\n  ")
        )))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Analyze(args) => analyze(args),
        Command::Verify(args) => verify(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Run(msg)) | Err(Failure::Checks(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}
