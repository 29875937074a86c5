//! Command-line front door: verify, certify, scan, gen, spectrum, clique.
//!
//! Exit codes: 0 success, 1 violation candidate flagged, 2 usage or input
//! error, 3 internal numerical failure.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use spectral_turan::engine::{self, CheckKind, Tolerances};
use spectral_turan::scan::{
    self, Filters, ReportFormat, ScanCheck, ScanConfig, ScanSource, fmt_sig12,
};
use spectral_turan::{clique, graph6, source, spectral, Error, Graph};

const EXIT_VIOLATION: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_NUMERICAL: u8 = 3;

#[derive(Parser)]
#[command(
    name = "spectral-turan",
    about = "Verify spectral clique-number bounds on concrete graphs",
    long_about = "Graph sources are generator expressions (turan:12,3, path:5, cycle:5, \
                  complete:4, empty:3, petersen, joined with '+' for disjoint unions), \
                  paths to graph6 files, or literal graph6 records."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate inequalities on a graph and print one block per check
    Verify(VerifyArgs),
    /// Certify every step of the proof chain on a graph
    Certify(CertifyArgs),
    /// Run checks over a graph stream and emit a CSV/JSON report
    Scan(ScanArgs),
    /// Print the graph6 record of a generated graph
    Gen { source: String },
    /// Print the adjacency eigenvalues, descending
    Spectrum { source: String },
    /// Print the clique number and a witness
    Clique { source: String },
}

#[derive(Args)]
struct VerifyArgs {
    source: String,
    /// Checks to run (default: all three)
    #[arg(long = "check", value_enum)]
    checks: Vec<CheckArg>,
    #[arg(long, default_value_t = 1e-6)]
    tol_tight: f64,
    #[arg(long, default_value_t = 1e-6)]
    tol_violation: f64,
}

#[derive(Args)]
struct CertifyArgs {
    source: String,
    /// Parameter r for the decomposition chain (default: the clique number)
    #[arg(long)]
    r: Option<f64>,
}

#[derive(Args)]
struct ScanArgs {
    /// Enumerate all labeled graphs on N vertices (N <= 7)
    #[arg(long, value_name = "N", conflicts_with_all = ["file", "random_regular", "gnp"])]
    enumerate: Option<usize>,
    /// Read graph6 records from a file
    #[arg(long, conflicts_with_all = ["random_regular", "gnp"])]
    file: Option<PathBuf>,
    /// Sample random d-regular graphs; format n,d
    #[arg(long, value_name = "N,D", conflicts_with = "gnp")]
    random_regular: Option<String>,
    /// Sample G(n, p) graphs; format n,p
    #[arg(long, value_name = "N,P")]
    gnp: Option<String>,
    /// Number of sampled graphs
    #[arg(long, default_value_t = 100)]
    count: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Checks to run (repeatable; default: bn)
    #[arg(long = "check", value_enum)]
    checks: Vec<CheckArg>,
    #[arg(long)]
    regular_only: bool,
    #[arg(long)]
    connected_only: bool,
    #[arg(long)]
    non_complete_only: bool,
    #[arg(long, default_value_t = 1e-6)]
    tol_tight: f64,
    #[arg(long, default_value_t = 1e-6)]
    tol_violation: f64,
    /// Worker threads (default: SPECTRAL_TURAN_WORKERS or all cores)
    #[arg(long)]
    workers: Option<usize>,
    /// Output path (default: stdout)
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CheckArg {
    /// mu1^2 bound
    Turan,
    /// mu1^2 + mu2^2 indicator bound
    Bn,
    /// chromatic-number variant
    Chi,
    /// full proof-chain certification
    Certify,
}

impl CheckArg {
    fn to_scan(self) -> ScanCheck {
        match self {
            CheckArg::Turan => ScanCheck::SpectralTuran,
            CheckArg::Bn => ScanCheck::BollobasNikiforov,
            CheckArg::Chi => ScanCheck::AndoLinChi,
            CheckArg::Certify => ScanCheck::Certify,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify(args) => cmd_verify(args),
        Command::Certify(args) => cmd_certify(args),
        Command::Scan(args) => cmd_scan(args),
        Command::Gen { source } => cmd_gen(&source),
        Command::Spectrum { source } => cmd_spectrum(&source),
        Command::Clique { source } => cmd_clique(&source),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::ConvergenceFailure => EXIT_NUMERICAL,
                _ => EXIT_USAGE,
            };
            ExitCode::from(code)
        }
    }
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode, Error> {
    let checks = if args.checks.is_empty() {
        vec![CheckArg::Turan, CheckArg::Bn, CheckArg::Chi]
    } else {
        args.checks.clone()
    };
    let tol = Tolerances {
        tight: args.tol_tight,
        violation: args.tol_violation,
    };
    let mut any_violation = false;
    for (label, g) in source::resolve(&args.source)? {
        if g.n() == 0 {
            println!("{label}: empty graph, nothing to verify");
            continue;
        }
        let spec = spectral::eigendecompose(&g)?;
        let omega = clique::max_clique(&g).omega;
        println!(
            "{label}: n={} m={} omega={omega} mu1={} mu2={}",
            g.n(),
            g.m(),
            fmt_sig12(spec.mu1()),
            fmt_sig12(if g.n() >= 2 { spec.mu2() } else { 0.0 }),
        );
        for check in &checks {
            match check {
                CheckArg::Turan => {
                    let v = engine::spectral_turan_check(&g, &spec, omega, &tol);
                    print_verdict(&v, None);
                    any_violation |= v.violated;
                }
                CheckArg::Bn => {
                    let v = engine::bn_check(&g, &spec, omega, &tol);
                    let class = engine::equality_classify(&g, &v, omega);
                    print_verdict(&v, Some(&class));
                    any_violation |= v.violated;
                }
                CheckArg::Chi => {
                    let chroma = clique::chromatic_number(&g)?;
                    let v = engine::ando_lin_check(&g, &spec, chroma.chi, &tol);
                    print_verdict(&v, None);
                    any_violation |= v.violated;
                }
                CheckArg::Certify => {
                    return Err(Error::BadSource(
                        "use the certify subcommand for certification".into(),
                    ))
                }
            }
        }
    }
    Ok(if any_violation {
        ExitCode::from(EXIT_VIOLATION)
    } else {
        ExitCode::SUCCESS
    })
}

fn print_verdict(v: &engine::Verdict, class: Option<&engine::EqualityClass>) {
    let status = if v.violated {
        "VIOLATED"
    } else if v.tight {
        "tight"
    } else {
        "ok"
    };
    println!(
        "  {}: lhs={} bound={} slack={} [{status}]",
        v.kind.name(),
        fmt_sig12(v.lhs),
        fmt_sig12(v.bound),
        fmt_sig12(v.slack),
    );
    if v.kind == CheckKind::BollobasNikiforov {
        println!(
            "    indicator_applied={} (mu2 >= 0: {})",
            v.indicator_applied, v.indicator_applied
        );
        if let Some(c) = class {
            println!("    equality_class={} ({})", c.tag.label(), c.detail);
        }
    }
}

fn cmd_certify(args: CertifyArgs) -> Result<ExitCode, Error> {
    let g = source::resolve_single(&args.source)?;
    if g.n() == 0 {
        println!("empty graph, nothing to certify");
        return Ok(ExitCode::SUCCESS);
    }
    let spec = spectral::eigendecompose(&g)?;
    let omega = clique::max_clique(&g).omega;
    let r = args.r.unwrap_or((omega as f64).max(2.0));
    println!(
        "certifying n={} m={} omega={omega} r={r}",
        g.n(),
        g.m()
    );

    let mut all_pass = true;
    let mut print_report = |title: &str, report: &engine::CertificateReport| {
        println!("{title}:");
        for step in &report.steps {
            let mark = if step.pass { "pass" } else { "FAIL" };
            let values: Vec<String> = step
                .values
                .iter()
                .map(|(k, v)| format!("{k}={}", fmt_sig12(*v)))
                .collect();
            println!("  [{mark}] {} {} ({})", step.name, values.join(" "), step.note);
        }
        all_pass &= report.overall();
    };

    if g.n() >= 2 {
        print_report("equivalence of the two premise forms", &engine::al_equivalence_check(&g, &spec, r)?);
        let split = spectral::rank_two_split(&spec, &g);
        print_report("rank-two decomposition chain", &engine::al_chain_certify(&g, &spec, &split, r)?);
    }
    print_report("triangle trace identity", &engine::triangle_trace_check(&g, &spec));

    let stats = g.stats();
    if stats.regular_degree.is_some() && stats.is_connected() {
        match engine::regular_identity_check(&g, &spec, omega) {
            Ok(report) => print_report("regular-graph closed-form identities", &report),
            Err(Error::TooSmall) => {
                println!("regular-graph identities: skipped (complete graph K_omega is excluded)")
            }
            Err(e) => return Err(e),
        }
    } else {
        println!("regular-graph identities: skipped (requires a connected regular graph)");
    }

    if g.n() >= 2 {
        match engine::xpm_vectors(&spec) {
            Ok((xp, xm)) => {
                for (name, x) in [("x_plus", xp), ("x_minus", xm)] {
                    match engine::nikiforov_form_check(&g, omega, &x) {
                        Ok(value) => println!(
                            "  [pass] nonneg_form_{name} value={} (quadratic form at the test vector)",
                            fmt_sig12(value)
                        ),
                        Err(e) => {
                            println!("  [FAIL] nonneg_form_{name} ({e})");
                            all_pass = false;
                        }
                    }
                }
            }
            Err(Error::NegativeMu2(mu2)) => println!(
                "test-vector construction: skipped (mu2={} is negative)",
                fmt_sig12(mu2)
            ),
            Err(e) => return Err(e),
        }
    }

    if all_pass {
        println!("overall: pass");
        Ok(ExitCode::SUCCESS)
    } else {
        println!("overall: FAIL");
        Ok(ExitCode::from(EXIT_NUMERICAL))
    }
}

fn parse_pair<T: std::str::FromStr, U: std::str::FromStr>(s: &str) -> Result<(T, U), Error> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| Error::BadSource(s.to_string()))?;
    match (a.trim().parse(), b.trim().parse()) {
        (Ok(a), Ok(b)) => Ok((a, b)),
        _ => Err(Error::BadSource(s.to_string())),
    }
}

fn cmd_scan(args: ScanArgs) -> Result<ExitCode, Error> {
    let source = if let Some(n) = args.enumerate {
        ScanSource::Enumerate { n }
    } else if let Some(path) = args.file.clone() {
        ScanSource::Graph6File { path }
    } else if let Some(spec) = &args.random_regular {
        let (n, d) = parse_pair(spec)?;
        ScanSource::RandomRegular {
            n,
            d,
            count: args.count,
            seed: args.seed,
        }
    } else if let Some(spec) = &args.gnp {
        let (n, p) = parse_pair(spec)?;
        ScanSource::Gnp {
            n,
            p,
            count: args.count,
            seed: args.seed,
        }
    } else {
        return Err(Error::BadSource(
            "select a source: --enumerate, --file, --random-regular, or --gnp".into(),
        ));
    };
    let checks = if args.checks.is_empty() {
        vec![ScanCheck::BollobasNikiforov]
    } else {
        args.checks.iter().map(|c| c.to_scan()).collect()
    };
    let workers = args
        .workers
        .or_else(|| {
            std::env::var("SPECTRAL_TURAN_WORKERS")
                .ok()
                .and_then(|v| v.parse().ok())
        })
        .unwrap_or(0);
    let config = ScanConfig {
        source,
        checks,
        filters: Filters {
            regular_only: args.regular_only,
            connected_only: args.connected_only,
            non_complete_only: args.non_complete_only,
        },
        tol_tight: args.tol_tight,
        tol_violation: args.tol_violation,
        workers,
    };
    let report = scan::scan(&config)?;
    let format = match args.format {
        FormatArg::Csv => ReportFormat::Csv,
        FormatArg::Json => ReportFormat::Json,
    };
    match &args.out {
        Some(path) => {
            let mut file = std::fs::File::create(path)?;
            scan::emit_report(&report, format, &mut file)?;
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            scan::emit_report(&report, format, &mut lock)?;
            lock.flush()?;
        }
    }
    eprintln!(
        "rows: {}  tight: {}  violations: {}  errors: {}  elapsed: {:.3}s",
        report.summary.rows,
        report.summary.tight,
        report.summary.violated,
        report.summary.errors,
        report.elapsed_secs
    );
    for e in &report.summary.extremal {
        eprintln!(
            "  {}: min slack {} (row {}), max slack {} (row {})",
            e.check,
            fmt_sig12(e.min_slack),
            e.min_index,
            fmt_sig12(e.max_slack),
            e.max_index
        );
    }
    Ok(if report.summary.violated > 0 {
        ExitCode::from(EXIT_VIOLATION)
    } else {
        ExitCode::SUCCESS
    })
}

fn cmd_gen(src: &str) -> Result<ExitCode, Error> {
    for (_, g) in source::resolve(src)? {
        println!("{}", graph6::to_graph6(&g));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_spectrum(src: &str) -> Result<ExitCode, Error> {
    let g: Graph = source::resolve_single(src)?;
    if g.n() == 0 {
        println!();
        return Ok(ExitCode::SUCCESS);
    }
    let spec = spectral::eigendecompose(&g)?;
    let line: Vec<String> = spec.eigenvalues.iter().map(|&v| fmt_sig12(v)).collect();
    println!("{}", line.join(" "));
    Ok(ExitCode::SUCCESS)
}

fn cmd_clique(src: &str) -> Result<ExitCode, Error> {
    let g = source::resolve_single(src)?;
    let result = clique::max_clique(&g);
    let witness: Vec<String> = result.witness.iter().map(|v| v.to_string()).collect();
    println!("omega={} witness={{{}}}", result.omega, witness.join(","));
    Ok(ExitCode::SUCCESS)
}
