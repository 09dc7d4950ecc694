use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use parahol::lie::{iwasawa_decompose, CMatrix, RealifiedSl};
use parahol::scenarios::{
    catalog_names, catalog_scenario, run_catalog, run_suite, scenario_load, scenario_suites, Report, RunConfig,
    Scenario, Verdict, DEFAULT_DEGREE, DEFAULT_SEED, SEED_ENV,
};

#[derive(Parser)]
#[command(
    name = "parahol",
    version,
    about = "Exact checks for Courant algebroids, para-Hermitian structures and Lie bialgebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List built-in scenarios.
    List,
    /// Show a scenario's construction and expected checks.
    Describe {
        /// Catalog name or path to a scenario JSON file.
        name: String,
    },
    /// Run a scenario and compare against its expected results.
    Check {
        /// Catalog name, path to a scenario JSON file, or `all`.
        name: String,
        #[arg(long)]
        suite: Option<String>,
        #[arg(long, env = SEED_ENV)]
        seed: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_DEGREE)]
        degree: u32,
        /// Write the JSON report here.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Iwasawa parts of a traceless complex matrix.
    Decompose {
        /// Only `sl` is supported.
        algebra: String,
        n: usize,
        /// Rows separated by `;`, entries by `,`, e.g. "0,1;1,0" or "i,0;0,-i".
        #[arg(long)]
        matrix: String,
    },
}

enum Failure {
    Usage(String),
    ChecksFailed,
}

impl From<parahol::Error> for Failure {
    fn from(e: parahol::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn load(name: &str) -> Result<Scenario, Failure> {
    let path = Path::new(name);
    if path.extension().is_some_and(|e| e == "json") || path.is_file() {
        let doc = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{name}: {e}")))?;
        return Ok(scenario_load(&doc)?);
    }
    Ok(catalog_scenario(name)?)
}

fn print_report(r: &Report) {
    println!("{} [{}]", r.scenario, r.suites.join(", "));
    for c in &r.checks {
        let tag = match c.verdict {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Info => "INFO",
            Verdict::Error => "ERR ",
        };
        let args = if c.args.is_empty() { String::new() } else { format!(" {}", c.args.join(" | ")) };
        println!("  {tag} {}/{}{args} = {}", c.suite, c.id, c.observed);
        if matches!(c.verdict, Verdict::Fail | Verdict::Error) {
            println!("       expected {}", c.expected);
            if let Some(w) = &c.witness {
                println!("       witness {w}");
            }
        }
    }
    let s = &r.summary;
    println!("  {} pass, {} fail, {} info, {} error ({:.0} ms)", s.pass, s.fail, s.info, s.error, r.elapsed_ms);
}

fn write_text(path: &Path, text: String) -> Result<(), Failure> {
    std::fs::write(path, text + "\n").map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::List => {
            for name in catalog_names() {
                let s = catalog_scenario(name)?;
                println!("{name:<20} {}", s.doc.description);
            }
            Ok(())
        }
        Command::Describe { name } => {
            let s = load(&name)?;
            println!("{}", s.doc.name);
            println!(
                "kind: {}",
                serde_json::to_value(s.doc.kind).expect("kind serializes").as_str().unwrap_or_default()
            );
            println!("{}", s.doc.description);
            if !s.doc.reference.is_empty() {
                println!("reference: {}", s.doc.reference);
            }
            println!("suites: {}", scenario_suites(&s).join(", "));
            println!("construction:");
            println!("{}", serde_json::to_string_pretty(&s.doc.construction).expect("construction serializes"));
            println!("expected:");
            for e in &s.doc.expected {
                let args = if e.args.is_empty() { String::new() } else { format!(" {}", e.args.join(" | ")) };
                println!("  {}{args} = {}", e.check, e.value);
            }
            Ok(())
        }
        Command::Check { name, suite, seed, degree, json } => {
            let config = RunConfig { degree, seed: seed.unwrap_or(DEFAULT_SEED), ..RunConfig::default() };
            let reports = if name == "all" {
                if suite.is_some() {
                    return Err(Failure::Usage("--suite cannot be combined with `all`".into()));
                }
                run_catalog(&config)?
            } else {
                vec![run_suite(&load(&name)?, suite.as_deref(), &config)?]
            };
            for r in &reports {
                print_report(r);
            }
            if let Some(path) = json {
                let text = match reports.as_slice() {
                    [one] => one.to_json(),
                    many => serde_json::to_string_pretty(many).expect("reports serialize"),
                };
                write_text(&path, text)?;
            }
            if reports.iter().all(|r| r.passed) {
                Ok(())
            } else {
                Err(Failure::ChecksFailed)
            }
        }
        Command::Decompose { algebra, n, matrix } => {
            if algebra != "sl" {
                return Err(Failure::Usage(format!("unsupported algebra {algebra:?}; only `sl` is available")));
            }
            let s = RealifiedSl::new(n)?;
            let p = iwasawa_decompose(&s, &CMatrix::parse(&matrix)?)?;
            println!("k = {}", p.k);
            println!("a = {}", p.a);
            println!("n = {}", p.n);
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::ChecksFailed) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
