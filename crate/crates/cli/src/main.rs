use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use excedance::algebra::cfrac::{named_spec, CFSpec, NAMED_SPECS};
use excedance::algebra::{gamma_expand, MPoly};
use excedance::bijections::Bijection;
use excedance::harness::{parse_sizes, registry, table, verify, Status, TableFormat, VerifyConfig};
use excedance::{Permutation, StatExpr};

#[derive(Parser)]
#[command(name = "excedance", version, about = "Exhaustive checks of Eulerian and Narayana identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run registered identity checks.
    Verify {
        /// Comma-separated case ids; all cases when omitted.
        #[arg(long, value_delimiter = ',')]
        ids: Vec<String>,
        /// Largest size to check, replacing each case's default.
        #[arg(long)]
        max_n: Option<usize>,
        /// Write the JSON report here.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Record wall time per case (makes the report nondeterministic).
        #[arg(long)]
        timings: bool,
        /// List the registered cases and exit.
        #[arg(long)]
        list: bool,
    },
    /// Print the joint distribution of statistics over a class.
    Table {
        /// S, D, B or S(τ) such as S(231).
        #[arg(long)]
        class: String,
        /// Comma-separated statistic expressions, e.g. des,inv-exc.
        #[arg(long, value_delimiter = ',', required = true)]
        stats: Vec<String>,
        /// A size K or a range A..B.
        #[arg(long)]
        n: String,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Apply a bijection or history encoder to a permutation.
    Map {
        #[arg(long)]
        bijection: String,
        /// One-line notation, e.g. "4 1 2 7 9 6 5 8 3" or 412796583.
        #[arg(long)]
        input: String,
    },
    /// Expand a named continued fraction.
    Cf {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        spec: String,
        #[arg(long)]
        order: usize,
    },
    /// Expand a polynomial in the basis t^k (1+t)^(m-2k).
    Gamma {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value = "t")]
        var: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    #[value(name = "J", alias = "j")]
    J,
    #[value(name = "S", alias = "s")]
    S,
}

fn run_verify(ids: Vec<String>, max_n: Option<usize>, json: Option<PathBuf>, timings: bool) -> Result<bool> {
    let report = verify(&VerifyConfig { ids, max_n, timings })?;
    for c in &report.cases {
        let tag = match c.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        };
        let n = c.n.map(|n| format!(" n<={n}")).unwrap_or_default();
        let ms = c.runtime_ms.map(|ms| format!(" {ms}ms")).unwrap_or_default();
        println!("{tag} {}{n}{ms}", c.id);
        if let Some(w) = &c.witness {
            println!("     {w}");
        }
    }
    println!(
        "{} passed, {} failed, {} skipped",
        report.count(Status::Pass),
        report.count(Status::Fail),
        report.count(Status::Skipped)
    );
    if let Some(path) = json {
        std::fs::write(&path, report.to_json() + "\n").with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(report.passed)
}

fn run_cf(kind: Kind, spec: &str, order: usize) -> Result<()> {
    let cf = named_spec(spec).with_context(|| format!("known fractions: {}", NAMED_SPECS.join(", ")))?;
    let actual = match cf {
        CFSpec::J { .. } => Kind::J,
        CFSpec::S { .. } => Kind::S,
    };
    if actual != kind {
        bail!("`{spec}` is not a{} fraction", if kind == Kind::J { " J" } else { "n S" });
    }
    for (k, c) in cf.expand(order).coeffs().iter().enumerate() {
        println!("z^{k}: {c}");
    }
    Ok(())
}

fn run() -> Result<bool> {
    match Cli::parse().command {
        Command::Verify { list: true, .. } => {
            for c in registry() {
                println!("{}\t{}", c.id, c.description);
            }
        }
        Command::Verify { ids, max_n, json, timings, .. } => return run_verify(ids, max_n, json, timings),
        Command::Table { class, stats, n, format } => {
            let stats = stats.iter().map(|s| s.parse::<StatExpr>()).collect::<Result<Vec<_>, _>>()?;
            let format = match format {
                Format::Csv => TableFormat::Csv,
                Format::Json => TableFormat::Json,
            };
            print!("{}", table(&class, &stats, parse_sizes(&n)?, format)?);
        }
        Command::Map { bijection, input } => {
            let b: Bijection = bijection.parse()?;
            let sigma: Permutation = input.parse()?;
            println!("{}", b.apply(&sigma)?);
        }
        Command::Cf { kind, spec, order } => run_cf(kind, &spec, order)?,
        Command::Gamma { poly, m, var } => {
            let p: MPoly = poly.parse()?;
            let g = gamma_expand(&p, &var, m)?;
            let parts: Vec<String> = g.iter().map(|c| c.to_string()).collect();
            println!("{}", parts.join(" "));
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
