use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use rncreg::campaign::{
    self, status_name, CampaignOptions, GeneratorKind, GeneratorSpec, Plan, TheoremId, TheoremVerdict,
    VerdictStatus, VerifyOptions,
};
use rncreg::{exactlin, io, rnc, scheme, secant, Configuration, Error};

const EXIT_ERROR: u8 = 1;
const EXIT_NOT_APPLICABLE: u8 = 2;
const EXIT_COUNTEREXAMPLE: u8 = 3;

#[derive(Parser)]
#[command(name = "rncreg", version, about = "Regularity, secant and curve invariants of projective point sets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Curves constructed per curve search.
    #[arg(long, global = true, default_value_t = rnc::DEFAULT_RHO_BUDGET)]
    rho_budget: u64,
    /// Prime-field shortcuts in rank computations.
    #[arg(long, global = true, value_enum, default_value_t = Switch::On)]
    modp_prefilter: Switch,
    /// Output format of the file written with --out.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Switch {
    On,
    Off,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Theorem {
    Bound,
    Main1,
    Main2,
    Main3,
    Corollary,
    Section5,
}

impl From<Theorem> for TheoremId {
    fn from(t: Theorem) -> Self {
        match t {
            Theorem::Bound => TheoremId::Bound,
            Theorem::Main1 => TheoremId::Main1,
            Theorem::Main2 => TheoremId::Main2,
            Theorem::Main3 => TheoremId::Main3,
            Theorem::Corollary => TheoremId::Corollary,
            Theorem::Section5 => TheoremId::Section5,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
enum Kind {
    OnRnc,
    RncPlusOutliers,
    LgpRandom,
    ClusteredSubspace,
}

impl From<Kind> for GeneratorKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::OnRnc => GeneratorKind::OnRnc,
            Kind::RncPlusOutliers => GeneratorKind::RncPlusOutliers,
            Kind::LgpRandom => GeneratorKind::LgpRandom,
            Kind::ClusteredSubspace => GeneratorKind::ClusteredSubspace,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Hilbert function, regularity, t and rho of a configuration file.
    Invariants {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Writes a generated configuration.
    Generate {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 0)]
        outliers: usize,
        #[arg(long, requires = "cluster_size")]
        cluster_dim: Option<usize>,
        #[arg(long, requires = "cluster_dim")]
        cluster_size: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Checks one theorem on one configuration file.
    Verify {
        #[arg(long, value_enum)]
        theorem: Theorem,
        #[arg(long = "in")]
        input: PathBuf,
        /// For section5: the last K points are the extra set (default: the
        /// points off the curve through the first n+3 points).
        #[arg(long)]
        outliers: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Runs a plan file of generator entries and theorems.
    Campaign {
        #[arg(long)]
        plan: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Record wall-clock time per verdict (the report is then no longer
        /// reproducible byte for byte).
        #[arg(long)]
        timings: bool,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_ERROR) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    exactlin::set_modp_prefilter(cli.common.modp_prefilter == Switch::On);
    let common = &cli.common;
    if common.format == Format::Csv && !matches!(cli.command, Command::Campaign { .. }) {
        bail!("csv output is only available for campaign reports");
    }
    match cli.command {
        Command::Invariants { input, out } => invariants(&input, out.as_deref(), common),
        Command::Generate {
            kind,
            n,
            d,
            outliers,
            cluster_dim,
            cluster_size,
            seed,
            out,
        } => {
            let mut spec = GeneratorSpec::new(kind.into(), n, d, seed).with_outliers(outliers);
            if let (Some(dim), Some(size)) = (cluster_dim, cluster_size) {
                spec = spec.with_cluster(dim, size);
            }
            let g = campaign::generate(&spec)?;
            write(&out, &io::configuration_to_json(&g))?;
            println!("wrote {} points in P^{} to {}", g.degree(), g.ambient_dim(), out.display());
            Ok(0)
        }
        Command::Verify {
            theorem,
            input,
            outliers,
            out,
        } => {
            let g = read_configuration(&input)?;
            let opts = VerifyOptions {
                rho_budget: common.rho_budget,
                extra_points: outliers,
                ..VerifyOptions::default()
            };
            let v = campaign::verify(theorem.into(), &g, &opts);
            print_verdict(&v);
            if let Some(path) = out {
                write(&path, &serde_json::to_string_pretty(&v)?)?;
            }
            Ok(match v.status {
                VerdictStatus::Counterexample => EXIT_COUNTEREXAMPLE,
                VerdictStatus::NotApplicable => EXIT_NOT_APPLICABLE,
                VerdictStatus::Passed | VerdictStatus::Inconclusive => 0,
            })
        }
        Command::Campaign {
            plan,
            seed,
            out,
            timings,
        } => {
            let text = fs::read_to_string(&plan).with_context(|| format!("reading {}", plan.display()))?;
            let plan = Plan::from_json(&text)?;
            let opts = CampaignOptions {
                seed,
                verify: VerifyOptions {
                    rho_budget: common.rho_budget,
                    record_timings: timings,
                    ..VerifyOptions::default()
                },
            };
            let report = campaign::run_campaign(&plan, &opts)?;
            println!("plan {} seed {}: {} instance(s)", report.plan_hash, report.seed, report.instances.len());
            println!(
                "{:<10} {:>9} {:>10} {:>7} {:>14} {:>12} {:>14}",
                "theorem", "instances", "applicable", "passed", "not_applicable", "inconclusive", "counterexample"
            );
            for (t, row) in &report.summary {
                println!(
                    "{:<10} {:>9} {:>10} {:>7} {:>14} {:>12} {:>14}",
                    t.name(),
                    row.instances,
                    row.applicable,
                    row.passed,
                    row.not_applicable,
                    row.inconclusive,
                    row.counterexample
                );
            }
            if let Some(path) = out {
                let body = match common.format {
                    Format::Json => report.to_json(),
                    Format::Csv => report.to_csv(),
                };
                write(&path, &body)?;
            }
            if let Some(c) = &report.counterexample {
                println!("counterexample to {} at instance {}", c.theorem.name(), c.instance);
                println!("{}", serde_json::to_string_pretty(&c.configuration)?);
                return Ok(EXIT_COUNTEREXAMPLE);
            }
            Ok(0)
        }
    }
}

fn read_configuration(path: &Path) -> Result<Configuration> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    io::configuration_from_json(&text).with_context(|| format!("parsing {}", path.display()))
}

fn write(path: &Path, body: &str) -> Result<()> {
    fs::write(path, body).with_context(|| format!("writing {}", path.display()))
}

fn invariants(input: &Path, out: Option<&Path>, common: &Common) -> Result<u8> {
    let g = read_configuration(input)?;
    let (n, d) = (g.ambient_dim(), g.degree());
    let span = g.span_dim();
    let profile = scheme::profile(&g);
    let lgp = secant::is_lgp(&g);
    let secant = match secant::t_invariant(&g) {
        Ok(s) => Some(s),
        Err(Error::Degenerate(_)) => None,
        Err(e) => return Err(e.into()),
    };
    let rho = if d < n + 3 {
        json!({"status": "undefined", "reason": format!("fewer than {} points", n + 3)})
    } else {
        match rnc::rho(&g, common.rho_budget) {
            Ok(r) => json!({
                "status": "ok",
                "value": r.rho,
                "incidence": r.incidence,
                "curve": io::curve_to_value(&r.curve),
                "curves_examined": r.curves_examined,
            }),
            Err(e @ Error::BudgetExceeded { .. }) => json!({"status": "budget_exceeded", "reason": e.to_string()}),
            Err(e) => json!({"status": "undefined", "reason": e.to_string()}),
        }
    };
    let report = json!({
        "d": d,
        "n": n,
        "span_dim": span,
        "is_lgp": lgp,
        "t": secant.as_ref().map(|s| s.t),
        "t_witness": secant.as_ref().and_then(|s| s.witness.clone()),
        "reg": profile.reg,
        "hilbert": profile.values,
        "h1": profile.h1,
        "rho": rho,
    });
    println!("{d} points in P^{n}, span dimension {}", opt(span));
    println!("linearly general position: {lgp}");
    println!("t = {}", opt(secant.as_ref().map(|s| s.t)));
    println!("reg = {}", profile.reg);
    println!("hilbert function: {:?}", profile.values);
    println!("h1: {:?}", profile.h1);
    match rho["status"].as_str() {
        Some("ok") => println!("rho = {}", rho["value"]),
        _ => println!("rho: {}", rho["reason"].as_str().unwrap_or("undefined")),
    }
    if let Some(path) = out {
        write(path, &serde_json::to_string_pretty(&report)?)?;
    }
    Ok(0)
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(|| "-".into(), |x| x.to_string())
}

fn print_verdict(v: &TheoremVerdict) {
    println!("{}: {}", v.theorem.name(), status_name(v.status));
    for h in &v.hypotheses {
        println!("  hypothesis {} [{}] {}", h.name, if h.satisfied { "yes" } else { "no" }, h.detail);
    }
    for c in &v.conclusions {
        println!("  conclusion {} [{}] {}", c.name, if c.holds { "ok" } else { "FAIL" }, c.witness);
    }
    if let Some(note) = &v.note {
        println!("  note: {note}");
    }
}
