use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use theta_core::groups::Sign;
use theta_core::weil::restrict_left;
use theta_verify::context::{odd_o, parse_group};
use theta_verify::report::Report;
use theta_verify::{emit_report, render_text, run_all, Context, Result, RunConfig, SuiteId, VerifyError};

#[derive(Parser)]
#[command(name = "theta-verify", version, about = "Theta correspondences of small finite symplectic and odd orthogonal groups")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct Common {
    /// Field sizes (odd primes); repeat or separate with commas.
    #[arg(long = "q", value_delimiter = ',', default_values_t = [3u32])]
    q: Vec<u32>,
    /// Use ψ(tx) with t the least nonsquare.
    #[arg(long)]
    psi_twist: bool,
    /// Let O(V) act linearly instead of through ω (they differ by sgn^n when q ≡ 3 mod 4).
    #[arg(long)]
    linear_orthogonal: bool,
    /// Cache root (overridden by THETA_CACHE_DIR).
    #[arg(long)]
    cache_dir: Option<PathBuf>,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Character table of a group such as Sp4, O5+ or SO3-, as JSON.
    Table {
        group: String,
        #[command(flatten)]
        common: Common,
    },
    /// Trace of the Weil representation of Sp_2n on each conjugacy class.
    Weil {
        /// A symplectic group such as Sp2.
        group: String,
        #[command(flatten)]
        common: Common,
    },
    /// Multiplicities of ω for a dual pair, e.g. `theta Sp2 O3+`.
    Theta {
        symplectic: String,
        orthogonal: String,
        #[command(flatten)]
        common: Common,
    },
    /// Run verification suites and write the JSON report.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Suites to run (all when absent).
        #[arg(long = "suite", value_delimiter = ',')]
        suites: Vec<String>,
        /// Also write the plain-text report here.
        #[arg(long)]
        text: Option<PathBuf>,
        /// Largest group that may be enumerated.
        #[arg(long)]
        budget: Option<u64>,
        /// Largest group whose character table may be computed.
        #[arg(long)]
        table_budget: Option<u64>,
        /// Highest Witt tower level searched.
        #[arg(long)]
        tower_bound: Option<usize>,
        /// Record wall-clock durations in the report.
        #[arg(long)]
        timings: bool,
    },
    /// Render a JSON report as the plain-text table.
    Report {
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
}

fn config(c: &Common) -> RunConfig {
    RunConfig { qs: c.q.clone(), psi_twist: c.psi_twist, linear_orthogonal: c.linear_orthogonal, cache_dir: c.cache_dir.clone(), ..RunConfig::default() }
}

fn single_q(c: &Common) -> Result<u32> {
    match c.q[..] {
        [q] => Ok(q),
        _ => Err(VerifyError::InvalidConfig("this subcommand takes exactly one --q".into())),
    }
}

fn write_out(c: &Common, body: &str) -> Result<()> {
    match &c.out {
        Some(p) => Ok(fs::write(p, body)?),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn run(cmd: Cmd) -> Result<()> {
    match cmd {
        Cmd::Table { group, common } => {
            let ctx = Context::new(config(&common))?;
            let t = ctx.table(&parse_group(&group, single_q(&common)?)?)?;
            write_out(&common, &(serde_json::to_string_pretty(&t.to_json())? + "\n"))
        }
        Cmd::Weil { group, common } => {
            let q = single_q(&common)?;
            let ctx = Context::new(config(&common))?;
            let g = ctx.group(&parse_group(&group, q)?)?;
            let o1 = ctx.group(&odd_o(0, Sign::Plus, q))?;
            let (v, vp) = (
                g.space().ok_or_else(|| VerifyError::InvalidConfig(format!("{group} is not symplectic")))?,
                o1.space().expect("O1 carries a form"),
            );
            let emb = theta_core::groups::DualPairEmbedding::new(v, vp, g.field())?;
            let tr = restrict_left(&emb, &g, ctx.psi(q))?;
            let mut out = String::new();
            for (k, cl) in g.classes().iter().enumerate() {
                out += &format!("{k}\t{}\t{}\t{}\n", cl.size, cl.order, tr.value(k));
            }
            write_out(&common, &out)
        }
        Cmd::Theta { symplectic, orthogonal, common } => {
            let q = single_q(&common)?;
            let ctx = Context::new(config(&common))?;
            let mm = ctx.decomposition(&parse_group(&symplectic, q)?, &parse_group(&orthogonal, q)?)?;
            write_out(&common, &(serde_json::to_string_pretty(&mm.to_json())? + "\n"))
        }
        Cmd::Verify { common, suites, text, budget, table_budget, tower_bound, timings } => {
            let mut cfg = config(&common);
            if !suites.is_empty() {
                cfg.suites = suites.iter().map(|s| s.parse()).collect::<Result<Vec<SuiteId>>>()?;
            }
            cfg.budget = budget.unwrap_or(cfg.budget);
            cfg.table_budget = table_budget.unwrap_or(cfg.table_budget);
            cfg.tower_bound = tower_bound.unwrap_or(cfg.tower_bound);
            cfg.timings = timings;
            let report = run_all(&cfg)?;
            emit_report(&report, common.out.as_deref(), text.as_deref())?;
            if common.out.is_none() && text.is_none() {
                print!("{}", render_text(&report));
            }
            Ok(())
        }
        Cmd::Report { input, common } => {
            let report: Report = serde_json::from_slice(&fs::read(input)?)?;
            write_out(&common, &render_text(&report))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse().cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("theta-verify: {e}");
            ExitCode::FAILURE
        }
    }
}
