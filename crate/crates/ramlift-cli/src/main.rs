//! Command-line surface: graph reports, matching polynomials, lift
//! construction and verification, spectral-radius brackets, (P1)/(P2)
//! checks, and the bundled acceptance corpus.
//!
//! Exit codes: 0 on success, 2 when a computation succeeds but the
//! mathematical verdict is negative, 1 on errors.

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use ramlift::config::Config;
use ramlift::corpus;
use ramlift::graph::{self, OrientedMultigraph};
use ramlift::matching;
use ramlift::ratio;
use ramlift::repgroup;
use ramlift::search::{self, FactorizationChoice, GroupDescriptor, LiftCertificate, Verdict};

#[derive(Parser)]
#[command(name = "ramlift", version, about = "One-sided Ramanujan graph coverings with exact certificates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Enumeration cap for exact averages and searches.
    #[arg(long, global = true, env = "RAMLIFT_CAP")]
    cap: Option<u64>,
    /// Root-bracket tolerance (rational, e.g. "1/1099511627776").
    #[arg(long, global = true, env = "RAMLIFT_TOL")]
    tol: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Structural report: connectivity, bipartiteness, regularity, loops.
    Info(GraphArg),
    /// The d-matching polynomial (closed form, or the covering-average oracle).
    Matching {
        #[command(flatten)]
        graph: GraphArg,
        /// Covering multiplicity d.
        #[arg(long, default_value_t = 1)]
        d: u32,
        /// Average over all d-coverings instead of the closed form.
        #[arg(long)]
        oracle: bool,
    },
    /// Construct and certify a one-sided Ramanujan covering.
    Lift {
        #[command(flatten)]
        graph: GraphArg,
        /// Covering degree (symmetric-group route).
        #[arg(long, conflicts_with = "group")]
        r: Option<usize>,
        /// Group descriptor: cyclic:<m> or gm1d:<m>,<d> (or std:<r>).
        #[arg(long)]
        group: Option<String>,
        /// Use an approximate lazy-walk factorization with this many steps.
        #[arg(long)]
        lazy_steps: Option<usize>,
        /// Also write the certificate JSON to this path.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Bracket for the spectral radius of the universal covering tree.
    Rho(GraphArg),
    /// Check property (P1) or (P2) of a representation.
    Check {
        /// Which property: p1 or p2.
        property: String,
        /// Group descriptor: std:<r>, cyclic:<m>, gm1d:<m>,<d> or perm:<r>.
        #[arg(long)]
        group: String,
    },
    /// Expected characteristic polynomial of the fully uniform state.
    ExpectedCharpoly {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long, conflicts_with = "group")]
        r: Option<usize>,
        #[arg(long)]
        group: Option<String>,
    },
    /// Recompute a certificate's polynomial claims and re-issue the verdict.
    Verify {
        /// Certificate JSON path (or - for stdin).
        certificate: PathBuf,
    },
    /// Run the acceptance matrix over the bundled fixture corpus.
    Corpus {
        /// Run a single criterion, e.g. A1.
        #[arg(long)]
        only: Option<String>,
        /// Load additional graphs from a directory of graph files.
        #[arg(long)]
        dir: Option<PathBuf>,
    },
}

#[derive(Args)]
struct GraphArg {
    /// Graph file: JSON {"n":..,"edges":[[h,t],..]} or flat text (- = stdin).
    graph: PathBuf,
}

fn read_input(path: &PathBuf) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf)?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
    }
}

fn load_graph(arg: &GraphArg) -> Result<OrientedMultigraph> {
    let text = read_input(&arg.graph)?;
    Ok(graph::parse(&text)?)
}

fn build_config(cli: &Cli) -> Result<Config> {
    let mut cfg = Config::from_env();
    if let Some(cap) = cli.cap {
        cfg.enum_cap = cap;
    }
    if let Some(tol) = &cli.tol {
        let t = ratio::parse_rational(tol).map_err(|e| anyhow!("bad --tol: {e}"))?;
        if t <= ratio::rat_int(0) {
            bail!("--tol must be positive");
        }
        cfg.bracket_tol = t;
    }
    Ok(cfg)
}

fn print_json<T: serde::Serialize>(value: &T) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn lift_command(
    cfg: &Config,
    g: &OrientedMultigraph,
    r: Option<usize>,
    group: Option<String>,
    lazy_steps: Option<usize>,
    out: Option<PathBuf>,
) -> Result<ExitCode> {
    let choice = match lazy_steps {
        Some(steps) => FactorizationChoice::LazyWalk { steps },
        None => FactorizationChoice::Exact,
    };
    let cert: LiftCertificate = match (r, group) {
        (Some(r), None) => {
            if g.has_loops() {
                // loopy graphs only through the regular subdivision route
                search::lift_regular_with_loops(g, r, cfg)?
            } else {
                search::find_lift_group(g, GroupDescriptor::StdSr(r), choice, cfg)?
            }
        }
        (None, Some(desc)) => {
            let desc = GroupDescriptor::parse(&desc)?;
            search::find_lift_group(g, desc, choice, cfg)?
        }
        (None, None) => bail!("lift needs --r <r> or --group <descriptor>"),
        (Some(_), Some(_)) => unreachable!("clap conflicts_with"),
    };
    let json = serde_json::to_string_pretty(&cert)?;
    if let Some(path) = out {
        std::fs::write(&path, format!("{json}\n"))
            .with_context(|| format!("cannot write {}", path.display()))?;
    }
    println!("{json}");
    Ok(match cert.verdict {
        Verdict::Fail => ExitCode::from(2),
        _ => ExitCode::SUCCESS,
    })
}

fn check_command(cfg: &Config, property: &str, group: &str) -> Result<ExitCode> {
    let cap = cfg.group_order_cap;
    let rep = if let Some(r) = group.strip_prefix("perm:") {
        repgroup::build_perm(r.trim().parse().context("bad perm degree")?, cap)?
    } else {
        match GroupDescriptor::parse(group)? {
            GroupDescriptor::StdSr(r) => repgroup::build_std(r, cap)?,
            GroupDescriptor::Cyclic(m) => repgroup::build_cyclic(m, cap)?,
            GroupDescriptor::GM1D(m, d) => repgroup::build_g_m1d(m, d, cap)?,
        }
    };
    match property.to_ascii_lowercase().as_str() {
        "p1" => {
            let report = repgroup::check_p1(&rep)?;
            print_json(&report)?;
            Ok(if report.pass { ExitCode::SUCCESS } else { ExitCode::from(2) })
        }
        "p2" => {
            let report = repgroup::check_p2(&rep);
            print_json(&report)?;
            Ok(if report.pass { ExitCode::SUCCESS } else { ExitCode::from(2) })
        }
        other => bail!("unknown property {other:?} (expected p1 or p2)"),
    }
}

fn expected_command(
    cfg: &Config,
    g: &OrientedMultigraph,
    r: Option<usize>,
    group: Option<String>,
) -> Result<ExitCode> {
    let desc = match (r, group) {
        (Some(r), None) => GroupDescriptor::StdSr(r),
        (None, Some(gd)) => GroupDescriptor::parse(&gd)?,
        _ => bail!("expected-charpoly needs --r <r> or --group <descriptor>"),
    };
    let poly = search::uniform_expected_char_poly(g, desc, cfg)?;
    print_json(&poly)?;
    Ok(ExitCode::SUCCESS)
}

fn corpus_command(cfg: &Config, only: Option<String>, dir: Option<PathBuf>) -> Result<ExitCode> {
    if let Some(dir) = &dir {
        let mut entries: Vec<PathBuf> = std::fs::read_dir(dir)
            .with_context(|| format!("cannot read {}", dir.display()))?
            .filter_map(|e| e.ok())
            .map(|e| e.path())
            .filter(|p| p.is_file())
            .collect();
        entries.sort();
        if entries.is_empty() {
            bail!("MissingFixtures: no fixture files in {}", dir.display());
        }
        let mut loaded = 0;
        for path in &entries {
            let text = std::fs::read_to_string(path)?;
            if graph::parse(&text).is_ok() {
                loaded += 1;
            }
        }
        if loaded == 0 {
            bail!("MissingFixtures: no parseable graph files in {}", dir.display());
        }
        eprintln!("loaded {loaded} external fixture graph(s) (informational; the acceptance matrix runs on the bundled corpus)");
    }
    if let Some(id) = &only {
        if !corpus::CRITERIA.contains(&id.as_str()) {
            bail!("unknown criterion {id:?} (expected one of {:?})", corpus::CRITERIA);
        }
    }
    let results = corpus::run_all(only.as_deref(), cfg);
    for r in &results {
        let status = if r.pass { "PASS" } else { "FAIL" };
        eprintln!("{} {} ({} ms): {}", r.id, status, r.millis, r.detail);
    }
    print_json(&results)?;
    Ok(if results.iter().all(|r| r.pass) { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn run(cli: Cli) -> Result<ExitCode> {
    let cfg = build_config(&cli)?;
    match cli.command {
        Command::Info(garg) => {
            let g = load_graph(&garg)?;
            print_json(&graph::classify(&g))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Matching { graph, d, oracle } => {
            let g = load_graph(&graph)?;
            let poly = if oracle {
                matching::d_matching_poly_oracle(&g, d, cfg.enum_cap)?
            } else {
                matching::d_matching_poly(&g, d)?
            };
            print_json(&poly)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Lift { graph, r, group, lazy_steps, out } => {
            let g = load_graph(&graph)?;
            lift_command(&cfg, &g, r, group, lazy_steps, out)
        }
        Command::Rho(garg) => {
            let g = load_graph(&garg)?;
            print_json(&search::rho(&g, &cfg)?)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Check { property, group } => check_command(&cfg, &property, &group),
        Command::ExpectedCharpoly { graph, r, group } => {
            let g = load_graph(&graph)?;
            expected_command(&cfg, &g, r, group)
        }
        Command::Verify { certificate } => {
            let text = read_input(&certificate)?;
            let cert: LiftCertificate =
                serde_json::from_str(&text).context("cannot parse certificate JSON")?;
            let report = search::verify_certificate(&cert, &cfg)?;
            print_json(&report)?;
            if !report.matches {
                return Ok(ExitCode::from(1));
            }
            Ok(match report.recomputed_verdict {
                Verdict::Fail => ExitCode::from(2),
                _ => ExitCode::SUCCESS,
            })
        }
        Command::Corpus { only, dir } => corpus_command(&cfg, only, dir),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}
