//! `coxsplit`: ends, walls, crossings and l2-Betti bounds for Coxeter groups,
//! reported as one JSON document per run.
//!
//! Exit status is 0 on success, 1 when an analysis hit a vertex or closure
//! budget, and 2 for bad input (unreadable or malformed files, bad indices).

use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use coxsplit::bounds::{self, TriangleParams};
use coxsplit::checker::{self, AnalysisParams};
use coxsplit::ends::{self, default_schedule};
use coxsplit::walls;
use coxsplit::{
    parse_system_with_default, CoxeterGroup, Label, MembershipOracle, Word, DEFAULT_CLOSURE_BUDGET,
    DEFAULT_VERTEX_BUDGET,
};
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "coxsplit", version, about = "Relative ends, walls and splitting hypotheses for Coxeter groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    global: Global,
}

#[derive(Args)]
struct Global {
    /// Radii, comma separated. For ends: `r` (meaning r:2r) or `r:R`. For profile: plain radii.
    #[arg(long, global = true, value_delimiter = ',')]
    radii: Option<Vec<String>>,

    /// Cap on ball vertices.
    #[arg(long, global = true)]
    vertex_budget: Option<usize>,

    /// Cap on braid-closure size per element.
    #[arg(long, global = true, default_value_t = DEFAULT_CLOSURE_BUDGET)]
    closure_budget: usize,

    /// Label for pairs the input file leaves unspecified (`m` or `inf`); replaces the file's default.
    #[arg(long, global = true)]
    default_label: Option<Label>,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct Input {
    /// Coxeter system in `.cox` format.
    #[arg(long = "in", value_name = "FILE")]
    path: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Ends of the Cayley graph.
    Ends {
        #[command(flatten)]
        input: Input,
    },
    /// Relative ends e(W, C(s_i)).
    RelEnds {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        centralizer: usize,
        /// Use the index-2 subgroup of C(s_i) that keeps each side of the wall.
        #[arg(long)]
        halfspace: bool,
    },
    /// Wall certificate for s_i.
    WallCert {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        gen: usize,
        #[arg(long)]
        radius: usize,
    },
    /// Four-corner test of A(s_i) against its translates in B_R.
    Crossings {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        gen: usize,
        #[arg(long)]
        radius: usize,
        /// Test only this translate.
        #[arg(long)]
        g: Option<String>,
    },
    /// l2-Betti lower bound of a file, or the family report for W_n.
    BettiBound {
        #[arg(long = "in", value_name = "FILE", conflicts_with = "family")]
        path: Option<PathBuf>,
        /// `n=8 p=2 q=3 r=7`
        #[arg(long, num_args = 4, value_name = "KEY=VALUE")]
        family: Option<Vec<String>>,
    },
    /// Evaluate the splitting hypotheses for the wall of s_i.
    CheckSplitting {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        gen: usize,
        #[arg(long)]
        wall_radius: Option<usize>,
        #[arg(long)]
        crossing_radius: Option<usize>,
        #[arg(long, value_delimiter = ',')]
        profile_radii: Option<Vec<usize>>,
        #[arg(long)]
        sample_length: Option<usize>,
        #[arg(long)]
        sample_cap: Option<usize>,
    },
    /// Counts of C(s_i) ∩ g C(s_i) g^-1 in growing balls.
    Profile {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        centralizer: usize,
        /// Word such as `1,2,3` or `s1 s2 s3`.
        #[arg(long)]
        g: String,
    },
    /// Run the built-in example suite.
    PaperExamples,
}

enum Failure {
    Input(String),
    Resource(String),
}

impl From<coxsplit::Error> for Failure {
    fn from(e: coxsplit::Error) -> Self {
        if e.is_resource_limit() {
            Failure::Resource(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

#[derive(Default)]
struct Outcome {
    input: Value,
    parameters: Value,
    results: Value,
    warnings: Vec<String>,
    errors: Vec<String>,
    resource_failure: bool,
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn generator(group: &CoxeterGroup, one_based: usize) -> Result<usize, Failure> {
    if one_based == 0 || one_based > group.rank() {
        return Err(Failure::Input(format!(
            "generator {one_based} outside 1..={}",
            group.rank()
        )));
    }
    Ok(one_based - 1)
}

fn load(path: &PathBuf, global: &Global, out: &mut Outcome) -> Result<CoxeterGroup, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let sys = parse_system_with_default(&text, global.default_label)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    out.input = json!({
        "path": path.display().to_string(),
        "rank": sys.rank(),
        "system": sys.render(),
    });
    Ok(CoxeterGroup::with_closure_budget(sys, global.closure_budget))
}

fn ends_schedule(radii: &Option<Vec<String>>) -> Result<Vec<(usize, usize)>, Failure> {
    let Some(radii) = radii else {
        return Ok(default_schedule());
    };
    let bad = |t: &str| Failure::Input(format!("bad schedule entry {t:?}"));
    radii
        .iter()
        .map(|t| {
            let t = t.trim();
            match t.split_once(':') {
                Some((r, big)) => Ok((r.parse().map_err(|_| bad(t))?, big.parse().map_err(|_| bad(t))?)),
                None => {
                    let r: usize = t.parse().map_err(|_| bad(t))?;
                    Ok((r, 2 * r))
                }
            }
        })
        .collect()
}

fn plain_radii(radii: &Option<Vec<String>>, default: &[usize]) -> Result<Vec<usize>, Failure> {
    let Some(radii) = radii else {
        return Ok(default.to_vec());
    };
    radii
        .iter()
        .map(|t| t.trim().parse().map_err(|_| Failure::Input(format!("bad radius {t:?}"))))
        .collect()
}

fn family_args(args: &[String]) -> Result<(usize, TriangleParams), Failure> {
    let mut vals = [None; 4];
    for arg in args {
        let (key, value) = arg
            .split_once('=')
            .ok_or_else(|| Failure::Input(format!("expected KEY=VALUE, got {arg:?}")))?;
        let slot = match key {
            "n" => 0,
            "p" => 1,
            "q" => 2,
            "r" => 3,
            _ => return Err(Failure::Input(format!("unknown family key {key:?}"))),
        };
        let v: u32 = value
            .parse()
            .map_err(|_| Failure::Input(format!("bad value for {key}: {value:?}")))?;
        vals[slot] = Some(v);
    }
    let [Some(n), Some(p), Some(q), Some(r)] = vals else {
        return Err(Failure::Input("--family needs n, p, q and r".into()));
    };
    Ok((n as usize, TriangleParams::new(p, q, r)?))
}

fn run(cli: &Cli, out: &mut Outcome) -> Result<(), Failure> {
    let global = &cli.global;
    let budget = global.vertex_budget.unwrap_or(DEFAULT_VERTEX_BUDGET);
    if budget == 0 || global.closure_budget == 0 {
        return Err(Failure::Input("budgets must be positive".into()));
    }
    match &cli.command {
        Command::Ends { input } => {
            let group = load(&input.path, global, out)?;
            let schedule = ends_schedule(&global.radii)?;
            out.parameters = json!({ "schedule": schedule, "vertex_budget": budget });
            let est = ends::estimate_ends(&group, &schedule, budget)?;
            out.warnings.extend(est.warnings.iter().cloned());
            out.results = to_value(&est);
        }
        Command::RelEnds { input, centralizer, halfspace } => {
            let group = load(&input.path, global, out)?;
            let i = generator(&group, *centralizer)?;
            let schedule = ends_schedule(&global.radii)?;
            let oracle = if *halfspace {
                MembershipOracle::halfspace_stabilizer(&group, i)?
            } else {
                MembershipOracle::centralizer(&group, i)?
            };
            out.parameters = json!({
                "schedule": schedule,
                "vertex_budget": budget,
                "subgroup": oracle.descriptor(),
            });
            let est = ends::estimate_relative_ends(&group, &oracle, &schedule, budget)?;
            out.warnings.extend(est.warnings.iter().cloned());
            out.results = to_value(&est);
        }
        Command::WallCert { input, gen, radius } => {
            let group = load(&input.path, global, out)?;
            let i = generator(&group, *gen)?;
            out.parameters = json!({ "generator": gen, "radius": radius, "vertex_budget": budget });
            let cert = walls::wall_certificate(&group, i, *radius, budget)?;
            out.results = to_value(&cert);
            out.results["passes"] = json!(cert.passes());
        }
        Command::Crossings { input, gen, radius, g } => {
            let group = load(&input.path, global, out)?;
            let i = generator(&group, *gen)?;
            out.parameters = json!({ "generator": gen, "radius": radius, "vertex_budget": budget, "g": g });
            let report = match g {
                None => walls::crossing_obstruction(&group, i, *radius, budget)?,
                Some(text) => {
                    let g = group.reduce_word(&Word::parse(group.system(), text)?)?;
                    let ball = coxsplit::Ball::build(&group, *radius, budget)?;
                    walls::crossing_for_translates(&group, i, &ball, &[g])?
                }
            };
            out.results = to_value(&report);
            out.results["crossing_count"] = json!(report.crossing_count());
        }
        Command::BettiBound { path, family } => match (path, family) {
            (_, Some(args)) => {
                let (n, t) = family_args(args)?;
                out.parameters = json!({ "family": { "n": n, "p": t.p, "q": t.q, "r": t.r } });
                out.results = to_value(&bounds::splitting_report(n, t)?);
            }
            (Some(path), None) => {
                let group = load(path, global, out)?;
                let sys = group.system();
                let lower_bound = bounds::coxeter_betti_lower_bound(sys);
                let family = match bounds::detect_family(sys) {
                    Some((n, t)) if t.is_hyperbolic() => Some(bounds::splitting_report(n, t)?),
                    _ => None,
                };
                out.results = json!({
                    "lower_bound": to_value(&lower_bound),
                    "positive": lower_bound.is_positive(),
                    "caveat": bounds::LOWER_BOUND_CAVEAT,
                    "family": to_value(&family),
                });
            }
            (None, None) => return Err(Failure::Input("betti-bound needs --in or --family".into())),
        },
        Command::CheckSplitting {
            input,
            gen,
            wall_radius,
            crossing_radius,
            profile_radii,
            sample_length,
            sample_cap,
        } => {
            let group = load(&input.path, global, out)?;
            let i = generator(&group, *gen)?;
            let d = AnalysisParams::default();
            let params = AnalysisParams {
                schedule: match global.radii {
                    Some(_) => ends_schedule(&global.radii)?,
                    None => d.schedule,
                },
                wall_radius: wall_radius.unwrap_or(d.wall_radius),
                crossing_radius: crossing_radius.unwrap_or(d.crossing_radius),
                profile_radii: profile_radii.clone().unwrap_or(d.profile_radii),
                sample_length: sample_length.unwrap_or(d.sample_length),
                sample_cap: sample_cap.unwrap_or(d.sample_cap),
                vertex_budget: global.vertex_budget.unwrap_or(d.vertex_budget),
            };
            out.parameters = to_value(&params);
            let report = checker::analyze_reflection(&group, i, &params)?;
            out.warnings.extend(report.warnings.iter().cloned());
            if !report.failures.is_empty() {
                out.errors.extend(report.failures.iter().cloned());
                out.resource_failure = true;
            }
            out.results = to_value(&report);
        }
        Command::Profile { input, centralizer, g } => {
            let group = load(&input.path, global, out)?;
            let i = generator(&group, *centralizer)?;
            let radii = plain_radii(&global.radii, &AnalysisParams::default().profile_radii)?;
            out.parameters = json!({ "centralizer": centralizer, "g": g, "radii": radii, "vertex_budget": budget });
            let x = group.reduce_word(&Word::parse(group.system(), g)?)?;
            let oracle = MembershipOracle::centralizer(&group, i)?;
            let profile = checker::conjugate_intersection_profile(&group, &oracle, &x, &radii, budget)?;
            out.results = to_value(&profile);
        }
        Command::PaperExamples => {
            let report = checker::verify_paper_examples();
            for item in report.items.iter().filter(|i| !i.passed) {
                out.warnings.push(format!(
                    "check {} (criterion {}) failed: expected {}, observed {}",
                    item.id, item.criterion, item.expected, item.observed
                ));
            }
            out.results = to_value(&report);
        }
    }
    Ok(())
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Ends { .. } => "ends",
        Command::RelEnds { .. } => "rel-ends",
        Command::WallCert { .. } => "wall-cert",
        Command::Crossings { .. } => "crossings",
        Command::BettiBound { .. } => "betti-bound",
        Command::CheckSplitting { .. } => "check-splitting",
        Command::Profile { .. } => "profile",
        Command::PaperExamples => "paper-examples",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = Outcome::default();
    let code = match run(&cli, &mut out) {
        Ok(()) if out.resource_failure => 1,
        Ok(()) => 0,
        Err(Failure::Resource(msg)) => {
            out.errors.push(msg);
            1
        }
        Err(Failure::Input(msg)) => {
            out.errors.push(msg);
            2
        }
    };
    // serde_json maps are ordered, so the document is byte-stable.
    let report = json!({
        "command": command_name(&cli.command),
        "input": out.input,
        "parameters": out.parameters,
        "results": out.results,
        "warnings": out.warnings,
        "errors": out.errors,
        "version": env!("CARGO_PKG_VERSION"),
    });
    let mut text = serde_json::to_string_pretty(&report).expect("reports serialize");
    text.push('\n');
    let written = match &cli.global.out {
        Some(path) => fs::write(path, &text).map_err(|e| format!("{}: {e}", path.display())),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        eprintln!("coxsplit: cannot write report: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}
