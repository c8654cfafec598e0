mod pipeline;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use chroma_core::boundary::{self, CycleBoundary};
use chroma_core::catalog::{self, Catalog, Mode};
use chroma_core::colorer::Lemma;
use chroma_core::format::GraphFile;
use chroma_core::nullstellensatz::{graph_polynomial, monomial_coefficient};
use chroma_core::{discharge, Error};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use report::{RunReport, Verdict};

const DEFAULT_SEED: u64 = 1;

#[derive(Parser)]
#[command(name = "chroma", version, about = "Checks the computations behind 6-choosability of squares of subcubic planar graphs without 4- to 8-cycles")]
struct Cli {
    /// Worker threads for enumeration and sampling (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Load the configuration catalog from a JSON file instead of the built-in one.
    #[arg(long, global = true)]
    catalog: Option<PathBuf>,
    /// Seed for every sampling step.
    #[arg(long, global = true, env = "CHROMA_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Sample,
    Nullstellensatz,
}

#[derive(Subcommand)]
enum Command {
    /// Exhaustively check a list-coloring lemma: p4, j1, j2-1 or j2-2.
    VerifyLemma { name: String },
    /// Coefficient of a target monomial in a graph polynomial.
    Coefficient {
        /// Catalog configuration whose colorability graph is used.
        config: Option<String>,
        /// Graph file to use instead of a configuration.
        #[arg(long, conflicts_with = "config")]
        graph: Option<PathBuf>,
        /// Exponents, comma separated.
        #[arg(long, value_delimiter = ',')]
        target: Option<Vec<u32>>,
    },
    /// Enumerate extremal cycle boundaries of length 9 or 10 and match them to the catalog.
    Classify { d: usize },
    /// Compare derived residual profiles with the drawn list sizes.
    Residuals,
    /// Check that a catalog configuration is reducible.
    Reducible {
        name: String,
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        #[arg(long, default_value_t = catalog::DEFAULT_SAMPLES)]
        samples: usize,
    },
    /// Discharging audit of an embedded graph: `discharge [audit] FILE`.
    Discharge {
        #[arg(num_args = 1..=2, required = true)]
        args: Vec<String>,
    },
    /// Run every stage and report an aggregate verdict.
    CheckAll,
    #[command(subcommand)]
    Catalog(CatalogCommand),
    #[command(subcommand)]
    Boundary(BoundaryCommand),
}

#[derive(Subcommand)]
enum CatalogCommand {
    /// Names, families and list-size profiles.
    List,
    /// One entry with its graph in graph-file format.
    Dump { name: String },
    /// The whole catalog as JSON, loadable with --catalog.
    Export,
}

#[derive(Subcommand)]
enum BoundaryCommand {
    /// All boundary words of length d up to rotation and reflection.
    Enumerate {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        t: Option<usize>,
        /// Keep words containing a T pattern.
        #[arg(long)]
        no_t_filter: bool,
    },
    /// Segments, census and catalog matches of one word.
    Describe { word: String },
}

struct Outcome {
    verdict: Verdict,
    details: Value,
    seed: Option<u64>,
}

impl Outcome {
    fn new(ok: bool, details: Value) -> Self {
        Outcome { verdict: Verdict::from_bool(ok), details, seed: None }
    }
}

fn load_catalog(path: Option<&PathBuf>) -> chroma_core::Result<Catalog> {
    match path {
        Some(p) => Catalog::from_json(&std::fs::read_to_string(p)?),
        None => Ok(Catalog::builtin()),
    }
}

fn read_graph(path: &PathBuf) -> chroma_core::Result<GraphFile> {
    GraphFile::parse(&std::fs::read_to_string(path)?)
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::VerifyLemma { .. } => "verify-lemma",
        Command::Coefficient { .. } => "coefficient",
        Command::Classify { .. } => "classify",
        Command::Residuals => "residuals",
        Command::Reducible { .. } => "reducible",
        Command::Discharge { .. } => "discharge",
        Command::CheckAll => "check-all",
        Command::Catalog(_) => "catalog",
        Command::Boundary(_) => "boundary",
    }
}

fn inputs(cli: &Cli) -> Value {
    let mut v = match &cli.command {
        Command::VerifyLemma { name } => json!({ "name": name }),
        Command::Coefficient { config, graph, target } => {
            json!({ "config": config, "graph": graph, "target": target })
        }
        Command::Classify { d } => json!({ "d": d }),
        Command::Residuals | Command::CheckAll => json!({}),
        Command::Reducible { name, mode, samples } => json!({
            "name": name,
            "mode": mode.map(|m| m.to_possible_value().unwrap().get_name().to_string()),
            "samples": samples,
        }),
        Command::Discharge { args } => json!({ "args": args }),
        Command::Catalog(CatalogCommand::List) => json!({ "action": "list" }),
        Command::Catalog(CatalogCommand::Dump { name }) => json!({ "action": "dump", "name": name }),
        Command::Catalog(CatalogCommand::Export) => json!({ "action": "export" }),
        Command::Boundary(BoundaryCommand::Enumerate { d, t, no_t_filter }) => {
            json!({ "action": "enumerate", "d": d, "t": t, "t_filter": !no_t_filter })
        }
        Command::Boundary(BoundaryCommand::Describe { word }) => json!({ "action": "describe", "word": word }),
    };
    if let Some(p) = &cli.catalog {
        v["catalog"] = json!(p);
    }
    v
}

fn verify_lemma(name: &str) -> chroma_core::Result<Outcome> {
    let lemma = Lemma::parse(name)
        .ok_or_else(|| Error::Mode(format!("unknown lemma {name:?}; expected p4, j1, j2-1 or j2-2")))?;
    eprintln!("verifying {}", lemma.name());
    let r = lemma.verify()?;
    Ok(Outcome::new(r.passed(), r.to_json()))
}

fn coefficient(
    catalog: &Catalog,
    config: Option<&str>,
    graph: Option<&PathBuf>,
    target: Option<&Vec<u32>>,
) -> chroma_core::Result<Outcome> {
    let (name, g, target, expected) = match (config, graph) {
        (Some(name), _) => {
            let c = catalog.get(name)?;
            let target = match (target, &c.target_monomial) {
                (Some(t), _) => t.clone(),
                (None, Some(t)) => t.clone(),
                (None, None) => {
                    return Err(Error::Mode(format!(
                        "{} has no target monomial; pass --target to compute one anyway",
                        c.name
                    )))
                }
            };
            let expected = if c.target_monomial.as_ref() == Some(&target) { c.expected_coefficient } else { None };
            (Some(c.name.clone()), c.colorability_graph(), target, expected)
        }
        (None, Some(path)) => {
            let target = target.ok_or_else(|| Error::Mode("--graph needs --target".into()))?;
            (None, read_graph(path)?.graph, target.clone(), None)
        }
        (None, None) => return Err(Error::Mode("give a configuration name or --graph".into())),
    };
    let r = monomial_coefficient(&graph_polynomial(&g), &target)?;
    let ok = expected.is_none_or(|e| r.coefficient == e.into());
    let mut details = r.to_json();
    details["configuration"] = json!(name);
    details["target"] = json!(target);
    details["expected"] = json!(expected);
    Ok(Outcome::new(ok, details))
}

fn classify(catalog: &Catalog, d: usize) -> chroma_core::Result<Outcome> {
    eprintln!("enumerating boundaries of length {d}");
    let c = boundary::classify(d, catalog)?;
    Ok(Outcome::new(c.passed(), c.to_json(catalog)))
}

fn reducible(catalog: &Catalog, name: &str, mode: Option<ModeArg>, samples: usize, seed: u64) -> chroma_core::Result<Outcome> {
    let c = catalog.get(name)?;
    let mode = match mode {
        None => match catalog::default_mode(c, seed) {
            Mode::Sample { seed, .. } => Mode::Sample { n: samples, seed },
            m => m,
        },
        Some(ModeArg::Exhaustive) => Mode::Exhaustive,
        Some(ModeArg::Sample) => Mode::Sample { n: samples, seed },
        Some(ModeArg::Nullstellensatz) => Mode::Nullstellensatz,
    };
    eprintln!("checking {} in {} mode", c.name, mode.name());
    let r = catalog::verify_reducible(c, mode)?;
    let mut out = Outcome::new(r.passed(), r.to_json());
    if let Mode::Sample { seed, .. } = mode {
        out.seed = Some(seed);
    }
    Ok(out)
}

fn discharge(args: &[String]) -> chroma_core::Result<Outcome> {
    let path = match args {
        [file] => file,
        [action, file] if action == "audit" => file,
        _ => return Err(Error::Mode(format!("expected `discharge [audit] FILE`, got {args:?}"))),
    };
    let pg = read_graph(&PathBuf::from(path))?.into_plane()?;
    let audit = discharge::audit(&pg)?;
    let mut details = audit.to_json();
    details["bookkeeping"] = discharge::bookkeeping(&pg)?.to_json();
    Ok(Outcome::new(audit.passed(), details))
}

fn check_all(catalog: &Catalog, seed: u64) -> chroma_core::Result<Outcome> {
    let stages = pipeline::check_all(catalog, seed)?;
    let verdict = stages.iter().fold(Verdict::Pass, |v, s| v.and(s.verdict));
    let details = json!({ "stages": stages.iter().map(pipeline::Stage::to_json).collect::<Vec<_>>() });
    Ok(Outcome { verdict, details, seed: Some(seed) })
}

fn catalog_command(catalog: &Catalog, cmd: &CatalogCommand) -> chroma_core::Result<Outcome> {
    Ok(match cmd {
        CatalogCommand::List => {
            let rows: Vec<Value> = catalog
                .configurations
                .iter()
                .map(|c| {
                    json!({
                        "name": c.name,
                        "family": c.family,
                        "recolored": c.recolored_labels(),
                        "profile": c.profile,
                        "spine": c.spine_word(),
                        "target_monomial": c.target_monomial,
                    })
                })
                .collect();
            Outcome::new(true, json!(rows))
        }
        CatalogCommand::Dump { name } => {
            let c = catalog.get(name)?;
            let file = GraphFile { graph: c.graph.clone(), rotation: None };
            Outcome::new(
                true,
                json!({
                    "record": c.to_record(),
                    "labels": c.labels,
                    "graph_file": file.render(),
                    "augmented_graph_file": GraphFile { graph: c.augment(), rotation: None }.render(),
                }),
            )
        }
        CatalogCommand::Export => Outcome::new(true, serde_json::to_value(catalog.records())?),
    })
}

fn boundary_command(catalog: &Catalog, cmd: &BoundaryCommand) -> chroma_core::Result<Outcome> {
    Ok(match cmd {
        BoundaryCommand::Enumerate { d, t, no_t_filter } => {
            if !(3..=12).contains(d) {
                return Err(Error::InvalidBoundary(format!("enumeration supports 3 <= d <= 12, got {d}")));
            }
            let patterns: Vec<String> = if *no_t_filter {
                Vec::new()
            } else {
                boundary::t_patterns(catalog).into_iter().map(|(_, p)| p).collect()
            };
            let words = boundary::enumerate(*d, *t, &patterns);
            let rows: Vec<Value> = words.iter().map(|b| boundary::describe(b, catalog)).collect();
            Outcome::new(true, json!({ "classes": rows.len(), "boundaries": rows }))
        }
        BoundaryCommand::Describe { word } => {
            let b = CycleBoundary::parse(word)?;
            let census = boundary::case_identities(&b);
            let mut details = boundary::describe(&b, catalog);
            details["within_bound"] = json!(boundary::check_bound(b.d(), b.t()));
            Outcome::new(census.is_ok(), details)
        }
    })
}

fn dispatch(cli: &Cli) -> chroma_core::Result<Outcome> {
    let catalog = load_catalog(cli.catalog.as_ref())?;
    match &cli.command {
        Command::VerifyLemma { name } => verify_lemma(name),
        Command::Coefficient { config, graph, target } => {
            coefficient(&catalog, config.as_deref(), graph.as_ref(), target.as_ref())
        }
        Command::Classify { d } => classify(&catalog, *d),
        Command::Residuals => {
            let audit = catalog::check_figure_profiles(&catalog);
            Ok(Outcome::new(audit.passed(), audit.to_json()))
        }
        Command::Reducible { name, mode, samples } => reducible(&catalog, name, *mode, *samples, cli.seed),
        Command::Discharge { args } => discharge(args),
        Command::CheckAll => {
            eprintln!("seed {}", cli.seed);
            check_all(&catalog, cli.seed)
        }
        Command::Catalog(cmd) => catalog_command(&catalog, cmd),
        Command::Boundary(cmd) => boundary_command(&catalog, cmd),
    }
}

fn run(cli: &Cli) -> RunReport {
    let started = Instant::now();
    let mut report = RunReport::new(command_name(&cli.command), inputs(cli), started);
    match dispatch(cli) {
        Ok(out) => {
            report.verdict = out.verdict;
            report.details = out.details;
            report.seed = out.seed;
        }
        Err(e) => {
            report.verdict = Verdict::Error;
            report.details = json!({ "error": e.to_string() });
        }
    }
    report
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match cli.jobs {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| run(&cli)),
            Err(e) => {
                eprintln!("cannot start {n} worker threads: {e}");
                return ExitCode::from(2);
            }
        },
        None => run(&cli),
    };
    let out = if matches!(&cli.command, Command::Catalog(CatalogCommand::Export)) && report.verdict == Verdict::Pass {
        report.details.clone()
    } else {
        report.to_json()
    };
    let _ = writeln!(std::io::stdout(), "{}", serde_json::to_string_pretty(&out).unwrap());
    if report.verdict != Verdict::Pass {
        eprintln!("{}", report.verdict.as_str());
    }
    ExitCode::from(report.verdict.exit_code())
}
