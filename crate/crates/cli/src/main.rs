mod dot;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use finepoints_core::axioms::{
    check_f1_affine, check_f2, check_f3, check_f4star, check_f5, check_f6, check_local_coverage,
    check_product_analog, run_suite, AxiomReport, Battery, CharacterizationReport, SuiteOptions,
    Verdict,
};
use finepoints_core::defs::Definitions;
use finepoints_core::rational_points::{
    affine_topology, chart_topology, RationalPoints, SearchLimits, TopRing,
};
use finepoints_core::Error;

use report::{render, scheme_point_entry, topology_entry, PointEntry, TopologyEntry};

#[derive(Parser)]
#[command(
    name = "finepoints",
    version,
    about = "Rational points of schemes over finite topological rings"
)]
struct Cli {
    /// Extra definitions (JSON), merged over the built-in document.
    #[arg(long, global = true)]
    defs: Option<PathBuf>,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for sampled partitions of unity in `suite`.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Cap on candidates visited by one hom-set search.
    #[arg(long, global = true, default_value_t = SearchLimits::default().max_candidates)]
    max_candidates: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    Points,
    Topology,
    AffineTopology,
}

#[derive(Subcommand)]
enum Command {
    /// Points of a scheme over a topological ring, optionally with a topology.
    Compute {
        target: Target,
        scheme: String,
        ring: String,
    },
    /// Run one axiom check. Axioms: F1 PROBE RING, F2 RING, F3 PROBE RING,
    /// F4* PROBE RING, local-coverage|F5|F6 SCHEME RING,
    /// product-analog SCHEME RING1,RING2,...
    Check {
        axiom: String,
        #[arg(num_args = 1..=2, required = true)]
        args: Vec<String>,
    },
    /// Run every characterization over a named corpus.
    Suite { name: String },
    /// Specialization preorder of the chart topology as Graphviz DOT.
    ExportDot { scheme: String, ring: String },
    /// Load and resolve the definitions, then list them.
    Validate,
}

/// A finished command: output text and exit code.
struct Outcome {
    text: String,
    code: u8,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, code: 0 }
    }
}

#[derive(Serialize)]
struct ComputeBody {
    target: &'static str,
    scheme: String,
    ring: String,
    count: usize,
    points: Vec<PointEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    topology: Option<TopologyEntry>,
}

#[derive(Serialize)]
struct SuiteBody<'a> {
    suite: &'a str,
    seed: u64,
    all_agree: bool,
    characterizations: &'a [CharacterizationReport],
    axiom_reports: &'a [AxiomReport],
    observations: &'a [AxiomReport],
}

#[derive(Serialize)]
struct ValidateBody {
    rings: Vec<String>,
    topologies: Vec<String>,
    schemes: Vec<String>,
    suites: Vec<String>,
}

fn load(cli: &Cli) -> Result<Definitions, Error> {
    match &cli.defs {
        None => Ok(Definitions::builtin()),
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Definition(format!("cannot read {}: {e}", path.display())))?;
            Definitions::builtin_with(&text)
        }
    }
}

fn compute(
    defs: &Definitions,
    target: Target,
    scheme: &str,
    ring: &str,
    limits: SearchLimits,
) -> Result<Outcome, Error> {
    let r = defs.topology(ring)?;
    let (x, covering) = defs.scheme(scheme, r)?;
    let (name, points, topology) = match target {
        Target::Points => {
            let pts = RationalPoints::new(&x, r.ring(), r.structure(), limits)?;
            let entries: Vec<PointEntry> = pts
                .points()
                .iter()
                .map(|p| scheme_point_entry(pts.label(p), p, r.ring()))
                .collect();
            ("points", entries, None)
        }
        Target::Topology => {
            let space = chart_topology(&x, covering.as_ref(), r, limits)?;
            let entries = space
                .points
                .iter()
                .zip(&space.labels)
                .map(|(p, l)| scheme_point_entry(l.clone(), p, r.ring()))
                .collect();
            (
                "topology",
                entries,
                Some(topology_entry(&space.labels, &space.topology)),
            )
        }
        Target::AffineTopology => {
            if x.charts().len() != 1 {
                return Err(Error::Definition(format!(
                    "`{scheme}` has {} charts; affine-topology needs exactly one",
                    x.charts().len()
                )));
            }
            let space = affine_topology(&x.charts()[0], r, limits)?;
            let entries = space
                .labels
                .iter()
                .map(|l| PointEntry {
                    label: l.clone(),
                    components: Vec::new(),
                })
                .collect();
            (
                "affine-topology",
                entries,
                Some(topology_entry(&space.labels, &space.topology)),
            )
        }
    };
    let body = ComputeBody {
        target: name,
        scheme: scheme.into(),
        ring: ring.into(),
        count: points.len(),
        points,
        topology,
    };
    Ok(Outcome::ok(render("compute", body)))
}

fn expect_args<'a>(
    axiom: &str,
    args: &'a [String],
    n: usize,
    usage: &str,
) -> Result<&'a [String], Error> {
    if args.len() != n {
        return Err(Error::Definition(format!("check {axiom} expects {usage}")));
    }
    Ok(args)
}

fn unknown_probe(axiom: &str, name: &str, known: Vec<&str>) -> Error {
    Error::Definition(format!(
        "no {axiom} probe `{name}`; known probes: {}",
        known.join(", ")
    ))
}

fn check(
    defs: &Definitions,
    axiom: &str,
    args: &[String],
    limits: SearchLimits,
) -> Result<Outcome, Error> {
    let report = match axiom.to_ascii_lowercase().as_str() {
        "f2" => {
            let a = expect_args(axiom, args, 1, "RING")?;
            check_f2(defs.topology(&a[0])?, limits)?
        }
        "f1" => {
            let a = expect_args(axiom, args, 2, "PROBE RING")?;
            let r = defs.topology(&a[1])?;
            let battery = Battery::standard(r.base())?;
            let p = battery
                .f1
                .iter()
                .find(|p| p.name == a[0])
                .ok_or_else(|| unknown_probe("F1", &a[0], battery.f1.iter().map(|p| p.name.as_str()).collect()))?;
            check_f1_affine(&p.c, &p.a, &p.b, &p.f, &p.g, r, &p.name, limits)?
        }
        "f3" => {
            let a = expect_args(axiom, args, 2, "PROBE RING")?;
            let r = defs.topology(&a[1])?;
            let battery = Battery::standard(r.base())?;
            let p = battery
                .f3
                .iter()
                .find(|p| p.name == a[0])
                .ok_or_else(|| unknown_probe("F3", &a[0], battery.f3.iter().map(|p| p.name.as_str()).collect()))?;
            check_f3(&p.ambient, &p.extra, r, &p.name, limits)?
        }
        "f4*" | "f4star" => {
            let a = expect_args(axiom, args, 2, "PROBE RING")?;
            let r = defs.topology(&a[1])?;
            let battery = Battery::standard(r.base())?;
            let p = battery.f4star.iter().find(|p| p.name == a[0]).ok_or_else(|| {
                unknown_probe("F4*", &a[0], battery.f4star.iter().map(|p| p.name.as_str()).collect())
            })?;
            check_f4star(&p.ambient, &p.h, r, &p.name, limits)?
        }
        kind @ ("local-coverage" | "f5" | "f6") => {
            let a = expect_args(axiom, args, 2, "SCHEME RING")?;
            let r = defs.topology(&a[1])?;
            let (x, covering) = defs.scheme(&a[0], r)?;
            let run = match kind {
                "f5" => check_f5,
                "f6" => check_f6,
                _ => check_local_coverage,
            };
            run(&x, covering.as_ref(), r, &a[0], limits)?
        }
        "product-analog" => {
            let a = expect_args(axiom, args, 2, "SCHEME RING1,RING2,...")?;
            let factors = a[1]
                .split(',')
                .map(|n| defs.topology(n.trim()).cloned())
                .collect::<Result<Vec<_>, _>>()?;
            let product = TopRing::product(&factors)?;
            let (x, _) = defs.scheme(&a[0], &product)?;
            check_product_analog(&x, &factors, &a[0], limits)?
        }
        _ => {
            return Err(Error::Definition(format!(
                "unknown axiom `{axiom}`; expected F1, F2, F3, F4*, F5, F6, local-coverage or product-analog"
            )))
        }
    };
    let code = match report.verdict {
        Verdict::Pass => 0,
        Verdict::Fail => 1,
        Verdict::Skip => 2,
    };
    Ok(Outcome {
        text: render("check", &report),
        code,
    })
}

fn suite(
    defs: &Definitions,
    name: &str,
    seed: u64,
    limits: SearchLimits,
) -> Result<Outcome, Error> {
    let corpus = defs.suite(name)?;
    let opts = SuiteOptions {
        seed,
        limits,
        ..SuiteOptions::default()
    };
    let report = run_suite(&corpus, opts)?;
    let all_agree = report.all_agree();
    let body = SuiteBody {
        suite: name,
        seed,
        all_agree,
        characterizations: &report.characterizations,
        axiom_reports: &report.axiom_reports,
        observations: &report.observations,
    };
    Ok(Outcome {
        text: render("suite", body),
        code: if all_agree { 0 } else { 1 },
    })
}

fn export_dot(
    defs: &Definitions,
    scheme: &str,
    ring: &str,
    limits: SearchLimits,
) -> Result<Outcome, Error> {
    let r = defs.topology(ring)?;
    let (x, covering) = defs.scheme(scheme, r)?;
    let space = chart_topology(&x, covering.as_ref(), r, limits)?;
    Ok(Outcome::ok(dot::specialization_dot(
        &format!("{scheme} over {ring}"),
        &space.labels,
        &space.topology,
    )))
}

fn validate(defs: &Definitions) -> Outcome {
    let doc = defs.document();
    let body = ValidateBody {
        rings: doc.rings.keys().cloned().collect(),
        topologies: doc.topologies.keys().cloned().collect(),
        schemes: doc.schemes.keys().cloned().collect(),
        suites: doc.suites.keys().cloned().collect(),
    };
    Outcome::ok(render("validate", body))
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    let defs = load(cli)?;
    let limits = SearchLimits {
        max_candidates: cli.max_candidates,
    };
    match &cli.command {
        Command::Compute {
            target,
            scheme,
            ring,
        } => compute(&defs, *target, scheme, ring, limits),
        Command::Check { axiom, args } => check(&defs, axiom, args, limits),
        Command::Suite { name } => suite(&defs, name, cli.seed, limits),
        Command::ExportDot { scheme, ring } => export_dot(&defs, scheme, ring, limits),
        Command::Validate => Ok(validate(&defs)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &outcome.text),
        None => {
            use std::io::Write;
            std::io::stdout().write_all(outcome.text.as_bytes())
        }
    };
    if let Err(e) = written {
        eprintln!("error: cannot write report: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(outcome.code)
}
