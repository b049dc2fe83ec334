//! `steinerlab`: generate, combine, inspect and verify augmented directed complexes.
//!
//! Exit codes: 0 pass, 1 verified failure, 2 usage or I/O error.

use std::io::{Read, Write};
use std::path::Path;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use steinerlab::io::{emit_complex, named_shape, parse_complex};
use steinerlab::ops::duality::{dual, Duality};
use steinerlab::ops::join::{antijoin, join};
use steinerlab::ops::suspension::{antisuspension, suspension};
use steinerlab::ops::tensor::gray_tensor;
use steinerlab::retraction::{
    section_ell, section_q_cube, section_xi, theta_retract_into_oriental, zeta_theta_pair, RetractionPair,
};
use steinerlab::shapes::{theta, wedge, DiskSide, ThetaSpec};
use steinerlab::steiner::{atom_table, loop_analysis};
use steinerlab::suite::{render, run_criterion, run_suite, SuiteConfig};
use steinerlab::{
    boundary_decomposition_check, fixtures, is_steiner, top_cell_decomposition_check, validate_complex, AdcError,
    BasedComplex, CheckReport, Family, GeneratorName,
};

#[derive(Parser)]
#[command(name = "steinerlab", version, about = "Exact-integer augmented directed complexes")]
struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit a library shape.
    Gen {
        #[command(subcommand)]
        shape: Shape,
        #[arg(long, global = true)]
        out: Option<String>,
    },
    /// Apply an operation to one or two complexes (files, `-`, or references like `cube:2`).
    Op {
        op: OpKind,
        inputs: Vec<String>,
        #[arg(long)]
        out: Option<String>,
    },
    /// Graded counts, top degree and validation summary.
    Info { file: String },
    /// Atom tables of every generator, or of one.
    Atoms {
        file: String,
        #[arg(long = "gen")]
        generator: Option<String>,
    },
    /// Run a named check.
    Check {
        #[command(subcommand)]
        which: CheckKind,
    },
    /// Build and verify a retraction pair.
    VerifyRetract {
        #[command(subcommand)]
        which: RetractKind,
    },
    /// The full verification battery.
    Suite {
        /// Use the full acceptance bounds instead of the defaults.
        #[arg(long)]
        acceptance: bool,
        /// Print wall time per criterion.
        #[arg(long)]
        timings: bool,
        #[arg(long, default_value_t = 2024)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum Shape {
    Disk { n: usize },
    BoundaryDisk { n: usize },
    Cube { n: usize },
    Oriental { n: usize },
    Antioriental { n: usize },
    Theta(ThetaArgs),
    /// Identify vertex `va` of `a` with vertex `vb` of `b`.
    Wedge { a: String, va: String, b: String, vb: String },
    /// Complexes that fail a structural check.
    Fixture { which: FixtureKind },
}

#[derive(clap::Args)]
struct ThetaArgs {
    /// Disk dimensions, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    dims: Vec<usize>,
    /// Glue dimensions, comma separated.
    #[arg(long, value_delimiter = ',')]
    glue: Vec<usize>,
    /// Per gluing, two letters from `s`/`t` (default `ts`: target to source).
    #[arg(long, value_delimiter = ',')]
    sides: Vec<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FixtureKind {
    Loop,
    DSquared,
    Augmentation,
    NonUnital,
}

#[derive(Clone, Copy, ValueEnum)]
enum OpKind {
    Tensor,
    Join,
    Antijoin,
    Susp,
    Antisusp,
    Op,
    Co,
    Coop,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Cube,
    Oriental,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::Cube => Family::Cube,
            FamilyArg::Oriental => Family::Oriental,
        }
    }
}

#[derive(Subcommand)]
enum CheckKind {
    Steiner { file: String },
    BoundaryDecomp { family: FamilyArg, n: usize },
    TopCell { family: FamilyArg, n: usize },
    /// Duality and swap identities.
    Identities,
}

#[derive(Subcommand)]
enum RetractKind {
    Xi { n: usize },
    QCube { n: usize },
    Ell { n: usize },
    Zeta { n: usize, m: usize },
    Theta(ThetaArgs),
}

enum Failure {
    Usage(String),
    Verified(String),
}

impl From<AdcError> for Failure {
    fn from(e: AdcError) -> Failure {
        match e {
            AdcError::Validation(r) => Failure::Verified(format!("VALIDATION_ERROR\n{r}")),
            other => Failure::Usage(format!("{}: {other}", other.code())),
        }
    }
}

type Outcome = Result<bool, Failure>;

fn read_input(arg: &str) -> Result<Arc<BasedComplex>, Failure> {
    if arg == "-" {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text).map_err(|e| Failure::Usage(format!("stdin: {e}")))?;
        return Ok(parse_complex(&text)?);
    }
    if Path::new(arg).exists() {
        let text = std::fs::read_to_string(arg).map_err(|e| Failure::Usage(format!("{arg}: {e}")))?;
        return Ok(parse_complex(&text)?);
    }
    Ok(named_shape(&arg.replace(':', " "))?)
}

fn write_output(out: Option<&str>, text: &str) -> Result<(), Failure> {
    match out {
        None | Some("-") => {
            std::io::stdout().write_all(text.as_bytes()).map_err(|e| Failure::Usage(format!("stdout: {e}")))
        }
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::Usage(format!("{path}: {e}"))),
    }
}

fn print_report(json: bool, label: &str, report: &CheckReport) -> Outcome {
    if json {
        println!("{}", serde_json::to_string_pretty(&json!({ "check": label, "report": report })).expect("json"));
    } else {
        println!("{label}\n{report}");
    }
    Ok(report.passed)
}

fn theta_spec(args: &ThetaArgs) -> Result<ThetaSpec, Failure> {
    let mut spec = ThetaSpec::pasting(args.dims.clone(), args.glue.clone());
    if !args.sides.is_empty() {
        let side = |c: char| match c {
            's' => Ok(DiskSide::Source),
            't' => Ok(DiskSide::Target),
            _ => Err(Failure::Usage(format!("side letters are s or t, got {c:?}"))),
        };
        spec.sides = args
            .sides
            .iter()
            .map(|s| {
                let c: Vec<char> = s.chars().collect();
                match c.as_slice() {
                    [a, b] => Ok((side(*a)?, side(*b)?)),
                    _ => Err(Failure::Usage(format!("sides are two letters, got {s:?}"))),
                }
            })
            .collect::<Result<_, _>>()?;
    }
    spec.validate()?;
    Ok(spec)
}

fn generate(shape: &Shape) -> Result<Arc<BasedComplex>, Failure> {
    use steinerlab::shapes as s;
    Ok(match shape {
        Shape::Disk { n } => s::disk(*n)?,
        Shape::BoundaryDisk { n } => s::boundary_disk(*n)?,
        Shape::Cube { n } => s::cube(*n)?,
        Shape::Oriental { n } => s::oriental(*n)?,
        Shape::Antioriental { n } => s::antioriental(*n)?,
        Shape::Theta(args) => theta(&theta_spec(args)?)?,
        Shape::Wedge { a, va, b, vb } => {
            let (ca, cb) = (read_input(a)?, read_input(b)?);
            wedge(&ca, &GeneratorName::parse(va)?, &cb, &GeneratorName::parse(vb)?)?
        }
        Shape::Fixture { which } => Arc::new(match which {
            FixtureKind::Loop => fixtures::loop_fixture(),
            FixtureKind::DSquared => fixtures::d_squared_fixture(),
            FixtureKind::Augmentation => fixtures::augmentation_fixture(),
            FixtureKind::NonUnital => fixtures::non_unital_fixture(),
        }),
    })
}

fn operate(op: OpKind, inputs: &[String]) -> Result<Arc<BasedComplex>, Failure> {
    let binary = matches!(op, OpKind::Tensor | OpKind::Join | OpKind::Antijoin);
    let want = if binary { 2 } else { 1 };
    if inputs.len() != want {
        return Err(Failure::Usage(format!("this operation takes {want} input(s), got {}", inputs.len())));
    }
    let a = read_input(&inputs[0])?;
    Ok(match op {
        OpKind::Tensor => gray_tensor(&a, &*read_input(&inputs[1])?)?,
        OpKind::Join => join(&a, &*read_input(&inputs[1])?)?,
        OpKind::Antijoin => antijoin(&a, &*read_input(&inputs[1])?)?,
        OpKind::Susp => suspension(&a)?,
        OpKind::Antisusp => antisuspension(&a)?,
        OpKind::Op => dual(&a, Duality::Op),
        OpKind::Co => dual(&a, Duality::Co),
        OpKind::Coop => dual(&a, Duality::Coop),
    })
}

fn info(json: bool, file: &str) -> Outcome {
    let c = read_input(file)?;
    let report = is_steiner(&c);
    let counts = c.graded_counts();
    if json {
        let v = json!({ "counts": counts, "top_degree": c.top_degree(), "generators": c.total_generators(), "report": report });
        println!("{}", serde_json::to_string_pretty(&v).expect("json"));
    } else {
        let listed: Vec<String> = counts.iter().map(|(q, k)| format!("{q}:{k}")).collect();
        println!("counts {{{}}}", listed.join(","));
        match c.top_degree() {
            Some(t) => println!("top degree {t}"),
            None => println!("top degree none"),
        }
        println!("{report}");
    }
    Ok(report.passed)
}

fn atoms(json: bool, file: &str, generator: Option<&str>) -> Outcome {
    let c = read_input(file)?;
    let names: Vec<GeneratorName> = match generator {
        Some(g) => vec![GeneratorName::parse(g)?],
        None => c.iter().map(|(_, _, n)| n.clone()).collect(),
    };
    let mut tables = Vec::new();
    for n in &names {
        let t = atom_table(&c, n)?;
        let levels: Vec<_> = (0..=t.dim())
            .rev()
            .map(|k| json!({ "level": k, "minus": c.format_chain(t.minus(k)), "plus": c.format_chain(t.plus(k)) }))
            .collect();
        if json {
            tables.push(json!({ "generator": n.to_string(), "levels": levels }));
        } else {
            println!("<{n}>\n{t}\n");
        }
    }
    if json {
        println!("{}", serde_json::to_string_pretty(&tables).expect("json"));
    }
    Ok(true)
}

fn check(json: bool, which: &CheckKind) -> Outcome {
    match which {
        CheckKind::Steiner { file } => {
            let c = read_input(file)?;
            let report = is_steiner(&c);
            let passed = print_report(json, "steiner", &report)?;
            if !json {
                if let Some(cycle) = loop_analysis(&c).format_cycle() {
                    println!("cycle: {cycle}");
                }
            }
            Ok(passed)
        }
        CheckKind::BoundaryDecomp { family, n } => {
            print_report(json, "boundary-decomp", &boundary_decomposition_check((*family).into(), *n)?)
        }
        CheckKind::TopCell { family, n } => {
            print_report(json, "top-cell", &top_cell_decomposition_check((*family).into(), *n)?)
        }
        CheckKind::Identities => print_report(json, "identities", &run_criterion(4, &SuiteConfig::default()).report),
    }
}

fn verify_retract(json: bool, which: &RetractKind) -> Outcome {
    let (label, pair, extra): (String, RetractionPair, Option<CheckReport>) = match which {
        RetractKind::Xi { n } => (format!("xi {n}"), section_xi(*n)?, None),
        RetractKind::QCube { n } => (format!("q-cube {n}"), section_q_cube(*n)?, None),
        RetractKind::Ell { n } => (format!("ell {n}"), section_ell(*n)?, None),
        RetractKind::Zeta { n, m } => (format!("zeta {n} {m}"), zeta_theta_pair(*n, *m)?, None),
        RetractKind::Theta(args) => {
            let t = theta_retract_into_oriental(&theta_spec(args)?)?;
            (format!("theta into oriental {}", t.simplex_dim), t.pair.clone(), Some(t.model_iso.verify()?))
        }
    };
    let mut report = pair.verify()?;
    if let Some(e) = extra {
        report.merge("model", e);
    }
    print_report(json, &label, &report)
}

fn suite(json: bool, acceptance: bool, timings: bool, seed: u64) -> Outcome {
    let base = if acceptance { SuiteConfig::acceptance() } else { SuiteConfig::default() };
    let config = SuiteConfig { seed, ..base };
    let outcomes = run_suite(&config);
    if json {
        let v = json!({ "config": config, "criteria": outcomes });
        println!("{}", serde_json::to_string_pretty(&v).expect("json"));
    } else {
        print!("{}", render(&outcomes, timings));
    }
    Ok(outcomes.iter().all(|o| o.passed()))
}

fn dispatch(cli: &Cli) -> Outcome {
    let json = cli.json;
    match &cli.command {
        Command::Gen { shape, out } => {
            let c = generate(shape)?;
            write_output(out.as_deref(), &emit_complex(&c))?;
            Ok(validate_complex(&c).passed)
        }
        Command::Op { op, inputs, out } => {
            let c = operate(*op, inputs)?;
            write_output(out.as_deref(), &emit_complex(&c))?;
            Ok(true)
        }
        Command::Info { file } => info(json, file),
        Command::Atoms { file, generator } => atoms(json, file, generator.as_deref()),
        Command::Check { which } => check(json, which),
        Command::VerifyRetract { which } => verify_retract(json, which),
        Command::Suite { acceptance, timings, seed } => suite(json, *acceptance, *timings, *seed),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Verified(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
