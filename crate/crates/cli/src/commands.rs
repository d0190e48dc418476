//! Verb dispatch. Every verb reads one JSON document (or only flags), writes
//! one JSON value, and maps its verdict to the exit status.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use ultrauniform_core::oracle::{theorem_sweep, EnumerationSpec, StructureKind, TheoremId, DEFAULT_SEED};
use ultrauniform_core::{
    instances, metrize, CoverBasis, DiagonalBasis, PseudometricSystem,
};

use crate::error::CliError;
use crate::json::{
    CoverBasisJson, DiagonalBasisJson, Document, PseudometricJson, PseudometricSystemJson,
    SweepReportJson, ValidationReportJson,
};

/// Environment variable that replaces the default sweep seed.
pub const SEED_ENV: &str = "ULTRAUNIFORM_SEED";

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "ultrauniform", version, about = "Finite non-Archimedean uniform structures")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Io {
    /// Input file, `-` for standard input, or inline JSON.
    #[arg(long = "in", value_name = "PATH|-|JSON", default_value = "-")]
    input: String,

    /// Write the result here instead of standard output.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Target {
    Cover,
    Diagonal,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the axioms of a diagonal basis, cover basis or topology.
    Validate(Io),
    /// Convert between diagonal and cover bases.
    Convert {
        #[command(flatten)]
        io: Io,
        #[arg(long, value_enum)]
        to: Target,
    },
    /// Decide whether a basis or pseudo-metric is non-Archimedean.
    CheckNa(Io),
    /// Single ultrametric from a list of equivalence relations or a chain.
    Metrize(Io),
    /// Ultrametric system inducing a non-Archimedean basis.
    PmSystem(Io),
    /// T_A, zero-dimensionality and uniformizability of a topology.
    TopoCheck(Io),
    /// Basis of the uniformity from continuous binary maps, if it fits.
    Uniformize(Io),
    /// Diagonal/cover round trip of a basis.
    Roundtrip(Io),
    /// Check an equivalence theorem over enumerated structures.
    Sweep(SweepArgs),
    /// Generate arithmetic instances.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
}

#[derive(Debug, Args)]
struct SweepArgs {
    /// One of T2.4, T3.2, T4.1, R2.1-roundtrip.
    theorem: String,

    #[arg(long)]
    n: usize,

    /// Structure kind; defaults to the natural kind for the theorem.
    #[arg(long)]
    kind: Option<String>,

    /// Seed for sampled kinds; overrides ULTRAUNIFORM_SEED.
    #[arg(long)]
    seed: Option<u64>,

    /// Sample count for sampled kinds, or a cap on exhaustive ones.
    #[arg(long)]
    trials: Option<usize>,

    /// Largest generator count for equivalence bases.
    #[arg(long, default_value_t = 3)]
    max_generators: usize,

    /// Report 0 milliseconds so output is byte-identical across runs.
    #[arg(long)]
    no_timing: bool,

    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum GenKind {
    /// p-adic distance on {0, ..., size-1}.
    Padic {
        #[arg(long)]
        p: u64,
        #[arg(long, alias = "n")]
        size: usize,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Congruences modulo powers of an ideal of Z/m.
    IdealChain {
        #[arg(long)]
        modulus: usize,
        #[arg(long)]
        ideal: u64,
        #[arg(long)]
        depth: u32,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
}

/// Streams and environment for one invocation.
pub struct Context<'a> {
    pub stdin: &'a mut dyn Read,
    pub stdout: &'a mut dyn Write,
    pub stderr: &'a mut dyn Write,
    /// Value of `ULTRAUNIFORM_SEED`, if set.
    pub env_seed: Option<String>,
}

struct Output {
    value: Value,
    code: i32,
}

impl Output {
    fn verdict<T: Serialize>(value: &T, ok: bool) -> Self {
        Output {
            value: serde_json::to_value(value).expect("plain data serializes"),
            code: if ok { EXIT_OK } else { EXIT_FALSE },
        }
    }

    fn ok<T: Serialize>(value: &T) -> Self {
        Output::verdict(value, true)
    }
}

/// Runs one invocation with the process streams and environment.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdin = std::io::stdin();
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let mut ctx = Context {
        stdin: &mut stdin.lock(),
        stdout: &mut stdout.lock(),
        stderr: &mut stderr.lock(),
        env_seed: std::env::var(SEED_ENV).ok(),
    };
    run_with(args, &mut ctx)
}

/// Runs one invocation; returns the exit status.
pub fn run_with<I, T>(args: I, ctx: &mut Context<'_>) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(ctx.stdout, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(ctx.stderr, "{text}");
                    EXIT_INPUT
                }
            };
        }
    };
    let out_path = match &cli.command {
        Command::Validate(io)
        | Command::Convert { io, .. }
        | Command::CheckNa(io)
        | Command::Metrize(io)
        | Command::PmSystem(io)
        | Command::TopoCheck(io)
        | Command::Uniformize(io)
        | Command::Roundtrip(io) => io.out.clone(),
        Command::Sweep(args) => args.out.clone(),
        Command::Gen { kind: GenKind::Padic { out, .. } }
        | Command::Gen { kind: GenKind::IdealChain { out, .. } } => out.clone(),
    };
    match dispatch(cli.command, ctx) {
        Ok(output) => match emit(&output.value, out_path.as_ref(), ctx) {
            Ok(()) => output.code,
            Err(e) => fail(&e, ctx),
        },
        Err(e) => fail(&e, ctx),
    }
}

fn fail(e: &CliError, ctx: &mut Context<'_>) -> i32 {
    if let CliError::Precondition { report, .. } = e {
        let value = serde_json::to_value(ValidationReportJson::from(report)).expect("plain data");
        let _ = writeln!(ctx.stdout, "{value}");
    }
    let _ = writeln!(ctx.stderr, "error: {e}");
    EXIT_INPUT
}

fn emit(value: &Value, out: Option<&PathBuf>, ctx: &mut Context<'_>) -> Result<(), CliError> {
    let text = format!("{value}\n");
    match out {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        }),
        None => ctx
            .stdout
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Io {
                path: "stdout".into(),
                source,
            }),
    }
}

fn read_input(io: &Io, ctx: &mut Context<'_>) -> Result<Document, CliError> {
    let trimmed = io.input.trim_start();
    let text = if io.input == "-" {
        let mut text = String::new();
        ctx.stdin
            .read_to_string(&mut text)
            .map_err(|source| CliError::Io {
                path: "stdin".into(),
                source,
            })?;
        text
    } else if trimmed.starts_with('{') || trimmed.starts_with('[') {
        io.input.clone()
    } else {
        std::fs::read_to_string(&io.input).map_err(|source| CliError::Io {
            path: io.input.clone(),
            source,
        })?
    };
    Document::from_json(&text)
}

fn unsupported(verb: &str, doc: &Document, expected: &str) -> CliError {
    CliError::Usage(format!("{verb} reads {expected}; got a {}", doc.kind()))
}

fn valid_diagonal(b: DiagonalBasis) -> Result<DiagonalBasis, CliError> {
    let report = b.validate();
    if report.is_valid() {
        Ok(b)
    } else {
        Err(CliError::Precondition {
            what: "diagonal basis",
            report,
        })
    }
}

fn valid_cover(cb: CoverBasis) -> Result<CoverBasis, CliError> {
    let report = cb.validate();
    if report.is_valid() {
        Ok(cb)
    } else {
        Err(CliError::Precondition {
            what: "cover basis",
            report,
        })
    }
}

fn dispatch(command: Command, ctx: &mut Context<'_>) -> Result<Output, CliError> {
    match command {
        Command::Validate(io) => validate(read_input(&io, ctx)?),
        Command::Convert { io, to } => convert(read_input(&io, ctx)?, to),
        Command::CheckNa(io) => check_na(read_input(&io, ctx)?),
        Command::Metrize(io) => metrize_doc(read_input(&io, ctx)?),
        Command::PmSystem(io) => pm_system(read_input(&io, ctx)?),
        Command::TopoCheck(io) => topo_check(read_input(&io, ctx)?),
        Command::Uniformize(io) => uniformize(read_input(&io, ctx)?),
        Command::Roundtrip(io) => roundtrip(read_input(&io, ctx)?),
        Command::Sweep(args) => sweep(args, ctx.env_seed.as_deref()),
        Command::Gen { kind } => generate(kind),
    }
}

fn validate(doc: Document) -> Result<Output, CliError> {
    let report = match &doc {
        Document::Diagonal(b) => b.validate(),
        Document::Cover(cb) => cb.validate(),
        Document::Topology(t) => t.validate(),
        _ => return Err(unsupported("validate", &doc, "a diagonal basis, cover basis or topology")),
    };
    Ok(Output::verdict(&ValidationReportJson::from(&report), report.is_valid()))
}

fn convert(doc: Document, to: Target) -> Result<Output, CliError> {
    let diagonal = match doc {
        Document::Cover(cb) => {
            let cb = valid_cover(cb)?;
            return match to {
                Target::Cover => Ok(Output::ok(&CoverBasisJson::from(&cb))),
                Target::Diagonal => Ok(Output::ok(&DiagonalBasisJson::from(&cb.diagonal_basis()?))),
            };
        }
        Document::Diagonal(b) => b,
        Document::Metric(d) => PseudometricSystem::single(d).basis(),
        Document::System(s) => s.basis(),
        Document::Partition(p) => DiagonalBasis::single(p.to_relation()),
        other => {
            return Err(unsupported(
                "convert",
                &other,
                "a diagonal basis, cover basis, partition or pseudo-metric",
            ))
        }
    };
    let b = valid_diagonal(diagonal)?;
    Ok(match to {
        Target::Diagonal => Output::ok(&DiagonalBasisJson::from(&b)),
        Target::Cover => Output::ok(&CoverBasisJson::from(&b.cover_basis()?)),
    })
}

fn check_na(doc: Document) -> Result<Output, CliError> {
    let (na, witness) = match doc {
        Document::Diagonal(b) => match valid_diagonal(b)?.non_archimedean_witness()? {
            Some(w) => (true, json!(DiagonalBasisJson::from(&w))),
            None => (false, Value::Null),
        },
        Document::Cover(cb) => match valid_cover(cb)?.partition_witness()? {
            Some(w) => (true, json!(CoverBasisJson::from(&w))),
            None => (false, Value::Null),
        },
        Document::Metric(d) => match d.strong_triangle_violation() {
            None => (true, Value::Null),
            Some([x, y, z]) => (false, json!({ "x": x, "y": y, "z": z })),
        },
        Document::System(s) => {
            let found = s
                .metrics()
                .iter()
                .enumerate()
                .find_map(|(i, d)| d.strong_triangle_violation().map(|t| (i, t)));
            match found {
                None => (true, Value::Null),
                Some((i, [x, y, z])) => (false, json!({ "metric": i, "x": x, "y": y, "z": z })),
            }
        }
        other => {
            return Err(unsupported(
                "check-na",
                &other,
                "a diagonal basis, cover basis, pseudo-metric or pseudo-metric system",
            ))
        }
    };
    Ok(Output::verdict(&json!({ "non_archimedean": na, "witness": witness }), na))
}

fn metrize_doc(doc: Document) -> Result<Output, CliError> {
    let d = match doc {
        Document::Diagonal(b) => metrize(b.entourages())?,
        Document::Chain(c) => c.pseudometric(),
        Document::Partition(p) => metrize(&[p.to_relation()])?,
        other => {
            return Err(unsupported(
                "metrize",
                &other,
                "a list of equivalence relations (as entourages), a chain or a partition",
            ))
        }
    };
    Ok(Output::ok(&PseudometricJson::from(&d)))
}

fn pm_system(doc: Document) -> Result<Output, CliError> {
    let b = match doc {
        Document::Diagonal(b) => valid_diagonal(b)?,
        Document::Cover(cb) => valid_cover(cb)?.diagonal_basis()?,
        other => return Err(unsupported("pm-system", &other, "a diagonal or cover basis")),
    };
    let system = PseudometricSystem::from_na_basis(&b)?;
    Ok(Output::ok(&PseudometricSystemJson::from(&system)))
}

#[derive(Serialize)]
struct TopoVerdict {
    #[serde(rename = "T_A")]
    ta: bool,
    zero_dim: bool,
    uniformizable: bool,
}

fn topology_of(verb: &str, doc: Document) -> Result<ultrauniform_core::FiniteTopology, CliError> {
    match doc {
        Document::Topology(t) => {
            let report = t.validate();
            if report.is_valid() {
                Ok(t)
            } else {
                Err(CliError::Precondition {
                    what: "topology",
                    report,
                })
            }
        }
        other => Err(unsupported(verb, &other, "a topology")),
    }
}

fn topo_check(doc: Document) -> Result<Output, CliError> {
    let t = topology_of("topo-check", doc)?;
    let verdict = TopoVerdict {
        ta: t.satisfies_ta()?,
        zero_dim: t.is_zero_dimensional()?,
        uniformizable: t.is_uniformizable_na()?,
    };
    let all = verdict.ta && verdict.zero_dim && verdict.uniformizable;
    Ok(Output::verdict(&verdict, all))
}

fn uniformize(doc: Document) -> Result<Output, CliError> {
    let t = topology_of("uniformize", doc)?;
    Ok(match t.na_uniformization()? {
        Some(b) => Output::ok(&DiagonalBasisJson::from(&b)),
        None => Output::verdict(&Value::Null, false),
    })
}

fn roundtrip(doc: Document) -> Result<Output, CliError> {
    let holds = match doc {
        Document::Diagonal(b) => {
            let b = valid_diagonal(b)?;
            b.roundtrip_holds()? && b.cover_basis()?.roundtrip_holds()?
        }
        Document::Cover(cb) => {
            let cb = valid_cover(cb)?;
            cb.roundtrip_holds()? && cb.diagonal_basis()?.roundtrip_holds()?
        }
        other => return Err(unsupported("roundtrip", &other, "a diagonal or cover basis")),
    };
    Ok(Output::verdict(&json!({ "roundtrip": holds }), holds))
}

fn parse_seed(text: &str) -> Result<u64, CliError> {
    let text = text.trim();
    let parsed = match text.strip_prefix("0x").or_else(|| text.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(&hex.replace('_', ""), 16),
        None => text.replace('_', "").parse(),
    };
    parsed.map_err(|_| CliError::Input {
        field: SEED_ENV.into(),
        message: format!("{text:?} is not an unsigned 64-bit seed"),
    })
}

fn sweep(args: SweepArgs, env_seed: Option<&str>) -> Result<Output, CliError> {
    let theorem: TheoremId = args.theorem.parse().map_err(|e: ultrauniform_core::Error| CliError::Input {
        field: "theorem".into(),
        message: e.to_string(),
    })?;
    let kind: StructureKind = match &args.kind {
        Some(k) => k.parse().map_err(|e: ultrauniform_core::Error| CliError::Input {
            field: "kind".into(),
            message: e.to_string(),
        })?,
        None => theorem.default_kind(),
    };
    let seed = match (args.seed, env_seed) {
        (Some(s), _) => s,
        (None, Some(text)) => parse_seed(text)?,
        (None, None) => DEFAULT_SEED,
    };
    let mut spec = EnumerationSpec::new(args.n, kind)
        .with_seed(seed)
        .with_max_generators(args.max_generators);
    if let Some(t) = args.trials {
        spec = spec.with_limit(t);
    }
    let start = Instant::now();
    let mut report = theorem_sweep(theorem, &spec)?;
    if !args.no_timing {
        report.ms = start.elapsed().as_millis() as u64;
    }
    let ok = report.discrepancies == 0;
    Ok(Output::verdict(&SweepReportJson::from(&report), ok))
}

fn generate(kind: GenKind) -> Result<Output, CliError> {
    Ok(match kind {
        GenKind::Padic { p, size, .. } => {
            Output::ok(&PseudometricJson::from(&instances::padic_metric(p, size)?))
        }
        GenKind::IdealChain {
            modulus,
            ideal,
            depth,
            ..
        } => Output::ok(&DiagonalBasisJson::from(&instances::ideal_chain_basis(
            modulus, ideal, depth,
        )?)),
    })
}
