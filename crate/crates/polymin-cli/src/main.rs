//! `polymin`: build, verify, and export polyminuscule and skew-tabular
//! lattices.
//!
//! Exit codes: 0 on success, 1 when a verification check fails, 2 on usage
//! errors (bad flags, invalid parameters, size-guard violations).

use std::collections::BTreeSet;
use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use polymin::exact_algebra::build_generator_matrices;
use polymin::lattices::build_lattice_limited;
use polymin::poset_core::ColoredRankedPoset;
use polymin::root_data::weight_of;
use polymin::skew_tabular::build_skew_lattice_limited;
use polymin::verification::{verify, Check, Subject, SubjectSpec, VerifyOptions};
use polymin::{Family, Partition, RootSystem};

#[derive(Parser, Debug)]
#[command(name = "polymin", version, about = "Exact polyminuscule lattice constructions and certificates")]
struct Cli {
    /// Worker threads for parallel checks (default: all cores).
    #[arg(long, global = true, env = "POLYMIN_THREADS")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a lattice, print its size, RGF and top weight, and optionally
    /// write JSON and DOT.
    Build {
        #[command(flatten)]
        family: FamilyArgs,
        /// Write lattice JSON here.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write a Graphviz DOT Hasse diagram here.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Run verification checks and emit a JSON certificate.
    Verify {
        #[command(flatten)]
        family: FamilyArgs,
        /// Comma-separated checks: phi, diamond, crossing, lemma43,
        /// components, embedding, character, rgf, brackets (default: all
        /// applicable, brackets only on small lattices).
        #[arg(long, value_delimiter = ',')]
        checks: Option<Vec<String>>,
        /// Write the certificate here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Record per-check wall-clock times (output is then run-dependent).
        #[arg(long)]
        timings: bool,
        /// Add 1 to the coefficient of this edge before checking (fault
        /// injection for exercising failure reports).
        #[arg(long, value_name = "EDGE")]
        perturb: Option<usize>,
    },
    /// Export the representing matrices of the Chevalley generators.
    ExportMatrices {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, value_enum, default_value_t = Format::SqrtJson)]
        format: Format,
        /// Write the matrices here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum FamilyName {
    E7,
    #[value(name = "e6-1p")]
    E6OneP,
    #[value(name = "e6-6p")]
    E6SixP,
    #[value(name = "e6-ab")]
    E6Ab,
    #[value(name = "skew-a")]
    SkewA,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    SqrtJson,
    SquaredJson,
}

#[derive(Args, Debug)]
struct FamilyArgs {
    #[arg(long, value_enum)]
    family: FamilyName,
    /// Multiple of the fundamental weight (e7, e6-1p, e6-6p).
    #[arg(long)]
    k: Option<u32>,
    /// Coefficient of w1' (e6-ab).
    #[arg(long)]
    a: Option<u32>,
    /// Coefficient of w6' (e6-ab).
    #[arg(long)]
    b: Option<u32>,
    /// Rank of the type-A root system (skew-a).
    #[arg(long)]
    n: Option<usize>,
    /// Outer partition, comma-separated (skew-a).
    #[arg(long, value_delimiter = ',')]
    pshape: Option<Vec<u32>>,
    /// Inner partition, comma-separated (skew-a).
    #[arg(long, value_delimiter = ',')]
    qshape: Option<Vec<u32>>,
    /// Refuse lattices with more elements than this.
    #[arg(long, default_value_t = 5000)]
    max_size: usize,
    /// Ignore the size guard.
    #[arg(long)]
    force: bool,
}

/// A CLI failure with its exit code.
#[derive(Debug)]
enum Failure {
    Usage(anyhow::Error),
    Verification,
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Usage(e)
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(anyhow::anyhow!(msg.into()))
}

impl FamilyArgs {
    fn limit(&self) -> usize {
        if self.force {
            usize::MAX
        } else {
            self.max_size
        }
    }

    fn require<T: Copy>(value: Option<T>, flag: &str, family: &str) -> Result<T, Failure> {
        value.ok_or_else(|| usage(format!("--family {family} requires --{flag}")))
    }

    fn spec(&self) -> Result<SubjectSpec, Failure> {
        Ok(match self.family {
            FamilyName::E7 => SubjectSpec::Polymin(Family::E7 { k: Self::require(self.k, "k", "e7")? }),
            FamilyName::E6OneP => SubjectSpec::Polymin(Family::E6Omega1 { k: Self::require(self.k, "k", "e6-1p")? }),
            FamilyName::E6SixP => SubjectSpec::Polymin(Family::E6Omega6 { k: Self::require(self.k, "k", "e6-6p")? }),
            FamilyName::E6Ab => SubjectSpec::Polymin(Family::E6Ab {
                a: Self::require(self.a, "a", "e6-ab")?,
                b: Self::require(self.b, "b", "e6-ab")?,
            }),
            FamilyName::SkewA => {
                let n = Self::require(self.n, "n", "skew-a")?;
                if n == 0 || n > u8::MAX as usize {
                    return Err(usage(format!("--n must be between 1 and {}", u8::MAX)));
                }
                let part = |v: &Option<Vec<u32>>, flag: &str| -> Result<Partition, Failure> {
                    let v = v.clone().ok_or_else(|| usage(format!("--family skew-a requires --{flag}")))?;
                    Partition::new(v).map_err(|e| usage(format!("--{flag}: {e}")))
                };
                SubjectSpec::Skew { n, p: part(&self.pshape, "pshape")?, q: part(&self.qshape, "qshape")? }
            }
        })
    }
}

fn write_or_print(out: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => print_stdout(text)?,
    }
    Ok(())
}

/// Prints to stdout, treating a closed pipe (e.g. `| head`) as success.
fn print_stdout(text: &str) -> Result<(), Failure> {
    let mut stdout = std::io::stdout().lock();
    match writeln!(stdout, "{text}").and_then(|()| stdout.flush()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(anyhow::Error::from(e).context("writing stdout").into()),
        _ => Ok(()),
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize")
}

fn summary(name: &str, l: &ColoredRankedPoset, rs: &RootSystem) -> Result<String, Failure> {
    let top = l.top().map_err(|e| usage(format!("{name}: {e}")))?;
    let rgf: Vec<String> = l.rgf().iter().map(u64::to_string).collect();
    Ok(format!(
        "{name}\nelements: {}\nedges: {}\nRGF: [{}]\nwt(max): {:?}",
        l.len(),
        l.edges().len(),
        rgf.join(", "),
        weight_of(l, rs, top)
    ))
}

fn build(family: &FamilyArgs, out: &Option<PathBuf>, dot: &Option<PathBuf>) -> Result<(), Failure> {
    let spec = family.spec()?;
    let limit = family.limit();
    let (name, lattice, rs, json) = match &spec {
        SubjectSpec::Polymin(f) => {
            let l = build_lattice_limited(*f, limit).map_err(|e| usage(format!("{e} (use --force to override)")))?;
            (f.name(), l.lattice.clone(), f.root_system(), l.to_json())
        }
        SubjectSpec::Skew { n, p, q } => {
            let l = build_skew_lattice_limited(*n, p, q, limit).map_err(|e| usage(e.to_string()))?;
            (spec.name(), l.lattice.clone(), RootSystem::a(*n as u8), l.to_json())
        }
    };
    print_stdout(&summary(&name, &lattice, &rs)?)?;
    if let Some(path) = out {
        fs::write(path, pretty(&json)).with_context(|| format!("writing {}", path.display()))?;
    }
    if let Some(path) = dot {
        fs::write(path, lattice.to_dot(&name)).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn subject(family: &FamilyArgs) -> Result<Subject, Failure> {
    Subject::build(&family.spec()?, family.limit()).map_err(|e| usage(format!("{e} (use --force to override)")))
}

fn run_verify(
    family: &FamilyArgs,
    checks: &Option<Vec<String>>,
    out: &Option<PathBuf>,
    timings: bool,
    perturb: Option<usize>,
) -> Result<(), Failure> {
    let checks: Option<BTreeSet<Check>> = checks
        .as_ref()
        .map(|names| names.iter().map(|s| s.parse::<Check>()).collect::<Result<_, _>>())
        .transpose()
        .map_err(usage)?;
    let subject = subject(family)?;
    let cert = verify(&subject, &VerifyOptions { checks, timings, perturb });
    write_or_print(out, &pretty(&cert.to_json()))?;
    if cert.passed {
        Ok(())
    } else {
        if let Some(f) = cert.first_failure() {
            eprintln!("verification failed: {} {}", f.check, f.failure.clone().unwrap_or_default());
        }
        Err(Failure::Verification)
    }
}

fn export(family: &FamilyArgs, format: Format, out: &Option<PathBuf>) -> Result<(), Failure> {
    let subject = subject(family)?;
    let coefficients = subject.coefficients().map_err(|e| anyhow::anyhow!(e))?;
    let rs = subject.root_system();
    let gm = build_generator_matrices(subject.poset(), &coefficients, rs.nodes()).map_err(|e| anyhow::anyhow!(e))?;
    let mut json = match format {
        Format::SqrtJson => gm.to_json(),
        Format::SquaredJson => gm.to_squared_json(),
    };
    json["subject"] = json!(subject.name());
    write_or_print(out, &pretty(&json))
}

fn run(cli: Cli) -> Result<(), Failure> {
    if let Some(threads) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| usage(format!("--threads: {e}")))?;
    }
    match &cli.command {
        Command::Build { family, out, dot } => build(family, out, dot),
        Command::Verify { family, checks, out, timings, perturb } => {
            run_verify(family, checks, out, *timings, *perturb)
        }
        Command::ExportMatrices { family, format, out } => export(family, *format, out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
