//! Command-line front end. [`run`] is pure: it returns the exit code and the
//! artifact text, and [`main_with_args`] does the I/O.

mod descriptor;

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Parser, Subcommand};
use serde::Serialize;

pub use descriptor::parse_descriptor;

use crate::chevalley::{Algebra, Component};
use crate::error::{Error, Result};
use crate::joyce::{
    construct, Augment, ConstructOptions, JoyceDecomposition, Phase, ThetaSequence, TieBreak, TripleDocument,
    SCHEMA,
};
use crate::roots::{Root, RootSystem, Series};
use crate::scalar::{Approx, Scalar, Surd};
use crate::verify::{classify_sum, verify, ClassifyOptions, SumClassification};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_ADMISSIBILITY: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Backend {
    #[default]
    Exact,
    Float,
}

impl FromStr for Backend {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "exact" => Ok(Backend::Exact),
            "float" => Ok(Backend::Float),
            _ => Err(format!("backend `{s}` must be exact or float")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Tsv,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(Format::Json),
            "tsv" => Ok(Format::Tsv),
            _ => Err(format!("format `{s}` must be json or tsv")),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Json => "json",
            Format::Tsv => "tsv",
        })
    }
}

fn parse_tie_break(s: &str) -> std::result::Result<TieBreak, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_augment(s: &str) -> std::result::Result<Augment, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Debug, Parser)]
#[command(name = "joyce", version, about = "Construct and verify invariant hypercomplex structures")]
pub struct Cli {
    #[command(subcommand)]
    pub command: CliCommand,

    /// exact or float.
    #[arg(long, global = true, default_value = "exact")]
    pub backend: Backend,

    /// Dimension of the central part of the isotropy algebra.
    #[arg(long, global = true)]
    pub zl: Option<usize>,

    /// lex or revlex.
    #[arg(long = "tie-break", global = true, default_value = "lex", value_parser = parse_tie_break)]
    pub tie_break: TieBreak,

    /// Largest strongly orthogonal set enumerated by `classify`.
    #[arg(long = "max-len", global = true)]
    pub max_len: Option<usize>,

    /// Write the artifact here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// json or tsv.
    #[arg(long, global = true)]
    pub format: Option<Format>,

    /// auto, none or Tk.
    #[arg(long, global = true, default_value = "none", value_parser = parse_augment)]
    pub augment: Augment,

    /// Unit phase `a,b` with rational parts, multiplying every k_θ.
    #[arg(long, global = true)]
    pub phase: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum CliCommand {
    /// Root table as TSV.
    Roots { algebra: String },
    /// Emit the decomposition and the triple as JSON.
    Construct { algebra: String },
    /// Run every check on a constructed or loaded triple.
    Verify {
        algebra: Option<String>,
        /// Triple document written by `construct`.
        #[arg(long)]
        load: Option<PathBuf>,
    },
    /// Strongly orthogonal sets and center dimensions per simple summand.
    Classify {
        algebra: String,
        /// Also enumerate sets without the highest root.
        #[arg(long = "any-first")]
        any_first: bool,
    },
    /// Compare command outputs against golden files.
    Regress {
        /// Directory holding `manifest.tsv` and the golden files.
        #[arg(long)]
        golden: Option<PathBuf>,
        /// Rewrite the golden files instead of comparing.
        #[arg(long)]
        update: bool,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub enum Command {
    Roots(Vec<Component>),
    Construct(Vec<Component>),
    Verify(Vec<Component>),
    VerifyLoad(PathBuf),
    Classify { components: Vec<Component>, any_first: bool },
    Regress { golden: PathBuf, update: bool },
}

/// A validated invocation.
#[derive(Clone, Debug, PartialEq)]
pub struct JobSpec {
    pub command: Command,
    pub backend: Backend,
    pub zl_dim: Option<usize>,
    pub tie_break: TieBreak,
    pub max_len: Option<usize>,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
    pub augment: Augment,
    pub phase: Phase,
}

pub fn default_golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

impl JobSpec {
    pub fn from_cli(cli: Cli) -> Result<Self> {
        let command = match cli.command {
            CliCommand::Roots { algebra } => Command::Roots(parse_descriptor(&algebra)?),
            CliCommand::Construct { algebra } => Command::Construct(parse_descriptor(&algebra)?),
            CliCommand::Verify { algebra, load } => match (algebra, load) {
                (None, Some(p)) => Command::VerifyLoad(p),
                (Some(a), None) => Command::Verify(parse_descriptor(&a)?),
                (Some(_), Some(_)) => return Err(Error::Config("give an algebra or --load, not both".into())),
                (None, None) => return Err(Error::Config("verify needs an algebra or --load".into())),
            },
            CliCommand::Classify { algebra, any_first } => Command::Classify {
                components: parse_descriptor(&algebra)?,
                any_first,
            },
            CliCommand::Regress { golden, update } => Command::Regress {
                golden: golden.unwrap_or_else(default_golden_dir),
                update,
            },
        };
        let phase = match cli.phase {
            Some(p) => Phase::parse(&p)?,
            None => Phase::default(),
        };
        let job = JobSpec {
            command,
            backend: cli.backend,
            zl_dim: cli.zl,
            tie_break: cli.tie_break,
            max_len: cli.max_len,
            format: cli.format,
            out: cli.out,
            augment: cli.augment,
            phase,
        };
        job.validate()?;
        Ok(job)
    }

    fn validate(&self) -> Result<()> {
        if matches!(self.command, Command::Roots(_)) && self.format == Some(Format::Json) {
            return Err(Error::Config("roots only emits tsv".into()));
        }
        if matches!(self.command, Command::Construct(_)) && self.format == Some(Format::Tsv) {
            return Err(Error::Config("construct only emits json".into()));
        }
        if self.max_len == Some(0) {
            return Err(Error::Config("--max-len must be positive".into()));
        }
        if self.max_len.is_some() && !matches!(self.command, Command::Classify { .. }) {
            return Err(Error::Config("--max-len only applies to classify".into()));
        }
        if matches!(self.command, Command::VerifyLoad(_)) && (self.zl_dim.is_some() || self.augment != Augment::None)
        {
            return Err(Error::Config("--zl and --augment cannot be combined with --load".into()));
        }
        Ok(())
    }

    fn options(&self) -> ConstructOptions {
        ConstructOptions {
            tie_break: self.tie_break,
            zl_dim: self.zl_dim,
            phase: self.phase.clone(),
            scales: None,
            augment: self.augment,
        }
    }

    fn format_or(&self, default: Format) -> Format {
        self.format.unwrap_or(default)
    }
}

/// Result of a job: exit code, artifact text and diagnostics for stderr.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub output: String,
    pub diagnostics: String,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Outcome {
            code: EXIT_PASS,
            output,
            diagnostics: String::new(),
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Admissibility { .. } => EXIT_ADMISSIBILITY,
        Error::Config(_) | Error::Usage { .. } | Error::Argument(_) | Error::Scalar(_) | Error::Io(_) | Error::Format(_) => {
            EXIT_USAGE
        }
        Error::Construction(_) | Error::Invariant(_) => EXIT_CHECK_FAILED,
    }
}

#[derive(Serialize)]
struct AdmissibilityReport<'a> {
    schema: &'a str,
    error: &'a str,
    reason: &'a str,
    suggestion: &'a str,
}

/// Maps an error to its exit code. Admissibility errors become a JSON
/// artifact with the reason and the suggested torus augmentation.
pub fn error_outcome(e: &Error) -> Outcome {
    let code = exit_code(e);
    let output = match e {
        Error::Admissibility { reason, suggestion } => {
            let v = AdmissibilityReport {
                schema: SCHEMA,
                error: "admissibility",
                reason,
                suggestion,
            };
            format!("{}\n", serde_json::to_string_pretty(&v).expect("json"))
        }
        _ => String::new(),
    };
    Outcome {
        code,
        output,
        diagnostics: format!("error: {e}\n"),
    }
}

/// Executes a job without touching standard streams or `--out`.
pub fn run(job: &JobSpec) -> Outcome {
    let r = match job.backend {
        Backend::Exact => run_typed::<Surd>(job),
        Backend::Float => run_typed::<Approx<f64>>(job),
    };
    r.unwrap_or_else(|e| error_outcome(&e))
}

fn run_typed<F: Scalar>(job: &JobSpec) -> Result<Outcome> {
    match &job.command {
        Command::Roots(cs) => roots_table(cs).map(Outcome::ok),
        Command::Construct(cs) => {
            let alg = Algebra::new(cs)?;
            let (d, t) = construct::<F>(&alg, &job.options())?;
            Ok(Outcome::ok(TripleDocument::new(&d, &t).to_json()))
        }
        Command::Verify(cs) => {
            let alg = Algebra::new(cs)?;
            let (d, t) = construct::<F>(&alg, &job.options())?;
            report_outcome(job, &d, &t)
        }
        Command::VerifyLoad(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            let doc = TripleDocument::from_json(&text)?;
            if doc.backend == Surd::BACKEND {
                verify_document::<Surd>(job, &doc)
            } else if doc.backend == <Approx<f64>>::BACKEND {
                verify_document::<Approx<f64>>(job, &doc)
            } else {
                Err(Error::Format(format!("unknown backend `{}`", doc.backend)))
            }
        }
        Command::Classify { components, any_first } => {
            let opts = ClassifyOptions {
                max_len: job.max_len.unwrap_or(usize::MAX),
                any_first: *any_first,
                ..ClassifyOptions::default()
            };
            let c = classify_sum::<F>(components, &opts)?;
            let (code, diagnostics) = classification_assertions(&c);
            let output = match job.format_or(Format::Json) {
                Format::Json => c.to_json(),
                Format::Tsv => c.to_tsv(),
            };
            Ok(Outcome {
                code,
                output,
                diagnostics: format!("verdict: {}\n{diagnostics}", c.verdict),
            })
        }
        Command::Regress { golden, update } => regress(golden, *update),
    }
}

fn roots_table(cs: &[Component]) -> Result<String> {
    let types: Vec<_> = cs
        .iter()
        .filter_map(|c| match c {
            Component::Simple(t) => Some(*t),
            Component::Torus(_) => None,
        })
        .collect();
    Ok(RootSystem::build(&types)?.to_tsv())
}

fn report_outcome<F: Scalar>(
    job: &JobSpec,
    d: &JoyceDecomposition<F>,
    t: &crate::joyce::HypercomplexTriple<F>,
) -> Result<Outcome> {
    let rep = verify(d, t)?;
    let mut diagnostics = String::new();
    for c in rep.failures() {
        diagnostics.push_str(&format!("FAIL {} residual {:e}", c.name, c.residual));
        if let Some(w) = &c.witness {
            diagnostics.push_str(&format!(" at {w}"));
        }
        diagnostics.push('\n');
    }
    let output = match job.format_or(Format::Json) {
        Format::Json => rep.to_json(),
        Format::Tsv => rep.to_tsv(),
    };
    Ok(Outcome {
        code: if rep.passed() { EXIT_PASS } else { EXIT_CHECK_FAILED },
        output,
        diagnostics,
    })
}

/// Rebuilds the decomposition a document was written from and verifies the
/// stored tensors against it.
fn verify_document<F: Scalar>(job: &JobSpec, doc: &TripleDocument) -> Result<Outcome> {
    let components = parse_descriptor(&doc.algebra)?;
    let alg = Algebra::new(&components)?;
    let thetas: Vec<Root> = doc.thetas.iter().map(|t| Root(t.clone())).collect();
    let seq = ThetaSequence::from_roots(thetas, doc.tie_break);
    let d = JoyceDecomposition::<F>::decompose(&alg, seq, doc.scales()?)?.choose_isotropy(Some(doc.zl_dim))?;
    if d.m_dim() != doc.dims.m {
        return Err(Error::Format(format!(
            "document has dim m = {}, rebuilt decomposition has {}",
            doc.dims.m,
            d.m_dim()
        )));
    }
    let rebuilt: Vec<Vec<String>> = d.m_basis().iter().map(|v| v.iter().map(Scalar::to_repr).collect()).collect();
    if rebuilt != doc.m_basis {
        return Err(Error::Format("stored m basis differs from the rebuilt decomposition".into()));
    }
    let t = doc.triple::<F>()?;
    report_outcome(job, &d, &t)
}

/// Theorem-level claims asserted by `classify`: no simple summand outside
/// series A has a set with `dim z ≥ ℓ`, and every `A_n` with even `n` has a
/// set with `dim z = ℓ`.
fn classification_assertions(c: &SumClassification) -> (i32, String) {
    let mut msgs = String::new();
    for part in &c.components {
        let Some(first) = part.rows.first() else { continue };
        let series = Series::from_letter(first.series).expect("series letter");
        if series != Series::A {
            for r in part.rows.iter().filter(|r| r.satisfies_cnec) {
                msgs.push_str(&format!("FAIL {}: {:?} has dim z = {} >= {}\n", part.simple_type, r.thetas, r.dim_z, r.ell));
            }
        } else if first.rank % 2 == 0 && !part.rows.iter().any(|r| r.dim_z == r.ell) {
            msgs.push_str(&format!("FAIL {}: no set with dim z = ell\n", part.simple_type));
        }
    }
    let code = if msgs.is_empty() { EXIT_PASS } else { EXIT_CHECK_FAILED };
    (code, msgs)
}

/// Parses arguments (without the program name) into a job.
pub fn parse_args<I, S>(args: I) -> std::result::Result<JobSpec, Outcome>
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let argv = std::iter::once(std::ffi::OsString::from("joyce")).chain(args.into_iter().map(Into::into));
    let cli = Cli::try_parse_from(argv).map_err(|e| {
        let informational = matches!(
            e.kind(),
            clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
        );
        Outcome {
            code: if informational { EXIT_PASS } else { EXIT_USAGE },
            output: if informational { e.to_string() } else { String::new() },
            diagnostics: if informational { String::new() } else { e.to_string() },
        }
    })?;
    JobSpec::from_cli(cli).map_err(|e| error_outcome(&e))
}

/// Parses and runs one invocation in process.
pub fn execute<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    match parse_args(args) {
        Ok(job) => run(&job),
        Err(o) => o,
    }
}

/// Entry point used by the binary. Writes the artifact to `--out` or
/// standard output and returns the exit code.
pub fn main_with_args<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let (out_path, outcome) = match parse_args(args) {
        Ok(job) => (job.out.clone(), run(&job)),
        Err(o) => (None, o),
    };
    eprint!("{}", outcome.diagnostics);
    // Admissibility reports always go to standard output.
    let to_file = out_path.filter(|_| outcome.code != EXIT_ADMISSIBILITY);
    match to_file {
        Some(p) if !outcome.output.is_empty() => {
            if let Err(e) = std::fs::write(&p, &outcome.output) {
                eprintln!("error: {}: {e}", p.display());
                return EXIT_USAGE;
            }
        }
        _ => print!("{}", outcome.output),
    }
    outcome.code
}

const MANIFEST: &str = "manifest.tsv";

/// One golden case: the file name and the argument list producing it.
fn manifest_cases(dir: &Path) -> Result<Vec<(String, Vec<String>)>> {
    let path = dir.join(MANIFEST);
    let text = std::fs::read_to_string(&path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let mut out = Vec::new();
    for (n, line) in text.lines().enumerate() {
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let (name, args) = line
            .split_once('\t')
            .ok_or_else(|| Error::Format(format!("{}:{}: expected `file<TAB>args`", path.display(), n + 1)))?;
        out.push((name.to_string(), args.split_whitespace().map(String::from).collect()));
    }
    Ok(out)
}

fn regress(dir: &Path, update: bool) -> Result<Outcome> {
    let cases = manifest_cases(dir)?;
    let mut table = String::from("case\tstatus\n");
    let mut failed = false;
    for (name, args) in cases {
        let o = execute(&args);
        let path = dir.join(&name);
        let status = if update {
            std::fs::write(&path, &o.output).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            "updated"
        } else {
            match std::fs::read_to_string(&path) {
                Ok(expected) if expected == o.output => "pass",
                Ok(_) => "mismatch",
                Err(_) => "missing",
            }
        };
        failed |= status == "mismatch" || status == "missing";
        table.push_str(&format!("{name}\t{status}\n"));
    }
    Ok(Outcome {
        code: if failed { EXIT_CHECK_FAILED } else { EXIT_PASS },
        output: table,
        diagnostics: String::new(),
    })
}

