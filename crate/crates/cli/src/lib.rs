//! Command implementations for the `orbihom` binary.

pub mod document;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use orbihom::complex::{parse_complex, write_complex, WeightedComplex};
use orbihom::generators::{generate, ExampleSpec};
use orbihom::homology::{apply_coefficients, homology, homology_with_witnesses, CoefficientRing, Theory};
use orbihom::subdivision::{barycentric_subdivide, subdivision_report};
use orbihom::suites::{run_suite, Suite};
use orbihom::{ComplexError, Error};

use document::{validation_text, InputDescriptor, ResultDocument, ValidationReport};

#[derive(Parser, Debug)]
#[command(name = "orbihom", version, about = "Weighted and stratified homology of weighted simplicial complexes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check a complex file and count simplices by class
    Validate {
        path: PathBuf,
    },
    /// Compute homology of a complex file or an example signature
    Homology {
        /// File path, or an example signature such as `teardrop:3`
        input: String,
        #[command(flatten)]
        opts: HomologyOpts,
    },
    /// Write the barycentric subdivision of a complex
    Subdivide {
        path: PathBuf,
        /// Number of subdivisions
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        times: u32,
        /// Check homology invariance after every subdivision
        #[arg(long)]
        check: bool,
        /// Output file (default: stdout)
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Write the product of two divisibly-weighted complexes
    Product {
        left: PathBuf,
        right: PathBuf,
        /// Output file (default: stdout)
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run the seeded property suites
    Verify {
        #[arg(long, default_value = "all")]
        suite: SuiteChoice,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Cases per suite (default depends on the suite)
        #[arg(long)]
        cases: Option<usize>,
    },
    /// Print a generated example complex, or its homology when a theory or
    /// coefficient ring is given
    Example {
        spec: String,
        #[arg(long)]
        theory: Option<Theory>,
        #[arg(long)]
        coeff: Option<CoefficientRing>,
        #[arg(long)]
        witnesses: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        timing: bool,
    },
}

#[derive(clap::Args, Debug, Clone)]
pub struct HomologyOpts {
    /// wt, st or st-stage=N (N an integer or `inf`)
    #[arg(long, default_value = "wt")]
    pub theory: Theory,
    /// Z, Q, Fp=<p> or Zm=<m>
    #[arg(long, default_value = "Z")]
    pub coeff: CoefficientRing,
    /// Include one representative cycle per generator (integer coefficients only)
    #[arg(long)]
    pub witnesses: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Record wall-clock time in the document
    #[arg(long)]
    pub timing: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SuiteChoice {
    One(Suite),
    All,
}

impl std::str::FromStr for SuiteChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "all" {
            Ok(SuiteChoice::All)
        } else {
            s.parse().map(SuiteChoice::One)
        }
    }
}

/// Cases per suite when `--cases` is not given.
pub fn default_cases(suite: Suite) -> usize {
    match suite {
        Suite::Simplex => 200,
        Suite::Subdivision => 50,
        Suite::Coefficients => 20,
        Suite::Euler => 100,
    }
}

/// Why a command did not succeed, with its exit code.
#[derive(Debug)]
pub enum Failure {
    /// Usage or parse problem: exit code 2.
    Usage(String),
    /// Validation or verification failure: exit code 1. The report has
    /// already been written.
    Failed(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Failed(_) => 1,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Failed(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Complex(ComplexError::Parse { .. }) | Error::InvalidSpec(_) => Failure::Usage(e.to_string()),
            e => Failure::Failed(e.to_string()),
        }
    }
}

impl From<ComplexError> for Failure {
    fn from(e: ComplexError) -> Self {
        Error::from(e).into()
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure::Usage(format!("{}: {e}", path.display()))
}

fn read_text(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| io_failure(path, e))
}

fn read_complex(path: &Path) -> Result<WeightedComplex, Failure> {
    Ok(parse_complex(&read_text(path)?)?)
}

/// A file if one exists at `input`, otherwise an example signature.
pub fn load_input(input: &str) -> Result<(WeightedComplex, InputDescriptor), Failure> {
    let path = Path::new(input);
    if path.exists() {
        return Ok((read_complex(path)?, InputDescriptor::File(input.to_string())));
    }
    if input.contains(':') {
        let spec: ExampleSpec = input.parse().map_err(|e: Error| Failure::Usage(e.to_string()))?;
        return Ok((generate(&spec)?, InputDescriptor::Example(spec.to_string())));
    }
    Err(Failure::Usage(format!("{input}: no such file")))
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    out.write_all(text.as_bytes())
        .map_err(|e| Failure::Usage(format!("cannot write output: {e}")))
}

fn emit_to(path: Option<&Path>, out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| io_failure(p, e)),
        None => emit(out, text),
    }
}

/// Builds the document for `k` under the given options.
pub fn homology_document(
    k: &WeightedComplex,
    input: InputDescriptor,
    opts: &HomologyOpts,
) -> Result<ResultDocument, Failure> {
    if opts.witnesses && opts.coeff != CoefficientRing::Integers {
        return Err(Failure::Usage("--witnesses requires --coeff Z".into()));
    }
    let theory = opts.theory.canonical();
    let start = Instant::now();
    let (profile, cc) = if opts.witnesses {
        (homology_with_witnesses(k, theory)?, Some(theory.chain_complex(k)))
    } else {
        (apply_coefficients(&homology(k, theory)?, opts.coeff), None)
    };
    let mut doc = ResultDocument::new(input, k, &profile, cc.as_ref());
    if opts.timing {
        doc.timing_us = Some(start.elapsed().as_micros() as u64);
    }
    Ok(doc)
}

fn render(doc: &ResultDocument, format: Format) -> String {
    match format {
        Format::Text => doc.to_text(),
        Format::Json => serde_json::to_string_pretty(doc).expect("documents serialize") + "\n",
    }
}

pub fn run(cli: Cli, out: &mut dyn Write) -> Result<(), Failure> {
    match cli.command {
        Command::Validate { path } => {
            let input = InputDescriptor::File(path.display().to_string());
            let text = read_text(&path)?;
            match parse_complex(&text) {
                Ok(k) => emit(out, &validation_text(&input, &ValidationReport::of(&k))),
                Err(e @ ComplexError::Parse { .. }) => Err(Error::from(e).into()),
                Err(e) => {
                    emit(out, &validation_text(&input, &ValidationReport::failed(&e)))?;
                    Err(Failure::Failed(e.to_string()))
                }
            }
        }
        Command::Homology { input, opts } => {
            let (k, desc) = load_input(&input)?;
            let doc = homology_document(&k, desc, &opts)?;
            emit(out, &render(&doc, opts.format))
        }
        Command::Subdivide {
            path,
            times,
            check,
            output,
        } => {
            let mut k = read_complex(&path)?;
            let mut failed = Vec::new();
            for i in 1..=times {
                let rec = barycentric_subdivide(&k)?;
                if check {
                    for theory in [Theory::Wt, Theory::St] {
                        let r = subdivision_report(&k, &rec, theory)?;
                        eprintln!(
                            "check Sd^{i} {theory}: groups {}, chain identity {}, homology identity {}",
                            ok_word(r.groups_equal),
                            ok_word(r.chain_identity),
                            ok_word(r.homology_identity)
                        );
                        if !r.ok() {
                            failed.push(format!("Sd^{i} {theory}"));
                        }
                    }
                }
                k = rec.result;
            }
            emit_to(output.as_deref(), out, &write_complex(&k))?;
            if failed.is_empty() {
                Ok(())
            } else {
                Err(Failure::Failed(format!("invariance check failed: {}", failed.join(", "))))
            }
        }
        Command::Product { left, right, output } => {
            let a = read_complex(&left)?;
            let b = read_complex(&right)?;
            let p = a.cartesian_product(&b)?;
            emit_to(output.as_deref(), out, &write_complex(&p))
        }
        Command::Verify { suite, seed, cases } => {
            let suites = match suite {
                SuiteChoice::All => Suite::ALL.to_vec(),
                SuiteChoice::One(s) => vec![s],
            };
            let mut failing = Vec::new();
            for s in suites {
                let report = run_suite(s, seed, cases.unwrap_or_else(|| default_cases(s)));
                emit(out, &format!("{report}\n"))?;
                if !report.ok() {
                    failing.push(s.name());
                }
            }
            if failing.is_empty() {
                Ok(())
            } else {
                Err(Failure::Failed(format!("failing suites: {}", failing.join(", "))))
            }
        }
        Command::Example {
            spec,
            theory,
            coeff,
            witnesses,
            format,
            timing,
        } => {
            let parsed: ExampleSpec = spec.parse().map_err(|e: Error| Failure::Usage(e.to_string()))?;
            let k = generate(&parsed)?;
            if theory.is_none() && coeff.is_none() && !witnesses {
                return emit(out, &write_complex(&k));
            }
            let opts = HomologyOpts {
                theory: theory.unwrap_or(Theory::Wt),
                coeff: coeff.unwrap_or(CoefficientRing::Integers),
                witnesses,
                format,
                timing,
            };
            let doc = homology_document(&k, InputDescriptor::Example(parsed.to_string()), &opts)?;
            emit(out, &render(&doc, format))
        }
    }
}

fn ok_word(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "FAILED"
    }
}

/// Applies `ORBIHOM_THREADS` to the global thread pool.
pub fn configure_threads() -> Result<(), Failure> {
    let Ok(v) = std::env::var("ORBIHOM_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n >= 1)
        .ok_or_else(|| Failure::Usage(format!("ORBIHOM_THREADS must be a positive integer, got `{v}`")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::Usage(format!("cannot configure threads: {e}")))
}
