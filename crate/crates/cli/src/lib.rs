//! The `baric` command line.
//!
//! Every report line is `key=value`, except `verify`, which prints one
//! `<id> trials=<n> failures=<k> seed=<s>` line per suite. Exit codes: 0 on
//! success, 1 when a check fails, 2 on usage, parse or precondition errors.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use baric_core::baric::{baric_isomorphic_by, classify_scalar_action, enumerate_weights, validate_weight};
use baric_core::bowtie::{bowtie, kpow};
use baric_core::document::{load, save};
use baric_core::ideals::{
    decomposability, ideal_closure, kernel_ideal_bijection, project_ideal, weight_one_idempotents,
    weight_one_idempotents_among, Decomposability, IdealSide, Sidedness,
};
use baric_core::linalg::DEFAULT_ENUMERATION_CAP;
use baric_core::propcheck::{check, Caps, PROPOSITION_IDS};
use baric_core::{parse_scalar, BaricAlgebra, Element, Error, FieldElement, FieldSpec, Subspace};

#[derive(Debug, Parser)]
#[command(name = "baric", about = "Baric algebras and the bowtie product, in exact arithmetic")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SideArg {
    Right,
    Two,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Validate a document and report algebra properties and the commutative center.
    Check { file: PathBuf },
    /// Write the bowtie of two documents.
    Bowtie {
        left: PathBuf,
        right: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Write K^{⋈n}.
    Kpow {
        n: usize,
        #[arg(long, value_parser = parse_field)]
        field: FieldSpec,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Enumerate weights over a prime field, or verify the stored one over Q.
    Weights { file: PathBuf },
    /// Idempotents of weight one.
    Idempotents {
        file: PathBuf,
        #[arg(long)]
        cap: Option<u64>,
    },
    /// Ideal generated by vectors given as "c,c,...;c,c,...".
    Ideal {
        file: PathBuf,
        #[arg(long)]
        gens: String,
        #[arg(long, value_enum, default_value = "two")]
        side: SideArg,
    },
    /// Project an ideal of a bowtie onto its factors.
    Project {
        file: PathBuf,
        #[arg(long)]
        ideal: PathBuf,
    },
    /// Check the bijection between factor kernel ideals and bowtie kernel ideals.
    Bijection { file: PathBuf },
    /// Decide whether the kernel splits into two nonzero ideals.
    Decompose {
        file: PathBuf,
        /// Extra candidate vectors over Q, "c,c,...;c,c,...".
        #[arg(long)]
        candidates: Option<String>,
    },
    /// Recognize xy = ω(y)x and exhibit the isomorphism with K^{⋈n}.
    Classify { file: PathBuf },
    /// Run proposition suites.
    Verify {
        /// Comma-separated proposition ids; all by default.
        #[arg(long)]
        props: Option<String>,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_parser = parse_field)]
        field: Option<FieldSpec>,
        #[arg(long)]
        maxdim: Option<usize>,
        /// Directory for counterexample documents.
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
}

fn parse_field(s: &str) -> Result<FieldSpec, String> {
    match s {
        "q" | "Q" => Ok(FieldSpec::rationals()),
        _ => {
            let p = s
                .strip_prefix('p')
                .or_else(|| s.strip_prefix('P'))
                .and_then(|d| d.parse::<u64>().ok())
                .ok_or_else(|| format!("expected q or pP, found {s:?}"))?;
            FieldSpec::prime(p).map_err(|e| e.to_string())
        }
    }
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub output: String,
}

enum Failure {
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(format!("error={e}"))
    }
}

type Res = Result<String, Failure>;

fn join<T: ToString>(items: impl IntoIterator<Item = T>, sep: &str) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

fn vector(v: &[FieldElement]) -> String {
    join(v, ",")
}

fn subspace(s: &Subspace) -> String {
    if s.is_zero() {
        "0".to_owned()
    } else {
        join(s.basis_vectors().map(vector), ";")
    }
}

fn parse_vectors(text: &str, b: &BaricAlgebra) -> Result<Vec<Element>, Failure> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(';')
        .map(|v| {
            let coords = v
                .split(',')
                .map(|c| parse_scalar(c.trim(), b.field()))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(b.algebra().element(coords)?)
        })
        .collect()
}

fn env_cap() -> u64 {
    std::env::var("BARIC_CAP").ok().and_then(|s| s.parse().ok()).unwrap_or(DEFAULT_ENUMERATION_CAP)
}

fn cmd_check(file: &Path) -> Res {
    let b = load(file)?;
    let a = b.algebra();
    let flags = a.property_flags();
    let center = a.commutative_center();
    let mut out = String::new();
    writeln!(out, "valid=true").unwrap();
    writeln!(out, "field={}", b.field()).unwrap();
    writeln!(out, "dim={}", b.dim()).unwrap();
    writeln!(out, "weight={}", vector(b.weight().values())).unwrap();
    if let Some(tag) = b.provenance() {
        writeln!(out, "bowtie={}+{}", tag.left_dim, tag.right_dim).unwrap();
    }
    writeln!(out, "commutative={}", flags.commutative).unwrap();
    writeln!(out, "associative={}", flags.associative).unwrap();
    writeln!(out, "left_alternative={}", flags.left_alternative).unwrap();
    writeln!(out, "right_alternative={}", flags.right_alternative).unwrap();
    writeln!(out, "unital={}", flags.unital).unwrap();
    if let Some(u) = &flags.unit {
        writeln!(out, "unit={}", vector(u.coords())).unwrap();
    }
    writeln!(out, "center_dim={}", center.dim()).unwrap();
    writeln!(out, "center={}", subspace(&center)).unwrap();
    Ok(out)
}

fn cmd_bowtie(left: &Path, right: &Path, output: &Path) -> Res {
    let b = bowtie(&load(left)?, &load(right)?)?;
    save(&b, output)?;
    Ok(format!("wrote={}\ndim={}\n", output.display(), b.dim()))
}

fn cmd_kpow(n: usize, field: FieldSpec, output: &Path) -> Res {
    if n == 0 {
        return Err(Failure::Usage("error=n must be at least 1".into()));
    }
    let b = kpow(field, n);
    save(&b, output)?;
    Ok(format!("wrote={}\ndim={}\n", output.display(), b.dim()))
}

fn cmd_weights(file: &Path, cap: u64) -> Res {
    let b = load(file)?;
    let mut out = String::new();
    if b.field().is_finite() {
        let weights = enumerate_weights(b.algebra(), cap)?;
        writeln!(out, "mode=enumerate").unwrap();
        writeln!(out, "count={}", weights.len()).unwrap();
        for w in &weights {
            writeln!(out, "weight={}", vector(w.values())).unwrap();
        }
        writeln!(out, "unique={}", weights.len() == 1).unwrap();
    } else {
        writeln!(out, "mode=verify").unwrap();
        writeln!(out, "weight={}", vector(b.weight().values())).unwrap();
        writeln!(out, "valid={}", validate_weight(b.algebra(), b.weight())?).unwrap();
    }
    Ok(out)
}

fn cmd_idempotents(file: &Path, cap: u64) -> Res {
    let b = load(file)?;
    let (mode, found) = if b.field().is_finite() {
        ("exhaustive", weight_one_idempotents(&b, cap)?)
    } else {
        ("candidates", weight_one_idempotents_among(&b, &[])?)
    };
    let mut out = format!("mode={mode}\ncount={}\n", found.len());
    for e in &found {
        writeln!(out, "idempotent={}", vector(e.coords())).unwrap();
    }
    Ok(out)
}

fn sided_label(s: Sidedness) -> &'static str {
    match s {
        Sidedness::Right => "right",
        Sidedness::TwoSided => "two_sided",
        Sidedness::None => "none",
    }
}

fn cmd_ideal(file: &Path, gens: &str, side: SideArg) -> Res {
    let b = load(file)?;
    let gens = parse_vectors(gens, &b)?;
    let side = match side {
        SideArg::Right => IdealSide::Right,
        SideArg::Two => IdealSide::TwoSided,
    };
    let i = ideal_closure(b.algebra(), &gens, side)?;
    Ok(format!(
        "dim={}\nsidedness={}\nin_kernel={}\nbasis={}\n",
        i.space.dim(),
        sided_label(i.sided),
        b.kernel().contains(&i.space)?,
        subspace(&i.space)
    ))
}

#[derive(Deserialize)]
struct IdealFile {
    vectors: Vec<Vec<String>>,
}

fn cmd_project(file: &Path, ideal: &Path) -> Res {
    let b = load(file)?;
    let text = fs::read_to_string(ideal).map_err(|e| Failure::Usage(format!("error={}: {e}", ideal.display())))?;
    let parsed: IdealFile =
        serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("error={}: {e}", ideal.display())))?;
    let vectors = parsed
        .vectors
        .iter()
        .map(|v| {
            let coords = v.iter().map(|c| parse_scalar(c, b.field())).collect::<Result<Vec<_>, _>>()?;
            b.algebra().element(coords)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let space = Subspace::span(b.field(), b.dim(), &vectors)?;
    let p = project_ideal(&b, &space)?;
    Ok(format!(
        "i1={}\ni1_dim={}\ni1_is_ideal={}\ni2={}\ni2_dim={}\ni2_is_ideal={}\n",
        subspace(&p.i1),
        p.i1.dim(),
        p.i1_is_ideal,
        subspace(&p.i2),
        p.i2.dim(),
        p.i2_is_ideal
    ))
}

fn cmd_bijection(file: &Path, cap: u64) -> Res {
    let b = load(file)?;
    let r = kernel_ideal_bijection(&b, cap)?;
    let text = format!(
        "pairs={}\nbowtie_ideals={}\nverified={}\n",
        r.pairs.len(),
        r.bowtie_ideals.len(),
        r.verified
    );
    if r.verified {
        Ok(text)
    } else {
        Err(Failure::Check(text))
    }
}

fn cmd_decompose(file: &Path, candidates: Option<&str>, cap: u64) -> Res {
    let b = load(file)?;
    let candidates = parse_vectors(candidates.unwrap_or(""), &b)?;
    let d = decomposability(&b, &candidates, cap)?;
    let mut out = format!("result={}\n", d.label());
    if let Decomposability::Decomposable { n1, n2 } = &d {
        writeln!(out, "n1={}\nn2={}", subspace(n1), subspace(n2)).unwrap();
    }
    Ok(out)
}

fn cmd_classify(file: &Path) -> Res {
    let b = load(file)?;
    let mut out = String::new();
    match classify_scalar_action(&b) {
        Ok(None) => writeln!(out, "scalar_action=false").unwrap(),
        Ok(Some(c)) => {
            let verified = baric_isomorphic_by(&c.isomorphism, &b, &c.target)?;
            writeln!(out, "scalar_action=true").unwrap();
            writeln!(out, "isomorphic_to=K^{}", b.dim()).unwrap();
            writeln!(out, "isomorphism={}", join(c.isomorphism.row_iter().map(vector), ";")).unwrap();
            writeln!(out, "verified={verified}").unwrap();
        }
        Err(Error::CharacteristicObstruction { index, characteristic }) => {
            writeln!(out, "scalar_action=true").unwrap();
            writeln!(out, "normalization=obstructed index={index} characteristic={characteristic}").unwrap();
        }
        Err(e) => return Err(e.into()),
    }
    Ok(out)
}

struct VerifyArgs<'a> {
    props: Option<&'a str>,
    trials: usize,
    seed: u64,
    field: Option<FieldSpec>,
    maxdim: Option<usize>,
    out: &'a Path,
    cap: u64,
}

fn cmd_verify(args: VerifyArgs<'_>) -> Res {
    let ids: Vec<String> = match args.props {
        None => PROPOSITION_IDS.iter().map(|s| s.to_string()).collect(),
        Some(list) => list.split(',').map(|s| s.trim().to_owned()).filter(|s| !s.is_empty()).collect(),
    };
    let mut caps = Caps { enum_cap: args.cap, ..Caps::default() };
    if let Some(f) = args.field {
        if !f.is_finite() {
            return Err(Failure::Usage("error=verify --field must be a prime field".into()));
        }
        caps.field = f;
    }
    if let Some(d) = args.maxdim {
        if d == 0 {
            return Err(Failure::Usage("error=--maxdim must be at least 1".into()));
        }
        caps.max_dim = d;
        caps.ideal_max_dim = caps.ideal_max_dim.min(d);
    }
    let mut out = String::new();
    let mut failed = 0;
    for id in &ids {
        let report = check(id, args.trials, args.seed, &caps)?;
        let path = match &report.first_counterexample {
            None => None,
            Some(ce) => {
                let path = args.out.join(format!("counterexample-{id}-seed{}-trial{}.json", args.seed, ce.trial));
                fs::write(&path, &ce.document)
                    .map_err(|e| Failure::Usage(format!("error={}: {e}", path.display())))?;
                Some(path.display().to_string())
            }
        };
        if !report.passed() {
            failed += 1;
        }
        writeln!(out, "{}", report.line(path.as_deref())).unwrap();
    }
    writeln!(out, "suites={} failed={failed}", ids.len()).unwrap();
    if failed == 0 {
        Ok(out)
    } else {
        Err(Failure::Check(out))
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return Outcome { code, output: e.render().to_string() };
        }
    };
    let cap = env_cap();
    let result = match &cli.command {
        Command::Check { file } => cmd_check(file),
        Command::Bowtie { left, right, output } => cmd_bowtie(left, right, output),
        Command::Kpow { n, field, output } => cmd_kpow(*n, *field, output),
        Command::Weights { file } => cmd_weights(file, cap),
        Command::Idempotents { file, cap: c } => cmd_idempotents(file, c.unwrap_or(cap)),
        Command::Ideal { file, gens, side } => cmd_ideal(file, gens, *side),
        Command::Project { file, ideal } => cmd_project(file, ideal),
        Command::Bijection { file } => cmd_bijection(file, cap),
        Command::Decompose { file, candidates } => cmd_decompose(file, candidates.as_deref(), cap),
        Command::Classify { file } => cmd_classify(file),
        Command::Verify { props, trials, seed, field, maxdim, out } => cmd_verify(VerifyArgs {
            props: props.as_deref(),
            trials: *trials,
            seed: *seed,
            field: *field,
            maxdim: *maxdim,
            out,
            cap,
        }),
    };
    match result {
        Ok(output) => Outcome { code: 0, output },
        Err(Failure::Check(output)) => Outcome { code: 1, output },
        Err(Failure::Usage(output)) => Outcome { code: 2, output: output + "\n" },
    }
}
