//! Command-line front end: the complex file format, report emission and the
//! `compute`, `deligne`, `verify`, `generate` and `twists` subcommands.

mod format;

pub use format::{
    load, parse_complex_file, parse_complex_str, to_json, ComplexFile, LoadedComplex,
    FORMAT_VERSION, TRIVIAL_TWIST,
};

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cochain::{coboundary_matrices, CochainError, CoefficientRing, CohomologyValue};
use crate::deligne::{
    deligne_sheaf_cohomology, descriptor_of, DeligneDescriptor, DeligneError, SheafValue,
};
use crate::nerve::{
    are_cohomologous, builders, mod2_first_betti, twist_classes_mod2, validate_twist, DeltaSet,
    NerveError, Sign, TwistCocycle,
};
use crate::verify::{
    check_trivial_twist, diamonds, mv_over_star_splits, oracle_suite, verify_all, HarnessReport,
    VerifyError,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CliError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unsupported format_version {0}; expected 1")]
    UnsupportedVersion(u32),
    #[error(transparent)]
    Validation(#[from] NerveError),
    #[error("twist {twist:?} violates the cocycle law on 2-cell {cell:?}")]
    TwistCocycleViolation { twist: String, cell: String },
    #[error("no twist named {0:?} in the input file")]
    UnknownTwist(String),
    #[error(
        "unknown builder {0:?}; expected point, circle:M (M >= 3), annulus3, rp2, rp3 or sphere2"
    )]
    UnknownBuilder(String),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Cochain(#[from] CochainError),
    #[error(transparent)]
    Deligne(#[from] DeligneError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
}

impl CliError {
    /// Short machine-readable category.
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Io { .. } => "io",
            CliError::Parse { .. } | CliError::UnsupportedVersion(_) => "parse",
            CliError::Validation(_) | CliError::TwistCocycleViolation { .. } => "validation",
            CliError::UnknownTwist(_) | CliError::UnknownBuilder(_) | CliError::Usage(_) => "usage",
            CliError::Cochain(_) | CliError::Deligne(_) | CliError::Verify(_) => "computation",
        }
    }

    /// The single-line error record written to standard error.
    pub fn record(&self) -> String {
        serde_json::json!({ "error": self.kind(), "message": self.to_string() }).to_string()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subject {
    pub complex: String,
    pub twist: String,
    pub degrees: Vec<usize>,
}

/// Machine-readable output of every subcommand.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub subject: Subject,
    /// Ring name to groups, one per entry of `subject.degrees`.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub groups: BTreeMap<String, Vec<CohomologyValue>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub deligne: Vec<DeligneDescriptor>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sheaf: Option<SheafValue>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub harness: Option<HarnessReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub passed: Option<bool>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub provenance: Vec<String>,
}

impl Report {
    fn new(complex: &str, twist: &str, degrees: Vec<usize>) -> Report {
        Report {
            subject: Subject {
                complex: complex.to_string(),
                twist: twist.to_string(),
                degrees,
            },
            groups: BTreeMap::new(),
            deligne: Vec::new(),
            sheaf: None,
            harness: None,
            passed: None,
            provenance: Vec::new(),
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "twisted-deligne",
    version,
    about = "Twisted cohomology and Deligne cohomology of finite Δ-sets"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Cohomology groups with twisted coefficients.
    Compute {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value = TRIVIAL_TWIST)]
        twist: String,
        /// z, q, fp:P or rz.
        #[arg(long, default_value = "z")]
        ring: CoefficientRing,
        /// Single degree; all degrees when omitted.
        #[arg(long)]
        degree: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Deligne group in degree N, or with --k the sheaf cohomology of the Deligne complex.
    Deligne {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value = TRIVIAL_TWIST)]
        twist: String,
        #[arg(long)]
        n: usize,
        #[arg(long, allow_negative_numbers = true)]
        k: Option<i64>,
        /// Also print provenance notes.
        #[arg(long)]
        notes: bool,
        #[arg(long)]
        json: bool,
    },
    /// Run verification checks; exit status 1 if any fails.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value = TRIVIAL_TWIST)]
        twist: String,
        /// Seed for the random gauge transforms of the oracle suite.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Write a model complex with its twist classes and computed groups.
    Generate {
        /// point, circle:M, annulus3, rp2, rp3 or sphere2.
        builder: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// List representatives of the twist classes and the named twists in each.
    Twists {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Mv,
    Diamond,
    Trivial,
    Oracle,
    All,
}

/// Text for standard output and the verdict deciding the exit status.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub passed: bool,
}

impl Outcome {
    fn ok(stdout: String) -> Outcome {
        Outcome {
            stdout,
            passed: true,
        }
    }
}

/// Parses arguments, runs, prints, and returns the exit status: 0 on success, 1 if a
/// check failed, 2 on any error.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return 0;
        }
        Err(e) => {
            let first = e
                .to_string()
                .lines()
                .next()
                .unwrap_or_default()
                .trim_start_matches("error: ")
                .to_string();
            eprintln!("{}", CliError::Usage(first).record());
            return 2;
        }
    };
    match execute(&cli) {
        Ok(outcome) => {
            print!("{}", outcome.stdout);
            if outcome.passed {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("{}", e.record());
            2
        }
    }
}

pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Compute {
            input,
            twist,
            ring,
            degree,
            json,
        } => compute(&parse_complex_file(input)?, twist, *ring, *degree, *json),
        Command::Deligne {
            input,
            twist,
            n,
            k,
            notes,
            json,
        } => deligne(&parse_complex_file(input)?, twist, *n, *k, *notes, *json),
        Command::Verify {
            suite,
            input,
            twist,
            seed,
            json,
        } => verify(&parse_complex_file(input)?, twist, *suite, *seed, *json),
        Command::Generate { builder, out } => {
            let file = generate(builder)?;
            std::fs::write(out, to_json(&file)).map_err(|e| CliError::Io {
                path: out.display().to_string(),
                message: e.to_string(),
            })?;
            Ok(Outcome::ok(format!("wrote {}\n", out.display())))
        }
        Command::Twists { input, json } => twists(&parse_complex_file(input)?, *json),
    }
}

fn complex_name(l: &LoadedComplex) -> &str {
    if l.file.name.is_empty() {
        "unnamed"
    } else {
        &l.file.name
    }
}

fn json_line<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("reports serialize");
    s.push('\n');
    s
}

/// `H0=... H1=...` over one ring.
pub fn render_groups(degrees: &[usize], values: &[CohomologyValue]) -> String {
    degrees
        .iter()
        .zip(values)
        .map(|(k, v)| format!("H{k}={v}"))
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn compute(
    l: &LoadedComplex,
    twist: &str,
    ring: CoefficientRing,
    degree: Option<usize>,
    json: bool,
) -> Result<Outcome, CliError> {
    let eta = l.twist(twist)?;
    let c = coboundary_matrices(&l.complex, &eta, ring)?;
    let degrees: Vec<usize> = match degree {
        Some(k) => vec![k],
        None => (0..l.complex.degree_count()).collect(),
    };
    let values = degrees
        .iter()
        .map(|&k| c.cohomology(k))
        .collect::<Result<Vec<_>, _>>()?;
    if json {
        let mut r = Report::new(complex_name(l), twist, degrees);
        r.groups.insert(ring.to_string(), values);
        return Ok(Outcome::ok(json_line(&r)));
    }
    Ok(Outcome::ok(format!(
        "{}\n",
        render_groups(&degrees, &values)
    )))
}

pub fn deligne(
    l: &LoadedComplex,
    twist: &str,
    n: usize,
    k: Option<i64>,
    notes: bool,
    json: bool,
) -> Result<Outcome, CliError> {
    let eta = l.twist(twist)?;
    let mut r = Report::new(complex_name(l), twist, vec![n]);
    let text = match k {
        Some(k) => {
            let v = deligne_sheaf_cohomology(&l.complex, &eta, n, k)?;
            let text = v.to_string();
            r.sheaf = Some(v);
            text
        }
        None => {
            let c = coboundary_matrices(&l.complex, &eta, CoefficientRing::Integer)?;
            let d = descriptor_of(&c, n)?;
            let text = d.to_string();
            r.provenance = d.provenance.clone();
            r.deligne.push(d);
            text
        }
    };
    if json {
        return Ok(Outcome::ok(json_line(&r)));
    }
    let mut out = format!("{text}\n");
    if notes {
        for p in &r.provenance {
            writeln!(out, "note: {p}").unwrap();
        }
    }
    Ok(Outcome::ok(out))
}

fn failures(harness: &HarnessReport) -> Vec<String> {
    let mut out = Vec::new();
    let describe = |section: &str, c: &crate::verify::Check| {
        let degree = c
            .degree
            .map(|k| format!(" (degree {k})"))
            .unwrap_or_default();
        format!(
            "FAIL {section}: {}{degree}: {} vs {}",
            c.name, c.left, c.right
        )
    };
    for m in &harness.mv {
        for c in m.report.checks.iter().filter(|c| !c.passed) {
            out.push(describe(
                &format!("mv {} over {}", m.decomposition, m.report.ring),
                c,
            ));
        }
    }
    for d in &harness.diamond {
        for c in d.checks.iter().filter(|c| !c.passed) {
            out.push(describe(&format!("diamond n={}", d.degree), c));
        }
    }
    for (name, section) in [("trivial", &harness.trivial), ("oracle", &harness.oracle)] {
        for c in section
            .iter()
            .flat_map(|s| s.checks.iter())
            .filter(|c| !c.passed)
        {
            out.push(describe(name, c));
        }
    }
    out
}

fn verdict(passed: bool) -> &'static str {
    if passed {
        "pass"
    } else {
        "FAIL"
    }
}

pub fn verify(
    l: &LoadedComplex,
    twist: &str,
    suite: Suite,
    seed: u64,
    json: bool,
) -> Result<Outcome, CliError> {
    let eta = l.twist(twist)?;
    let k = &l.complex;
    let harness = match suite {
        Suite::All => verify_all(k, &eta, seed)?,
        Suite::Mv => HarnessReport {
            mv: mv_over_star_splits(k, &eta)?,
            diamond: Vec::new(),
            trivial: None,
            oracle: None,
        },
        Suite::Diamond => HarnessReport {
            mv: Vec::new(),
            diamond: diamonds(k, &eta)?,
            trivial: None,
            oracle: None,
        },
        Suite::Trivial => HarnessReport {
            mv: Vec::new(),
            diamond: Vec::new(),
            trivial: Some(check_trivial_twist(k, k.dimension())?),
            oracle: None,
        },
        Suite::Oracle => HarnessReport {
            mv: Vec::new(),
            diamond: Vec::new(),
            trivial: None,
            oracle: Some(oracle_suite(k, &eta, seed)?),
        },
    };
    let passed = harness.passed();
    if json {
        let mut r = Report::new(complex_name(l), twist, (0..k.degree_count()).collect());
        r.harness = Some(harness);
        r.passed = Some(passed);
        return Ok(Outcome {
            stdout: json_line(&r),
            passed,
        });
    }
    let mut out = String::new();
    for m in &harness.mv {
        let n = m.report.checks.len();
        writeln!(
            out,
            "mv {} over {}: {} ({n} slots)",
            m.decomposition,
            m.report.ring,
            verdict(m.report.passed())
        )
        .unwrap();
    }
    for d in &harness.diamond {
        writeln!(
            out,
            "diamond n={}: {} ({} checks)",
            d.degree,
            verdict(d.passed()),
            d.checks.len()
        )
        .unwrap();
    }
    for (name, section) in [("trivial", &harness.trivial), ("oracle", &harness.oracle)] {
        if let Some(s) = section {
            writeln!(
                out,
                "{name}: {} ({} checks)",
                verdict(s.passed()),
                s.checks.len()
            )
            .unwrap();
        }
    }
    for f in failures(&harness) {
        writeln!(out, "{f}").unwrap();
    }
    writeln!(out, "result: {}", verdict(passed)).unwrap();
    Ok(Outcome {
        stdout: out,
        passed,
    })
}

/// Named twist classes for a builder: `trivial` first, then one name per other class.
fn named_twists(builder: &str, k: &DeltaSet) -> Vec<(String, TwistCocycle)> {
    let classes = twist_classes_mod2(k);
    let mut out = vec![(TRIVIAL_TWIST.to_string(), classes[0].clone())];
    let all_minus = TwistCocycle::constant(k, Sign::Minus);
    for (i, class) in classes.iter().enumerate().skip(1) {
        let (name, rep) = match builder {
            "rp2" | "rp3" if classes.len() == 2 => ("w1".to_string(), class.clone()),
            b if classes.len() == 2 && (b == "annulus3" || b.starts_with("circle:")) => {
                // The constant -1 twist is the familiar representative when it is in the class.
                let valid = validate_twist(k, &all_minus).unwrap_or(false);
                let rep = if valid && are_cohomologous(k, &all_minus, class) {
                    all_minus.clone()
                } else {
                    class.clone()
                };
                ("mobius".to_string(), rep)
            }
            _ => (format!("class{i}"), class.clone()),
        };
        out.push((name, rep));
    }
    out
}

fn describe_builder(builder: &str) -> String {
    match builder {
        "point" => "a single vertex".to_string(),
        "annulus3" => "nerve of a three-set cover U, V, W of the punctured plane".to_string(),
        "rp2" => {
            "six-vertex real projective plane, antipodal quotient of the icosahedron".to_string()
        }
        "rp3" => {
            "real projective 3-space as the antipodal quotient of the 4-dimensional cross-polytope"
                .to_string()
        }
        "sphere2" => "boundary of the tetrahedron".to_string(),
        b => format!(
            "nerve of a cover of the circle by {} arcs",
            b.trim_start_matches("circle:")
        ),
    }
}

/// Builds the file for a model complex, with `expected` filled by computation over `z`
/// and `q`.
pub fn generate(builder: &str) -> Result<ComplexFile, CliError> {
    let k =
        builders::by_name(builder).ok_or_else(|| CliError::UnknownBuilder(builder.to_string()))?;
    let named = named_twists(builder, &k);
    let mut twists = BTreeMap::new();
    let mut expected = BTreeMap::new();
    for (name, eta) in &named {
        twists.insert(name.clone(), eta.to_assignment(&k));
        let mut per_ring = BTreeMap::new();
        for ring in [CoefficientRing::Integer, CoefficientRing::Rational] {
            let c = coboundary_matrices(&k, eta, ring)?;
            let values = (0..k.degree_count())
                .map(|d| c.cohomology(d).map(|v| v.to_string()))
                .collect::<Result<Vec<_>, _>>()?;
            per_ring.insert(ring.to_string(), values);
        }
        expected.insert(name.clone(), per_ring);
    }
    Ok(ComplexFile {
        format_version: FORMAT_VERSION,
        name: builder.to_string(),
        description: describe_builder(builder),
        cells: k.to_cells(),
        twists,
        expected,
    })
}

#[derive(Serialize)]
struct TwistClassEntry {
    class: usize,
    representative: BTreeMap<String, i64>,
    named: Vec<String>,
}

pub fn twists(l: &LoadedComplex, json: bool) -> Result<Outcome, CliError> {
    let k = &l.complex;
    let classes = twist_classes_mod2(k);
    let entries: Vec<TwistClassEntry> = classes
        .iter()
        .enumerate()
        .map(|(i, rep)| TwistClassEntry {
            class: i,
            representative: rep.to_assignment(k),
            named: l
                .twists
                .iter()
                .filter(|(_, t)| are_cohomologous(k, t, rep))
                .map(|(n, _)| n.clone())
                .collect(),
        })
        .collect();
    if json {
        return Ok(Outcome::ok(json_line(&entries)));
    }
    let mut out = format!(
        "{} twist classes (dim H^1(K; Z/2) = {})\n",
        classes.len(),
        mod2_first_betti(k)
    );
    for e in &entries {
        let signs: Vec<String> = k
            .ids(1)
            .iter()
            .map(|id| format!("{id}={:+}", e.representative[id]))
            .collect();
        let named = if e.named.is_empty() {
            String::new()
        } else {
            format!("  [{}]", e.named.join(", "))
        };
        writeln!(out, "class {}: {}{named}", e.class, signs.join(" ")).unwrap();
    }
    Ok(Outcome::ok(out))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn loaded(builder: &str) -> LoadedComplex {
        load(generate(builder).unwrap()).unwrap()
    }

    #[test]
    fn compute_renders_all_degrees() {
        let out = compute(&loaded("rp3"), "w1", CoefficientRing::Integer, None, false).unwrap();
        assert_eq!(out.stdout, "H0=0 H1=Z/2 H2=0 H3=Z/2\n");
        let q = compute(
            &loaded("annulus3"),
            "mobius",
            CoefficientRing::Rational,
            None,
            false,
        )
        .unwrap();
        assert_eq!(q.stdout, "H0=0 H1=0\n");
    }

    #[test]
    fn deligne_output() {
        let out = deligne(&loaded("annulus3"), "mobius", 1, None, false, false).unwrap();
        assert_eq!(out.stdout, "Z/2 (+) Forms(0)\n");
        let notes = deligne(&loaded("annulus3"), "mobius", 0, None, true, false).unwrap();
        assert!(notes.stdout.starts_with("0\nnote: "));
    }

    #[test]
    fn generated_annulus_uses_the_constant_twist() {
        let f = generate("annulus3").unwrap();
        assert!(f.twists["mobius"].values().all(|&v| v == -1));
        assert_eq!(f.expected["mobius"]["z"], vec!["0", "Z/2"]);
    }

    #[test]
    fn reports_round_trip() {
        let l = loaded("rp2");
        let out = verify(&l, "w1", Suite::All, 3, true).unwrap();
        assert!(out.passed);
        let r: Report = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(json_line(&r), out.stdout);
        let out = compute(&l, "w1", CoefficientRing::CircleModel, None, true).unwrap();
        let r: Report = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(json_line(&r), out.stdout);
    }

    #[test]
    fn error_records_are_single_json_lines() {
        let e = CliError::UnknownTwist("w2".into());
        let v: serde_json::Value = serde_json::from_str(&e.record()).unwrap();
        assert_eq!(v["error"], "usage");
        assert!(!e.record().contains('\n'));
    }
}
