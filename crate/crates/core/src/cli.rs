//! The `conelab` command line.
//!
//! Every subcommand prints one [`Report`]. The exit code is 0 on pass, 1 on
//! fail and 2 on error, including unknown subcommands and flags.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::budget::{Budget, DEFAULT_BUDGET};
use crate::cones::{self, ConeDouble};
use crate::dblcat::{
    self, double_biequivalence_failure, find_companion, is_companion, trivial_fibration_failure, whi_failure,
    CompanionPair, DoubleBiequivalenceFailure, FinDoubleCategory, TrivialFibrationFailure,
};
use crate::error::{Error, Result};
use crate::io::{self, Library, Mode};
use crate::nerve::{segal_failure, truncated_nerve, validate_truncation, Direction, SegalFailure};
use crate::report::ValidationReport;
use crate::twocat::{self, BiequivalenceFailure};

/// Environment variable read when `--budget` is absent.
pub const BUDGET_ENV: &str = "CONELAB_BUDGET";

#[derive(Parser, Debug)]
#[command(name = "conelab", version, about = "Checks homotopy 2-limits and related structure on finite presentations")]
struct Cli {
    /// Print the report as a single JSON object.
    #[arg(long, global = true)]
    json: bool,
    /// Leave out timing so output is byte-for-byte reproducible.
    #[arg(long, global = true)]
    deterministic: bool,
    /// Cap on candidate assignments for every enumeration.
    #[arg(long, global = true, value_name = "N")]
    budget: Option<u64>,
    /// Ignore unknown keys in input files.
    #[arg(long, global = true)]
    lax: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Source {
    /// Input files, loaded in order; later documents may refer to earlier ones.
    #[arg(long = "input", required = true, num_args = 1.., value_name = "FILE")]
    inputs: Vec<PathBuf>,
    /// The document to use; defaults to the last one of the expected kind.
    #[arg(long)]
    name: Option<String>,
}

#[derive(Args, Debug)]
struct LimitArgs {
    /// File with the diagram `K`.
    #[arg(long, value_name = "FILE")]
    diagram: PathBuf,
    /// File with the candidate cone, loaded after the diagram.
    #[arg(long, value_name = "FILE")]
    cone: PathBuf,
    /// The cone to check; defaults to the last one.
    #[arg(long)]
    cone_name: Option<String>,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum ConeConstruction {
    /// Pseudo-cones over `H̃ K`.
    Htilde,
    /// Pseudo-cones over `H K`.
    H,
    /// The explicit description over `H̃ K`.
    Explicit,
    /// Pseudo-cones over a double functor.
    General,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum SliceConstruction {
    General,
    Explicit,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Directions {
    Horizontal,
    Vertical,
    Both,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Load and validate presentation files.
    Validate {
        #[arg(long = "input", required = true, num_args = 1.., value_name = "FILE")]
        inputs: Vec<PathBuf>,
    },
    /// Whether every horizontal equivalence has a vertical companion.
    Whi {
        #[command(flatten)]
        src: Source,
        /// Read a 2-category and check its `H̃` embedding.
        #[arg(long)]
        htilde: bool,
    },
    /// Find a companion of a horizontal, or verify a given companion pair.
    Companion {
        #[command(flatten)]
        src: Source,
        #[arg(long)]
        htilde: bool,
        #[arg(long)]
        horizontal: usize,
        #[arg(long, requires_all = ["phi", "psi"])]
        vertical: Option<usize>,
        #[arg(long, requires = "vertical")]
        phi: Option<usize>,
        #[arg(long, requires = "vertical")]
        psi: Option<usize>,
    },
    /// Whether a 2-functor is a biequivalence.
    Biequiv {
        #[command(flatten)]
        src: Source,
    },
    /// Whether a double functor is a double biequivalence.
    DblBiequiv {
        #[command(flatten)]
        src: Source,
    },
    /// Whether a double functor is a trivial fibration.
    Trivfib {
        #[command(flatten)]
        src: Source,
    },
    /// Build the double category of pseudo-cones over a diagram.
    Cone {
        #[command(flatten)]
        src: Source,
        #[arg(long, value_enum, default_value = "htilde")]
        construction: ConeConstruction,
    },
    /// Build the slice of a double category over an object.
    Slice {
        #[command(flatten)]
        src: Source,
        #[arg(long)]
        object: usize,
        #[arg(long, value_enum, default_value = "general")]
        construction: SliceConstruction,
    },
    /// Decide whether a cone is a homotopy 2-limit three ways and compare.
    CheckLimit {
        #[command(flatten)]
        args: LimitArgs,
    },
    /// Decide whether a cone is a homotopy 2-limit from the definition.
    OracleLimit {
        #[command(flatten)]
        args: LimitArgs,
    },
    /// Level sizes of the truncated nerve.
    Nerve {
        #[command(flatten)]
        src: Source,
        /// Truncation bound `M,T`.
        #[arg(long, value_parser = parse_bound, default_value = "3,3")]
        bound: (usize, usize),
    },
    /// Check the Segal condition on the truncated nerve.
    Segal {
        #[command(flatten)]
        src: Source,
        #[arg(long, value_parser = parse_bound, default_value = "3,3")]
        bound: (usize, usize),
        #[arg(long, value_enum, default_value = "both")]
        direction: Directions,
    },
    /// Search for an isomorphism between two double categories.
    Iso {
        #[command(flatten)]
        src: Source,
        /// File with the second double category.
        #[arg(long, value_name = "FILE")]
        other: PathBuf,
        #[arg(long)]
        other_name: Option<String>,
    },
}

fn parse_bound(s: &str) -> std::result::Result<(usize, usize), String> {
    let (m, t) = s.split_once(',').ok_or("expected M,T")?;
    let n = |x: &str| x.trim().parse::<usize>().map_err(|e| format!("bad bound `{x}`: {e}"));
    Ok((n(m)?, n(t)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Error,
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
            Verdict::Error => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ErrorInfo {
    pub class: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BudgetInfo {
    pub limit: u64,
    pub used: u64,
}

/// What a subcommand printed. A counterexample is present exactly when the
/// verdict is `fail`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub command: Vec<String>,
    pub verdict: Verdict,
    pub result: Map<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorInfo>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub budget: Option<BudgetInfo>,
}

impl Report {
    fn render_text(&self) -> String {
        let mut s = format!("command: {}\nverdict: {}\n", self.command.join(" "), json!(self.verdict).as_str().unwrap_or(""));
        for (k, v) in &self.result {
            s += &format!("{k}: {v}\n");
        }
        if let Some(c) = &self.counterexample {
            s += &format!("counterexample: {c}\n");
        }
        if let Some(e) = &self.error {
            s += &format!("error: {}: {}\n", e.class, e.message);
        }
        if let Some(b) = &self.budget {
            s += &format!("budget: {} of {}\n", b.used, b.limit);
        }
        if let Some(t) = self.timing_ms {
            s += &format!("timing: {t:.3} ms\n");
        }
        s
    }
}

/// A finished check: details, and a counterexample when it failed.
struct Outcome {
    result: Map<String, Value>,
    counterexample: Option<Value>,
}

impl Outcome {
    fn new() -> Self {
        Outcome { result: Map::new(), counterexample: None }
    }

    fn with(mut self, key: &str, value: impl Serialize) -> Self {
        self.result.insert(key.into(), json!(value));
        self
    }

    fn failing(mut self, counterexample: Option<Value>) -> Self {
        self.counterexample = counterexample;
        self
    }
}

/// Runs the command line `args` (program name first), writing the report to
/// `out` and usage errors to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    // The program path varies between machines; echo a fixed name instead.
    let echo: Vec<String> = std::iter::once("conelab".to_string())
        .chain(args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()))
        .collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{}", e.render());
                return 0;
            }
            let _ = write!(err, "{}", e.render());
            if echo.iter().any(|a| a == "--json") {
                let report = Report {
                    command: echo,
                    verdict: Verdict::Error,
                    result: Map::new(),
                    counterexample: None,
                    error: Some(ErrorInfo { class: "usage".into(), message: e.kind().to_string() }),
                    timing_ms: None,
                    budget: None,
                };
                let _ = writeln!(out, "{}", serde_json::to_string(&report).expect("reports serialize"));
            }
            return 2;
        }
    };
    let limit = match resolve_budget(cli.budget) {
        Ok(l) => l,
        Err(e) => {
            let _ = writeln!(err, "{e}");
            return 2;
        }
    };
    let budget = Budget::new(limit);
    let mode = if cli.lax { Mode::Lax } else { Mode::Strict };
    let start = Instant::now();
    let outcome = execute(&cli.command, mode, &budget);
    let elapsed = start.elapsed().as_secs_f64() * 1e3;
    let (verdict, result, counterexample, error) = match outcome {
        Ok(o) => {
            let v = if o.counterexample.is_some() { Verdict::Fail } else { Verdict::Pass };
            (v, o.result, o.counterexample, None)
        }
        Err(e) => (
            Verdict::Error,
            Map::new(),
            None,
            Some(ErrorInfo { class: e.class().into(), message: e.to_string() }),
        ),
    };
    let report = Report {
        command: echo,
        verdict,
        result,
        counterexample,
        error,
        timing_ms: (!cli.deterministic).then_some((elapsed * 1e3).round() / 1e3),
        budget: Some(BudgetInfo { limit, used: budget.used().min(limit) }),
    };
    let text = if cli.json {
        serde_json::to_string(&report).expect("reports serialize") + "\n"
    } else {
        report.render_text()
    };
    if out.write_all(text.as_bytes()).is_err() {
        return 2;
    }
    verdict.exit_code()
}

fn resolve_budget(flag: Option<u64>) -> Result<u64> {
    if let Some(n) = flag {
        return Ok(n);
    }
    match std::env::var(BUDGET_ENV) {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| Error::Precondition(format!("{BUDGET_ENV} must be a non-negative integer, got `{s}`"))),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

fn read(path: &Path) -> Result<Vec<u8>> {
    std::fs::read(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn load_files(paths: &[PathBuf], mode: Mode) -> Result<Library> {
    let mut lib = Library::default();
    for p in paths {
        lib.add(&io::parse_with(&read(p)?, mode)?)?;
    }
    Ok(lib)
}

fn pick(lib: &Library, kind: &str, name: &Option<String>) -> Result<String> {
    match name {
        Some(n) => Ok(n.clone()),
        None => lib
            .last_of(kind)
            .map(str::to_string)
            .ok_or_else(|| Error::NotFound(format!("no {kind} document in the input"))),
    }
}

fn double_input(src: &Source, htilde: bool, mode: Mode) -> Result<(String, Arc<FinDoubleCategory>)> {
    let lib = load_files(&src.inputs, mode)?;
    if htilde {
        let name = pick(&lib, "twocategory", &src.name)?;
        let c = lib.two_category(&name)?;
        Ok((format!("Htilde({name})"), Arc::new(dblcat::embed_htilde(&c)?.double)))
    } else {
        let name = pick(&lib, "doublecategory", &src.name)?;
        let d = lib.double_category(&name)?;
        Ok((name, d))
    }
}

fn report_value(r: &ValidationReport) -> Value {
    json!(r.violations)
}

fn companion_value(p: &CompanionPair) -> Value {
    json!({"horizontal": p.horizontal, "vertical": p.vertical, "phi": p.phi, "psi": p.psi})
}

fn biequivalence_value(x: &BiequivalenceFailure) -> Value {
    match x {
        BiequivalenceFailure::NotEssentiallySurjective { object } => {
            json!({"kind": "not_essentially_surjective", "object": object, "message": x.to_string()})
        }
        BiequivalenceFailure::HomNotEquivalence { a, b } => {
            json!({"kind": "hom_not_equivalence", "hom": [a, b], "message": x.to_string()})
        }
    }
}

fn double_biequivalence_value(x: &DoubleBiequivalenceFailure) -> Value {
    let (part, inner) = match x {
        DoubleBiequivalenceFailure::Horizontal(y) => ("horizontal", y),
        DoubleBiequivalenceFailure::ArrowHom(y) => ("arrow_hom", y),
    };
    json!({"part": part, "failure": biequivalence_value(inner), "message": x.to_string()})
}

fn trivial_fibration_value(x: &TrivialFibrationFailure) -> Value {
    let m = x.to_string();
    match x {
        TrivialFibrationFailure::NotSurjective { object } => {
            json!({"kind": "not_surjective", "object": object, "message": m})
        }
        TrivialFibrationFailure::HorizontalNotFull { x, y, horizontal } => {
            json!({"kind": "horizontal_not_full", "objects": [x, y], "horizontal": horizontal, "message": m})
        }
        TrivialFibrationFailure::VerticalNotFull { x, y, vertical } => {
            json!({"kind": "vertical_not_full", "objects": [x, y], "vertical": vertical, "message": m})
        }
        TrivialFibrationFailure::SquareNotBijective { boundary, square, lifts } => json!({
            "kind": "square_not_bijective",
            "boundary": [boundary.top, boundary.bottom, boundary.left, boundary.right],
            "square": square,
            "lifts": lifts,
            "message": m,
        }),
    }
}

fn segal_value(x: &SegalFailure) -> Value {
    let m = x.to_string();
    match x {
        SegalFailure::NotInjective { direction, m: a, t, first, second } => json!({
            "kind": "not_injective", "direction": direction.name(), "level": [a, t],
            "elements": [first, second], "message": m,
        }),
        SegalFailure::NotSurjective { direction, m: a, t, spine } => json!({
            "kind": "not_surjective", "direction": direction.name(), "level": [a, t],
            "spine": spine, "message": m,
        }),
        SegalFailure::NotAChain { direction, m: a, t, element } => json!({
            "kind": "not_a_chain", "direction": direction.name(), "level": [a, t],
            "element": element, "message": m,
        }),
    }
}

fn counts(d: &FinDoubleCategory) -> Value {
    json!({
        "objects": d.object_count(),
        "horizontals": d.horizontal_count(),
        "verticals": d.vertical_count(),
        "squares": d.square_count(),
    })
}

fn validity(outcome: Outcome, d: &FinDoubleCategory) -> Outcome {
    let report = dblcat::validate_double_category(d);
    let ce = (!report.is_empty()).then(|| report_value(&report));
    outcome.with("valid", ce.is_none()).failing(ce)
}

fn execute(command: &Command, mode: Mode, budget: &Budget) -> Result<Outcome> {
    match command {
        Command::Validate { inputs } => {
            let mut lib = Library::default();
            for p in inputs {
                let added = io::parse_with(&read(p)?, mode).and_then(|docs| lib.add(&docs));
                if let Err(e) = added {
                    let Error::Semantic { document, message } = &e else { return Err(e) };
                    let ce = json!({"file": p.display().to_string(), "document": document, "message": message});
                    return Ok(Outcome::new().with("loaded", lib.order.len()).failing(Some(ce)));
                }
            }
            let docs: Vec<Value> = lib.order.iter().map(|(k, n)| json!({"kind": k, "name": n})).collect();
            Ok(Outcome::new().with("documents", docs))
        }
        Command::Whi { src, htilde } => {
            let (name, d) = double_input(src, *htilde, mode)?;
            let out = Outcome::new().with("double_category", &name);
            match whi_failure(&d)? {
                Some(f) => Ok(out.failing(Some(json!({
                    "horizontal": f,
                    "message": format!("horizontal {f} is an equivalence with no vertical companion"),
                })))),
                None => {
                    let h = dblcat::bold_h(&d);
                    let mut certificate = Vec::new();
                    for f in 0..d.horizontal_count() {
                        if twocat::is_equivalence_1cell(&h, f)?.is_some() {
                            let p = find_companion(&d, f)?
                                .ok_or_else(|| Error::NotFound(format!("companion of horizontal {f}")))?;
                            certificate.push(companion_value(&p));
                        }
                    }
                    Ok(out.with("companions", certificate))
                }
            }
        }
        Command::Companion { src, htilde, horizontal, vertical, phi, psi } => {
            let (name, d) = double_input(src, *htilde, mode)?;
            let out = Outcome::new().with("double_category", &name);
            if let (Some(u), Some(phi), Some(psi)) = (vertical, phi, psi) {
                let p = CompanionPair { horizontal: *horizontal, vertical: *u, phi: *phi, psi: *psi };
                let ok = is_companion(&d, &p)?;
                let out = out.with("pair", companion_value(&p));
                return Ok(if ok {
                    out
                } else {
                    out.failing(Some(json!({"pair": companion_value(&p), "message": "the pair is not a companion pair"})))
                });
            }
            Ok(match find_companion(&d, *horizontal)? {
                Some(p) => out.with("companion", companion_value(&p)),
                None => out.failing(Some(json!({
                    "horizontal": horizontal,
                    "message": format!("horizontal {horizontal} has no vertical companion"),
                }))),
            })
        }
        Command::Biequiv { src } => {
            let lib = load_files(&src.inputs, mode)?;
            let name = pick(&lib, "twofunctor", &src.name)?;
            let f = lib.two_functor(&name)?;
            let out = Outcome::new().with("functor", &name);
            Ok(out.failing(twocat::biequivalence_failure(f)?.as_ref().map(biequivalence_value)))
        }
        Command::DblBiequiv { src } => {
            let lib = load_files(&src.inputs, mode)?;
            let name = pick(&lib, "doublefunctor", &src.name)?;
            let f = lib.double_functor(&name)?;
            let out = Outcome::new().with("functor", &name);
            Ok(out.failing(double_biequivalence_failure(f)?.as_ref().map(double_biequivalence_value)))
        }
        Command::Trivfib { src } => {
            let lib = load_files(&src.inputs, mode)?;
            let name = pick(&lib, "doublefunctor", &src.name)?;
            let f = lib.double_functor(&name)?;
            let out = Outcome::new().with("functor", &name);
            Ok(out.failing(trivial_fibration_failure(f)?.as_ref().map(trivial_fibration_value)))
        }
        Command::Cone { src, construction } => {
            let lib = load_files(&src.inputs, mode)?;
            let out = Outcome::new().with("construction", format!("{construction:?}").to_lowercase());
            let d = match construction {
                ConeConstruction::General => {
                    let name = pick(&lib, "doublefunctor", &src.name)?;
                    let cd: ConeDouble = cones::cone_general(lib.double_functor(&name)?, budget)?;
                    cd.double
                }
                _ => {
                    let name = pick(&lib, "twofunctor", &src.name)?;
                    let k = lib.two_functor(&name)?;
                    match construction {
                        ConeConstruction::Htilde => cones::cone_htilde(k, budget)?.double,
                        ConeConstruction::H => cones::cone_h(k, budget)?.double,
                        _ => cones::cone_explicit(k, budget)?.double,
                    }
                }
            };
            Ok(validity(out.with("counts", counts(&d)), &d))
        }
        Command::Slice { src, object, construction } => {
            let (name, d) = double_input(src, false, mode)?;
            let s = match construction {
                SliceConstruction::General => cones::slice_general(&d, *object, budget)?,
                SliceConstruction::Explicit => cones::slice_explicit(&d, *object, budget)?,
            };
            let out = Outcome::new()
                .with("double_category", &name)
                .with("object", object)
                .with("construction", format!("{construction:?}").to_lowercase())
                .with("counts", counts(&s.double));
            Ok(validity(out, &s.double))
        }
        Command::CheckLimit { args } => {
            let (k, cone, name) = limit_input(args, mode)?;
            let oracle = twocat::oracle_counterexample(&k, &cone, budget)?;
            let h = cones::limit_failure_h(&k, &cone, budget)?;
            let ht = cones::limit_failure_htilde(&k, &cone, budget)?;
            let (a, b, c) = (oracle.is_none(), h.is_none(), ht.is_none());
            if a != b || b != c {
                return Err(Error::Precondition(format!(
                    "criteria disagree: oracle {a}, over H {b}, over Htilde {c}"
                )));
            }
            let out = Outcome::new()
                .with("cone", &name)
                .with("oracle", a)
                .with("h", b)
                .with("htilde", c)
                .with("agree", true);
            Ok(if a {
                out
            } else {
                out.failing(Some(json!({
                    "oracle": oracle_value(oracle),
                    "h": h.as_ref().map(double_biequivalence_value),
                    "htilde": ht.as_ref().map(double_biequivalence_value),
                })))
            })
        }
        Command::OracleLimit { args } => {
            let (k, cone, name) = limit_input(args, mode)?;
            let oracle = twocat::oracle_counterexample(&k, &cone, budget)?;
            let out = Outcome::new().with("cone", &name).with("limit", oracle.is_none());
            Ok(out.failing(oracle.map(|c| oracle_value(Some(c)))))
        }
        Command::Nerve { src, bound } => {
            let (name, d) = double_input(src, false, mode)?;
            let x = truncated_nerve(&d, bound.0, bound.1, budget)?;
            let report = validate_truncation(&x);
            let out = Outcome::new()
                .with("double_category", &name)
                .with("bound", [bound.0, bound.1])
                .with("sizes", &x.sizes);
            Ok(out.failing((!report.is_empty()).then(|| report_value(&report))))
        }
        Command::Segal { src, bound, direction } => {
            let (name, d) = double_input(src, false, mode)?;
            let x = truncated_nerve(&d, bound.0, bound.1, budget)?;
            let mut out = Outcome::new().with("double_category", &name).with("bound", [bound.0, bound.1]);
            let mut first = None;
            for (dir, key) in [(Direction::Horizontal, "horizontal"), (Direction::Vertical, "vertical")] {
                let wanted = match direction {
                    Directions::Both => true,
                    Directions::Horizontal => dir == Direction::Horizontal,
                    Directions::Vertical => dir == Direction::Vertical,
                };
                if !wanted {
                    continue;
                }
                let failure = segal_failure(&x, dir)?;
                out = out.with(key, failure.is_none());
                if first.is_none() {
                    first = failure.as_ref().map(segal_value);
                }
            }
            Ok(out.failing(first))
        }
        Command::Iso { src, other, other_name } => {
            let (name, d) = double_input(src, false, mode)?;
            let lib = load_files(std::slice::from_ref(other), mode)?;
            let oname = pick(&lib, "doublecategory", other_name)?;
            let e = lib.double_category(&oname)?;
            let out = Outcome::new().with("dom", &name).with("cod", &oname);
            Ok(match dblcat::iso_search(&d, &e, budget)? {
                Some(f) => out.with(
                    "isomorphism",
                    json!({"ob_map": f.ob, "h_map": f.h, "v_map": f.v, "sq_map": f.sq}),
                ),
                None => out.failing(Some(json!({
                    "dom_counts": counts(&d),
                    "cod_counts": counts(&e),
                    "message": "no isomorphism exists",
                }))),
            })
        }
    }
}

fn oracle_value(c: Option<usize>) -> Value {
    match c {
        None => Value::Null,
        Some(x) => json!({
            "object": x,
            "message": format!("whiskering from object {x} is not an equivalence onto the pseudo-cones"),
        }),
    }
}

fn limit_input(args: &LimitArgs, mode: Mode) -> Result<(twocat::TwoFunctor, twocat::PseudoCone, String)> {
    let lib = load_files(&[args.diagram.clone(), args.cone.clone()], mode)?;
    let name = pick(&lib, "pseudocone", &args.cone_name)?;
    let c = lib.cone(&name)?;
    let k = lib.two_functor(&c.diagram)?.clone();
    Ok((k, c.cone.clone(), name))
}
