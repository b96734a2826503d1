//! Command-line surface: argument definitions and command execution.
//!
//! Every command produces an [`Outcome`] holding both renderings, so text and
//! JSON output always describe the same result.

use std::fs;
use std::path::{Path as FsPath, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use leavitt::catalog::{
    an_inner, functional_equation_suite, functional_equation_suite_on, inner_formula_suite,
    inner_formula_suite_on, relation_suite, toeplitz_action_table, toeplitz_bracket_suite,
    verify_jacobson, verify_laurent, verify_matrix_iso, witt_table, CatalogError, Check, Report,
    Status, DEFAULT_SEED,
};
use leavitt::deriv::{is_inner_bounded, relation_defects, DerivError, Derivation, InnerSearch};
use leavitt::graph::{Graph, GraphError, Path};
use leavitt::render;
use leavitt::rewrite::{Algebra, Element, RewriteError};
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::deriv_file::{parse_derivation_file, DerivFileError};
use crate::expr::{parse_expression, ExprError};
use crate::graph_file::{parse_graph_file, GraphFileError};

#[derive(Debug, Parser)]
#[command(
    name = "leavitt",
    version,
    about = "Exact computations in Leavitt path algebras and their derivations"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Graph file (`vertex`, `edge <name> : <src> -> <dst>`, `special <vertex> <edge>`)
    #[arg(long, global = true, value_name = "FILE")]
    pub graph: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Seed for randomized suites, decimal or 0x-prefixed hex
    #[arg(long, global = true, value_parser = parse_seed, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Normal form of an expression
    Normalize {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Product of two expressions
    Multiply {
        #[arg(allow_hyphen_values = true)]
        left: String,
        #[arg(allow_hyphen_values = true)]
        right: String,
    },
    /// Image of an expression under the involution
    Star {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Basis words up to a length
    Basis {
        #[arg(long)]
        max_len: usize,
    },
    /// Operations on a single derivation
    #[command(subcommand)]
    Deriv(DerivCommand),
    /// Commutator of two derivations, each given as `cycle:C`, `cycle-star:C`,
    /// `mixed:W,H`, `inner:EXPR` or `file:PATH`
    Bracket {
        #[arg(allow_hyphen_values = true)]
        left: String,
        #[arg(allow_hyphen_values = true)]
        right: String,
    },
    /// Checks a derivation file against every defining relation
    CheckDerivation {
        #[arg(long, value_name = "FILE")]
        file: PathBuf,
    },
    /// Searches for λ with D = ad(λ) among words up to a length
    InnerWitness {
        #[command(flatten)]
        spec: DerivSpec,
        #[arg(long)]
        max_len: usize,
    },
    /// Checks that every composition of the rewriting rules resolves
    Compositions,
    /// Runs a verification suite
    Verify(VerifyArgs),
}

#[derive(Debug, Subcommand)]
pub enum DerivCommand {
    /// Applies a derivation to an expression
    Apply {
        #[command(flatten)]
        spec: DerivSpec,
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct DerivSpec {
    /// Cycle derivation of a cycle such as "a" or "c0 c1"
    #[arg(long, value_name = "C")]
    pub cycle: Option<String>,
    /// Starred cycle derivation
    #[arg(long, value_name = "C")]
    pub cycle_star: Option<String>,
    /// Mixed derivation of the word W H*
    #[arg(long, num_args = 2, value_names = ["W", "H"])]
    pub mixed: Option<Vec<String>>,
    /// Inner derivation ad(EXPR)
    #[arg(long, value_name = "EXPR", allow_hyphen_values = true)]
    pub inner: Option<String>,
    /// Derivation file (JSON object from generator to image)
    #[arg(long, value_name = "FILE")]
    pub file: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub suite: Suite,
    /// Largest index (matrix size, Witt index, power of the loop, line length)
    #[arg(long)]
    pub max_index: Option<usize>,
    /// Word-length bound (Laurent basis, witness searches)
    #[arg(long)]
    pub max_len: Option<usize>,
    /// Number of random samples per graph
    #[arg(long)]
    pub count: Option<usize>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Matrix,
    Laurent,
    Jacobson,
    Witt,
    Toeplitz,
    FunctionalEqs,
    InnerFormulas,
    R2,
    AnInner,
}

fn parse_seed(s: &str) -> Result<u64, String> {
    let parsed = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(&hex.replace('_', ""), 16),
        None => s.replace('_', "").parse(),
    };
    parsed.map_err(|e| format!("invalid seed `{s}`: {e}"))
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {message}")]
    Read { path: String, message: String },
    #[error("{path}: {source}")]
    GraphFile {
        path: String,
        source: GraphFileError,
    },
    #[error("{path}: {source}")]
    DerivFile {
        path: String,
        source: DerivFileError,
    },
    #[error("expression `{text}`: {source}")]
    Expression { text: String, source: ExprError },
    #[error("{0}")]
    Deriv(#[from] DerivError),
    #[error("{0}")]
    Graph(#[from] GraphError),
    #[error("{0}")]
    Rewrite(#[from] RewriteError),
    #[error("{0}")]
    Catalog(#[from] CatalogError),
    #[error("{0}")]
    Usage(String),
}

/// Result of a command that ran to completion.
#[derive(Debug)]
pub struct Outcome {
    pub passed: bool,
    pub text: String,
    pub json: Value,
}

impl Outcome {
    fn ok(text: String, json: Value) -> Outcome {
        Outcome {
            passed: true,
            text,
            json,
        }
    }
}

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILED: u8 = 1;
pub const EXIT_INPUT: u8 = 2;

/// Runs a parsed command line and returns the exit code with the rendered output.
pub fn run(cli: &Cli) -> (u8, String) {
    let name = command_name(&cli.command);
    let result = execute(cli);
    let code = match &result {
        Ok(o) if o.passed => EXIT_OK,
        Ok(_) => EXIT_FAILED,
        Err(_) => EXIT_INPUT,
    };
    let out = match (cli.format, result) {
        (Format::Text, Ok(o)) => o.text,
        (Format::Text, Err(e)) => format!("error: {e}\n"),
        (Format::Json, Ok(o)) => {
            let mut doc = json!({ "command": name, "passed": o.passed });
            if let (Value::Object(doc), Value::Object(body)) = (&mut doc, o.json) {
                doc.extend(body);
            }
            format!(
                "{}\n",
                serde_json::to_string_pretty(&doc).expect("json values serialize")
            )
        }
        (Format::Json, Err(e)) => {
            let doc = json!({ "command": name, "error": e.to_string() });
            format!(
                "{}\n",
                serde_json::to_string_pretty(&doc).expect("json values serialize")
            )
        }
    };
    (code, out)
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Normalize { .. } => "normalize",
        Command::Multiply { .. } => "multiply",
        Command::Star { .. } => "star",
        Command::Basis { .. } => "basis",
        Command::Deriv(DerivCommand::Apply { .. }) => "deriv apply",
        Command::Bracket { .. } => "bracket",
        Command::CheckDerivation { .. } => "check-derivation",
        Command::InnerWitness { .. } => "inner-witness",
        Command::Compositions => "compositions",
        Command::Verify(_) => "verify",
    }
}

fn read(path: &FsPath) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Read {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

fn load_graph(path: &FsPath) -> Result<Arc<Algebra>, CliError> {
    let (g, sel) = parse_graph_file(&read(path)?).map_err(|source| CliError::GraphFile {
        path: path.display().to_string(),
        source,
    })?;
    Ok(Arc::new(Algebra::new(g, sel)?))
}

fn ambient(cli: &Cli) -> Result<Arc<Algebra>, CliError> {
    let path = cli
        .graph
        .as_deref()
        .ok_or_else(|| CliError::Usage("this command needs --graph FILE".into()))?;
    load_graph(path)
}

fn expression(alg: &Algebra, text: &str) -> Result<Element, CliError> {
    parse_expression(alg, text).map_err(|source| CliError::Expression {
        text: text.to_string(),
        source,
    })
}

#[derive(Serialize)]
struct Term {
    word: String,
    coefficient: String,
}

fn element_json(alg: &Algebra, x: &Element) -> Value {
    let terms: Vec<Term> = alg
        .sorted_terms(x)
        .into_iter()
        .map(|(w, c)| Term {
            word: render::word(alg, w),
            coefficient: c.to_string(),
        })
        .collect();
    json!({ "rendered": render::element(alg, x), "terms": terms })
}

fn images_json(d: &Derivation) -> Value {
    let alg = d.algebra();
    let images: Vec<Value> = d
        .nonzero_images()
        .map(|(&l, x)| json!({ "generator": alg.letter_name(l), "image": render::element(alg, x) }))
        .collect();
    Value::Array(images)
}

fn images_text(d: &Derivation) -> String {
    let lines = d.describe();
    if lines.is_empty() {
        "0\n".to_string()
    } else {
        lines.iter().map(|l| format!("{l}\n")).collect()
    }
}

fn paths(g: &Graph, spelled: &str) -> Result<Path, CliError> {
    Ok(Path::parse(g, spelled)?)
}

fn derivation(alg: &Arc<Algebra>, spec: &DerivSpec) -> Result<Derivation, CliError> {
    let g = alg.graph();
    if let Some(c) = &spec.cycle {
        return Ok(Derivation::cycle(alg, &paths(g, c)?)?);
    }
    if let Some(c) = &spec.cycle_star {
        return Ok(Derivation::cycle_star(alg, &paths(g, c)?)?);
    }
    if let Some(wh) = &spec.mixed {
        return Ok(Derivation::mixed(
            alg,
            &paths(g, &wh[0])?,
            &paths(g, &wh[1])?,
        )?);
    }
    if let Some(x) = &spec.inner {
        return Ok(Derivation::inner(alg, &expression(alg, x)?));
    }
    if let Some(path) = &spec.file {
        let asg =
            parse_derivation_file(alg, &read(path)?).map_err(|source| CliError::DerivFile {
                path: path.display().to_string(),
                source,
            })?;
        return Ok(Derivation::new(alg, asg)?);
    }
    Err(CliError::Usage("no derivation given".into()))
}

/// Parses `kind:argument` as used by `bracket`.
fn derivation_from_str(alg: &Arc<Algebra>, text: &str) -> Result<Derivation, CliError> {
    let (kind, arg) = text.split_once(':').ok_or_else(|| {
        CliError::Usage(format!(
            "`{text}`: expected cycle:C, cycle-star:C, mixed:W,H, inner:EXPR or file:PATH"
        ))
    })?;
    let mut spec = DerivSpec {
        cycle: None,
        cycle_star: None,
        mixed: None,
        inner: None,
        file: None,
    };
    match kind.trim() {
        "cycle" => spec.cycle = Some(arg.to_string()),
        "cycle-star" => spec.cycle_star = Some(arg.to_string()),
        "mixed" => {
            let (w, h) = arg
                .split_once(',')
                .ok_or_else(|| CliError::Usage(format!("`{text}`: expected mixed:W,H")))?;
            spec.mixed = Some(vec![w.to_string(), h.to_string()]);
        }
        "inner" => spec.inner = Some(arg.to_string()),
        "file" => spec.file = Some(PathBuf::from(arg)),
        other => {
            return Err(CliError::Usage(format!(
                "unknown derivation kind `{other}`"
            )))
        }
    }
    derivation(alg, &spec)
}

fn single_element(alg: &Algebra, x: &Element, input: Value) -> Outcome {
    let mut body = element_json(alg, x);
    body["input"] = input;
    Outcome::ok(format!("{}\n", render::element(alg, x)), body)
}

fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Normalize { expr } => {
            let alg = ambient(cli)?;
            let x = expression(&alg, expr)?;
            Ok(single_element(&alg, &x, json!(expr)))
        }
        Command::Multiply { left, right } => {
            let alg = ambient(cli)?;
            let x = alg.multiply(&expression(&alg, left)?, &expression(&alg, right)?);
            Ok(single_element(&alg, &x, json!([left, right])))
        }
        Command::Star { expr } => {
            let alg = ambient(cli)?;
            let x = alg.star(&expression(&alg, expr)?);
            Ok(single_element(&alg, &x, json!(expr)))
        }
        Command::Basis { max_len } => {
            let alg = ambient(cli)?;
            let words: Vec<String> = alg
                .enumerate_basis(*max_len)
                .iter()
                .map(|w| render::word(&alg, w))
                .collect();
            let text = words.iter().map(|w| format!("{w}\n")).collect();
            let body = json!({ "max_len": max_len, "count": words.len(), "words": words });
            Ok(Outcome::ok(text, body))
        }
        Command::Deriv(DerivCommand::Apply { spec, expr }) => {
            let alg = ambient(cli)?;
            let d = derivation(&alg, spec)?;
            let x = d.apply(&expression(&alg, expr)?);
            let mut body = element_json(&alg, &x);
            body["input"] = json!(expr);
            body["derivation"] = images_json(&d);
            Ok(Outcome::ok(
                format!("{}\n", render::element(&alg, &x)),
                body,
            ))
        }
        Command::Bracket { left, right } => {
            let alg = ambient(cli)?;
            let l = derivation_from_str(&alg, left)?;
            let r = derivation_from_str(&alg, right)?;
            let b = l.bracket(&r)?;
            let body = json!({
                "left": images_json(&l),
                "right": images_json(&r),
                "result": images_json(&b),
            });
            Ok(Outcome::ok(images_text(&b), body))
        }
        Command::CheckDerivation { file } => {
            let alg = ambient(cli)?;
            let asg = parse_derivation_file(&alg, &read(file)?).map_err(|source| {
                CliError::DerivFile {
                    path: file.display().to_string(),
                    source,
                }
            })?;
            let defects = relation_defects(&alg, &asg)?;
            let mut report = Report::new("check-derivation");
            for d in &defects {
                report.check(d.relation(&alg), false, d.describe(&alg));
            }
            if defects.is_empty() {
                let n = alg.rules().len();
                report.check("relations", true, format!("all {n} relations hold"));
            }
            Ok(report_outcome(&[report]))
        }
        Command::InnerWitness { spec, max_len } => {
            let alg = ambient(cli)?;
            let d = derivation(&alg, spec)?;
            Ok(match is_inner_bounded(&d, *max_len) {
                InnerSearch::Witness(lambda) => {
                    let mut body = element_json(&alg, &lambda);
                    body["max_len"] = json!(max_len);
                    body["witness"] = json!(true);
                    Outcome::ok(format!("{}\n", render::element(&alg, &lambda)), body)
                }
                InnerSearch::NoneWithinBound => Outcome {
                    passed: false,
                    text: format!("no witness of length ≤ {max_len}\n"),
                    json: json!({ "max_len": max_len, "witness": false }),
                },
            })
        }
        Command::Compositions => {
            let alg = ambient(cli)?;
            let defects = alg.check_compositions();
            let mut report = Report::new("compositions");
            for d in &defects {
                let word = render::letters(&alg, &d.word);
                let side = |r: &Result<Element, RewriteError>| match r {
                    Ok(x) => render::element(&alg, x),
                    Err(e) => e.to_string(),
                };
                report.check(
                    word,
                    false,
                    format!("{} ≠ {}", side(&d.left), side(&d.right)),
                );
            }
            if defects.is_empty() {
                report.check("closed", true, "every composition resolves");
            }
            Ok(report_outcome(&[report]))
        }
        Command::Verify(args) => verify(cli, args),
    }
}

fn report_outcome(reports: &[Report]) -> Outcome {
    let checks: Vec<&Check> = reports.iter().flat_map(|r| &r.checks).collect();
    let failed = checks.iter().filter(|c| c.status == Status::Fail).count();
    let passed = failed == 0;
    let mut text: String = reports.iter().map(|r| r.to_string()).collect();
    text.push_str(&format!(
        "{}: {} checks, {failed} failed\n",
        if passed { "PASS" } else { "FAIL" },
        checks.len()
    ));
    Outcome {
        passed,
        text,
        json: json!({ "checks": checks }),
    }
}

/// Named shapes that the fixed-ambient suites accept for `--graph`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
enum Shape {
    Line,
    Loop,
    LoopWithExit,
}

fn shape_of(g: &Graph) -> Option<Shape> {
    let (nv, ne) = (g.vertex_count(), g.edge_count());
    let is_loop = |e| g.source(e) == g.range(e);
    if nv == 1 && ne == 1 {
        return Some(Shape::Loop);
    }
    if nv == 2 && ne == 2 {
        let loops: Vec<_> = g.edges().filter(|&e| is_loop(e)).collect();
        let exits: Vec<_> = g.edges().filter(|&e| !is_loop(e)).collect();
        if loops.len() == 1 && exits.len() == 1 && g.source(loops[0]) == g.source(exits[0]) {
            return Some(Shape::LoopWithExit);
        }
    }
    if nv >= 2 && ne == nv - 1 {
        let mut indegree = vec![0usize; nv];
        for e in g.edges() {
            if is_loop(e) {
                return None;
            }
            indegree[g.range(e).index()] += 1;
        }
        let starts: Vec<_> = g.vertices().filter(|v| indegree[v.index()] == 0).collect();
        let simple = g
            .vertices()
            .all(|v| g.out_edges(v).len() <= 1 && indegree[v.index()] <= 1);
        if starts.len() == 1 && simple {
            let mut v = starts[0];
            let mut seen = 1;
            while let Some(&e) = g.out_edges(v).first() {
                v = g.range(e);
                seen += 1;
            }
            if seen == nv {
                return Some(Shape::Line);
            }
        }
    }
    None
}

/// Loads `--graph` when given and checks that it has the shape a suite needs.
fn expect_shape(cli: &Cli, suite: &str, shape: Shape) -> Result<Option<usize>, CliError> {
    let Some(path) = &cli.graph else {
        return Ok(None);
    };
    let alg = load_graph(path)?;
    let g = alg.graph();
    if shape_of(g) != Some(shape) {
        let wanted = match shape {
            Shape::Line => "a line v1 → … → vn",
            Shape::Loop => "a single vertex with one loop",
            Shape::LoopWithExit => "a loop at v with one exit edge v → u",
        };
        return Err(CliError::Usage(format!(
            "`verify {suite}` needs {wanted}; {} is not",
            path.display()
        )));
    }
    Ok(Some(g.vertex_count()))
}

fn verify(cli: &Cli, args: &VerifyArgs) -> Result<Outcome, CliError> {
    let count = args.count.unwrap_or(200);
    let reports = match args.suite {
        Suite::Matrix => match expect_shape(cli, "matrix", Shape::Line)? {
            Some(n) => vec![verify_matrix_iso(n)?],
            None => (2..=args.max_index.unwrap_or(5).max(2))
                .map(verify_matrix_iso)
                .collect::<Result<_, _>>()?,
        },
        Suite::Laurent => {
            expect_shape(cli, "laurent", Shape::Loop)?;
            vec![verify_laurent(args.max_len.unwrap_or(8))?]
        }
        Suite::Jacobson => {
            expect_shape(cli, "jacobson", Shape::LoopWithExit)?;
            vec![verify_jacobson()]
        }
        Suite::Witt => {
            expect_shape(cli, "witt", Shape::Loop)?;
            vec![witt_table(args.max_index.unwrap_or(4))?]
        }
        Suite::Toeplitz => {
            expect_shape(cli, "toeplitz", Shape::LoopWithExit)?;
            let n = args.max_index.unwrap_or(5);
            vec![
                toeplitz_action_table(n)?,
                toeplitz_bracket_suite(n, args.max_len.unwrap_or(6))?,
            ]
        }
        Suite::FunctionalEqs => vec![match &cli.graph {
            Some(path) => {
                let graphs = [(graph_label(path), load_graph(path)?)];
                let graphs: Vec<(&str, Arc<Algebra>)> = graphs
                    .iter()
                    .map(|(n, a)| (n.as_str(), a.clone()))
                    .collect();
                functional_equation_suite_on(&graphs, cli.seed, count)
            }
            None => functional_equation_suite(cli.seed, count),
        }],
        Suite::InnerFormulas => vec![match &cli.graph {
            Some(path) => {
                let graphs = [(graph_label(path), load_graph(path)?)];
                let graphs: Vec<(&str, Arc<Algebra>)> = graphs
                    .iter()
                    .map(|(n, a)| (n.as_str(), a.clone()))
                    .collect();
                inner_formula_suite_on(&graphs, cli.seed, count)
            }
            None => inner_formula_suite(cli.seed, count),
        }],
        Suite::R2 => {
            if cli.graph.is_some() {
                return Err(CliError::Usage(
                    "`verify r2` runs on built-in graphs and takes no --graph".into(),
                ));
            }
            vec![relation_suite(args.max_len.unwrap_or(4))]
        }
        Suite::AnInner => match expect_shape(cli, "an-inner", Shape::Line)? {
            Some(n) => vec![an_inner(n)?],
            None => vec![an_inner(args.max_index.unwrap_or(4))?],
        },
    };
    let mut outcome = report_outcome(&reports);
    outcome.json["suites"] = json!(reports.iter().map(|r| &r.suite).collect::<Vec<_>>());
    outcome.json["seed"] = json!(cli.seed);
    Ok(outcome)
}

fn graph_label(path: &FsPath) -> String {
    path.file_stem()
        .map_or_else(|| "graph".to_string(), |s| s.to_string_lossy().into_owned())
}
