//! The `wbr` command line: exact walled Brauer algebra computations from
//! the shell.
//!
//! Verbs:
//!
//! - `dims`, `updown` — size and explicit listing of the up-down tableaux
//!   of one cell module,
//! - `gamma` — a single branching coefficient,
//! - `gram-det`, `gram-table` — factored Gram determinants, for one module
//!   or for every module of a pair of contexts,
//! - `blocks` — the n-balanced block partition at specialized parameters,
//! - `simple-head` — the Gram-nonvanishing criterion with a diagnosis,
//! - `qdim` — the quantum dimension of a partition,
//! - `residue-check` — the two independent routes to the wall coefficients,
//! - `selftest` — the built-in verification suite (`--quick` for a reduced
//!   sweep).
//!
//! Exit codes: 0 on success, 1 on a domain error (malformed flags, shapes,
//! parameters or bounds), 2 on an internal invariant violation. Identical
//! invocations produce byte-identical output.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use wbr_core::blocks::{blocks, is_simple_head};
use wbr_core::coefficients::{e_diag, e_diag_via_residue, quantum_dim};
use wbr_core::gram::{dim_cell, gamma, gram_det, GramReport};
use wbr_core::partitions::{enumerate_lambda, partitions_of, Bipartition, LambdaPoint, Partition};
use wbr_core::scalars::SpecializationParams;
use wbr_core::selftest;
use wbr_core::tableaux::{enumerate_updown, tableau_max, UpDownTableau};

const DEFAULT_TABLE_BOUND: u32 = 7;

#[derive(Parser)]
#[command(
    name = "wbr",
    version,
    about = "Exact Gram determinants and block theory for quantized walled Brauer algebras"
)]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand)]
enum Verb {
    /// Dimension of the cell module at (f, shape) in B_{r,t}
    Dims(PointArgs),
    /// List the up-down tableaux of one cell module, most dominant first
    Updown(PointArgs),
    /// Branching coefficient into (f, shape) from a penultimate point
    Gamma(GammaArgs),
    /// Factored and expanded Gram determinant of one cell module
    GramDet(PointArgs),
    /// Gram determinants of every cell module of B_{r,t}
    GramTable(TableArgs),
    /// Partition of the cell modules of B_{r,t} into blocks
    Blocks(BlocksArgs),
    /// Whether a cell module keeps a simple head under specialization
    SimpleHead(SimpleHeadArgs),
    /// Quantum dimension of a single partition
    Qdim(QdimArgs),
    /// Cross-check the residue route to the wall coefficients
    ResidueCheck(ResidueArgs),
    /// Run the built-in verification suite
    Selftest(SelftestArgs),
}

#[derive(Args)]
struct ContextArgs {
    /// Tensor factors left of the wall
    #[arg(long)]
    r: u32,
    /// Dual tensor factors right of the wall
    #[arg(long)]
    t: u32,
}

#[derive(Args)]
struct PointArgs {
    #[command(flatten)]
    context: ContextArgs,
    /// Contractions across the wall
    #[arg(long)]
    f: u32,
    /// Bipartition `first|second` (e.g. `2,1|1`; `-` is the empty side)
    #[arg(long)]
    shape: String,
    #[command(flatten)]
    render: RenderArgs,
}

#[derive(Args)]
struct GammaArgs {
    #[command(flatten)]
    point: PointArgs,
    /// Contractions of the penultimate point
    #[arg(long)]
    mu_f: u32,
    /// Shape of the penultimate point
    #[arg(long)]
    mu_shape: String,
}

#[derive(Args)]
struct TableArgs {
    #[command(flatten)]
    context: ContextArgs,
    /// Largest admissible r+t (defaults to 7; config key `bound`)
    #[arg(long)]
    bound: Option<u32>,
    #[command(flatten)]
    render: RenderArgs,
}

#[derive(Args)]
struct BlocksArgs {
    #[command(flatten)]
    context: ContextArgs,
    /// Specialization `e=<int|inf>,p=<prime|0>,n=<int|generic>`
    #[arg(long)]
    params: String,
    #[command(flatten)]
    render: RenderArgs,
}

#[derive(Args)]
struct SimpleHeadArgs {
    #[command(flatten)]
    point: PointArgs,
    /// Specialization `e=<int|inf>,p=<prime|0>,n=<int|generic>`
    #[arg(long)]
    params: String,
}

#[derive(Args)]
struct QdimArgs {
    /// Partition in comma grammar (e.g. `3,1`; `-` is empty)
    #[arg(long)]
    shape: String,
    #[command(flatten)]
    render: RenderArgs,
}

#[derive(Args)]
struct ResidueArgs {
    /// Position of the single step right of the wall
    #[arg(long)]
    r: u32,
    #[command(flatten)]
    render: RenderArgs,
}

#[derive(Args)]
struct SelftestArgs {
    /// Run the reduced-scale subset
    #[arg(long)]
    quick: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct RenderArgs {
    /// Output format (defaults to text; config key `format`)
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write the report to this file instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
    /// `key=value` file overriding defaults (keys `bound`, `format`)
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Debug)]
enum CliError {
    /// Invalid user input; the process exits with code 1.
    Domain(String),
    /// A broken internal invariant; the process exits with code 2.
    Internal(String),
}

impl CliError {
    fn domain(message: impl Into<String>) -> Self {
        CliError::Domain(message.into())
    }

    fn internal(message: impl ToString) -> Self {
        CliError::Internal(message.to_string())
    }
}

struct Report {
    body: String,
    destination: Option<PathBuf>,
    /// Set by `selftest` when criteria fail: the body is still written, but
    /// the process exits with the internal-invariant code.
    violated: bool,
}

impl Report {
    fn new(body: String, destination: Option<PathBuf>) -> Self {
        Report { body, destination, violated: false }
    }
}

#[derive(Debug, Default, PartialEq, Eq)]
struct Config {
    bound: Option<u32>,
    format: Option<Format>,
}

fn load_config(path: &PathBuf) -> Result<Config, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::domain(format!("cannot read config `{}`: {e}", path.display())))?;
    parse_config(&text)
}

/// Parses the `key=value` grammar; `#` starts a comment line.
fn parse_config(text: &str) -> Result<Config, CliError> {
    let mut config = Config::default();
    for (index, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            CliError::domain(format!("config line {}: expected key=value, got `{line}`", index + 1))
        })?;
        let value = value.trim();
        match key.trim() {
            "bound" => {
                let bound = value.parse().map_err(|_| {
                    CliError::domain(format!("config line {}: bad bound `{value}`", index + 1))
                })?;
                config.bound = Some(bound);
            }
            "format" => {
                config.format = Some(match value {
                    "text" => Format::Text,
                    "json" => Format::Json,
                    other => {
                        return Err(CliError::domain(format!(
                            "config line {}: unknown format `{other}`",
                            index + 1
                        )))
                    }
                });
            }
            other => {
                return Err(CliError::domain(format!(
                    "config line {}: unknown key `{other}`",
                    index + 1
                )))
            }
        }
    }
    Ok(config)
}

/// Effective rendering options: flag beats config beats default.
struct Rendering {
    format: Format,
    bound: u32,
    destination: Option<PathBuf>,
}

fn resolve(render: &RenderArgs, bound_flag: Option<u32>) -> Result<Rendering, CliError> {
    let config = match &render.config {
        Some(path) => load_config(path)?,
        None => Config::default(),
    };
    Ok(Rendering {
        format: render.format.or(config.format).unwrap_or(Format::Text),
        bound: bound_flag.or(config.bound).unwrap_or(DEFAULT_TABLE_BOUND),
        destination: render.output.clone(),
    })
}

fn parse_point(context: &ContextArgs, f: u32, shape: &str) -> Result<LambdaPoint, CliError> {
    let shape = Bipartition::parse(shape).map_err(|e| CliError::domain(e.to_string()))?;
    let point = LambdaPoint::new(f, shape);
    if point.r() != context.r || point.t() != context.t {
        return Err(CliError::domain(format!(
            "point ({}, {}) needs r = {} and t = {}, got r = {} and t = {}",
            point.f,
            point.shape,
            point.r(),
            point.t(),
            context.r,
            context.t
        )));
    }
    Ok(point)
}

fn render_json(value: &Value) -> String {
    let mut body = serde_json::to_string_pretty(value).expect("reports serialize");
    body.push('\n');
    body
}

fn dims_verb(args: &PointArgs) -> Result<Report, CliError> {
    let rendering = resolve(&args.render, None)?;
    let point = parse_point(&args.context, args.f, &args.shape)?;
    let dimension = dim_cell(point.f, &point.shape, args.context.r, args.context.t);
    let body = match rendering.format {
        Format::Text => format!("{dimension}\n"),
        Format::Json => render_json(&json!({
            "shape": point.to_json(),
            "dimension": dimension,
        })),
    };
    Ok(Report::new(body, rendering.destination))
}

/// One tableau on one line: its shape chain from `-|-` to the final shape.
fn chain(tab: &UpDownTableau) -> String {
    let steps: Vec<String> = tab.shapes().iter().map(ToString::to_string).collect();
    steps.join(" -> ")
}

fn updown_verb(args: &PointArgs) -> Result<Report, CliError> {
    let rendering = resolve(&args.render, None)?;
    let point = parse_point(&args.context, args.f, &args.shape)?;
    let tableaux = enumerate_updown(args.context.r, args.context.t, &point.shape)
        .map_err(CliError::internal)?;
    let body = match rendering.format {
        Format::Text => {
            let mut lines = String::new();
            for tab in &tableaux {
                lines.push_str(&chain(tab));
                lines.push('\n');
            }
            lines
        }
        Format::Json => {
            render_json(&Value::Array(tableaux.iter().map(UpDownTableau::to_json).collect()))
        }
    };
    Ok(Report::new(body, rendering.destination))
}

fn gamma_verb(args: &GammaArgs) -> Result<Report, CliError> {
    let rendering = resolve(&args.point.render, None)?;
    let lambda = parse_point(&args.point.context, args.point.f, &args.point.shape)?;
    let mu_shape =
        Bipartition::parse(&args.mu_shape).map_err(|e| CliError::domain(e.to_string()))?;
    let mu = LambdaPoint::new(args.mu_f, mu_shape);
    let value = gamma(&lambda, &mu).map_err(|e| CliError::domain(e.to_string()))?;
    let body = match rendering.format {
        Format::Text => format!("{value}\n"),
        Format::Json => render_json(&json!({
            "lambda": lambda.to_json(),
            "mu": mu.to_json(),
            "gamma": value.to_json(),
        })),
    };
    Ok(Report::new(body, rendering.destination))
}

fn gram_det_verb(args: &PointArgs) -> Result<Report, CliError> {
    let rendering = resolve(&args.render, None)?;
    let point = parse_point(&args.context, args.f, &args.shape)?;
    let report = gram_det(point.f, &point.shape, args.context.r, args.context.t)
        .map_err(CliError::internal)?;
    let body = match rendering.format {
        Format::Text => format!("{}\n", report.determinant),
        Format::Json => render_json(&report.to_json()),
    };
    Ok(Report::new(body, rendering.destination))
}

fn gram_table_verb(args: &TableArgs) -> Result<Report, CliError> {
    let rendering = resolve(&args.render, args.bound)?;
    let (r, t) = (args.context.r, args.context.t);
    if r + t > rendering.bound {
        return Err(CliError::domain(format!(
            "bound exceeded: r + t = {} is larger than the configured bound {}",
            r + t,
            rendering.bound
        )));
    }
    let mut rows = Vec::new();
    for point in enumerate_lambda(r, t) {
        rows.push(gram_det(point.f, &point.shape, r, t).map_err(CliError::internal)?);
    }
    let body = match rendering.format {
        Format::Text => {
            let mut lines = String::new();
            for report in &rows {
                lines.push_str(&format!("{}: {}\n", report.shape, report.determinant));
            }
            lines
        }
        Format::Json => render_json(&Value::Array(rows.iter().map(GramReport::to_json).collect())),
    };
    Ok(Report::new(body, rendering.destination))
}

fn blocks_verb(args: &BlocksArgs) -> Result<Report, CliError> {
    let rendering = resolve(&args.render, None)?;
    let params =
        SpecializationParams::parse(&args.params).map_err(|e| CliError::domain(e.to_string()))?;
    let partition = blocks(args.context.r, args.context.t, &params)
        .map_err(|e| CliError::domain(e.to_string()))?;
    let body = match rendering.format {
        Format::Text => {
            let mut lines = String::new();
            for (index, class) in partition.classes.iter().enumerate() {
                let members: Vec<String> = class.iter().map(ToString::to_string).collect();
                lines.push_str(&format!("class {}: {}\n", index + 1, members.join(", ")));
            }
            lines
        }
        Format::Json => render_json(&partition.to_json()),
    };
    Ok(Report::new(body, rendering.destination))
}

fn simple_head_verb(args: &SimpleHeadArgs) -> Result<Report, CliError> {
    let rendering = resolve(&args.point.render, None)?;
    let point = parse_point(&args.point.context, args.point.f, &args.point.shape)?;
    let params =
        SpecializationParams::parse(&args.params).map_err(|e| CliError::domain(e.to_string()))?;
    let verdict = is_simple_head(
        point.f,
        &point.shape,
        args.point.context.r,
        args.point.context.t,
        &params,
    );
    let body = match rendering.format {
        Format::Text => match &verdict.cause {
            None => "simple head: yes\n".to_string(),
            Some(cause) => format!("simple head: no — {cause}\n"),
        },
        Format::Json => render_json(&verdict.to_json()),
    };
    Ok(Report::new(body, rendering.destination))
}

fn qdim_verb(args: &QdimArgs) -> Result<Report, CliError> {
    let rendering = resolve(&args.render, None)?;
    let alpha = Partition::parse(&args.shape).map_err(|e| CliError::domain(e.to_string()))?;
    let dim = quantum_dim(&alpha);
    let body = match rendering.format {
        Format::Text => format!("{dim}\n"),
        Format::Json => render_json(&json!({
            "shape": alpha.to_json(),
            "qdim": dim.to_json(),
        })),
    };
    Ok(Report::new(body, rendering.destination))
}

fn residue_check_verb(args: &ResidueArgs) -> Result<Report, CliError> {
    let rendering = resolve(&args.render, None)?;
    if args.r == 0 {
        return Err(CliError::domain("r must be at least 1"));
    }
    let r = args.r;
    let mut text = String::new();
    let mut rows = Vec::new();
    let mut checked = 0u32;
    // One representative tableau per wall pair (μ ⊢ r−1, addable box): both
    // routes only read the pair, so this covers every eligible tableau.
    for mu in partitions_of(r - 1) {
        let below = Bipartition::new(mu.clone(), Partition::empty());
        let mut shapes = tableau_max(0, &below, r - 1, 0)
            .map_err(CliError::internal)?
            .shapes()
            .to_vec();
        for node in mu.addable_nodes() {
            let grown = mu.with_box(node).map_err(CliError::internal)?;
            shapes.push(Bipartition::new(grown, Partition::empty()));
            shapes.push(below.clone());
            let tab = UpDownTableau::new(r, 1, shapes.clone()).map_err(CliError::internal)?;
            shapes.truncate(shapes.len() - 2);
            let via_residue = e_diag_via_residue(&tab).map_err(CliError::internal)?;
            let direct = e_diag(&tab).map_err(CliError::internal)?.expand();
            if via_residue != direct {
                return Err(CliError::Internal(format!(
                    "residue route disagrees for mu = {mu} with box ({}, {}): {via_residue} vs {direct}",
                    node.row, node.col
                )));
            }
            text.push_str(&format!("mu={mu} box=({},{}): ok\n", node.row, node.col));
            rows.push(json!({
                "mu": mu.to_json(),
                "box": [node.row, node.col],
                "value": via_residue.to_string(),
                "agree": true,
            }));
            checked += 1;
        }
    }
    text.push_str(&format!("checked {checked} wall pairs at r = {r}\n"));
    let body = match rendering.format {
        Format::Text => text,
        Format::Json => render_json(&Value::Array(rows)),
    };
    Ok(Report::new(body, rendering.destination))
}

fn selftest_verb(args: &SelftestArgs) -> Result<Report, CliError> {
    let outcomes = selftest::run_all(args.quick);
    let mut body = String::new();
    let mut passed = 0usize;
    for outcome in &outcomes {
        // Rendered without the timing suffix so that identical invocations
        // stay byte-identical.
        body.push_str(&format!(
            "criterion {:02} ({}): {} — {}\n",
            outcome.number,
            outcome.name,
            if outcome.passed { "PASS" } else { "FAIL" },
            outcome.detail
        ));
        if outcome.passed {
            passed += 1;
        }
    }
    body.push_str(&format!("{passed}/{} criteria passed\n", outcomes.len()));
    let mut report = Report::new(body, None);
    report.violated = passed != outcomes.len();
    Ok(report)
}

fn run(verb: &Verb) -> Result<Report, CliError> {
    match verb {
        Verb::Dims(args) => dims_verb(args),
        Verb::Updown(args) => updown_verb(args),
        Verb::Gamma(args) => gamma_verb(args),
        Verb::GramDet(args) => gram_det_verb(args),
        Verb::GramTable(args) => gram_table_verb(args),
        Verb::Blocks(args) => blocks_verb(args),
        Verb::SimpleHead(args) => simple_head_verb(args),
        Verb::Qdim(args) => qdim_verb(args),
        Verb::ResidueCheck(args) => residue_check_verb(args),
        Verb::Selftest(args) => selftest_verb(args),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // Help and version render on stdout and exit cleanly; every
            // parse failure is a domain error.
            let code = u8::from(err.use_stderr());
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli.verb) {
        Ok(report) => {
            if let Some(path) = &report.destination {
                if let Err(e) = fs::write(path, &report.body) {
                    eprintln!("error: cannot write `{}`: {e}", path.display());
                    return ExitCode::from(1);
                }
            } else {
                print!("{}", report.body);
            }
            if report.violated {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(CliError::Domain(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
        Err(CliError::Internal(message)) => {
            eprintln!("internal error: {message}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_grammar_accepts_comments_and_both_keys() {
        let config = parse_config("# table defaults\nbound = 9\nformat = json\n").unwrap();
        assert_eq!(config, Config { bound: Some(9), format: Some(Format::Json) });
        assert_eq!(parse_config("").unwrap(), Config::default());
    }

    #[test]
    fn config_grammar_rejects_unknown_keys_and_bad_values() {
        assert!(matches!(parse_config("depth = 3"), Err(CliError::Domain(_))));
        assert!(matches!(parse_config("bound = seven"), Err(CliError::Domain(_))));
        assert!(matches!(parse_config("format = yaml"), Err(CliError::Domain(_))));
        assert!(matches!(parse_config("just a line"), Err(CliError::Domain(_))));
    }

    #[test]
    fn flags_beat_config_beats_default() {
        let render = RenderArgs { format: Some(Format::Text), output: None, config: None };
        let rendering = resolve(&render, Some(5)).unwrap();
        assert_eq!(rendering.format, Format::Text);
        assert_eq!(rendering.bound, 5);
        let render = RenderArgs { format: None, output: None, config: None };
        let rendering = resolve(&render, None).unwrap();
        assert_eq!(rendering.format, Format::Text);
        assert_eq!(rendering.bound, DEFAULT_TABLE_BOUND);
    }

    #[test]
    fn points_are_validated_against_their_context() {
        let context = ContextArgs { r: 2, t: 2 };
        assert!(parse_point(&context, 1, "1|1").is_ok());
        assert!(matches!(parse_point(&context, 0, "1|1"), Err(CliError::Domain(_))));
        assert!(matches!(parse_point(&context, 1, "not a shape"), Err(CliError::Domain(_))));
    }

    #[test]
    fn command_line_grammar_parses() {
        let cli = Cli::try_parse_from([
            "wbr", "gram-det", "--r", "2", "--t", "2", "--f", "1", "--shape", "1|1",
        ])
        .unwrap();
        assert!(matches!(cli.verb, Verb::GramDet(_)));
        assert!(Cli::try_parse_from(["wbr", "gram-det", "--r", "2"]).is_err());
    }
}
