mod facepair;
mod rows;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{CommandFactory, FromArgMatches, Parser, Subcommand, ValueEnum};
use ribbon_genus::genus::SearchBudget;
use ribbon_genus::presentation::{ParseError, Presentation};
use ribbon_genus::ribbon::{Convention, RibbonGraph};
use serde::Serialize;
use thiserror::Error;

use rows::Row;

/// Bumped whenever a JSON output changes shape.
pub const SCHEMA: u32 = 1;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Compute(String),
}

impl CliError {
    fn parse(text: &str, e: &ParseError) -> CliError {
        let pad = " ".repeat(e.column.saturating_sub(1));
        CliError::Input(format!("{e}\n  {text}\n  {pad}^"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ConventionArg {
    #[value(name = "A")]
    A,
    #[value(name = "B")]
    B,
}

#[derive(Debug, Parser)]
#[command(name = "ribbon-genus", version, about = "Genus of ribbon surfaces of group presentations")]
struct Cli {
    /// Disc orientation convention for the ribbon surface.
    #[arg(long, global = true, value_enum, ignore_case = true)]
    convention: Option<ConventionArg>,
    /// Seed for randomized searches.
    #[arg(long, global = true, env = "RIBBON_GENUS_SEED", default_value_t = 0)]
    seed: u64,
    /// Node budget: exhaustive search up to this many classes, otherwise
    /// this many annealing steps (pairings, for the face-pairing census).
    #[arg(long, global = true, default_value_t = SearchBudget::default().max_nodes)]
    budget: u64,
    /// Wall-clock limit in seconds. Results may then depend on timing.
    #[arg(long, global = true)]
    time_limit: Option<f64>,
    /// Enumerate every class regardless of the budget.
    #[arg(long, global = true)]
    exhaustive: bool,
    /// Exit with status 2 when a result is only a bound.
    #[arg(long, global = true)]
    require_exact: bool,
    /// Worker threads for batch and census work.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, clap::Args)]
struct Input {
    /// Presentation such as "<a,b | a b^2 a^-1 b^-3>".
    presentation: Option<String>,
    /// Read one presentation per line instead; blank and `#` lines skipped.
    #[arg(long, conflicts_with = "presentation")]
    file: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum NormalizeKind {
    /// Shorten exponent runs.
    Exp,
    /// Make every generator occur exactly three times.
    Deg3,
    /// Add a generator making the surface connected.
    Connect,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ExpRule {
    GenusSafe,
    Mod2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Layout {
    Oriented,
    Literal,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Genus of the canonical ribbon surface.
    Genus(Input),
    /// Minimum genus over slot shuffles.
    ShuffleMin(Input),
    /// Minimum genus of the link graph over all rotation systems.
    LinkGenus(Input),
    /// All genus notions with the chain check and the length bound.
    Report(Input),
    /// Search Tietze moves for a lower-genus presentation.
    GroupGenus {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 2)]
        depth: usize,
    },
    /// Genus-preserving rewrites.
    Normalize {
        #[arg(value_enum)]
        kind: NormalizeKind,
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = ExpRule::GenusSafe)]
        rule: ExpRule,
        #[arg(long, value_enum, default_value_t = Layout::Oriented)]
        layout: Layout,
    },
    /// Plumb the surfaces of two one-relator presentations on the same
    /// generators and compare with the two-relator surface.
    Plumb { first: String, second: String },
    /// Face-pairing quotients of a triangulated ball.
    Facepair {
        #[command(subcommand)]
        command: facepair::FacepairCommand,
    },
    /// Graphviz rendering of the ribbon surface.
    ExportDot {
        presentation: String,
        /// Draw the minimizing shuffle instead of the canonical surface.
        #[arg(long)]
        shuffle_min: bool,
    },
}

pub struct Ctx {
    pub convention: Convention,
    pub budget: SearchBudget,
    pub format: Format,
    pub require_exact: bool,
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    schema: u32,
    #[serde(flatten)]
    body: &'a T,
}

pub fn json_line<T: Serialize>(body: &T) -> Result<String, CliError> {
    serde_json::to_string(&Envelope { schema: SCHEMA, body }).map_err(|e| CliError::Compute(e.to_string()))
}

pub fn parse_presentation(text: &str) -> Result<Presentation, CliError> {
    text.parse().map_err(|e| CliError::parse(text, &e))
}

fn read(path: &PathBuf) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.clone(), source })
}

/// Inline presentation or the lines of a batch file, with 1-based line
/// numbers for the latter.
fn inputs(input: &Input) -> Result<(Vec<(usize, String)>, bool), CliError> {
    match (&input.presentation, &input.file) {
        (Some(p), None) => Ok((vec![(1, p.clone())], false)),
        (None, Some(path)) => {
            let text = read(path)?;
            let lines = text
                .lines()
                .enumerate()
                .map(|(i, l)| (i + 1, l.trim().to_string()))
                .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
                .collect();
            Ok((lines, true))
        }
        _ => Err(CliError::Input("give a presentation or --file".into())),
    }
}

fn run_rows<R: Row + Send>(
    ctx: &Ctx,
    input: &Input,
    f: impl Fn(&Presentation) -> Result<R, CliError> + Sync,
) -> Result<ExitCode, CliError> {
    let (lines, batch) = inputs(input)?;
    let results = rows::compute(&lines, |text| f(&parse_presentation(text)?));
    rows::emit(ctx, &lines, &results, batch)
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    let convention = match cli.convention {
        Some(ConventionArg::A) => Convention::Aligned,
        Some(ConventionArg::B) => Convention::Mirrored,
        None => Convention::default(),
    };
    let time_limit = match cli.time_limit {
        Some(t) if t.is_finite() && t > 0.0 => Some(Duration::from_secs_f64(t)),
        Some(t) => return Err(CliError::Input(format!("invalid time limit {t}"))),
        None => None,
    };
    let budget = SearchBudget { max_nodes: cli.budget, seed: cli.seed, time_limit, exhaustive: cli.exhaustive };
    let ctx = Ctx { convention, budget, format: cli.format, require_exact: cli.require_exact };
    if let Some(n) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global()
            .map_err(|e| CliError::Compute(e.to_string()))?;
    }

    match &cli.command {
        Command::Genus(input) => run_rows(&ctx, input, |p| rows::genus(&ctx, p)),
        Command::ShuffleMin(input) => run_rows(&ctx, input, |p| Ok(rows::shuffle_min(&ctx, p))),
        Command::LinkGenus(input) => run_rows(&ctx, input, |p| Ok(rows::link(&ctx, p))),
        Command::Report(input) => run_rows(&ctx, input, |p| rows::report(&ctx, p)),
        Command::GroupGenus { input, depth } => run_rows(&ctx, input, |p| Ok(rows::group(&ctx, p, *depth))),
        Command::Normalize { kind, input, rule, layout } => {
            run_rows(&ctx, input, |p| rows::normalize(&ctx, p, *kind, *rule, *layout))
        }
        Command::Plumb { first, second } => {
            let row = rows::plumb(&ctx, &parse_presentation(first)?, &parse_presentation(second)?)?;
            let lines = vec![(1, format!("{first} ; {second}"))];
            rows::emit(&ctx, &lines, &[Ok(row)], false)
        }
        Command::Facepair { command } => facepair::run(&ctx, command),
        Command::ExportDot { presentation, shuffle_min } => {
            let p = parse_presentation(presentation)?;
            let mut g = RibbonGraph::canonical(&p, convention);
            if *shuffle_min {
                let s = ribbon_genus::genus::min_genus_over_shuffles_with(&p, convention, &ctx.budget);
                g = g.apply_shuffle(&s.shuffle).map_err(|e| CliError::Compute(e.to_string()))?;
            }
            print!("{}", g.to_dot());
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn long_version() -> String {
    format!("{} (default convention {})", env!("CARGO_PKG_VERSION"), Convention::default())
}

fn main() -> ExitCode {
    let version: &'static str = Box::leak(long_version().into_boxed_str());
    // Usage errors exit 1 like other input errors; 2 is kept for
    // --require-exact.
    let usage = |e: clap::Error| -> ! {
        if e.use_stderr() {
            let _ = e.print();
            std::process::exit(1)
        }
        e.exit()
    };
    let matches = Cli::command().version(version).try_get_matches().unwrap_or_else(|e| usage(e));
    let cli = Cli::from_arg_matches(&matches).unwrap_or_else(|e| usage(e));
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn version_names_the_default_convention() {
        assert!(long_version().ends_with("(default convention B)"));
    }

    #[test]
    fn parse_errors_point_at_the_column() {
        let e = parse_presentation("<a | b>").unwrap_err().to_string();
        let lines: Vec<&str> = e.lines().collect();
        assert_eq!(lines[1], "  <a | b>");
        assert_eq!(lines[2].find('^'), lines[1].find('b'));
    }
}
