//! Front end for `lcsq`: argument parsing, command execution and output.

pub mod cache;
pub mod emit;
pub mod presets;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use lcsq_core::kahler::Kahler;
use lcsq_core::lcs::{filtered_table, graded_table, LcsCache, Limits};
use lcsq_core::ncpoly::{AlgebraPresentation, Mode};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use cache::ResultCache;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "lcsq", version, about = "Lower central series quotients of one-relator free algebras")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "text", global = true)]
    pub format: Format,
    /// Seed for random relations.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// dim B_i[m] for the given series indices and degrees 1..=max-degree.
    Dims(DimsArgs),
    /// B_2 against Ω¹/dΩ⁰ degree by degree.
    Compare(RelationArgs),
    /// Recompute a reference table and compare it with the printed values.
    Table {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(["table-1", "table-2", "table-3", "table-4", "table-5"]))]
        preset: String,
    },
}

#[derive(Debug, Args)]
pub struct RelationArgs {
    /// Number of generators.
    #[arg(long)]
    pub n: usize,
    /// Relation such as "x^2+y^2", or "random".
    #[arg(long)]
    pub relation: String,
    /// Degree of a random relation.
    #[arg(long)]
    pub d: Option<usize>,
    /// Highest degree reported.
    #[arg(long)]
    pub max_degree: usize,
}

#[derive(Debug, Args)]
pub struct DimsArgs {
    #[command(flatten)]
    pub relation: RelationArgs,
    /// Comma-separated series indices.
    #[arg(long, value_delimiter = ',', default_value = "2")]
    pub i: Vec<usize>,
    /// Use A_n/<P - 1> and report associated graded dimensions.
    #[arg(long)]
    pub filtered: bool,
    /// Largest truncation for filtered runs; at most the default cap.
    #[arg(long)]
    pub max_truncation: Option<usize>,
}

/// Everything that determines an output, echoed into it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: String,
    pub preset: Option<String>,
    pub n: usize,
    pub relation: String,
    pub random_degree: Option<usize>,
    pub mode: Mode,
    pub series: Vec<usize>,
    pub max_degree: usize,
    pub max_truncation: Option<usize>,
    pub seed: u64,
    pub format: Format,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimRow {
    pub i: usize,
    pub degree: usize,
    pub dim: usize,
    pub certified: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CellStatus {
    Match,
    Mismatch,
    /// Blank in the printed table.
    #[serde(rename = "beyond-paper")]
    BeyondTable,
    /// The engine could not compute the cell.
    Uncomputed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub i: usize,
    pub degree: usize,
    pub dim: Option<usize>,
    pub certified: bool,
    pub printed: Option<usize>,
    pub status: CellStatus,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompareRow {
    pub degree: usize,
    pub b2: usize,
    pub omega: usize,
    pub equal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableSummary {
    pub caption: String,
    pub matches: usize,
    pub mismatches: usize,
    pub beyond_table: usize,
    pub uncomputed: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompareSummary {
    pub all_equal: bool,
    pub first_mismatch: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report<R, S> {
    pub config: RunConfig,
    pub results: Vec<R>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub summary: Option<S>,
}

pub type DimsReport = Report<DimRow, ()>;
pub type TableReport = Report<TableRow, TableSummary>;
pub type CompareReport = Report<CompareRow, CompareSummary>;

/// The relation named on the command line; `random` draws one from `seed`.
pub fn presentation(n: usize, relation: &str, d: Option<usize>, mode: Mode, seed: u64) -> Result<AlgebraPresentation> {
    if relation.trim() == "random" {
        let d = d.context("--d is required with --relation random")?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        return Ok(AlgebraPresentation::random_generic(n, d, mode, &mut rng)?);
    }
    if d.is_some() {
        bail!("--d only applies to --relation random");
    }
    Ok(AlgebraPresentation::parse(relation, n, mode)?)
}

fn limits(n: usize, max_truncation: Option<usize>) -> Result<Limits> {
    let mut limits = Limits::for_generators(n);
    if let Some(t) = max_truncation {
        if t > limits.max_truncation {
            bail!("--max-truncation {t} exceeds the cap of {} for n = {n}", limits.max_truncation);
        }
        limits.max_truncation = t;
    }
    Ok(limits)
}

pub fn run_dims(args: &DimsArgs, seed: u64, format: Format, cache: &ResultCache) -> Result<DimsReport> {
    let r = &args.relation;
    let mode = if args.filtered { Mode::Filtered } else { Mode::Graded };
    if args.i.is_empty() || args.i.contains(&0) {
        bail!("series indices must be at least 1");
    }
    if !args.filtered && args.max_truncation.is_some() {
        bail!("--max-truncation only applies to --filtered");
    }
    let pres = presentation(r.n, &r.relation, r.d, mode, seed)?;
    let limits = limits(r.n, args.max_truncation)?;
    let config = RunConfig {
        command: "dims".into(),
        preset: None,
        n: r.n,
        relation: pres.relation().to_string(),
        random_degree: r.d,
        mode,
        series: args.i.clone(),
        max_degree: r.max_degree,
        max_truncation: args.filtered.then_some(limits.max_truncation),
        seed,
        format,
    };
    let key = ("dims", &config.n, &config.relation, &config.mode, &config.series, &config.max_degree, &config.max_truncation);
    let results = match cache.get::<_, Vec<DimRow>>(&key) {
        Some(rows) => rows,
        None => {
            let mut lcs = LcsCache::with_limits(&pres, limits)?;
            let table = if args.filtered { filtered_table(&mut lcs, &args.i, r.max_degree)? } else { graded_table(&mut lcs, &args.i, r.max_degree)? };
            let rows: Vec<DimRow> = table.records.iter().map(|c| DimRow { i: c.i, degree: c.degree, dim: c.dim, certified: c.certified }).collect();
            cache.put(&key, &rows)?;
            rows
        }
    };
    Ok(Report { config, results, summary: None })
}

pub fn run_compare(args: &RelationArgs, seed: u64, format: Format) -> Result<CompareReport> {
    if !(2..=4).contains(&args.n) {
        bail!("compare supports n = 2, 3, 4");
    }
    let pres = presentation(args.n, &args.relation, args.d, Mode::Graded, seed)?;
    let mut lcs = LcsCache::new(&pres)?;
    let kahler = Kahler::new(&pres)?;
    let mut results = Vec::with_capacity(args.max_degree);
    for m in 1..=args.max_degree {
        let b2 = lcs.b_dim(2, m)?;
        let omega = kahler.dims(m)?.quotient;
        results.push(CompareRow { degree: m, b2, omega, equal: b2 == omega });
    }
    let first_mismatch = results.iter().find(|r| !r.equal).map(|r| r.degree);
    let config = RunConfig {
        command: "compare".into(),
        preset: None,
        n: args.n,
        relation: pres.relation().to_string(),
        random_degree: args.d,
        mode: Mode::Graded,
        series: vec![2],
        max_degree: args.max_degree,
        max_truncation: None,
        seed,
        format,
    };
    Ok(Report { config, results, summary: Some(CompareSummary { all_equal: first_mismatch.is_none(), first_mismatch }) })
}

pub fn run_table(name: &str, seed: u64, format: Format, cache: &ResultCache) -> Result<TableReport> {
    let preset = presets::find(name).with_context(|| format!("unknown preset `{name}`"))?;
    let pres = AlgebraPresentation::parse(preset.relation, preset.n, Mode::Graded)?;
    let series = preset.series();
    let key = ("table", preset.name, preset.n, preset.relation, &series, preset.max_degree);
    let cells: Vec<(usize, usize, std::result::Result<usize, String>)> = match cache.get(&key) {
        Some(c) => c,
        None => {
            let mut lcs = LcsCache::new(&pres)?;
            let mut cells = Vec::new();
            for &i in &series {
                for m in 1..=preset.max_degree {
                    cells.push((i, m, lcs.b_dim(i, m).map_err(|e| e.to_string())));
                }
            }
            cache.put(&key, &cells)?;
            cells
        }
    };
    let mut summary = TableSummary { caption: preset.caption.into(), matches: 0, mismatches: 0, beyond_table: 0, uncomputed: 0 };
    let results = cells
        .into_iter()
        .map(|(i, degree, value)| {
            let printed = preset.printed(i, degree);
            let (dim, error) = match value {
                Ok(v) => (Some(v), None),
                Err(e) => (None, Some(e)),
            };
            let status = match (dim, printed) {
                (None, _) => CellStatus::Uncomputed,
                (Some(_), None) => CellStatus::BeyondTable,
                (Some(a), Some(b)) if a == b => CellStatus::Match,
                _ => CellStatus::Mismatch,
            };
            match status {
                CellStatus::Match => summary.matches += 1,
                CellStatus::Mismatch => summary.mismatches += 1,
                CellStatus::BeyondTable => summary.beyond_table += 1,
                CellStatus::Uncomputed => summary.uncomputed += 1,
            }
            TableRow { i, degree, dim, certified: dim.is_some(), printed, status, error }
        })
        .collect();
    let config = RunConfig {
        command: "table".into(),
        preset: Some(preset.name.into()),
        n: preset.n,
        relation: pres.relation().to_string(),
        random_degree: None,
        mode: Mode::Graded,
        series,
        max_degree: preset.max_degree,
        max_truncation: None,
        seed,
        format,
    };
    Ok(Report { config, results, summary: Some(summary) })
}

/// Runs one parsed command and renders its output.
pub fn run(cli: &Cli) -> Result<String> {
    let cache = ResultCache::from_env();
    match &cli.command {
        Command::Dims(args) => emit::dims(&run_dims(args, cli.seed, cli.format, &cache)?, cli.format),
        Command::Compare(args) => emit::compare(&run_compare(args, cli.seed, cli.format)?, cli.format),
        Command::Table { preset } => emit::table(&run_table(preset, cli.seed, cli.format, &cache)?, cli.format),
    }
}
