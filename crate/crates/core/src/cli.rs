//! `refcascade` command-line interface.
//!
//! Exit codes: 0 success, 1 usage error, 2 data/validation error,
//! 3 internal error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::analytics::{run_cohort, select_cohort, CohortOptions, RelevanceAggregation};
use crate::cascade::{build_cascade, CascadeDump, Direction};
use crate::corpus::{load_aps, load_corpus, save_tables, DanglingPolicy, IngestOptions};
use crate::error::{Error, Result};
use crate::recommend::{recommend, to_csv, RecommendOptions, RecommendStatus};
use crate::relevance::{CodeLevel, EmptyCodePolicy, RelevanceConfig};
use crate::report::write_report;
use crate::snapshot::Snapshot;
use crate::synth::{generate, Attachment, RefsDistribution, SynthParams};

#[derive(Debug, Parser)]
#[command(
    name = "refcascade",
    version,
    about = "Reference and citation cascade analysis"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Load paper and edge tables and write a binary snapshot.
    Ingest(IngestArgs),
    /// Print one cascade as JSON.
    Cascade(CascadeArgs),
    /// Analyse every cascade of a code-prefix cohort.
    Cohort(CohortArgs),
    /// Rank recommendations from a paper's reference cascade.
    Recommend(RecommendArgs),
    /// Generate a synthetic corpus.
    Synth(SynthArgs),
}

#[derive(Debug, Args)]
pub struct IngestArgs {
    #[arg(long, requires = "edges", conflicts_with_all = ["aps_metadata", "aps_citations"])]
    pub papers: Option<PathBuf>,
    #[arg(long, requires = "papers")]
    pub edges: Option<PathBuf>,
    /// APS metadata CSV (`doi,year,pacs`).
    #[arg(long, requires = "aps_citations")]
    pub aps_metadata: Option<PathBuf>,
    /// APS citation CSV (`citing_doi,cited_doi`).
    #[arg(long, requires = "aps_metadata")]
    pub aps_citations: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t)]
    pub dangling: DanglingPolicy,
    #[arg(long)]
    pub normalize_codes: bool,
    /// Output snapshot path.
    #[arg(long)]
    pub snapshot: PathBuf,
}

/// Either a snapshot or a pair of tables.
#[derive(Debug, Args)]
pub struct InputArgs {
    #[arg(long, conflicts_with_all = ["papers", "edges"])]
    pub snapshot: Option<PathBuf>,
    #[arg(long, requires = "edges")]
    pub papers: Option<PathBuf>,
    #[arg(long, requires = "papers")]
    pub edges: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t)]
    pub dangling: DanglingPolicy,
    #[arg(long)]
    pub normalize_codes: bool,
}

impl InputArgs {
    fn load(&self) -> Result<Snapshot> {
        match (&self.snapshot, &self.papers, &self.edges) {
            (Some(s), _, _) => Snapshot::load(s),
            (None, Some(p), Some(e)) => {
                let opts = IngestOptions {
                    normalize_codes: self.normalize_codes,
                };
                Ok(Snapshot::from_corpus(load_corpus(
                    p,
                    e,
                    self.dangling,
                    opts,
                )?))
            }
            _ => Err(Error::Usage(
                "give --snapshot or both --papers and --edges".into(),
            )),
        }
    }
}

#[derive(Debug, Args)]
pub struct RelevanceArgs {
    #[arg(long, value_enum, default_value_t)]
    pub code_level: CodeLevel,
    #[arg(long, value_enum, default_value_t)]
    pub empty_codes: EmptyCodePolicy,
}

impl RelevanceArgs {
    fn config(&self) -> RelevanceConfig {
        RelevanceConfig {
            code_level: self.code_level,
            empty_code_policy: self.empty_codes,
        }
    }
}

#[derive(Debug, Args)]
pub struct CascadeArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// External id of the focal paper.
    #[arg(long)]
    pub focal: String,
    #[arg(long, value_enum, default_value_t)]
    pub direction: Direction,
    #[arg(long)]
    pub max_depth: Option<u32>,
}

#[derive(Debug, Args)]
pub struct CohortArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long)]
    pub code_prefix: String,
    #[arg(long, value_enum, default_value_t)]
    pub direction: Direction,
    #[command(flatten)]
    pub relevance: RelevanceArgs,
    /// Number of logarithmic size bins.
    #[arg(long, default_value_t = 20)]
    pub bins: usize,
    /// Width of linear size bins; defaults to ceil(max size / bins).
    #[arg(long)]
    pub linear_bin_width: Option<f64>,
    #[arg(long, default_value_t = 2.0)]
    pub min_span_ratio: f64,
    #[arg(long, env = "REFCASCADE_WORKERS")]
    pub workers: Option<usize>,
    #[arg(long)]
    pub max_depth: Option<u32>,
    /// Count cascades that do not reach a generation as width 0.
    #[arg(long)]
    pub include_unreached: bool,
    #[arg(long, value_enum, default_value_t)]
    pub aggregation: RelevanceAggregation,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub emit_plots: bool,
}

#[derive(Debug, Clone, Copy, Default, clap::ValueEnum)]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct RecommendArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long)]
    pub focal: String,
    #[arg(long, default_value_t = 4)]
    pub max_generation: u32,
    #[arg(long, default_value_t = 0.2)]
    pub min_relevance: f64,
    #[arg(long)]
    pub top_k: Option<usize>,
    #[arg(long)]
    pub exclude_direct: bool,
    #[command(flatten)]
    pub relevance: RelevanceArgs,
    #[arg(long, value_enum, default_value_t)]
    pub format: OutputFormat,
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    #[arg(long)]
    pub n_papers: usize,
    /// `const:K`, `uniform:A:B` or `geometric:P:CAP`.
    #[arg(long, default_value = "const:5")]
    pub refs: RefsDistribution,
    /// `uniform` or `preferential:ALPHA`.
    #[arg(long, default_value = "preferential:1")]
    pub attachment: Attachment,
    #[arg(long)]
    pub recency_half_life: Option<f64>,
    #[arg(long, default_value_t = 0.0)]
    pub zero_ref_fraction: f64,
    #[arg(long, default_value_t = 1000)]
    pub code_universe: u32,
    #[arg(long, default_value_t = 2)]
    pub codes_per_paper: u32,
    #[arg(long, default_value_t = 0.5)]
    pub code_inheritance: f64,
    #[arg(long)]
    pub seed: u64,
    /// Directory for `papers.tsv` and `edges.tsv`.
    #[arg(long)]
    pub out: PathBuf,
    /// Also write a snapshot here.
    #[arg(long)]
    pub snapshot: Option<PathBuf>,
}

fn default_workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn focal_node(snap: &Snapshot, id: &str) -> Result<u32> {
    snap.corpus
        .lookup(id)
        .ok_or_else(|| Error::UnknownId(id.to_string()))
}

fn io_err(e: std::io::Error) -> Error {
    Error::io("<stdout>", e)
}

fn cmd_ingest(a: &IngestArgs, out: &mut dyn Write) -> Result<()> {
    let opts = IngestOptions {
        normalize_codes: a.normalize_codes,
    };
    let corpus = match (&a.papers, &a.edges, &a.aps_metadata, &a.aps_citations) {
        (Some(p), Some(e), _, _) => load_corpus(p, e, a.dangling, opts)?,
        (_, _, Some(m), Some(c)) => load_aps(m, c, a.dangling, opts)?,
        _ => {
            return Err(Error::Usage(
                "give --papers and --edges, or --aps-metadata and --aps-citations".into(),
            ))
        }
    };
    let stats = *corpus.stats();
    let snap = Snapshot::from_corpus(corpus);
    snap.save(&a.snapshot)?;
    writeln!(
        out,
        "papers\t{}\nedge_rows\t{}\nkept\t{}\ndangling_dropped\t{}\nstubs_created\t{}\nself_loops\t{}\nduplicates\t{}\nsnapshot\t{}",
        snap.corpus.len(),
        stats.input_edge_rows,
        stats.kept_edges,
        stats.dangling_dropped,
        stats.stubs_created,
        stats.self_loops,
        stats.duplicates,
        a.snapshot.display()
    )
    .map_err(io_err)
}

fn cmd_cascade(a: &CascadeArgs, out: &mut dyn Write) -> Result<()> {
    let snap = a.input.load()?;
    let focal = focal_node(&snap, &a.focal)?;
    let c = build_cascade(&snap.graph, focal, a.direction, a.max_depth)?;
    let json = serde_json::to_string(&CascadeDump::new(&c, &snap.graph))?;
    writeln!(out, "{json}").map_err(io_err)
}

fn cmd_cohort(a: &CohortArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    let snap = a.input.load()?;
    let cohort = select_cohort(&snap.corpus, &a.code_prefix)?;
    if cohort.is_empty() {
        let _ = writeln!(
            err,
            "warning: no paper has a code starting with `{}`",
            a.code_prefix
        );
    }
    let options = CohortOptions {
        workers: a.workers.unwrap_or_else(default_workers),
        max_depth: a.max_depth,
        log_bins: a.bins,
        linear_bin_width: a.linear_bin_width,
        min_span_ratio: a.min_span_ratio,
        include_unreached: a.include_unreached,
        aggregation: a.aggregation,
    };
    let report = run_cohort(
        &snap.graph,
        &snap.corpus,
        &cohort,
        a.direction,
        &a.relevance.config(),
        &options,
    )?;
    let files = write_report(&report, &a.out, a.emit_plots)?;
    writeln!(
        out,
        "cohort\t{}\nfocal_papers\t{}\nmax_depth\t{}\nmax_size\t{}\nzero_reference\t{}",
        report.cohort.name,
        report.cohort.size,
        report.summary.max_depth,
        report.summary.max_size,
        report.summary.zero_reference_count
    )
    .map_err(io_err)?;
    for f in files {
        writeln!(out, "wrote\t{}", f.display()).map_err(io_err)?;
    }
    Ok(())
}

fn cmd_recommend(a: &RecommendArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    let snap = a.input.load()?;
    let focal = focal_node(&snap, &a.focal)?;
    let options = RecommendOptions {
        max_generation: a.max_generation,
        min_relevance: a.min_relevance,
        top_k: a.top_k,
        exclude_direct: a.exclude_direct,
        relevance: a.relevance.config(),
    };
    let result = recommend(&snap.graph, &snap.corpus, focal, &options)?;
    if result.status == RecommendStatus::FocalHasNoCodes {
        let _ = writeln!(
            err,
            "warning: `{}` has no codes; relevance is undefined",
            a.focal
        );
    }
    match a.format {
        OutputFormat::Csv => write!(out, "{}", to_csv(&result.items)).map_err(io_err),
        OutputFormat::Json => {
            writeln!(out, "{}", serde_json::to_string_pretty(&result)?).map_err(io_err)
        }
    }
}

fn cmd_synth(a: &SynthArgs, out: &mut dyn Write) -> Result<()> {
    let params = SynthParams {
        n_papers: a.n_papers,
        refs: a.refs,
        attachment: a.attachment,
        recency_half_life: a.recency_half_life,
        zero_ref_fraction: a.zero_ref_fraction,
        code_universe: a.code_universe,
        codes_per_paper: a.codes_per_paper,
        code_inheritance: a.code_inheritance,
        seed: a.seed,
    };
    let corpus = generate(&params)?;
    std::fs::create_dir_all(&a.out).map_err(|e| Error::io(&a.out, e))?;
    let papers = a.out.join("papers.tsv");
    let edges = a.out.join("edges.tsv");
    save_tables(&corpus, &papers, &edges)?;
    writeln!(
        out,
        "papers\t{}\nedges\t{}",
        corpus.len(),
        corpus.edges().len()
    )
    .map_err(io_err)?;
    if let Some(path) = &a.snapshot {
        Snapshot::from_corpus(corpus).save(path)?;
    }
    Ok(())
}

pub fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    match &cli.command {
        Command::Ingest(a) => cmd_ingest(a, out),
        Command::Cascade(a) => cmd_cascade(a, out),
        Command::Cohort(a) => cmd_cohort(a, out, err),
        Command::Recommend(a) => cmd_recommend(a, out, err),
        Command::Synth(a) => cmd_synth(a, out),
    }
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = if code == 0 {
                write!(out, "{}", e.render())
            } else {
                write!(err, "{}", e.render())
            };
            return code;
        }
    };
    match execute(&cli, out, err) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
