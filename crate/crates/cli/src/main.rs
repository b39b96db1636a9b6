//! `maxlev`: batch entry points for every stage of the curation pipeline.
//!
//! Exit status is 0 on success, 1 on usage errors and 2 on data errors.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(
    name = "maxlev",
    version,
    about = "Corpus curation: set cover, diversity ranking, exemplar retrieval, QC"
)]
struct Cli {
    /// Cap on worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Greedy token set cover of a target list from a sentence reservoir.
    Cover(CoverArgs),
    /// Serve researcher-in-the-loop sessions over HTTP.
    RitlServe(ServeArgs),
    /// Rank documents by informativeness via repeated elimination.
    Rank(RankArgs),
    /// Cut a ranking into nested tiers.
    Tier(TierArgs),
    /// Select counterweighted chrF few-shot exemplars per evaluation sentence.
    Exemplars(ExemplarArgs),
    /// Quality-control a translation delivery.
    Qc(QcArgs),
    /// Generate mesh prompts, or rank generated responses by token density.
    Mesh(MeshArgs),
    /// Coverage statistics of a sentence set against a target list.
    Stats(StatsArgs),
    /// Flatten aligned documents into sentence pairs.
    Split(SplitArgs),
    /// Line-by-line chrF of a hypothesis file against a reference file.
    Score(ScoreArgs),
}

#[derive(Debug, Args)]
struct CoverArgs {
    /// Plain text (one sentence per line) or JSONL `{"id", "text"}`.
    #[arg(long)]
    reservoir: PathBuf,
    /// One target entry per line.
    #[arg(long)]
    targets: PathBuf,
    #[arg(long)]
    out: PathBuf,
    /// Statistics file; defaults to `<out stem>.stats.json`.
    #[arg(long)]
    stats: Option<PathBuf>,
    #[arg(long, default_value = "coverage_percent")]
    heuristic: String,
    /// `occurrences` or `types`.
    #[arg(long, default_value = "occurrences")]
    mode: String,
    #[arg(long)]
    max_sentences: Option<usize>,
    /// Also draw a random baseline (`sametoks` or `samecov`); repeatable.
    #[arg(long)]
    baseline: Vec<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Args)]
struct ServeArgs {
    #[arg(long, default_value = maxlev_service::DEFAULT_HOST)]
    host: String,
    #[arg(long, default_value_t = maxlev_service::DEFAULT_PORT)]
    port: u16,
    /// Persist sessions here and recover them on restart.
    #[arg(long)]
    state_dir: Option<PathBuf>,
    /// Built UI bundle to serve under `/ui/`.
    #[arg(long)]
    ui_dir: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct RankArgs {
    /// JSONL `{"id", "text"}`.
    #[arg(long)]
    docs: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = 1.0)]
    lambda: f64,
    #[arg(long, default_value_t = maxlev::diversity::DEFAULT_IDF_ORDER)]
    max_n: usize,
}

#[derive(Debug, Args)]
struct TierArgs {
    /// Ranking JSONL as written by `rank`.
    #[arg(long)]
    ranking: PathBuf,
    /// Comma-separated tier sizes.
    #[arg(long, default_value = "584,450,280,126,66")]
    plan: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ExemplarArgs {
    /// JSONL `{"id", "source", "target"}`.
    #[arg(long)]
    pool: PathBuf,
    /// JSONL `{"id", "source"}`.
    #[arg(long)]
    eval: PathBuf,
    #[arg(short, long, default_value_t = 10)]
    k: usize,
    #[arg(long, default_value_t = maxlev::chrf::DEFAULT_ALPHA)]
    alpha: f64,
    /// `max` or `min`.
    #[arg(long, default_value = "max")]
    objective: String,
    /// Count seen n-grams by `occurrences` or `distinct` exemplars.
    #[arg(long, default_value = "occurrences")]
    seen_count: String,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also render minimal prompts, given both language names.
    #[arg(long, requires = "target_lang")]
    source_lang: Option<String>,
    #[arg(long, requires = "source_lang")]
    target_lang: Option<String>,
}

#[derive(Debug, Args)]
struct QcArgs {
    /// SMOL-format JSONL.
    #[arg(long)]
    records: PathBuf,
    /// Per-record report JSONL.
    #[arg(long)]
    out: PathBuf,
    /// Per-language-pair summary; defaults to `<out stem>.summary.json`.
    #[arg(long)]
    summary: Option<PathBuf>,
    /// Field renames, JSON `{"canonical": "on_disk"}`.
    #[arg(long)]
    schema: Option<PathBuf>,
    /// Script codes like `latn+ethi`, or a JSON profile file.
    #[arg(long)]
    profile: Option<String>,
    /// Machine translations, JSONL `{"id", "translation"}`.
    #[arg(long)]
    mt: Option<PathBuf>,
    /// Trigram profiles as JSON, as saved by `--langid-save`.
    #[arg(long, conflicts_with = "langid_train")]
    langid_profiles: Option<PathBuf>,
    /// Train trigram profiles from JSONL `{"lang", "text"}`.
    #[arg(long)]
    langid_train: Option<PathBuf>,
    #[arg(long, requires = "langid_train")]
    langid_save: Option<PathBuf>,
    /// Language codes treated as equivalent, e.g. `bm,dyu`; repeatable.
    #[arg(long)]
    langid_equiv: Vec<String>,
    #[arg(long, default_value_t = maxlev::qc::DEFAULT_K_MAD)]
    k_mad: f64,
    #[arg(long, default_value_t = maxlev::qc::DEFAULT_MT_THRESHOLD)]
    mt_threshold: f64,
    #[arg(long, default_value_t = maxlev::qc::DEFAULT_LANGID_MIN_PCT)]
    langid_min_pct: f64,
}

#[derive(Debug, Args)]
struct MeshArgs {
    /// JSON with topics, tones, styles, modalities, word_bank and optional extra_sources.
    #[arg(long, required_unless_present = "responses")]
    elements: Option<PathBuf>,
    #[arg(short, long, default_value_t = 100)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Rank generated responses (JSONL `{"prompt_index", "text"}`) instead.
    #[arg(long, conflicts_with = "elements")]
    responses: Option<PathBuf>,
    #[arg(long, default_value_t = 2)]
    keep_top: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct StatsArgs {
    /// Cover JSONL, reservoir JSONL or plain text.
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    targets: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SplitArgs {
    #[arg(long)]
    records: PathBuf,
    #[arg(long)]
    out: PathBuf,
    /// Factuality ratings JSONL, aggregated onto documents before splitting.
    #[arg(long)]
    ratings: Option<PathBuf>,
    #[arg(long)]
    schema: Option<PathBuf>,
    /// Documents that could not be split; defaults to stderr warnings only.
    #[arg(long)]
    errors: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ScoreArgs {
    #[arg(long)]
    hyp: PathBuf,
    #[arg(long = "ref")]
    reference: PathBuf,
    #[arg(long, default_value_t = 2.0)]
    beta: f64,
    #[arg(long, default_value_t = 6)]
    max_char_n: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("MAXLEV_LOG", "warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
        {
            eprintln!("maxlev: {e}");
            return ExitCode::from(1);
        }
    }
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("maxlev: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
