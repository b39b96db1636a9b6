use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;
use std::net::SocketAddr;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use maxlev::chrf::{
    chrf, format_minimal_prompt, ChrfParams, Exemplar, ExemplarPool, ExemplarSelection,
    SeenCountMode, SelectionConfig,
};
use maxlev::datamodel::{
    aggregate_by_record, load_json, load_jsonl, load_records, save_records, split_documents,
    to_jsonl, write_atomic, FactualityRating, RecordKind, SchemaMap,
};
use maxlev::diversity::{
    assign_tiers, rank_by_elimination, Document, RankConfig, RankedDocument, TierPlan,
};
use maxlev::promptmesh::{
    generate_prompts, rank_responses, token_density, GenerationConfig, MeshElements, Response,
};
use maxlev::qc::{
    run_qc, FileMtProvider, LangidConfig, LanguageClassifier, QcConfig, QcPlugins, ScriptProfile,
    ScriptProfileSpec, TrigramClassifier, DEFAULT_MAX_FEATURES,
};
use maxlev::reservoir::{load_reservoir, load_targets};
use maxlev::setcover::{
    greedy_cover, random_baseline, BaselineMode, CoverState, CoverageMode, GreedyConfig, Heuristic,
};
use maxlev::textcore::TokenizerConfig;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{
    Command, CoverArgs, ExemplarArgs, MeshArgs, QcArgs, RankArgs, ScoreArgs, ServeArgs, SplitArgs,
    StatsArgs, TierArgs,
};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Data(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Data(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Data(m) => f.write_str(m),
        }
    }
}

impl From<maxlev::Error> for CliError {
    fn from(e: maxlev::Error) -> Self {
        match e {
            maxlev::Error::InvalidParameter(_) => CliError::Usage(e.to_string()),
            _ => CliError::Data(e.to_string()),
        }
    }
}

type CliResult<T = ()> = Result<T, CliError>;

pub fn run(command: Command) -> CliResult {
    match command {
        Command::Cover(a) => cover(a),
        Command::RitlServe(a) => serve(a),
        Command::Rank(a) => rank(a),
        Command::Tier(a) => tier(a),
        Command::Exemplars(a) => exemplars(a),
        Command::Qc(a) => qc(a),
        Command::Mesh(a) => mesh(a),
        Command::Stats(a) => stats(a),
        Command::Split(a) => split(a),
        Command::Score(a) => score(a),
    }
}

/// Write to `path` atomically, or to stdout.
fn emit(path: Option<&Path>, bytes: &[u8]) -> CliResult {
    match path {
        Some(p) => Ok(write_atomic(p, bytes)?),
        None => std::io::stdout()
            .write_all(bytes)
            .map_err(|e| CliError::Data(format!("stdout: {e}"))),
    }
}

fn json_bytes<T: Serialize>(value: &T) -> Vec<u8> {
    let mut v = serde_json::to_vec_pretty(value).expect("outputs serialize");
    v.push(b'\n');
    v
}

/// `dir/stem.suffix` next to `path`.
fn sibling(path: &Path, suffix: &str) -> PathBuf {
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("out");
    path.with_file_name(format!("{stem}.{suffix}"))
}

fn parse_mode(s: &str) -> CliResult<CoverageMode> {
    match s {
        "occurrences" => Ok(CoverageMode::Occurrences),
        "types" => Ok(CoverageMode::Types),
        other => Err(CliError::Usage(format!("unknown coverage mode {other:?}"))),
    }
}

#[derive(Serialize)]
struct BaselineReport {
    out: PathBuf,
    complete: bool,
    stats: maxlev::setcover::CoverStats,
}

#[derive(Serialize)]
struct CoverReport {
    greedy: maxlev::setcover::CoverStats,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    baselines: BTreeMap<String, BaselineReport>,
}

fn cover(a: CoverArgs) -> CliResult {
    let heuristic: Heuristic = a.heuristic.parse()?;
    let mode = parse_mode(&a.mode)?;
    let baselines = a
        .baseline
        .iter()
        .map(|b| b.parse::<BaselineMode>().map(|m| (b.clone(), m)))
        .collect::<Result<Vec<_>, _>>()?;
    let tok = TokenizerConfig::default();
    let reservoir = load_reservoir(&a.reservoir, &tok)?;
    let targets = load_targets(&a.targets, &tok)?;
    if targets.is_empty() {
        log::warn!("{}: no targets", a.targets.display());
    }
    let config = GreedyConfig {
        heuristic,
        mode,
        max_sentences: a.max_sentences,
    };
    let cover = greedy_cover(&reservoir, &targets, &config);
    write_atomic(&a.out, &to_jsonl(cover.selected()))?;

    let mut report = CoverReport {
        greedy: cover.stats(),
        baselines: BTreeMap::new(),
    };
    for (name, m) in baselines {
        let b = random_baseline(&reservoir, &targets, m, &cover, a.seed);
        if !b.complete {
            log::warn!("{name} baseline ran out of sentences before matching the cover");
        }
        let out = sibling(&a.out, &format!("{name}.jsonl"));
        write_atomic(&out, &to_jsonl(b.cover.selected()))?;
        report.baselines.insert(
            name,
            BaselineReport {
                out,
                complete: b.complete,
                stats: b.cover.stats(),
            },
        );
    }
    let stats_path = a.stats.unwrap_or_else(|| sibling(&a.out, "stats.json"));
    write_atomic(&stats_path, &json_bytes(&report))?;
    log::info!(
        "selected {} sentences, coverage {:.2}%",
        report.greedy.n_sentences,
        report.greedy.coverage_pct
    );
    Ok(())
}

fn serve(a: ServeArgs) -> CliResult {
    let addr: SocketAddr = format!("{}:{}", a.host, a.port)
        .parse()
        .map_err(|e| CliError::Usage(format!("bad address {}:{}: {e}", a.host, a.port)))?;
    let api = match &a.state_dir {
        Some(dir) => {
            maxlev_service::Api::with_state_dir(dir).map_err(|e| CliError::Data(e.to_string()))?
        }
        None => maxlev_service::Api::new(),
    };
    let runtime = tokio::runtime::Runtime::new().map_err(|e| CliError::Data(e.to_string()))?;
    runtime
        .block_on(maxlev_service::serve(addr, Arc::new(api), a.ui_dir))
        .map_err(|e| CliError::Data(format!("{addr}: {e}")))
}

fn rank(a: RankArgs) -> CliResult {
    let docs: Vec<Document> = load_jsonl(&a.docs)?;
    let config = RankConfig {
        lambda: a.lambda,
        max_n: a.max_n,
        ..RankConfig::default()
    };
    let ranked = rank_by_elimination(&docs, &config)?;
    emit(a.out.as_deref(), &to_jsonl(&ranked))
}

fn tier(a: TierArgs) -> CliResult {
    let plan: TierPlan = a.plan.parse()?;
    let mut ranked: Vec<RankedDocument> = load_jsonl(&a.ranking)?;
    ranked.sort_by_key(|r| r.rank);
    let ids: Vec<String> = ranked.into_iter().map(|r| r.id).collect();
    emit(a.out.as_deref(), &json_bytes(&assign_tiers(&ids, &plan)))
}

#[derive(Deserialize)]
struct EvalLine {
    id: String,
    source: String,
}

#[derive(Serialize)]
struct SelectionLine {
    #[serde(flatten)]
    selection: ExemplarSelection,
    #[serde(skip_serializing_if = "Option::is_none")]
    prompt: Option<String>,
}

fn exemplars(a: ExemplarArgs) -> CliResult {
    let objective = a.objective.parse()?;
    let seen_count_mode = match a.seen_count.as_str() {
        "occurrences" => SeenCountMode::Occurrences,
        "distinct" => SeenCountMode::Distinct,
        other => {
            return Err(CliError::Usage(format!(
                "unknown seen-count mode {other:?}"
            )))
        }
    };
    let config = SelectionConfig {
        k: a.k,
        alpha: a.alpha,
        objective,
        seen_count_mode,
        params: ChrfParams::default(),
    };
    let pool_items: Vec<Exemplar> = load_jsonl(&a.pool)?;
    let evals: Vec<EvalLine> = load_jsonl(&a.eval)?;
    let pool = ExemplarPool::new(pool_items, config.params)?;
    let lines = evals
        .par_iter()
        .map(|e| {
            let selection = pool.select(&e.id, &e.source, &config)?;
            let prompt = match (&a.source_lang, &a.target_lang) {
                (Some(sl), Some(tl)) => {
                    let pairs: Vec<(&str, &str)> = selection
                        .exemplars
                        .iter()
                        .filter_map(|id| pool.get(id))
                        .map(|x| (x.source.as_str(), x.target.as_str()))
                        .collect();
                    Some(format_minimal_prompt(sl, tl, &pairs, &e.source))
                }
                _ => None,
            };
            Ok(SelectionLine { selection, prompt })
        })
        .collect::<maxlev::Result<Vec<_>>>()?;
    emit(a.out.as_deref(), &to_jsonl(&lines))
}

#[derive(Deserialize)]
struct LangidExample {
    lang: String,
    text: String,
}

fn load_schema(path: Option<&Path>) -> CliResult<SchemaMap> {
    Ok(match path {
        Some(p) => load_json(p)?,
        None => SchemaMap::default(),
    })
}

fn qc(a: QcArgs) -> CliResult {
    let schema = load_schema(a.schema.as_deref())?;
    let records = load_records(&a.records, &schema)?;
    for r in &records {
        r.validate()?;
    }
    let profile = match &a.profile {
        None => None,
        Some(p) if p.ends_with(".json") || Path::new(p).is_file() => {
            let spec: ScriptProfileSpec = load_json(Path::new(p))?;
            Some(ScriptProfile::from_spec(&spec)?)
        }
        Some(codes) => Some(ScriptProfile::from_codes(codes)?),
    };
    let mt = a.mt.as_deref().map(FileMtProvider::load).transpose()?;
    let classifier: Option<TrigramClassifier> = match (&a.langid_profiles, &a.langid_train) {
        (Some(p), _) => Some(load_json(p)?),
        (None, Some(train)) => {
            let examples: Vec<LangidExample> = load_jsonl(train)?;
            let mut by_lang: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
            for ex in &examples {
                by_lang.entry(&ex.lang).or_default().push(&ex.text);
            }
            let clf = TrigramClassifier::train(by_lang, DEFAULT_MAX_FEATURES);
            if let Some(save) = &a.langid_save {
                write_atomic(save, &json_bytes(&clf))?;
            }
            Some(clf)
        }
        (None, None) => None,
    };
    let config = QcConfig {
        k_mad: a.k_mad,
        mt_threshold: a.mt_threshold,
        chrf: ChrfParams::default(),
        langid: LangidConfig {
            min_pct: a.langid_min_pct,
            equivalences: a
                .langid_equiv
                .iter()
                .map(|c| c.split(',').map(|s| s.trim().to_owned()).collect())
                .collect(),
        },
    };
    let plugins = QcPlugins {
        profile: profile.as_ref(),
        mt: mt.as_ref().map(|m| m as &dyn maxlev::qc::MtProvider),
        classifier: classifier.as_ref().map(|c| c as &dyn LanguageClassifier),
    };
    let result = run_qc(&records, &config, plugins)?;
    write_atomic(&a.out, &to_jsonl(&result.reports))?;
    let summary_path = a.summary.unwrap_or_else(|| sibling(&a.out, "summary.json"));
    write_atomic(&summary_path, &json_bytes(&result.summary))?;
    let flagged = result.reports.iter().filter(|r| !r.is_clean()).count();
    log::info!("{flagged} of {} records flagged", records.len());
    Ok(())
}

#[derive(Deserialize)]
struct ResponseLine {
    prompt_index: usize,
    text: String,
}

fn mesh(a: MeshArgs) -> CliResult {
    if let Some(path) = &a.responses {
        let config = GenerationConfig {
            keep_top: a.keep_top,
            ..GenerationConfig::default()
        };
        config.validate()?;
        let lines: Vec<ResponseLine> = load_jsonl(path)?;
        let mut groups: BTreeMap<usize, Vec<String>> = BTreeMap::new();
        for l in lines {
            groups.entry(l.prompt_index).or_default().push(l.text);
        }
        let mut kept = Vec::new();
        for (prompt_index, texts) in groups {
            for i in rank_responses(&texts, &config) {
                kept.push(Response {
                    prompt_index,
                    density: token_density(&texts[i]).ok(),
                    text: texts[i].clone(),
                    review: None,
                });
            }
        }
        return emit(a.out.as_deref(), &to_jsonl(&kept));
    }
    let path = a
        .elements
        .as_deref()
        .expect("clap requires elements without responses");
    let elements: MeshElements = load_json(path)?;
    let prompts = generate_prompts(&elements, a.n, a.seed)?;
    emit(a.out.as_deref(), &to_jsonl(&prompts))
}

fn stats(a: StatsArgs) -> CliResult {
    let tok = TokenizerConfig::default();
    let sentences = load_reservoir(&a.input, &tok)?;
    let targets = load_targets(&a.targets, &tok)?;
    let cover = CoverState::replay(targets, &sentences);
    emit(a.out.as_deref(), &json_bytes(&cover.stats()))
}

fn split(a: SplitArgs) -> CliResult {
    let schema = load_schema(a.schema.as_deref())?;
    let mut records = load_records(&a.records, &schema)?;
    if let Some(path) = &a.ratings {
        let ratings: Vec<FactualityRating> = load_jsonl(path)?;
        let mut verdicts = aggregate_by_record(&ratings);
        for r in records
            .iter_mut()
            .filter(|r| r.kind == RecordKind::Document)
        {
            if let Some(v) = verdicts.remove(&r.id) {
                r.factuality = Some(v);
            }
        }
        for id in verdicts.keys() {
            log::warn!("ratings for {id} match no document");
        }
    }
    for r in &records {
        r.validate()?;
    }
    let out = split_documents(&records);
    for e in &out.errors {
        log::warn!("document {}: {}", e.id, e.message);
    }
    if let Some(p) = &a.errors {
        write_atomic(p, &to_jsonl(&out.errors))?;
    }
    save_records(&out.records, &a.out, &schema)?;
    Ok(())
}

#[derive(Serialize)]
struct ScoreReport {
    n: usize,
    mean: f64,
    scores: Vec<f64>,
}

fn read_lines(path: &Path) -> CliResult<Vec<String>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
    Ok(text.lines().map(str::to_owned).collect())
}

fn score(a: ScoreArgs) -> CliResult {
    let params = ChrfParams {
        beta: a.beta,
        max_char_n: a.max_char_n,
        ..ChrfParams::default()
    };
    params.validate()?;
    let hyp = read_lines(&a.hyp)?;
    let reference = read_lines(&a.reference)?;
    if hyp.len() != reference.len() {
        return Err(CliError::Data(format!(
            "{} has {} lines but {} has {}",
            a.hyp.display(),
            hyp.len(),
            a.reference.display(),
            reference.len()
        )));
    }
    let scores = hyp
        .par_iter()
        .zip(&reference)
        .map(|(h, r)| chrf(h, r, &params).map(|c| c.score))
        .collect::<maxlev::Result<Vec<f64>>>()?;
    let mean = if scores.is_empty() {
        0.0
    } else {
        scores.iter().sum::<f64>() / scores.len() as f64
    };
    emit(
        a.out.as_deref(),
        &json_bytes(&ScoreReport {
            n: scores.len(),
            mean,
            scores,
        }),
    )
}
