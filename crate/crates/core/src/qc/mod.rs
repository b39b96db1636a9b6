//! Delivery quality control for translated records.
//!
//! Every check is a read-only pass over the records and produces per-record
//! findings; [`run_qc`] folds them into one [`QcReport`] per record plus a
//! per-language-pair summary.

mod codepoints;
mod langid;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::chrf::{chrf, ChrfParams};
use crate::datamodel::{load_jsonl, SmolRecord};
use crate::textcore::nfkc_normalize;
use crate::{Error, Result};

pub use codepoints::{
    codepoint_audit, is_private_use, CodepointIssue, IssueKind, ScriptProfile, ScriptProfileSpec,
};
pub use langid::{base_language, LanguageClassifier, TrigramClassifier, DEFAULT_MAX_FEATURES};

pub const DEFAULT_K_MAD: f64 = 3.5;
pub const DEFAULT_MT_THRESHOLD: f64 = 95.0;
pub const DEFAULT_LANGID_MIN_PCT: f64 = 95.0;
/// Minimum records per language pair for the length-ratio check.
pub const MIN_RATIO_RECORDS: usize = 8;
/// Scale factor making the MAD a consistent estimator of the standard deviation.
const MAD_SCALE: f64 = 1.4826;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QcFlag {
    DuplicateTarget,
    LengthRatioOutlier,
    MtSimilarityHigh,
    BadCodepoints,
    LangidMismatch,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "check", rename_all = "snake_case")]
pub enum Evidence {
    Duplicate {
        group: Vec<String>,
    },
    LengthRatio {
        ratio: f64,
        median: f64,
        robust_z: Option<f64>,
    },
    MtSimilarity {
        chrf: f64,
    },
    Codepoints {
        issues: Vec<CodepointIssue>,
    },
    Langid {
        predicted: String,
        confidence: f64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QcReport {
    pub record_id: String,
    pub flags: BTreeSet<QcFlag>,
    pub details: Vec<Evidence>,
    /// Checks that could not be run on this record, with the reason.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub unchecked: BTreeMap<String, String>,
}

impl QcReport {
    fn new(record_id: &str) -> Self {
        QcReport {
            record_id: record_id.to_owned(),
            flags: BTreeSet::new(),
            details: Vec::new(),
            unchecked: BTreeMap::new(),
        }
    }

    pub fn is_clean(&self) -> bool {
        self.flags.is_empty()
    }
}

fn collapse_ws(text: &str) -> String {
    nfkc_normalize(text)
        .split_whitespace()
        .collect::<Vec<_>>()
        .join(" ")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DuplicateGroup {
    pub target: String,
    pub ids: Vec<String>,
}

/// Records sharing a normalized target while their sources differ. Identical
/// source and target pairs on their own are legitimate repeats.
pub fn detect_duplicate_targets(records: &[SmolRecord]) -> Vec<DuplicateGroup> {
    let mut by_target: BTreeMap<(String, String), Vec<usize>> = BTreeMap::new();
    for (i, r) in records.iter().enumerate() {
        by_target
            .entry((r.target_lang.clone(), collapse_ws(&r.target_text())))
            .or_default()
            .push(i);
    }
    by_target
        .into_iter()
        .filter(|(_, idx)| {
            let sources: BTreeSet<String> = idx
                .iter()
                .map(|&i| collapse_ws(&records[i].source_text()))
                .collect();
            idx.len() >= 2 && sources.len() >= 2
        })
        .map(|((_, target), idx)| DuplicateGroup {
            target,
            ids: idx.into_iter().map(|i| records[i].id.clone()).collect(),
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RatioFlag {
    pub id: String,
    pub ratio: f64,
    pub median: f64,
    /// Absent when the MAD was zero and the ±50% fallback applied.
    pub robust_z: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct RatioOutcome {
    pub flagged: Vec<RatioFlag>,
    pub warnings: Vec<String>,
    /// Language pairs with too few records to check.
    pub skipped_pairs: Vec<String>,
}

fn median(sorted: &[f64]) -> f64 {
    let n = sorted.len();
    if n % 2 == 1 {
        sorted[n / 2]
    } else {
        (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0
    }
}

fn pair_key(r: &SmolRecord) -> String {
    format!("{}-{}", r.source_lang, r.target_lang)
}

/// Robust z-score outliers of target/source character-length ratio, per
/// language pair.
pub fn length_ratio_outliers(records: &[SmolRecord], k_mad: f64) -> RatioOutcome {
    let mut out = RatioOutcome::default();
    let mut groups: BTreeMap<String, Vec<(usize, f64)>> = BTreeMap::new();
    for (i, r) in records.iter().enumerate() {
        let src = r.source_text().chars().count();
        if src == 0 {
            out.warnings
                .push(format!("record {}: empty source, ratio undefined", r.id));
            continue;
        }
        let tgt = r.target_text().chars().count();
        groups
            .entry(pair_key(r))
            .or_default()
            .push((i, tgt as f64 / src as f64));
    }
    for (pair, ratios) in groups {
        if ratios.len() < MIN_RATIO_RECORDS {
            out.warnings.push(format!(
                "{pair}: {} records, length-ratio check needs {MIN_RATIO_RECORDS}",
                ratios.len()
            ));
            out.skipped_pairs.push(pair);
            continue;
        }
        let mut sorted: Vec<f64> = ratios.iter().map(|r| r.1).collect();
        sorted.sort_by(f64::total_cmp);
        let med = median(&sorted);
        let mut dev: Vec<f64> = sorted.iter().map(|r| (r - med).abs()).collect();
        dev.sort_by(f64::total_cmp);
        let mad = median(&dev);
        for (i, ratio) in ratios {
            let (outlier, z) = if mad > 0.0 {
                let z = (ratio - med).abs() / (MAD_SCALE * mad);
                (z > k_mad, Some(z))
            } else {
                ((ratio - med).abs() > 0.5 * med, None)
            };
            if outlier {
                out.flagged.push(RatioFlag {
                    id: records[i].id.clone(),
                    ratio,
                    median: med,
                    robust_z: z,
                });
            }
        }
    }
    out
}

/// Source of reference machine translations.
pub trait MtProvider: Send + Sync {
    fn translate(&self, record: &SmolRecord) -> Result<String>;
}

/// Precomputed translations keyed by record id, read from JSONL
/// `{"id": ..., "translation": ...}`.
#[derive(Debug, Clone, Default)]
pub struct FileMtProvider {
    translations: HashMap<String, String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct MtLine {
    id: String,
    translation: String,
}

impl FileMtProvider {
    pub fn load(path: &Path) -> Result<Self> {
        let lines: Vec<MtLine> = load_jsonl(path)?;
        Ok(lines.into_iter().collect())
    }
}

impl FromIterator<(String, String)> for FileMtProvider {
    fn from_iter<I: IntoIterator<Item = (String, String)>>(iter: I) -> Self {
        FileMtProvider {
            translations: iter.into_iter().collect(),
        }
    }
}

impl FromIterator<MtLine> for FileMtProvider {
    fn from_iter<I: IntoIterator<Item = MtLine>>(iter: I) -> Self {
        iter.into_iter().map(|l| (l.id, l.translation)).collect()
    }
}

impl MtProvider for FileMtProvider {
    fn translate(&self, record: &SmolRecord) -> Result<String> {
        self.translations
            .get(&record.id)
            .cloned()
            .ok_or_else(|| Error::NotFound(format!("no translation for record {}", record.id)))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum MtStatus {
    Flagged { chrf: f64 },
    Clean { chrf: f64 },
    Unchecked { reason: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MtCheck {
    pub id: String,
    #[serde(flatten)]
    pub status: MtStatus,
}

/// Flag targets whose chrF against the provider's translation reaches `threshold`.
pub fn mt_similarity_check(
    records: &[SmolRecord],
    provider: &dyn MtProvider,
    threshold: f64,
    params: &ChrfParams,
) -> Result<Vec<MtCheck>> {
    params.validate()?;
    records
        .iter()
        .map(|r| {
            let status = match provider.translate(r) {
                Err(e) => MtStatus::Unchecked {
                    reason: e.to_string(),
                },
                Ok(mt) => {
                    let score = chrf(&r.target_text(), &mt, params)?.score;
                    if score >= threshold {
                        MtStatus::Flagged { chrf: score }
                    } else {
                        MtStatus::Clean { chrf: score }
                    }
                }
            };
            Ok(MtCheck {
                id: r.id.clone(),
                status,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct LangidConfig {
    pub min_pct: f64,
    /// Groups of language codes treated as interchangeable, e.g. `[["bm", "dyu"]]`.
    pub equivalences: Vec<Vec<String>>,
}

impl Default for LangidConfig {
    fn default() -> Self {
        LangidConfig {
            min_pct: DEFAULT_LANGID_MIN_PCT,
            equivalences: Vec::new(),
        }
    }
}

impl LangidConfig {
    fn same(&self, declared: &str, predicted: &str) -> bool {
        let d = base_language(declared);
        let p = base_language(predicted);
        d == p
            || declared == predicted
            || self
                .equivalences
                .iter()
                .any(|class| class.iter().any(|c| c == d) && class.iter().any(|c| c == p))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    Unsupported,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LanguageVerdict {
    pub declared: String,
    pub n_segments: usize,
    pub n_correct: usize,
    pub pct_correct: f64,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LangidPrediction {
    pub id: String,
    pub predicted: Option<String>,
    pub confidence: f64,
    pub correct: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct LangidOutcome {
    /// Keyed by language pair (`src-tgt`).
    pub verdicts: BTreeMap<String, LanguageVerdict>,
    pub predictions: Vec<LangidPrediction>,
}

/// Share of target segments predicted as their declared language, per pair.
pub fn langid_check(
    records: &[SmolRecord],
    classifier: &dyn LanguageClassifier,
    config: &LangidConfig,
) -> LangidOutcome {
    let mut out = LangidOutcome::default();
    let mut tallies: BTreeMap<String, (String, usize, usize)> = BTreeMap::new();
    for r in records {
        let entry = tallies
            .entry(pair_key(r))
            .or_insert_with(|| (r.target_lang.clone(), 0, 0));
        if !classifier.supports(&r.target_lang) {
            continue;
        }
        let pred = classifier.classify(&r.target_text());
        let correct = pred
            .as_ref()
            .is_some_and(|(p, _)| config.same(&r.target_lang, p));
        entry.1 += 1;
        if correct {
            entry.2 += 1;
        }
        out.predictions.push(LangidPrediction {
            id: r.id.clone(),
            confidence: pred.as_ref().map_or(0.0, |p| p.1),
            predicted: pred.map(|p| p.0),
            correct,
        });
    }
    for (pair, (declared, n, ok)) in tallies {
        let supported = classifier.supports(&declared);
        let pct = if n == 0 {
            0.0
        } else {
            100.0 * ok as f64 / n as f64
        };
        let verdict = if !supported {
            Verdict::Unsupported
        } else if pct >= config.min_pct {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        out.verdicts.insert(
            pair,
            LanguageVerdict {
                declared,
                n_segments: n,
                n_correct: ok,
                pct_correct: pct,
                verdict,
            },
        );
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct QcConfig {
    pub k_mad: f64,
    pub mt_threshold: f64,
    pub chrf: ChrfParams,
    pub langid: LangidConfig,
}

impl Default for QcConfig {
    fn default() -> Self {
        QcConfig {
            k_mad: DEFAULT_K_MAD,
            mt_threshold: DEFAULT_MT_THRESHOLD,
            chrf: ChrfParams::default(),
            langid: LangidConfig::default(),
        }
    }
}

/// Optional collaborators; checks whose plug-in is absent are skipped.
#[derive(Default, Clone, Copy)]
pub struct QcPlugins<'a> {
    pub profile: Option<&'a ScriptProfile>,
    pub mt: Option<&'a dyn MtProvider>,
    pub classifier: Option<&'a dyn LanguageClassifier>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct PairSummary {
    pub n_records: usize,
    pub n_clean: usize,
    pub flag_counts: BTreeMap<QcFlag, usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub langid: Option<LanguageVerdict>,
    pub length_ratio_skipped: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct QcSummary {
    pub pairs: BTreeMap<String, PairSummary>,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct QcRun {
    pub reports: Vec<QcReport>,
    pub summary: QcSummary,
}

/// Run every available check and assemble per-record reports in input order.
pub fn run_qc(records: &[SmolRecord], config: &QcConfig, plugins: QcPlugins<'_>) -> Result<QcRun> {
    let mut reports: Vec<QcReport> = records.iter().map(|r| QcReport::new(&r.id)).collect();
    let index: HashMap<&str, usize> = records
        .iter()
        .enumerate()
        .map(|(i, r)| (r.id.as_str(), i))
        .collect();
    if index.len() != records.len() {
        return Err(Error::InvalidInput("record ids are not unique".into()));
    }
    let mut summary = QcSummary::default();

    for group in detect_duplicate_targets(records) {
        for id in &group.ids {
            let rep = &mut reports[index[id.as_str()]];
            rep.flags.insert(QcFlag::DuplicateTarget);
            rep.details.push(Evidence::Duplicate {
                group: group.ids.clone(),
            });
        }
    }

    let ratios = length_ratio_outliers(records, config.k_mad);
    for f in &ratios.flagged {
        let rep = &mut reports[index[f.id.as_str()]];
        rep.flags.insert(QcFlag::LengthRatioOutlier);
        rep.details.push(Evidence::LengthRatio {
            ratio: f.ratio,
            median: f.median,
            robust_z: f.robust_z,
        });
    }
    summary.warnings.extend(ratios.warnings.iter().cloned());

    if let Some(mt) = plugins.mt {
        for check in mt_similarity_check(records, mt, config.mt_threshold, &config.chrf)? {
            let rep = &mut reports[index[check.id.as_str()]];
            match check.status {
                MtStatus::Flagged { chrf } => {
                    rep.flags.insert(QcFlag::MtSimilarityHigh);
                    rep.details.push(Evidence::MtSimilarity { chrf });
                }
                MtStatus::Clean { .. } => {}
                MtStatus::Unchecked { reason } => {
                    rep.unchecked.insert("mt_similarity".into(), reason);
                }
            }
        }
    }

    if let Some(profile) = plugins.profile {
        for (r, rep) in records.iter().zip(reports.iter_mut()) {
            let issues = codepoint_audit(&r.target_text(), profile);
            if !issues.is_empty() {
                rep.flags.insert(QcFlag::BadCodepoints);
                rep.details.push(Evidence::Codepoints { issues });
            }
        }
    }

    let mut langid_verdicts = BTreeMap::new();
    if let Some(clf) = plugins.classifier {
        let outcome = langid_check(records, clf, &config.langid);
        for p in outcome.predictions {
            if p.correct {
                continue;
            }
            let rep = &mut reports[index[p.id.as_str()]];
            rep.flags.insert(QcFlag::LangidMismatch);
            rep.details.push(Evidence::Langid {
                predicted: p.predicted.unwrap_or_default(),
                confidence: p.confidence,
            });
        }
        langid_verdicts = outcome.verdicts;
        for r in records {
            if !clf.supports(&r.target_lang) {
                reports[index[r.id.as_str()]]
                    .unchecked
                    .insert("langid".into(), format!("no profile for {}", r.target_lang));
            }
        }
    }

    let skipped: BTreeSet<&String> = ratios.skipped_pairs.iter().collect();
    for (r, rep) in records.iter().zip(&reports) {
        let key = pair_key(r);
        let s = summary.pairs.entry(key.clone()).or_default();
        s.n_records += 1;
        if rep.is_clean() {
            s.n_clean += 1;
        }
        for f in &rep.flags {
            *s.flag_counts.entry(*f).or_insert(0) += 1;
        }
        s.length_ratio_skipped = skipped.contains(&key);
        if s.langid.is_none() {
            s.langid = langid_verdicts.get(&key).cloned();
        }
    }

    Ok(QcRun { reports, summary })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(id: &str, src: &str, tgt: &str) -> SmolRecord {
        SmolRecord::sentence(id, "en", "sw", src, tgt)
    }

    #[test]
    fn duplicate_examples() {
        let g = detect_duplicate_targets(&[rec("1", "a", "foo"), rec("2", "b", "foo")]);
        assert_eq!(
            g,
            vec![DuplicateGroup {
                target: "foo".into(),
                ids: vec!["1".into(), "2".into()]
            }]
        );
        assert!(detect_duplicate_targets(&[rec("1", "a", "foo"), rec("2", "a", "foo")]).is_empty());
        assert!(detect_duplicate_targets(&[rec("1", "a", "x"), rec("2", "b", "y")]).is_empty());
        // whitespace and compatibility forms collapse
        let g =
            detect_duplicate_targets(&[rec("1", "a", "ﬁsh  soup"), rec("2", "b", "fish soup ")]);
        assert_eq!(g.len(), 1);
    }

    fn ratio_fixture(n_normal: usize) -> Vec<SmolRecord> {
        // source of 20 chars, targets of 18..=22 chars (r in [0.9, 1.1])
        let src = "abcdefghijklmnopqrst";
        let mut v: Vec<SmolRecord> = (0..n_normal)
            .map(|i| rec(&format!("n{i}"), src, &"x".repeat(18 + i % 5)))
            .collect();
        v.push(rec("big", src, &"y".repeat(200)));
        v
    }

    #[test]
    fn ratio_outlier_is_the_only_flag() {
        let records = ratio_fixture(20);
        // ratios: 4x{0.9,0.95,1.0,1.05,1.1} + 10.0 -> median 1.0, MAD 0.05,
        // z(1.1) = 0.1 / 0.0741 = 1.35, z(10) = 121
        let out = length_ratio_outliers(&records, DEFAULT_K_MAD);
        assert_eq!(out.flagged.len(), 1);
        assert_eq!(out.flagged[0].id, "big");
        assert_eq!(out.flagged[0].median, 1.0);
        let z = out.flagged[0].robust_z.unwrap();
        assert!((z - 9.0 / (MAD_SCALE * 0.05)).abs() < 1e-6, "{z}");
    }

    #[test]
    fn ratio_edge_cases() {
        let same: Vec<SmolRecord> = (0..10)
            .map(|i| rec(&i.to_string(), "abcd", "wxyz"))
            .collect();
        assert!(length_ratio_outliers(&same, DEFAULT_K_MAD)
            .flagged
            .is_empty());

        let few: Vec<SmolRecord> = (0..5).map(|i| rec(&i.to_string(), "abcd", "w")).collect();
        let out = length_ratio_outliers(&few, DEFAULT_K_MAD);
        assert!(out.flagged.is_empty());
        assert_eq!(out.warnings.len(), 1);
        assert_eq!(out.skipped_pairs, vec!["en-sw".to_string()]);

        // MAD 0 fallback: one record at 2x the median is flagged
        let mut v: Vec<SmolRecord> = (0..9)
            .map(|i| rec(&i.to_string(), "abcd", "wxyz"))
            .collect();
        v.push(rec("long", "abcd", "wxyzwxyz"));
        let out = length_ratio_outliers(&v, DEFAULT_K_MAD);
        assert_eq!(out.flagged.len(), 1);
        assert_eq!(out.flagged[0].robust_z, None);
    }

    #[test]
    fn mt_examples() {
        let records = vec![
            rec("1", "a", "habari ya asubuhi"),
            rec("2", "b", "xyz"),
            rec("3", "c", "q"),
        ];
        let provider: FileMtProvider = [
            ("1".to_string(), "habari ya asubuhi".to_string()),
            ("2".to_string(), "abc".to_string()),
        ]
        .into_iter()
        .collect();
        let checks =
            mt_similarity_check(&records, &provider, 95.0, &ChrfParams::default()).unwrap();
        assert_eq!(checks[0].status, MtStatus::Flagged { chrf: 100.0 });
        assert_eq!(checks[1].status, MtStatus::Clean { chrf: 0.0 });
        assert!(matches!(checks[2].status, MtStatus::Unchecked { .. }));
    }

    struct Fixed(&'static str);

    impl LanguageClassifier for Fixed {
        fn classify(&self, _: &str) -> Option<(String, f64)> {
            Some((self.0.to_string(), 1.0))
        }
        fn supports(&self, lang: &str) -> bool {
            ["bm", "dyu", "en"].contains(&base_language(lang))
        }
    }

    #[test]
    fn langid_equivalences_and_unsupported() {
        let bm: Vec<SmolRecord> = (0..4)
            .map(|i| SmolRecord::sentence(i.to_string(), "en", "bm", "x", "y"))
            .collect();
        let plain = langid_check(&bm, &Fixed("dyu"), &LangidConfig::default());
        assert_eq!(plain.verdicts["en-bm"].verdict, Verdict::Fail);
        let cfg = LangidConfig {
            equivalences: vec![vec!["bm".into(), "dyu".into()]],
            ..Default::default()
        };
        let eq = langid_check(&bm, &Fixed("dyu"), &cfg);
        assert_eq!(eq.verdicts["en-bm"].verdict, Verdict::Pass);
        assert_eq!(eq.verdicts["en-bm"].pct_correct, 100.0);

        let am = vec![SmolRecord::sentence("a", "en", "am", "x", "y")];
        let out = langid_check(&am, &Fixed("en"), &LangidConfig::default());
        assert_eq!(out.verdicts["en-am"].verdict, Verdict::Unsupported);
    }

    #[test]
    fn run_qc_combines_checks_without_mutating() {
        let mut records = ratio_fixture(10);
        records.push(rec("dup1", "one", "same target"));
        records.push(rec("dup2", "two", "same target"));
        records.push(rec("pua", "three", "abc\u{E001}"));
        let before = records.clone();
        let profile = ScriptProfile::from_codes("latn").unwrap();
        let run = run_qc(
            &records,
            &QcConfig::default(),
            QcPlugins {
                profile: Some(&profile),
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(records, before);
        let flagged: BTreeMap<&str, &BTreeSet<QcFlag>> = run
            .reports
            .iter()
            .filter(|r| !r.is_clean())
            .map(|r| (r.record_id.as_str(), &r.flags))
            .collect();
        assert!(flagged["dup1"].contains(&QcFlag::DuplicateTarget));
        assert!(flagged["dup2"].contains(&QcFlag::DuplicateTarget));
        assert!(flagged["pua"].contains(&QcFlag::BadCodepoints));
        assert!(flagged["big"].contains(&QcFlag::LengthRatioOutlier));
        assert_eq!(run.summary.pairs["en-sw"].n_records, records.len());

        let again = run_qc(
            &records,
            &QcConfig::default(),
            QcPlugins {
                profile: Some(&profile),
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(again.reports, run.reports);
    }
}
