//! Parallel-data records, factuality annotations and JSONL persistence.

use std::collections::{BTreeMap, HashMap};
use std::hash::Hash;
use std::io::{BufRead, Write};
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RecordKind {
    #[default]
    Sentence,
    Document,
}

/// Either a single text or a list of aligned sentences.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Segment {
    Text(String),
    Sentences(Vec<String>),
}

impl Segment {
    /// The segment as one string; aligned sentences are joined with a space.
    pub fn text(&self) -> String {
        match self {
            Segment::Text(t) => t.clone(),
            Segment::Sentences(s) => s.join(" "),
        }
    }

    pub fn sentences(&self) -> Option<&[String]> {
        match self {
            Segment::Text(_) => None,
            Segment::Sentences(s) => Some(s),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Factuality {
    Ok,
    HasErrors,
}

/// A language-pair tagged source/target segment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SmolRecord {
    pub id: String,
    /// BCP-47 code, with a script subtag when the script is not the default one.
    pub source_lang: String,
    pub target_lang: String,
    #[serde(default)]
    pub kind: RecordKind,
    pub source: Segment,
    pub target: Segment,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub factuality: Option<Factuality>,
    /// Set on sentence records produced by [`split_documents`].
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parent: Option<String>,
    /// Fields this schema does not know about, kept verbatim.
    #[serde(flatten)]
    pub extra: Map<String, Value>,
}

impl SmolRecord {
    pub fn sentence(
        id: impl Into<String>,
        source_lang: impl Into<String>,
        target_lang: impl Into<String>,
        source: impl Into<String>,
        target: impl Into<String>,
    ) -> Self {
        SmolRecord {
            id: id.into(),
            source_lang: source_lang.into(),
            target_lang: target_lang.into(),
            kind: RecordKind::Sentence,
            source: Segment::Text(source.into()),
            target: Segment::Text(target.into()),
            factuality: None,
            parent: None,
            extra: Map::new(),
        }
    }

    pub fn source_text(&self) -> String {
        self.source.text()
    }

    pub fn target_text(&self) -> String {
        self.target.text()
    }

    pub fn lang_pair(&self) -> (String, String) {
        (self.source_lang.clone(), self.target_lang.clone())
    }

    pub fn validate(&self) -> Result<()> {
        if let (Some(s), Some(t)) = (self.source.sentences(), self.target.sentences()) {
            if s.len() != t.len() {
                return Err(Error::InvalidInput(format!(
                    "record {}: {} source vs {} target sentences",
                    self.id,
                    s.len(),
                    t.len()
                )));
            }
        }
        if self.factuality.is_some() && self.kind == RecordKind::Sentence && self.parent.is_none() {
            return Err(Error::InvalidInput(format!(
                "record {}: factuality is only carried by documents and their split sentences",
                self.id
            )));
        }
        Ok(())
    }
}

/// Rater verdict for one document.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum FactualityCode {
    #[serde(rename = "NA", alias = "N/A")]
    NotApplicable,
    #[serde(alias = "Not Sure")]
    NotSure,
    #[serde(alias = "No Issues")]
    NoIssues,
    #[serde(alias = "Minor Issues", alias = "Minor Issue(s)")]
    MinorIssues,
    #[serde(alias = "Clear Issues", alias = "Clear Issue(s)")]
    ClearIssues,
}

impl FactualityCode {
    pub const ALL: [FactualityCode; 5] = [
        FactualityCode::NotApplicable,
        FactualityCode::NotSure,
        FactualityCode::NoIssues,
        FactualityCode::MinorIssues,
        FactualityCode::ClearIssues,
    ];

    pub fn is_error(self) -> bool {
        matches!(
            self,
            FactualityCode::MinorIssues | FactualityCode::ClearIssues
        )
    }
}

/// One line of the ratings sidecar file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactualityRating {
    pub record_id: String,
    pub rater_id: String,
    pub code: FactualityCode,
    #[serde(default)]
    pub rationale: String,
}

/// `has_errors` iff any rating is Minor or Clear issues.
pub fn aggregate_factuality(ratings: &[FactualityRating]) -> Result<Factuality> {
    aggregate_codes(ratings.iter().map(|r| r.code))
}

pub fn aggregate_codes(codes: impl IntoIterator<Item = FactualityCode>) -> Result<Factuality> {
    let mut any = false;
    for code in codes {
        any = true;
        if code.is_error() {
            return Ok(Factuality::HasErrors);
        }
    }
    if any {
        Ok(Factuality::Ok)
    } else {
        Err(Error::InvalidInput("no ratings to aggregate".into()))
    }
}

/// Aggregate a sidecar file's ratings per record.
pub fn aggregate_by_record(ratings: &[FactualityRating]) -> BTreeMap<String, Factuality> {
    let mut grouped: BTreeMap<String, Vec<FactualityCode>> = BTreeMap::new();
    for r in ratings {
        grouped.entry(r.record_id.clone()).or_default().push(r.code);
    }
    grouped
        .into_iter()
        .map(|(id, codes)| {
            let f = aggregate_codes(codes).expect("groups are non-empty");
            (id, f)
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Kappa {
    pub kappa: f64,
    /// Chance agreement was 1 (both raters constant and equal); kappa set to 1 by convention.
    pub degenerate: bool,
}

/// Cohen's kappa between two raters over the same items.
pub fn cohens_kappa<T: Eq + Hash>(a: &[T], b: &[T]) -> Result<Kappa> {
    if a.len() != b.len() {
        return Err(Error::InvalidInput(format!(
            "rating lists differ in length ({} vs {})",
            a.len(),
            b.len()
        )));
    }
    if a.len() < 2 {
        return Err(Error::InvalidInput("kappa needs at least 2 items".into()));
    }
    let n = a.len() as f64;
    let observed = a.iter().zip(b).filter(|(x, y)| x == y).count() as f64 / n;
    let mut ca: HashMap<&T, usize> = HashMap::new();
    let mut cb: HashMap<&T, usize> = HashMap::new();
    for x in a {
        *ca.entry(x).or_insert(0) += 1;
    }
    for y in b {
        *cb.entry(y).or_insert(0) += 1;
    }
    let expected: f64 = ca
        .iter()
        .map(|(k, &na)| na as f64 * cb.get(k).copied().unwrap_or(0) as f64)
        .sum::<f64>()
        / (n * n);
    if (1.0 - expected).abs() < 1e-12 {
        return Ok(Kappa {
            kappa: 1.0,
            degenerate: true,
        });
    }
    Ok(Kappa {
        kappa: (observed - expected) / (1.0 - expected),
        degenerate: false,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitError {
    pub id: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SplitOutcome {
    pub records: Vec<SmolRecord>,
    pub errors: Vec<SplitError>,
}

/// Child id for sentence `index` of document `parent`.
pub fn child_id(parent: &str, index: usize) -> String {
    format!("{parent}-{index}")
}

/// Flatten aligned documents into sentence pairs. Sentence records pass through
/// unchanged; documents without equal-length aligned lists are reported and skipped.
pub fn split_documents(records: &[SmolRecord]) -> SplitOutcome {
    let mut out = SplitOutcome::default();
    for rec in records {
        if rec.kind != RecordKind::Document {
            out.records.push(rec.clone());
            continue;
        }
        let (Some(src), Some(tgt)) = (rec.source.sentences(), rec.target.sentences()) else {
            out.errors.push(SplitError {
                id: rec.id.clone(),
                message: "document has no aligned sentence lists".into(),
            });
            continue;
        };
        if src.len() != tgt.len() {
            out.errors.push(SplitError {
                id: rec.id.clone(),
                message: format!("{} source vs {} target sentences", src.len(), tgt.len()),
            });
            continue;
        }
        for (i, (s, t)) in src.iter().zip(tgt).enumerate() {
            out.records.push(SmolRecord {
                id: child_id(&rec.id, i),
                source_lang: rec.source_lang.clone(),
                target_lang: rec.target_lang.clone(),
                kind: RecordKind::Sentence,
                source: Segment::Text(s.clone()),
                target: Segment::Text(t.clone()),
                factuality: rec.factuality,
                parent: Some(rec.id.clone()),
                extra: rec.extra.clone(),
            });
        }
    }
    out
}

/// Renames on-disk field names to the canonical ones used by [`SmolRecord`].
///
/// Keys are canonical names, values the names found on disk, e.g.
/// `{"source": "src", "target": "trg"}`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchemaMap {
    #[serde(flatten)]
    pub fields: BTreeMap<String, String>,
}

impl SchemaMap {
    fn rename(&self, value: &mut Value, to_canonical: bool) {
        let Value::Object(obj) = value else { return };
        for (canonical, disk) in &self.fields {
            let (from, to) = if to_canonical {
                (disk, canonical)
            } else {
                (canonical, disk)
            };
            if let Some(v) = obj.remove(from) {
                obj.insert(to.clone(), v);
            }
        }
    }
}

fn parse_err(origin: &Path, line: usize, message: impl ToString) -> Error {
    Error::Parse {
        path: origin.to_path_buf(),
        line,
        message: message.to_string(),
    }
}

/// Parse JSONL from a reader. Whitespace-only lines are skipped. Any malformed
/// line fails the whole parse with its 1-based line number.
pub fn parse_jsonl<T: DeserializeOwned>(reader: impl BufRead, origin: &Path) -> Result<Vec<T>> {
    parse_jsonl_mapped(reader, origin, Ok)
}

fn parse_jsonl_mapped<T: DeserializeOwned>(
    reader: impl BufRead,
    origin: &Path,
    mut map: impl FnMut(Value) -> Result<Value>,
) -> Result<Vec<T>> {
    let mut out = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        let line = line.map_err(|e| parse_err(origin, lineno, e))?;
        if line.trim().is_empty() {
            continue;
        }
        let value: Value = serde_json::from_str(&line).map_err(|e| parse_err(origin, lineno, e))?;
        let value = map(value)?;
        out.push(serde_json::from_value(value).map_err(|e| parse_err(origin, lineno, e))?);
    }
    Ok(out)
}

pub fn load_jsonl<T: DeserializeOwned>(path: &Path) -> Result<Vec<T>> {
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    parse_jsonl(std::io::BufReader::new(file), path)
}

/// Read a single JSON document.
pub fn load_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
    serde_json::from_slice(&bytes).map_err(|e| parse_err(path, e.line(), e))
}

/// Serialize items as JSONL into a byte buffer.
pub fn to_jsonl<T: Serialize>(items: &[T]) -> Vec<u8> {
    let mut buf = Vec::new();
    for item in items {
        serde_json::to_writer(&mut buf, item).expect("in-memory serialization");
        buf.push(b'\n');
    }
    buf
}

/// Write `bytes` to `path` through a temporary file in the same directory and
/// an atomic rename.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| Error::io(dir, e))?;
    tmp.write_all(bytes).map_err(|e| Error::io(tmp.path(), e))?;
    tmp.as_file()
        .sync_all()
        .map_err(|e| Error::io(tmp.path(), e))?;
    tmp.persist(path).map_err(|e| Error::io(path, e.error))?;
    Ok(())
}

pub fn save_jsonl<T: Serialize>(items: &[T], path: &Path) -> Result<()> {
    write_atomic(path, &to_jsonl(items))
}

pub fn load_records(path: &Path, schema: &SchemaMap) -> Result<Vec<SmolRecord>> {
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    parse_records(std::io::BufReader::new(file), path, schema)
}

pub fn parse_records(
    reader: impl BufRead,
    origin: &Path,
    schema: &SchemaMap,
) -> Result<Vec<SmolRecord>> {
    parse_jsonl_mapped(reader, origin, |mut v| {
        schema.rename(&mut v, true);
        Ok(v)
    })
}

pub fn save_records(records: &[SmolRecord], path: &Path, schema: &SchemaMap) -> Result<()> {
    let values: Vec<Value> = records
        .iter()
        .map(|r| {
            let mut v = serde_json::to_value(r).expect("records serialize");
            schema.rename(&mut v, false);
            v
        })
        .collect();
    save_jsonl(&values, path)
}
