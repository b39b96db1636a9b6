//! The in-process API. Routes are thin wrappers that serialize these results.

use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex, RwLock};

use maxlev::chrf::{chrf, ChrfParams, ChrfResult};
use maxlev::reservoir::{
    load_reservoir, load_targets, parse_reservoir, parse_targets, RawSentence, ReservoirFormat,
};
use maxlev::ritl::{
    AcceptOutcome, BatchEntry, DiscardOutcome, RitlConfig, RitlSession, SessionExport, SessionInit,
    SessionStatus,
};
use maxlev::setcover::CoverageMode;
use maxlev::textcore::TokenizerConfig;
use serde::{Deserialize, Serialize};

use crate::error::{ApiError, ApiResult};

/// A server-local file path, or the content itself.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DataRef {
    Path(PathBuf),
    Inline { inline: String },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CreateSession {
    pub reservoir_ref: DataRef,
    pub targets_ref: DataRef,
    #[serde(default)]
    pub k: Option<usize>,
    #[serde(default)]
    pub mode: Option<CoverageMode>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SessionCreated {
    pub session_id: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AcceptRequest {
    pub sentence_id: u64,
    #[serde(default)]
    pub edited_text: Option<String>,
    /// Batch generation the client is looking at; a mismatch is a stale batch.
    #[serde(default)]
    pub batch: Option<u64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DiscardRequest {
    pub sentence_ids: Vec<u64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ChrfRequest {
    pub hyp: String,
    #[serde(rename = "ref")]
    pub reference: String,
    #[serde(default)]
    pub params: Option<ChrfParams>,
}

type SessionHandle = Arc<Mutex<RitlSession>>;

/// Session registry. Each session sits behind its own mutex, so mutations of
/// one session are serialized while distinct sessions proceed independently.
#[derive(Default)]
pub struct Api {
    sessions: RwLock<HashMap<String, SessionHandle>>,
    next_id: AtomicU64,
    state_dir: Option<PathBuf>,
}

fn load_reservoir_ref(r: &DataRef, cfg: &TokenizerConfig) -> ApiResult<Vec<RawSentence>> {
    let sentences = match r {
        DataRef::Path(p) => load_reservoir(p, cfg)?,
        DataRef::Inline { inline } => {
            let origin = Path::new("<inline reservoir>");
            parse_reservoir(inline, ReservoirFormat::detect(origin, inline), cfg, origin)?
        }
    };
    Ok(sentences.iter().map(RawSentence::from).collect())
}

impl Api {
    pub fn new() -> Self {
        Api::default()
    }

    /// Persist sessions under `dir`, recovering any already there.
    pub fn with_state_dir(dir: impl Into<PathBuf>) -> ApiResult<Self> {
        let dir = dir.into();
        std::fs::create_dir_all(&dir)
            .map_err(|e| ApiError::internal(format!("{}: {e}", dir.display())))?;
        let mut sessions = HashMap::new();
        let mut max_seq = 0;
        let entries = std::fs::read_dir(&dir)
            .map_err(|e| ApiError::internal(format!("{}: {e}", dir.display())))?;
        for entry in entries.flatten() {
            let path = entry.path();
            if !path.is_dir() {
                continue;
            }
            let session = RitlSession::open(&path)?;
            let id = session.session_id().to_owned();
            if let Some(seq) = id.strip_prefix('s').and_then(|n| n.parse::<u64>().ok()) {
                max_seq = max_seq.max(seq);
            }
            log::info!("recovered session {id} from {}", path.display());
            sessions.insert(id, Arc::new(Mutex::new(session)));
        }
        Ok(Api {
            sessions: RwLock::new(sessions),
            next_id: AtomicU64::new(max_seq),
            state_dir: Some(dir),
        })
    }

    fn session(&self, id: &str) -> ApiResult<SessionHandle> {
        self.sessions
            .read()
            .expect("session registry poisoned")
            .get(id)
            .cloned()
            .ok_or_else(|| ApiError::not_found(format!("unknown session {id:?}")))
    }

    fn with_session<T>(
        &self,
        id: &str,
        f: impl FnOnce(&mut RitlSession) -> ApiResult<T>,
    ) -> ApiResult<T> {
        let handle = self.session(id)?;
        let mut session = handle.lock().expect("session poisoned");
        f(&mut session)
    }

    pub fn create_session(&self, req: CreateSession) -> ApiResult<SessionCreated> {
        let mut config = RitlConfig::default();
        if let Some(k) = req.k {
            config.k = k;
        }
        if let Some(mode) = req.mode {
            config.mode = mode;
        }
        let reservoir = load_reservoir_ref(&req.reservoir_ref, &config.tokenizer)?;
        let targets = match &req.targets_ref {
            DataRef::Path(p) => load_targets(p, &config.tokenizer)?,
            DataRef::Inline { inline } => parse_targets(inline, &config.tokenizer),
        };
        let session_id = format!("s{}", self.next_id.fetch_add(1, Ordering::SeqCst) + 1);
        let init = SessionInit {
            session_id: session_id.clone(),
            reservoir,
            targets,
            config,
        };
        let session = match &self.state_dir {
            Some(dir) => RitlSession::create_persistent(&dir.join(&session_id), init)?,
            None => RitlSession::create(init)?,
        };
        self.sessions
            .write()
            .expect("session registry poisoned")
            .insert(session_id.clone(), Arc::new(Mutex::new(session)));
        Ok(SessionCreated { session_id })
    }

    pub fn batch(&self, id: &str) -> ApiResult<Vec<BatchEntry>> {
        self.with_session(id, |s| Ok(s.batch()?))
    }

    pub fn accept(&self, id: &str, req: AcceptRequest) -> ApiResult<AcceptOutcome> {
        self.with_session(id, |s| {
            Ok(s.accept(req.sentence_id, req.edited_text, req.batch)?)
        })
    }

    pub fn discard(&self, id: &str, req: DiscardRequest) -> ApiResult<DiscardOutcome> {
        self.with_session(id, |s| Ok(s.discard(&req.sentence_ids)?))
    }

    pub fn status(&self, id: &str) -> ApiResult<SessionStatus> {
        self.with_session(id, |s| Ok(s.status()))
    }

    pub fn export(&self, id: &str) -> ApiResult<SessionExport> {
        self.with_session(id, |s| Ok(s.export()))
    }

    pub fn score_chrf(&self, req: ChrfRequest) -> ApiResult<ChrfResult> {
        Ok(chrf(
            &req.hyp,
            &req.reference,
            &req.params.unwrap_or_default(),
        )?)
    }

    pub fn session_ids(&self) -> Vec<String> {
        let mut ids: Vec<String> = self
            .sessions
            .read()
            .expect("session registry poisoned")
            .keys()
            .cloned()
            .collect();
        ids.sort();
        ids
    }
}
