//! Corpus curation toolkit.
//!
//! The crate decides *what* to translate and audits what comes back:
//!
//! * [`setcover`]: greedy token set cover over a sentence reservoir, with random baselines
//!   and excess-token statistics.
//! * [`ritl`]: an interactive session engine where a researcher accepts, edits and
//!   discards from proposed batches while the cover is tracked.
//! * [`diversity`]: document ranking by leave-one-out n-gram IDF with a repetition
//!   penalty, tier assembly and DWD selection scorers.
//! * [`chrf`]: chrF with NFKC normalization and counterweighted few-shot exemplar selection.
//! * [`qc`]: duplicate, length-ratio, MT-similarity, codepoint and language-id checks.
//! * [`promptmesh`]: template-mesh prompt generation and token-density response ranking.
//! * [`datamodel`]: record schema, factuality aggregation, document splitting and JSONL I/O.

pub mod chrf;
pub mod datamodel;
pub mod diversity;
mod error;
pub mod promptmesh;
pub mod qc;
pub mod reservoir;
pub mod ritl;
pub mod setcover;
pub mod textcore;

pub use error::{Error, Result};
